"""Shared test oracles and strategies.

The oracles here re-derive results through independent code paths: an
identity evaluator over explicit term trees, a filter-everything
enumeration, and a try-all-permutations isomorphism test.  They must not
call into the package internals they are used to check.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from agkit import Magma, enumerate_ag, fixtures

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


# --- term-tree identity oracle ---------------------------------------------

def V(i: int):
    return ("v", i)


def M(x, y):
    return ("m", x, y)


def eval_term(term, t, n, env):
    if term[0] == "v":
        return env[term[1]]
    return t[eval_term(term[1], t, n, env) * n + eval_term(term[2], t, n, env)]


# name -> (nvars, when, musts); when is an optional (lhs, rhs) hypothesis
# equation, musts a list of (lhs, rhs) equations all of which must hold.
ORACLE_IDENTITIES = {
    "ag": (3, None, [(M(M(V(0), V(1)), V(2)), M(M(V(2), V(1)), V(0)))]),
    "right_ag": (3, None, [(M(V(0), M(V(1), V(2))), M(V(2), M(V(1), V(0))))]),
    "cyclic_associative": (3, None, [(M(V(0), M(V(1), V(2))), M(V(2), M(V(0), V(1))))]),
    "associative": (3, None, [(M(M(V(0), V(1)), V(2)), M(V(0), M(V(1), V(2))))]),
    "commutative": (2, None, [(M(V(0), V(1)), M(V(1), V(0)))]),
    "medial": (
        4, None,
        [(M(M(V(0), V(1)), M(V(2), V(3))), M(M(V(0), V(2)), M(V(1), V(3))))],
    ),
    "paramedial": (
        4, None,
        [(M(M(V(0), V(1)), M(V(2), V(3))), M(M(V(3), V(1)), M(V(2), V(0))))],
    ),
    "ag_star": (3, None, [(M(M(V(0), V(1)), V(2)), M(V(1), M(V(0), V(2))))]),
    "ag_star_star": (3, None, [(M(V(0), M(V(1), V(2))), M(V(1), M(V(0), V(2))))]),
    "left_nuclear_square": (
        3, None,
        [(M(M(V(0), V(0)), M(V(1), V(2))), M(M(M(V(0), V(0)), V(1)), V(2)))],
    ),
    "middle_nuclear_square": (
        3, None,
        [(M(V(0), M(M(V(1), V(1)), V(2))), M(M(V(0), M(V(1), V(1))), V(2)))],
    ),
    "right_nuclear_square": (
        3, None,
        [(M(V(0), M(V(1), M(V(2), V(2)))), M(M(V(0), V(1)), M(V(2), V(2))))],
    ),
    "bol_star": (
        4, None,
        [(M(V(0), M(M(V(1), V(2)), V(3))), M(M(M(V(0), V(1)), V(2)), V(3)))],
    ),
    "T1": (
        4,
        (M(V(0), V(1)), M(V(2), V(3))),
        [(M(V(1), V(0)), M(V(3), V(2)))],
    ),
    "T3_left": (
        3,
        (M(V(0), V(1)), M(V(0), V(2))),
        [(M(V(1), V(0)), M(V(2), V(0)))],
    ),
    "T3_right": (
        3,
        (M(V(1), V(0)), M(V(2), V(0))),
        [(M(V(0), V(1)), M(V(0), V(2)))],
    ),
    "left_alternative": (
        2, None,
        [(M(M(V(0), V(0)), V(1)), M(V(0), M(V(0), V(1))))],
    ),
    "right_alternative": (
        2, None,
        [(M(V(1), M(V(0), V(0))), M(M(V(1), V(0)), V(0)))],
    ),
    "left_commutative": (
        3, None,
        [(M(M(V(0), V(1)), V(2)), M(M(V(1), V(0)), V(2)))],
    ),
    "right_commutative": (
        3, None,
        [(M(V(0), M(V(1), V(2))), M(V(0), M(V(2), V(1))))],
    ),
    "band": (1, None, [(M(V(0), V(0)), V(0))]),
    "three_band": (
        1, None,
        [(M(M(V(0), V(0)), V(0)), V(0)), (M(V(0), M(V(0), V(0))), V(0))],
    ),
}

# Composite properties: conjunction of parts, first failing part decides
# the witness, in this order.
ORACLE_COMPOSITES = {
    "semilattice": ("commutative", "band"),
    "nuclear_square": (
        "left_nuclear_square",
        "middle_nuclear_square",
        "right_nuclear_square",
    ),
    "alternative": ("left_alternative", "right_alternative"),
    "bicommutative": ("left_commutative", "right_commutative"),
    "T3": ("T3_left", "T3_right"),
}


def oracle_check(m: Magma, name: str):
    """Independent property check: (holds, witness-or-None)."""
    n, t = m.order, m.table
    if name == "has_left_identity":
        holds = any(
            all(t[e * n + a] == a for a in range(n)) for e in range(n)
        )
        return holds, None
    if name in ORACLE_COMPOSITES:
        for part in ORACLE_COMPOSITES[name]:
            holds, w = oracle_check(m, part)
            if not holds:
                return False, w
        return True, None
    nvars, when, musts = ORACLE_IDENTITIES[name]
    for env in itertools.product(range(n), repeat=nvars):
        if when is not None:
            if eval_term(when[0], t, n, env) != eval_term(when[1], t, n, env):
                continue
        for lhs, rhs in musts:
            if eval_term(lhs, t, n, env) != eval_term(rhs, t, n, env):
                return False, env
    return True, None


# --- brute-force enumeration and isomorphism oracles ------------------------

def naive_relabel(t: tuple, n: int, p) -> tuple:
    out = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            out[p[a] * n + p[b]] = p[t[a * n + b]]
    return tuple(out)


def naive_canon(t: tuple, n: int) -> tuple:
    return min(
        naive_relabel(t, n, p) for p in itertools.permutations(range(n))
    )


def naive_is_ag(t: tuple, n: int) -> bool:
    r = range(n)
    return all(
        t[t[a * n + b] * n + c] == t[t[c * n + b] * n + a]
        for a in r for b in r for c in r
    )


@lru_cache(maxsize=None)
def brute_enumeration(n: int) -> tuple[tuple, ...]:
    """Every AG table of order n, filtered then canonicalized; sorted."""
    classes = {
        naive_canon(cells, n)
        for cells in itertools.product(range(n), repeat=n * n)
        if naive_is_ag(cells, n)
    }
    return tuple(sorted(classes))


def brute_isomorphic(m1: Magma, m2: Magma) -> bool:
    if m1.order != m2.order:
        return False
    n = m1.order
    return any(
        naive_relabel(m1.table, n, p) == m2.table
        for p in itertools.permutations(range(n))
    )


# --- hypothesis strategies ---------------------------------------------------

@st.composite
def magmas(draw, min_order: int = 1, max_order: int = 4) -> Magma:
    n = draw(st.integers(min_order, max_order))
    cells = draw(
        st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)
    )
    return Magma(n, tuple(cells))


@st.composite
def magma_perm_pairs(draw, max_order: int = 4):
    m = draw(magmas(max_order=max_order))
    p = draw(st.permutations(range(m.order)))
    return m, tuple(p)


# --- shared data fixtures ----------------------------------------------------

@lru_cache(maxsize=None)
def ag_universe(n: int) -> tuple[Magma, ...]:
    out: list[Magma] = []
    enumerate_ag(n, out.append)
    return tuple(out)


@pytest.fixture(scope="session")
def fixture_map() -> dict[str, Magma]:
    return fixtures()


@pytest.fixture(scope="session")
def small_universe() -> list[Magma]:
    """All AG classes of order <= 3."""
    return [m for n in (1, 2, 3) for m in ag_universe(n)]


@pytest.fixture(scope="session")
def universe4() -> list[Magma]:
    """All AG classes of order <= 4."""
    return [m for n in (1, 2, 3, 4) for m in ag_universe(n)]
