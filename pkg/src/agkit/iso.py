"""Canonical forms and isomorphism tests for finite magmas.

The canonical form is the lexicographically least row-major table over all
n! relabelings; two magmas are isomorphic iff their canonical keys match.
Full minimization is affordable at the supported orders, so no
partition-refinement machinery is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .core import Magma


@dataclass(frozen=True)
class CanonicalKey:
    """Isomorphism-class representative: order plus minimal table."""

    order: int
    table: tuple[int, ...]


def relabel(m: Magma, p: Sequence[int]) -> Magma:
    """Isomorphic image under permutation p: table'(p(a), p(b)) = p(table(a, b))."""
    n = m.order
    if sorted(p) != list(range(n)):
        raise ValueError(f"{tuple(p)!r} is not a permutation of 0..{n - 1}")
    t = m.table
    out = [0] * (n * n)
    for a in range(n):
        base = a * n
        pa = p[a] * n
        for b in range(n):
            out[pa + p[b]] = p[t[base + b]]
    return Magma(n, tuple(out))


def _min_table(n: int, t: tuple[int, ...]) -> tuple[int, ...]:
    """Least relabeled table, comparing images lazily so most permutations
    are discarded after a few cells."""
    size = n * n
    best = list(t)
    for p in permutations(range(n)):
        q = [0] * n
        for i, v in enumerate(p):
            q[v] = i
        # image[pos] = p[t[src]] where src is the preimage cell of pos
        for pos in range(size):
            val = p[t[q[pos // n] * n + q[pos % n]]]
            cur = best[pos]
            if val > cur:
                break
            if val < cur:
                best[pos] = val
                for rest in range(pos + 1, size):
                    best[rest] = p[t[q[rest // n] * n + q[rest % n]]]
                break
    return tuple(best)


def canonical_key(m: Magma) -> CanonicalKey:
    """Lexicographically least row-major table over all relabelings."""
    return CanonicalKey(m.order, _min_table(m.order, m.table))


def canonical_form(m: Magma) -> Magma:
    """The canonical representative of m's isomorphism class."""
    return Magma(m.order, canonical_key(m).table)


def are_isomorphic(m1: Magma, m2: Magma) -> bool:
    """True iff the magmas have equal order and equal canonical keys."""
    return m1.order == m2.order and canonical_key(m1) == canonical_key(m2)
