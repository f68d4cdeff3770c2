"""Brute-force Hurwitz numbers: transitive factorizations into transpositions.

For a fixed permutation ``sigma`` of cycle type alpha we count r-tuples of
transpositions with product ``sigma``.  The all-tuples count is a dynamic
program over the group algebra of S_n; transitivity is imposed by sieving
over the orbit that contains the first cycle.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb

import numpy as np

from .foundation import theta

__all__ = [
    "CapExceeded", "DEFAULT_CAP", "canonical_permutation", "transpositions",
    "compose", "cycle_type", "count_all_factorizations",
    "count_transitive_factorizations", "count_transitive_dfs",
    "mu_via_factorizations", "class_size_by_orbits",
]

DEFAULT_CAP = 8


class CapExceeded(ValueError):
    pass


def canonical_permutation(alpha) -> tuple[int, ...]:
    """Cycles of ``alpha`` laid out on consecutive blocks of ``0..n-1``."""
    images = []
    start = 0
    for part in alpha:
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return tuple(images)


def transpositions(n: int) -> list[tuple[int, ...]]:
    out = []
    for a, b in combinations(range(n), 2):
        t = list(range(n))
        t[a], t[b] = b, a
        out.append(tuple(t))
    return out


def compose(p: tuple, q: tuple) -> tuple:
    """``(p q)(i) = p(q(i))``."""
    return tuple(p[i] for i in q)


def cycle_type(p: tuple) -> tuple[int, ...]:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            parts.append(k)
    return tuple(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def _group(n: int):
    elems = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    # right multiplication by each transposition, as an index gather
    table = np.array([[index[compose(p, t)] for p in elems] for t in transpositions(n)],
                     dtype=np.int64).reshape(-1, len(elems))
    return elems, index, table


@lru_cache(maxsize=None)
def _distribution(n: int, r: int) -> np.ndarray:
    """Number of r-tuples of transpositions with each product, indexed like ``_group``."""
    elems, index, table = _group(n)
    if r == 0:
        v = np.zeros(len(elems), dtype=object)
        v[index[tuple(range(n))]] = 1
        return v
    prev = _distribution(n, r - 1)
    if table.shape[0] == 0:
        return np.zeros(len(elems), dtype=object)
    # v_r(pi) = sum_t v_{r-1}(pi t)
    return prev[table].sum(axis=0)


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")


def count_all_factorizations(alpha, r: int, cap: int = DEFAULT_CAP, sigma: tuple | None = None) -> int:
    """r-tuples of transpositions in S_n whose product is ``sigma`` (default canonical)."""
    alpha = tuple(alpha)
    n = sum(alpha)
    _check_cap(n, cap)
    if n == 0:
        return 1 if r == 0 else 0
    if sigma is None:
        sigma = canonical_permutation(alpha)
    elems, index, _ = _group(n)
    return int(_distribution(n, r)[index[sigma]])


@lru_cache(maxsize=None)
def _all_by_type(alpha: tuple, r: int) -> int:
    return count_all_factorizations(alpha, r, cap=10 ** 9)


@lru_cache(maxsize=None)
def _transitive_by_type(alpha: tuple, r: int) -> int:
    # All tuples split by the orbit O containing cycle 0: the transpositions
    # inside O form a transitive factorization of sigma|O, the rest an
    # arbitrary factorization of sigma on the complement, interleaved.
    first, rest = alpha[0], alpha[1:]
    total = _all_by_type(alpha, r)
    m = len(rest)
    for k in range(m):       # proper subsets only: complement nonempty
        for chosen in combinations(range(m), k):
            inside = (first,) + tuple(rest[i] for i in chosen)
            outside = tuple(rest[i] for i in range(m) if i not in chosen)
            inside = tuple(sorted(inside, reverse=True))
            for r1 in range(r + 1):
                t = _transitive_by_type(inside, r1)
                if t:
                    total -= comb(r, r1) * t * _all_by_type(outside, r - r1)
    return total


def count_transitive_factorizations(alpha, r: int, cap: int = DEFAULT_CAP) -> int:
    alpha = tuple(sorted(alpha, reverse=True))
    _check_cap(sum(alpha), cap)
    if not alpha:
        raise ValueError("alpha must be nonempty")
    return _transitive_by_type(alpha, r)


def _is_transitive(n: int, taus) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t in taus:
        a, b = [i for i in range(n) if t[i] != i]
        parent[find(a)] = find(b)
    return len({find(i) for i in range(n)}) == 1


def count_transitive_dfs(alpha, r: int, sigma: tuple | None = None) -> int:
    """Direct enumeration of all ``C(n,2)^r`` tuples (small cases only)."""
    alpha = tuple(alpha)
    n = sum(alpha)
    if sigma is None:
        sigma = canonical_permutation(alpha)
    ts = transpositions(n)
    count = 0
    for taus in product(ts, repeat=r):
        p = tuple(range(n))
        for t in taus:
            p = compose(p, t)
        if p == sigma and (n == 1 or _is_transitive(n, taus)):
            count += 1
    return count


def mu_via_factorizations(g: int, alpha, cap: int = DEFAULT_CAP) -> Fraction:
    alpha = tuple(sorted(alpha, reverse=True))
    r = sum(alpha) + len(alpha) + 2 * g - 2
    if r < 0:
        raise ValueError("negative transposition count")
    return Fraction(count_transitive_factorizations(alpha, r, cap)) / theta(alpha)


def class_size_by_orbits(alpha) -> int:
    """Size of the conjugacy class of type alpha, by direct count in S_n."""
    n = sum(alpha)
    target = tuple(sorted(alpha, reverse=True))
    return sum(1 for p in permutations(range(n)) if cycle_type(p) == target)
