"""Exact scalars, partitions, symmetric-function evaluation and linear algebra.

All quantities are :class:`fractions.Fraction`; partitions are plain tuples
of positive integers in weakly decreasing order.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial as _factorial, prod
from typing import Iterable, Iterator, Sequence

Partition = tuple

__all__ = [
    "Partition", "make_partition", "weight", "length", "multiplicities",
    "theta", "a_coeff", "a_alpha", "factorial", "partitions",
    "enumerate_partitions", "partitions_up_to", "partition_key",
    "monomial_sym", "bernoulli", "nullspace", "rref", "rank", "matvec",
    "solve_for", "fmt_rational", "parse_rational", "parse_partition",
]


def make_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def weight(alpha: Sequence[int]) -> int:
    return sum(alpha)


def length(alpha: Sequence[int]) -> int:
    return len(alpha)


def multiplicities(alpha: Sequence[int]) -> dict[int, int]:
    """Map part size ``i`` to its multiplicity ``m_i``."""
    return dict(Counter(alpha))


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return _factorial(n)


def theta(alpha: Sequence[int]) -> Fraction:
    """Centralizer order ``prod_i i^{m_i} m_i!`` of the class of type alpha."""
    if not alpha:
        raise ValueError("theta needs a nonempty partition")
    return Fraction(prod(i ** m * factorial(m) for i, m in Counter(alpha).items()))


@lru_cache(maxsize=None)
def a_coeff(n: int) -> Fraction:
    """``n^n / (n-1)!``."""
    if n < 1:
        raise ValueError("a_n is defined for n >= 1")
    return Fraction(n ** n, factorial(n - 1))


def a_alpha(alpha: Sequence[int]) -> Fraction:
    return prod((a_coeff(k) for k in alpha), start=Fraction(1))


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, constraint: str = "all", length: int | None = None) -> list[Partition]:
    """Partitions of ``n`` under one of the constraints

    ``"all"``, ``"no_part_one"`` or ``"no_part_one_with_length"`` (the last
    one requires ``length``).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = list(partitions(n))
    if constraint == "all":
        return out
    out = [p for p in out if 1 not in p]
    if constraint == "no_part_one":
        return out
    if constraint == "no_part_one_with_length":
        if length is None:
            raise ValueError("length required")
        return [p for p in out if len(p) == length]
    raise ValueError(f"unknown constraint {constraint!r}")


def partitions_up_to(n: int, include_empty: bool = False) -> list[Partition]:
    out = [()] if include_empty else []
    for k in range(1, n + 1):
        out.extend(partitions(k))
    return out


def partition_key(alpha: Sequence[int]) -> tuple:
    """Canonical sort key: by weight, then reverse-lexicographic."""
    return (sum(alpha), tuple(-a for a in alpha))


def monomial_sym(nu: Sequence[int], alpha: Sequence[int]) -> Fraction:
    """Monomial symmetric function ``m_nu`` evaluated at the parts of ``alpha``."""
    if len(nu) > len(alpha):
        return Fraction(0)
    need = sorted(Counter(nu).items())
    target = tuple(m for _, m in need)
    # Each variable takes at most one exponent from nu; the state counts how
    # many copies of each distinct exponent have been placed so far.
    states: dict[tuple, int] = {(0,) * len(need): 1}
    for x in alpha:
        nxt: dict[tuple, int] = dict(states)
        for st, c in states.items():
            for t, (e, m) in enumerate(need):
                if st[t] < m:
                    key = st[:t] + (st[t] + 1,) + st[t + 1:]
                    nxt[key] = nxt.get(key, 0) + c * x ** e
        states = nxt
    return Fraction(states.get(target, 0))


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    for m in range(1, k + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return tuple(b)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number ``B_k`` for even ``k`` (``B_2 = 1/6``)."""
    if k < 0 or k % 2:
        raise ValueError(f"bernoulli expects an even nonnegative index, got {k}")
    return _bernoulli_table(k)[k]


# -- linear algebra ---------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over Q; pivots are taken left to right."""
    m = [[Fraction(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right nullspace.

    One vector per free column (left to right), with that free variable set
    to 1 and the other free variables to 0.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def matvec(rows: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def solve_for(rows: Sequence[Sequence], dependent: Sequence[int], free: Sequence[int]) -> dict[int, dict[int, Fraction]]:
    """Express the ``dependent`` unknowns of a homogeneous system through ``free``.

    Columns are reordered so that the dependent unknowns are eliminated
    first; raises ``ValueError`` if they cannot all be pivots or if the
    solution imposes a constraint among the free unknowns.
    """
    order = list(dependent) + list(free)
    perm_rows = [[row[c] for c in order] for row in rows]
    red, pivots = rref(perm_rows, len(order))
    nd = len(dependent)
    if pivots[:nd] != list(range(nd)) or len(pivots) != nd:
        raise ValueError(f"unknowns {list(dependent)} are not determined by {list(free)}")
    out = {}
    for row, p in zip(red, pivots):
        out[dependent[p]] = {free[j]: -row[nd + j] for j in range(len(free)) if row[nd + j] != 0}
    return out


# -- serialization helpers --------------------------------------------------

def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def parse_partition(s: str) -> Partition:
    s = s.strip()
    if not s:
        return ()
    sep = ";" if ";" in s else ","
    return make_partition(int(t) for t in s.split(sep))
