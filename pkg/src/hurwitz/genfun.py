"""Generating series F_0..F_3 in terms of the psi_i(s, p), extraction of
Hurwitz numbers, the single-part formula, and fitting of the genus-g ansatz

    F_g = sum_d (1 - psi_1)^{-d} sum_theta K_theta psi_theta

against tabulated Hurwitz numbers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from .foundation import (
    a_coeff, bernoulli, enumerate_partitions, factorial, fmt_rational,
    partition_key, partitions_up_to, rref,
)
from .series import PSeries, TruncationError, psi_at_s, univariate_mul

__all__ = [
    "PsiExpression", "KTable", "FitError", "Underdetermined", "InconsistentAnsatz",
    "F2_EXPRESSION", "F3_EXPRESSION", "psi_expression", "ansatz_index",
    "psi_at_s", "inverse_power", "psi_product", "build_F", "mu", "mu_single_part",
    "sinh_power_coefficient", "fit_K", "single_part_K",
]


@dataclass(frozen=True)
class PsiExpression:
    """``sum K * psi_theta / (1 - psi_1)^d`` plus an optional tail

    ``log_coeff * log(1/(1 - psi_1)) + psi0_coeff * psi_0``.
    """

    terms: dict = field(default_factory=dict)   # (d, theta) -> Fraction
    log_coeff: Fraction = Fraction(0)
    psi0_coeff: Fraction = Fraction(0)

    def evaluate(self, N: int) -> PSeries:
        total = PSeries.zero(N)
        for (d, theta), K in sorted(self.terms.items(), key=lambda kv: (kv[0][0], partition_key(kv[0][1]))):
            total = total + (psi_product(theta, N) * inverse_power(d, N)).scale(K)
        if self.log_coeff:
            total = total + (-(-psi_at_s(1, N)).log1p()).scale(self.log_coeff)
        if self.psi0_coeff:
            total = total + psi_at_s(0, N).scale(self.psi0_coeff)
        return total


@lru_cache(maxsize=None)
def inverse_power(d: int, N: int) -> PSeries:
    """``(1 - psi_1(s,p))^{-d}``."""
    if d == 0:
        return PSeries.one(N)
    if d == 1:
        return psi_at_s(1, N).geometric_inverse()
    return inverse_power(d - 1, N) * inverse_power(1, N)


@lru_cache(maxsize=None)
def psi_product(theta: tuple, N: int) -> PSeries:
    if not theta:
        return PSeries.one(N)
    return psi_product(theta[1:], N) * psi_at_s(theta[0], N)


def _expr(denominator, rows) -> dict:
    return {(d, tuple(th)): Fraction(c) / denominator for d, th, c in rows}


F2_EXPRESSION = PsiExpression(_expr(5760, [
    (3, (4,), 5), (3, (3,), -12), (3, (2,), 7),
    (4, (3, 2), 29), (4, (2, 2), -25),
    (5, (2, 2, 2), 28),
]))

_F3_DEN = 2 ** 3 * factorial(9)
_F3_TERMS = _expr(_F3_DEN, [
    (5, (7,), 35), (5, (6,), -147), (5, (5,), 205), (5, (4,), -93),
    (6, (3, 2), -930), (6, (4, 4), 607), (6, (3, 3), 1501), (6, (4, 2), 2329),
    (6, (6, 2), 539), (6, (5, 3), 1006), (6, (4, 3), -3078), (6, (5, 2), -1938),
    (7, (4, 3, 2), 13452), (7, (3, 3, 3), 2915), (7, (3, 3, 2), -16821),
    (7, (4, 2, 2), -12984), (7, (3, 2, 2), 12885), (7, (5, 2, 2), 4284),
    (7, (2, 2, 2), -1395),
    (8, (4, 2, 2, 2), 22260), (8, (3, 3, 2, 2), 43050), (8, (3, 2, 2, 2), -55300),
    (8, (2, 2, 2, 2), 10710),
    (9, (3, 2, 2, 2, 2), 81060), (9, (2, 2, 2, 2, 2), -31220),
])
_F3_TERMS[(10, (2,) * 6)] = Fraction(245, 20736)
F3_EXPRESSION = PsiExpression(_F3_TERMS)

F1_EXPRESSION = PsiExpression({}, log_coeff=Fraction(1, 24), psi0_coeff=Fraction(-1, 24))


def psi_expression(g: int) -> PsiExpression:
    if g == 1:
        return F1_EXPRESSION
    if g == 2:
        return F2_EXPRESSION
    if g == 3:
        return F3_EXPRESSION
    raise ValueError(f"no psi-expression available for genus {g}")


def ansatz_index(g: int) -> list[tuple[int, tuple]]:
    """The ``(d, theta)`` pairs allowed by the ansatz at genus ``g >= 2``."""
    if g < 2:
        raise ValueError("the ansatz is stated for g >= 2")
    out = []
    for d in range(2 * g - 1, 5 * g - 4):
        ell = d - 2 * (g - 1)
        for n in range(d - 1, d + g):
            for theta in enumerate_partitions(n, "no_part_one_with_length", ell):
                out.append((d, theta))
    return sorted(out, key=lambda t: (t[0], partition_key(t[1])))


@lru_cache(maxsize=None)
def build_F(g: int, N: int) -> PSeries:
    """F_g truncated at order N, for g in 0..3."""
    if g == 0:
        psi0 = psi_at_s(0, N)
        # (x d/dx)^2 F_0 = psi_0 and F_0 has no x^0 term.
        return PSeries(N, {(n, lam): c / (n * n) for (n, lam), c in psi0.terms.items()},
                       _trusted=True)
    if g in (1, 2, 3):
        return psi_expression(g).evaluate(N)
    raise ValueError(f"unsupported genus {g}; closed forms exist for g = 0..3")


def mu(g: int, alpha, N: int | None = None) -> Fraction:
    """Hurwitz number from the series route."""
    alpha = tuple(sorted(alpha, reverse=True))
    n, m = sum(alpha), len(alpha)
    if N is None:
        N = max(n, 1)
    if n > N:
        raise TruncationError(f"|alpha| = {n} exceeds truncation order {N}")
    return factorial(n + m + 2 * g - 2) * build_F(g, N).coefficient(n, alpha)


def sinh_power_coefficient(k: int, e: int) -> Fraction:
    """``[x^k] (sinh(x)/x)^e``."""
    base = [Fraction(1, factorial(j + 1)) if j % 2 == 0 else Fraction(0) for j in range(k + 1)]
    result = [Fraction(1)] + [Fraction(0)] * k
    for _ in range(e):
        result = univariate_mul(result, base, k)
    return result[k]


def mu_single_part(g: int, n: int) -> Fraction:
    """``mu^{(g)}((n))`` from the single-part formula."""
    if g < 1 or n < 1:
        raise ValueError("requires g >= 1 and n >= 1")
    rhs = a_coeff(n) * Fraction(n ** (2 * g - 2), 2 ** (2 * g)) * sinh_power_coefficient(2 * g, n - 1)
    return rhs * factorial(n + 2 * g - 1) / n


def single_part_K(g: int) -> dict[tuple[int, tuple], Fraction]:
    """Predicted coefficients of psi_{3g-2} and psi_{2g-2} over (1-psi_1)^{2g-1}."""
    return {
        (2 * g - 1, (3 * g - 2,)): Fraction(1, 24 ** g * factorial(g)),
        (2 * g - 1, (2 * g - 2,)): (1 - 2 ** (2 * g - 1)) * bernoulli(2 * g)
        / (2 ** (2 * g - 1) * factorial(2 * g)),
    }


# -- fitting -----------------------------------------------------------------

class FitError(ValueError):
    pass


class Underdetermined(FitError):
    def __init__(self, free: list, rank: int, unknowns: int):
        self.free = free
        self.rank = rank
        self.unknowns = unknowns
        super().__init__(f"underdetermined: rank {rank} of {unknowns} unknowns, "
                         f"{unknowns - rank} degrees of freedom, free {free}")


class InconsistentAnsatz(FitError):
    def __init__(self, equation):
        self.equation = equation
        super().__init__(f"inconsistent: ansatz fails on coefficient {equation}")


@dataclass
class KTable:
    genus: int
    terms: dict   # (d, theta) -> Fraction

    def to_json(self) -> str:
        rows = sorted(self.terms.items(), key=lambda kv: (kv[0][0], partition_key(kv[0][1])))
        return json.dumps({"genus": self.genus,
                           "terms": [{"d": d, "theta": list(th), "K": fmt_rational(K)}
                                     for (d, th), K in rows]})

    @classmethod
    def from_json(cls, text: str) -> "KTable":
        d = json.loads(text)
        return cls(d["genus"], {(t["d"], tuple(t["theta"])): Fraction(t["K"]) for t in d["terms"]})

    def as_expression(self) -> PsiExpression:
        return PsiExpression(dict(self.terms))


def fit_K(g: int, data, N: int) -> KTable:
    """Solve for the ansatz coefficients at genus ``g`` from Hurwitz data.

    ``data`` needs a ``mu(g, alpha)`` method (e.g. a cut-and-join table)
    covering every ``alpha`` with ``|alpha| <= N``.
    """
    index = ansatz_index(g)
    basis = [psi_product(th, N) * inverse_power(d, N) for d, th in index]
    rows, labels = [], []
    for alpha in partitions_up_to(N):
        n, m = sum(alpha), len(alpha)
        row = [b.coefficient(n, alpha) for b in basis]
        rhs = Fraction(data.mu(g, alpha)) / factorial(n + m + 2 * g - 2)
        if any(row) or rhs:
            rows.append(row + [rhs])
            labels.append(alpha)
    ncols = len(index)
    red, pivots = rref(rows, ncols + 1)
    if ncols in pivots:
        # Find an original equation not implied by the others for the report.
        bad = _first_inconsistent(rows, ncols)
        raise InconsistentAnsatz(labels[bad] if bad is not None else None)
    if len(pivots) < ncols:
        free = [index[c] for c in range(ncols) if c not in pivots]
        raise Underdetermined(free, len(pivots), ncols)
    return KTable(g, {index[p]: row[ncols] for row, p in zip(red, pivots)})


def _first_inconsistent(rows, ncols):
    kept = []
    for i, row in enumerate(rows):
        kept.append(row)
        _, piv = rref(kept, ncols + 1)
        if ncols in piv:
            return i
    return None
