"""The specialization ``p_1 = 1, p_i = 0 (i > 1)``: series ``f_g`` in x,
the operator ``D = x d/dx`` acting on Laurent polynomials in
``W = 1/(1 - w)`` (``w = x e^w``), differential-equation ansatzes for
``f_2`` and the recurrences they imply for ``mu_n^{(g)} = mu^{(g)}(1^n)``.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from functools import lru_cache
from math import comb

from .foundation import factorial, fmt_rational, nullspace, solve_for
from .genfun import PsiExpression, build_F, psi_expression
from .series import univariate_mul, w_series

__all__ = [
    "LaurentW", "specialize_f", "f_closed_form", "laurent_of_expression",
    "D_power", "degree_span", "to_x_series", "x_D", "mu0", "mu1", "mu2",
    "ansatz_terms", "ansatz_nullspace", "genus1_form_fit",
    "no_linear_recurrence_nullspace", "recurrence_check", "report_csv",
    "MU2_RECURRENCE_B", "SECOND_ORDER_B", "FIRST_ORDER_B",
]

_ZERO = Fraction(0)


class LaurentW:
    """Finitely supported Laurent polynomial in W."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(e): Fraction(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def W(cls, e: int = 1, c=1) -> "LaurentW":
        return cls({e: c})

    def __repr__(self):
        body = " + ".join(f"{fmt_rational(c)}*W^{e}" for e, c in sorted(self.coeffs.items()))
        return f"LaurentW({body or '0'})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentW({0: other})
        return isinstance(other, LaurentW) and self.coeffs == other.coeffs

    def __add__(self, other):
        if not isinstance(other, LaurentW):
            other = LaurentW({0: other})
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, _ZERO) + c
        return LaurentW(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentW({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentW):
            return LaurentW({e: c * Fraction(other) for e, c in self.coeffs.items()})
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, _ZERO) + c1 * c2
        return LaurentW(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentW({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def d_dW(self) -> "LaurentW":
        return LaurentW({e - 1: e * c for e, c in self.coeffs.items() if e})

    def D(self) -> "LaurentW":
        """``x d/dx = W^2 (W - 1) d/dW``."""
        return self.d_dW() * LaurentW({3: 1, 2: -1})

    def span(self) -> tuple[int, int]:
        if not self.coeffs:
            raise ValueError("degree span of the zero polynomial")
        return min(self.coeffs), max(self.coeffs)


def degree_span(f: LaurentW) -> tuple[int, int]:
    return f.span()


_w = LaurentW({0: 1, -1: -1})          # w = 1 - 1/W


def laurent_of_expression(expr: PsiExpression) -> LaurentW:
    """The pure part of a psi-expression with every psi_i replaced by w."""
    total = LaurentW()
    for (d, theta), K in expr.terms.items():
        total = total + (_w ** len(theta)) * LaurentW.W(d) * K
    return total


def D_power(g: int, r: int) -> LaurentW:
    """``D^r f_g`` as a Laurent polynomial in W."""
    if g == 0 and r >= 1:
        # D^2 f_0 = w; D f_0 is its antiderivative vanishing at x = 0 (W = 1):
        # d/dW (D f_0) = w / (W^2 (W - 1)) = W^{-3}.
        f = LaurentW({0: Fraction(1, 2), -2: Fraction(-1, 2)})
        start = 1
    elif g == 1 and r >= 1:
        # f_1 = (log W - w)/24 with D log W = W (W - 1) and D w = W - 1.
        e = psi_expression(1)
        f = LaurentW({2: 1, 1: -1}) * e.log_coeff + LaurentW({1: 1, 0: -1}) * e.psi0_coeff
        start = 1
    elif g == 2 and r >= 0:
        f = laurent_of_expression(psi_expression(2))
        start = 0
    elif g == 3 and r >= 0:
        f = laurent_of_expression(psi_expression(3))
        start = 0
    else:
        raise ValueError(f"D^{r} f_{g} is not a Laurent polynomial in W")
    for _ in range(r - start):
        f = f.D()
    return f


# -- x-series side -----------------------------------------------------------

def to_x_series(f: LaurentW, N: int) -> list[Fraction]:
    """Expand in x through ``W = 1/(1 - w)``."""
    w = list(w_series(N))
    one = [Fraction(1)] + [_ZERO] * N
    W = [Fraction(1)] + [_ZERO] * N       # 1/(1-w) = sum w^k
    term = one
    for _ in range(N):
        term = univariate_mul(term, w, N)
        W = [a + b for a, b in zip(W, term)]
    Winv = [a - b for a, b in zip(one, w)]
    out = [_ZERO] * (N + 1)
    for e, c in f.coeffs.items():
        base = W if e >= 0 else Winv
        p = one
        for _ in range(abs(e)):
            p = univariate_mul(p, base, N)
        out = [o + c * v for o, v in zip(out, p)]
    return out


def x_D(a: list, times: int = 1) -> list:
    for _ in range(times):
        a = [n * c for n, c in enumerate(a)]
    return a


@lru_cache(maxsize=None)
def specialize_f(g: int, N: int) -> tuple[Fraction, ...]:
    """``f_g`` from the full series with ``p_1 = 1`` and the other ``p_i = 0``."""
    F = build_F(g, N).set_p({1: 1})
    return tuple(F.coefficient(n, ()) for n in range(N + 1))


def f_closed_form(g: int, N: int) -> list[Fraction]:
    """``f_g`` from the closed forms with every psi_i replaced by the w-series."""
    w = list(w_series(N))
    if g == 0:
        return [_ZERO] + [c / (n * n) for n, c in enumerate(w) if n]
    if g == 1:
        # log(1/(1-w)) = sum_k w^k / k
        out = [_ZERO] * (N + 1)
        p = [Fraction(1)] + [_ZERO] * N
        for k in range(1, N + 1):
            p = univariate_mul(p, w, N)
            out = [o + v / k for o, v in zip(out, p)]
        return [(o - v) / 24 for o, v in zip(out, w)]
    return to_x_series(laurent_of_expression(psi_expression(g)), N)


@lru_cache(maxsize=None)
def _mu_tables(N: int):
    f1 = specialize_f(1, N)
    f2 = specialize_f(2, N)
    m0 = {n: Fraction(factorial(2 * n - 2) * Fraction(n) ** (n - 3), factorial(n)) for n in range(1, N + 1)}
    m1 = {n: factorial(2 * n) * f1[n] for n in range(1, N + 1)}
    m2 = {n: factorial(2 * n + 2) * f2[n] for n in range(1, N + 1)}
    return m0, m1, m2


def mu0(n: int, N: int | None = None) -> Fraction:
    return _mu_tables(N or max(n, 12))[0][n]


def mu1(n: int, N: int | None = None) -> Fraction:
    return _mu_tables(N or max(n, 12))[1][n]


def mu2(n: int, N: int | None = None) -> Fraction:
    return _mu_tables(N or max(n, 12))[2][n]


# -- ansatz systems ------------------------------------------------------------

def ansatz_terms() -> list[LaurentW]:
    """The ten terms of ``b_1 D^2 f_2 + ... = ...`` moved to one side."""
    f0 = {r: D_power(0, r) for r in range(1, 3)}
    f1 = {r: D_power(1, r) for r in range(1, 4)}
    f2 = {r: D_power(2, r) for r in range(0, 3)}
    return [
        f2[2], f2[1], f2[0],
        -f1[3], -f1[2],
        -(f0[2] * f2[2]), -(f1[2] * f1[2]), -(f1[1] * f1[3]),
        -(f2[2] * f0[1]), -(f0[2] * f2[1]),
    ]


def _system(terms: list[LaurentW]) -> list[list[Fraction]]:
    exps = sorted({e for t in terms for e in t.coeffs})
    return [[t.coeffs.get(e, _ZERO) for t in terms] for e in exps]


def ansatz_nullspace():
    """Dimension of the solution space and ``b_3, b_6..b_10`` through ``b_1, b_2, b_4, b_5``.

    Unknowns are numbered 1..10; relations map a dependent index to
    ``{free index: coefficient}``.
    """
    rows = _system(ansatz_terms())
    basis = nullspace(rows, 10)
    dep, free = [2, 5, 6, 7, 8, 9], [0, 1, 3, 4]
    rel = solve_for(rows, dep, free)
    relations = {d + 1: {f + 1: c for f, c in rel[d].items()} for d in dep}
    return len(basis), relations


def _residual_of(terms, coeffs) -> LaurentW:
    total = LaurentW()
    for t, c in zip(terms, coeffs):
        total = total + t * c
    return total


MU2_RECURRENCE_B = [4, 6, 2, Fraction(97, 136), Fraction(-20, 17), 0, Fraction(3899, 17),
           Fraction(-3899, 34), 8, Fraction(21, 17)]
SECOND_ORDER_B = [2, -6, 2, Fraction(1, 24), Fraction(-1, 10), 2, 25, 12, 0, 0]
FIRST_ORDER_B = [0, 2, 3, Fraction(5, 48), Fraction(-3, 20), 0, 14, -7, 0, 0]


def genus1_form_terms() -> list[LaurentW]:
    return [D_power(2, 1), D_power(2, 0), -D_power(0, 6),
            -(D_power(1, 2) * D_power(1, 1)), -D_power(1, 2), -D_power(1, 3)]


def genus1_form_fit() -> dict:
    """Solve ``(b_1 D + b_2) f_2 = b_3 D^6 f_0 + b_4 (D^2 f_1)(D f_1) + b_5 D^2 f_1 + b_6 D^3 f_1``.

    Returns the one-dimensional solution normalized to ``b_2 = 1``.
    """
    basis = nullspace(_system(genus1_form_terms()), 6)
    if len(basis) != 1:
        raise ValueError(f"expected a one-dimensional solution space, got {len(basis)}")
    v = basis[0]
    if v[1] == 0:
        raise ValueError("solution does not involve f_2")
    v = [c / v[1] for c in v]
    return {"dimension": 1, **{f"b{i + 1}": c for i, c in enumerate(v)}}


def no_linear_recurrence_nullspace() -> list:
    """Solutions of ``(c_1 D^2 + c_2 D + c_3) f_2 = c_4 D^3 f_1 + c_5 D^2 f_1``."""
    terms = [D_power(2, 2), D_power(2, 1), D_power(2, 0), -D_power(1, 3), -D_power(1, 2)]
    return nullspace(_system(terms), 5)


# -- recurrences over mu tables ----------------------------------------------

def _mu2_recurrence_rhs(n, m0, m1, m2):
    total = n * n * (Fraction(97, 136) * n - Fraction(20, 17)) * m1[n]
    for j in range(1, n):
        total += comb(2 * n, 2 * j - 2) * m0[j] * m2[n - j] * j * (n - j) * (8 * n - Fraction(115, 17) * j)
        total += (comb(2 * n, 2 * j) * m1[j] * m1[n - j] * j * (n - j)
                  * (Fraction(11697, 34) * j * (n - j) - Fraction(3899, 68) * n * n))
    return total


def _genus1_form_rhs(n, m1):
    s = sum((j * (n - j) * comb(2 * n, 2 * j) * m1[j] * m1[n - j] for j in range(1, n)), _ZERO)
    return 2 * comb(2 * n + 2, 2) * (Fraction(7 * n ** 3 - 8 * n ** 2, 720) * m1[n] - Fraction(7 * n, 15) * s)


def _x_identity_rows(b, n_max):
    """Both sides of an ansatz identity with coefficients ``b`` as x-series."""
    N = n_max
    m0, m1, m2 = _mu_tables(max(N, 1))
    f0 = [_ZERO] + [m0[n] / factorial(2 * n - 2) for n in range(1, N + 1)]
    f1 = [_ZERO] + [m1[n] / factorial(2 * n) for n in range(1, N + 1)]
    f2 = [_ZERO] + [m2[n] / factorial(2 * n + 2) for n in range(1, N + 1)]
    D = x_D
    mul = lambda a, c: univariate_mul(a, c, N)
    lhs = [b[0] * a + b[1] * c + b[2] * d for a, c, d in zip(D(f2, 2), D(f2, 1), f2)]
    parts = [D(f1, 3), D(f1, 2), mul(D(f0, 2), D(f2, 2)), mul(D(f1, 2), D(f1, 2)),
             mul(D(f1, 1), D(f1, 3)), mul(D(f2, 2), D(f0, 1)), mul(D(f0, 2), D(f2, 1))]
    rhs = [sum((Fraction(bb) * p[n] for bb, p in zip(b[3:], parts)), _ZERO) for n in range(N + 1)]
    return [(n, lhs[n], rhs[n]) for n in range(1, N + 1)]


def recurrence_check(which: str, n_max: int = 12) -> dict:
    """Check a named identity for ``n = 1..n_max``; returns rows and an overall flag.

    ``which`` is one of mu2_recurrence, second_order, first_order,
    genus1_form.  The exact W-polynomial form of each identity is reported
    as ``w_identity``.
    """
    m0, m1, m2 = _mu_tables(max(n_max, 1))
    w_ok = None
    if which == "mu2_recurrence":
        rows = [(n, m2[n], _mu2_recurrence_rhs(n, m0, m1, m2)) for n in range(1, n_max + 1)]
        w_ok = _residual_of(ansatz_terms(), MU2_RECURRENCE_B).is_zero()
    elif which == "second_order":
        rows = _x_identity_rows(SECOND_ORDER_B, n_max)
        w_ok = _residual_of(ansatz_terms(), SECOND_ORDER_B).is_zero()
    elif which == "first_order":
        rows = _x_identity_rows(FIRST_ORDER_B, n_max)
        w_ok = _residual_of(ansatz_terms(), FIRST_ORDER_B).is_zero()
    elif which == "genus1_form":
        rows = [(n, m2[n], _genus1_form_rhs(n, m1)) for n in range(1, n_max + 1)]
        ident = (D_power(2, 0) - (D_power(1, 3) * 7 - D_power(1, 2) * 8) * Fraction(1, 720)
                 + D_power(1, 2) * D_power(1, 1) * Fraction(14, 15))
        w_ok = ident.is_zero()
    else:
        raise ValueError(f"unknown identity {which!r}")
    rows = [{"n": n, "lhs": l, "rhs": r, "equal": l == r} for n, l, r in rows]
    return {"name": which, "rows": rows, "w_identity": w_ok,
            "passed": all(r["equal"] for r in rows) and w_ok is not False}


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "lhs", "rhs", "equal"])
    for r in report["rows"]:
        w.writerow([r["n"], fmt_rational(r["lhs"]), fmt_rational(r["rhs"]), str(r["equal"]).lower()])
    return buf.getvalue()
