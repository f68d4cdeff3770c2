"""Truncated formal power series in ``x`` and the power sums ``p_1, p_2, ...``.

A :class:`PSeries` of order ``N`` keeps the monomials ``p_lambda x^n`` with
``n <= N`` and ``|lambda| <= N``.  Everything is exact over Q.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .foundation import a_coeff, factorial, fmt_rational, partition_key

__all__ = [
    "PSeries", "TruncationError", "ValuationError", "merge_parts",
    "psi_template", "substitute_x", "solve_tree_equation", "psi_at_s",
    "w_series", "univariate_mul", "univariate_exp",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TruncationError(ValueError):
    pass


class ValuationError(ValueError):
    pass


_merge_cache: dict = {}


def merge_parts(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    key = (a, b)
    r = _merge_cache.get(key)
    if r is None:
        r = tuple(sorted(a + b, reverse=True))
        if len(_merge_cache) < 2_000_000:
            _merge_cache[key] = r
    return r


def _remove_part(lam: tuple, k: int) -> tuple:
    i = lam.index(k)
    return lam[:i] + lam[i + 1:]


class PSeries:
    """Sparse truncated series; ``terms`` maps ``(n, lambda)`` to a Fraction."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping | None = None, _trusted: bool = False):
        self.order = int(order)
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            N = self.order
            self.terms = {}
            for (n, lam), c in terms.items():
                lam = tuple(sorted(lam, reverse=True))
                if n <= N and sum(lam) <= N and c != 0:
                    self.terms[(n, lam)] = self.terms.get((n, lam), _ZERO) + Fraction(c)
            self.terms = {k: v for k, v in self.terms.items() if v != 0}

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "PSeries":
        return cls(order, {}, _trusted=True)

    @classmethod
    def one(cls, order: int) -> "PSeries":
        return cls.monomial(order, 0, (), 1)

    @classmethod
    def x(cls, order: int) -> "PSeries":
        return cls.monomial(order, 1, (), 1)

    @classmethod
    def monomial(cls, order: int, n: int, lam: Iterable[int] = (), c=1) -> "PSeries":
        return cls(order, {(n, tuple(lam)): Fraction(c)})

    # -- basic protocol ------------------------------------------------------
    def __repr__(self) -> str:
        return f"PSeries(order={self.order}, terms={len(self.terms)})"

    def __eq__(self, other) -> bool:
        if isinstance(other, PSeries):
            return self.order == other.order and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "PSeries"):
        if self.order != other.order:
            raise TruncationError(f"truncation orders differ: {self.order} vs {other.order}")

    def _coerce(self, other) -> "PSeries":
        if isinstance(other, PSeries):
            self._check(other)
            return other
        return PSeries.monomial(self.order, 0, (), other)

    def __add__(self, other) -> "PSeries":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, _ZERO) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return PSeries(self.order, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "PSeries":
        return PSeries(self.order, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "PSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PSeries":
        return (-self) + other

    def scale(self, c) -> "PSeries":
        c = Fraction(c)
        if c == 0:
            return PSeries.zero(self.order)
        return PSeries(self.order, {k: v * c for k, v in self.terms.items()}, _trusted=True)

    def _by_degree(self):
        rows = [[] for _ in range(self.order + 1)]
        for (n, lam), c in self.terms.items():
            rows[n].append((lam, sum(lam), c))
        return rows

    def __mul__(self, other) -> "PSeries":
        if not isinstance(other, PSeries):
            return self.scale(other)
        self._check(other)
        N = self.order
        if len(other.terms) > len(self.terms):
            a, b = other, self
        else:
            a, b = self, other
        rows = b._by_degree()
        out: dict = {}
        get = out.get
        for (n1, l1), c1 in a.terms.items():
            w1 = sum(l1)
            for n2 in range(N - n1 + 1):
                for l2, w2, c2 in rows[n2]:
                    if w1 + w2 > N:
                        continue
                    key = (n1 + n2, merge_parts(l1, l2))
                    out[key] = get(key, _ZERO) + c1 * c2
        return PSeries(N, {k: v for k, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = PSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def x_valuation(self) -> int:
        """Lowest x-degree present (``order + 1`` for the zero series)."""
        return min((n for n, _ in self.terms), default=self.order + 1)

    def truncate(self, order: int) -> "PSeries":
        if order > self.order:
            raise TruncationError("cannot raise the truncation order of a series")
        return PSeries(order, {k: c for k, c in self.terms.items()
                               if k[0] <= order and sum(k[1]) <= order}, _trusted=True)

    def _reinterpret(self, order: int) -> "PSeries":
        # Same stored terms read at another order; callers guarantee that
        # the missing high-order terms never reach the coefficients they use.
        return PSeries(order, {k: c for k, c in self.terms.items()
                               if k[0] <= order and sum(k[1]) <= order}, _trusted=True)

    # -- transcendental operations -----------------------------------------
    def _require_valuation(self, what: str):
        if self.x_valuation() < 1:
            raise ValuationError(f"{what} requires x-valuation >= 1")

    def geometric_inverse(self) -> "PSeries":
        """``1/(1 - self)``."""
        self._require_valuation("geometric_inverse")
        result = PSeries.one(self.order)
        term = PSeries.one(self.order)
        for _ in range(self.order // max(1, self.x_valuation())):
            term = term * self
            if term.is_zero():
                break
            result = result + term
        return result

    def exp(self) -> "PSeries":
        self._require_valuation("exp")
        result = PSeries.one(self.order)
        term = PSeries.one(self.order)
        for j in range(1, self.order // max(1, self.x_valuation()) + 1):
            term = (term * self).scale(Fraction(1, j))
            if term.is_zero():
                break
            result = result + term
        return result

    def log1p(self) -> "PSeries":
        """``log(1 + self)``."""
        self._require_valuation("log1p")
        result = PSeries.zero(self.order)
        term = PSeries.one(self.order)
        for j in range(1, self.order // max(1, self.x_valuation()) + 1):
            term = term * self
            if term.is_zero():
                break
            result = result + term.scale(Fraction((-1) ** (j + 1), j))
        return result

    def arithmetic(self, op: str, other=None) -> "PSeries":
        """Dispatch by name: add, mul, scale, geometric_inverse, exp, log1p."""
        if op == "add":
            return self + other
        if op == "mul":
            return self * other
        if op == "scale":
            return self.scale(other)
        if op in ("geometric_inverse", "exp", "log1p"):
            return getattr(self, op)()
        raise ValueError(f"unknown operation {op!r}")

    # -- derivatives -------------------------------------------------------
    def x_log_derivative(self) -> "PSeries":
        """``x d/dx``."""
        return PSeries(self.order, {(n, lam): n * c for (n, lam), c in self.terms.items() if n},
                       _trusted=True)

    def p_derivative(self, k: int) -> "PSeries":
        """``d/dp_k``."""
        if k < 1:
            raise ValueError("p_derivative needs k >= 1")
        out: dict = {}
        for (n, lam), c in self.terms.items():
            m = lam.count(k)
            if m:
                key = (n, _remove_part(lam, k))
                out[key] = out.get(key, _ZERO) + m * c
        return PSeries(self.order, out, _trusted=True)

    def derive(self, which: str, k: int | None = None) -> "PSeries":
        if which == "x_log_derivative":
            return self.x_log_derivative()
        if which == "p_derivative":
            return self.p_derivative(k)
        raise ValueError(f"unknown derivative {which!r}")

    def p_multiply(self, lam: Iterable[int], c=1) -> "PSeries":
        """Multiply by the pure p-monomial ``c * p_lam``."""
        lam = tuple(sorted(lam, reverse=True))
        w = sum(lam)
        N = self.order
        c = Fraction(c)
        out: dict = {}
        for (n, l), v in self.terms.items():
            if sum(l) + w <= N:
                key = (n, merge_parts(l, lam))
                out[key] = out.get(key, _ZERO) + v * c
        return PSeries(N, {k: v for k, v in out.items() if v}, _trusted=True)

    def set_p(self, values: Mapping[int, object]) -> "PSeries":
        """Specialize ``p_k -> values[k]`` (missing k map to 0); result has no p."""
        out: dict = {}
        for (n, lam), c in self.terms.items():
            v = c
            for part in lam:
                v = v * Fraction(values.get(part, 0))
                if not v:
                    break
            if v:
                out[(n, ())] = out.get((n, ()), _ZERO) + v
        return PSeries(self.order, {k: v for k, v in out.items() if v}, _trusted=True)

    # -- access ------------------------------------------------------------
    def coefficient(self, n: int, alpha: Iterable[int] = ()) -> Fraction:
        alpha = tuple(sorted(alpha, reverse=True))
        if n > self.order or sum(alpha) > self.order:
            raise TruncationError(f"x^{n} p_{alpha} lies outside truncation order {self.order}")
        return self.terms.get((n, alpha), _ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], partition_key(kv[0][1])))

    def to_json(self) -> str:
        return json.dumps({
            "order": self.order,
            "terms": [{"n": n, "alpha": list(lam), "c": fmt_rational(c)}
                      for (n, lam), c in self.sorted_terms()],
        })

    @classmethod
    def from_json(cls, text: str) -> "PSeries":
        d = json.loads(text)
        return cls(d["order"], {(t["n"], tuple(t["alpha"])): Fraction(t["c"]) for t in d["terms"]})


# -- the functional equations ------------------------------------------------

def psi_template(i: int, N: int) -> dict[int, PSeries]:
    """Coefficients of ``psi_i(x, p) = sum_k k^{i-1} a_k p_k x^k`` as p-series."""
    return {k: PSeries.monomial(N, 0, (k,), Fraction(k) ** (i - 1) * a_coeff(k))
            for k in range(1, N + 1)}


def substitute_x(template: Mapping[int, PSeries], s: PSeries) -> PSeries:
    """``sum_k template[k] * s^k``, the composition of an x-series with ``s``."""
    if s.x_valuation() < 1:
        raise ValuationError("substitute_x needs s with x-valuation >= 1")
    N = s.order
    result = PSeries.zero(N)
    power = PSeries.one(N)
    for k in range(1, N + 1):
        power = power * s
        if power.is_zero():
            break
        c = template.get(k)
        if c is not None and not c.is_zero():
            result = result + c * power
    return result


@lru_cache(maxsize=None)
def solve_tree_equation(N: int) -> PSeries:
    """Solution ``s`` of ``s = x exp(psi_0(s, p))`` to order N by fixed-point iteration."""
    if N < 1:
        raise ValueError("order must be >= 1")
    s = PSeries.x(1)
    # s correct to order j gives x*exp(psi_0(s)) correct to order j + 1.
    for j in range(2, N + 1):
        s = s._reinterpret(j)
        s = PSeries.x(j) * substitute_x(psi_template(0, j), s).exp()
    return s


@lru_cache(maxsize=None)
def psi_at_s(i: int, N: int) -> PSeries:
    """``psi_i(s, p)`` truncated at order N."""
    if i < 0:
        raise ValueError("psi index must be >= 0")
    return substitute_x(psi_template(i, N), solve_tree_equation(N))


# -- univariate helpers (w = x e^w) -------------------------------------------

def univariate_mul(a: list, b: list, N: int) -> list:
    out = [_ZERO] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if x:
            for j in range(N + 1 - i):
                if j < len(b) and b[j]:
                    out[i + j] += x * b[j]
    return out


def univariate_exp(a: list, N: int) -> list:
    if a and a[0]:
        raise ValuationError("exp needs zero constant term")
    result = [_ONE] + [_ZERO] * N
    term = [_ONE] + [_ZERO] * N
    for j in range(1, N + 1):
        term = [c / j for c in univariate_mul(term, a, N)]
        result = [r + t for r, t in zip(result, term)]
    return result


@lru_cache(maxsize=None)
def w_series(N: int) -> tuple[Fraction, ...]:
    """Coefficients ``[x^0..x^N]`` of the tree function ``w = x e^w``."""
    if N < 1:
        raise ValueError("order must be >= 1")
    w = [_ZERO, _ONE] + [_ZERO] * (N - 1)
    for _ in range(N):
        e = univariate_exp(w, N)
        w = [_ZERO] + e[:N]
    return tuple(w)
