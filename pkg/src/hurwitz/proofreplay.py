"""Replay of the genus-2 zero check.

After the substitution ``q_i = s^i p_i`` the genus-2 slice of the
cut-and-join equation, with the closed form plugged in and cleared by
``5760 (1 - psi_1)^7``, is a polynomial in the blocks ``psi_m``, ``M_{k,l}``
and ``N_k``.  Its homogeneous parts ``C_1..C_6`` (shipped as data) must each
vanish.  Two tests:

* route A substitutes truncated q-series for the blocks;
* route B applies the symmetrization map, which sends ``q_a1 .. q_ai`` to
  ``sum_pi x_pi(1)^a1 .. x_pi(i)^ai``, and writes each block's image as a
  rational function of ``w_j = w(x_j)`` with ``w = x e^w``.  The C_i become
  symmetric polynomials that are compared with zero exactly.
"""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import comb, prod

from .foundation import a_coeff, factorial, fmt_rational, partition_key
from .series import PSeries, merge_parts, solve_tree_equation, univariate_mul, w_series

__all__ = [
    "QSeries", "SymbolicC", "CTerm", "WMultiRational",
    "TranscriptionError", "InexactDivision",
    "building_block_series", "c_expressions", "load_c_expressions",
    "evaluate_series", "check_series_zero", "mutate_coefficient",
    "w_rational_derivative", "block_image", "divide_by_difference",
    "symmetrize", "symmetrize_and_verify", "symmetrize_explicit", "expand_symmetric",
    "image_series_check", "route_b_series_check",
    "random_controls", "compare_routes",
    "t1_direct", "t1_from_S", "t1_decomposition_check", "assemble_cleared_slice",
    "SymPoly", "assemble_symbolic", "transcription_check",
    "to_pseries", "proof_report",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

ARITY = {"psi": 1, "M": 1, "N": 2}


class TranscriptionError(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


# -- truncated polynomials in q_1, q_2, ... ---------------------------------

class QSeries:
    """Polynomial in the q_i keeping monomials of index weight ``<= K``.

    Monomials are partitions: ``(3, 1, 1)`` is ``q_3 q_1^2``.
    """

    __slots__ = ("K", "terms")

    def __init__(self, K: int, terms: dict | None = None):
        self.K = K
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items()
                      if c and sum(m) <= K}

    @classmethod
    def one(cls, K: int) -> "QSeries":
        return cls(K, {(): _ONE})

    @classmethod
    def q(cls, K: int, i: int, c=1) -> "QSeries":
        return cls(K, {(i,): Fraction(c)})

    def __repr__(self):
        return f"QSeries(K={self.K}, {len(self.terms)} terms)"

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.K == other.K and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other):
        if self.K != other.K:
            raise ValueError("QSeries truncations differ")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        r = QSeries(self.K)
        r.terms = out
        return r

    def __neg__(self):
        r = QSeries(self.K)
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        r = QSeries(self.K)
        r.terms = {m: v * c for m, v in self.terms.items()} if c else {}
        return r

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._same(other)
        K = self.K
        out: dict = {}
        by_w = sorted(((sum(m), m, c) for m, c in other.terms.items()), key=lambda t: t[0])
        for m1, c1 in self.terms.items():
            room = K - sum(m1)
            for w2, m2, c2 in by_w:
                if w2 > room:
                    break
                m = merge_parts(m1, m2)
                out[m] = out.get(m, _ZERO) + c1 * c2
        r = QSeries(K)
        r.terms = {m: c for m, c in out.items() if c}
        return r

    __rmul__ = scale

    def __pow__(self, n: int):
        r = QSeries.one(self.K)
        for _ in range(n):
            r = r * self
        return r

    def quasi_inverse(self) -> "QSeries":
        """``1 / (1 - self)``; needs a zero constant term."""
        if () in self.terms:
            raise ValueError("quasi_inverse needs a zero constant term")
        total, term = QSeries.one(self.K), QSeries.one(self.K)
        while True:
            term = term * self
            if term.is_zero():
                return total
            total = total + term

    def homogeneous_part(self, d: int) -> "QSeries":
        r = QSeries(self.K)
        r.terms = {m: c for m, c in self.terms.items() if len(m) == d}
        return r

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), partition_key(kv[0])))


def _power(base: int, e: int) -> Fraction:
    return Fraction(base) ** e


@lru_cache(maxsize=None)
def building_block_series(which: str, idx: tuple = (), K: int = 8) -> QSeries:
    """Truncated q-expansion of ``psi_m``, ``M_{k,l}``, ``N_k`` or ``T1``."""
    if K < 2:
        raise ValueError("K must be >= 2")
    idx = tuple(idx)
    a = a_coeff
    if which == "psi":
        (m,) = idx
        return QSeries(K, {(k,): _power(k, m - 1) * a(k) for k in range(1, K + 1)})
    if which == "M":
        k, l = idx
        terms: dict = {}
        for i in range(1, K):
            for j in range(1, K + 1 - i):
                key = (i + j,)
                terms[key] = terms.get(key, _ZERO) + a(i) * a(j) * _power(i, k) * _power(j, l)
        return QSeries(K, terms)
    if which == "N":
        (k,) = idx
        terms = {}
        for i in range(1, K):
            for j in range(1, K + 1 - i):
                key = merge_parts((i,), (j,))
                terms[key] = terms.get(key, _ZERO) + a(i + j) * _power(i + j, k) / 2
                for r in range(1, K + 1 - i - j):
                    key = merge_parts((i + j,), (r,))
                    terms[key] = (terms.get(key, _ZERO)
                                  - a(j) * _power(j, k) * a(i) / i * a(r) / (i + r))
        return QSeries(K, terms)
    if which == "T1":
        return t1_direct(K)
    raise ValueError(f"unknown building block {which!r}")


# -- the transcribed contributions C_1..C_6 ----------------------------------

@dataclass(frozen=True)
class CTerm:
    coeff: Fraction
    factors: tuple      # ((sym, idx), ...)

    @property
    def degree(self) -> int:
        return sum(ARITY[sym] for sym, _ in self.factors)

    def label(self) -> str:
        parts = [f"{sym}{list(idx)}" for sym, idx in self.factors]
        return fmt_rational(self.coeff) + "*" + "*".join(parts)


@dataclass(frozen=True)
class SymbolicC:
    level: int
    terms: tuple        # of CTerm


def _validate(exprs: dict, manifest: dict):
    for level, terms in exprs.items():
        for t in terms:
            for sym, idx in t.factors:
                if sym not in ARITY:
                    raise TranscriptionError(f"unknown symbol {sym!r} in C_{level}")
                if len(idx) != (2 if sym == "M" else 1):
                    raise TranscriptionError(f"bad index {idx} for {sym} in C_{level}")
            if t.degree != level:
                raise TranscriptionError(f"C_{level}: term {t.label()} has degree {t.degree}")
    counts = {str(k): len(v) for k, v in exprs.items()}
    if counts != manifest:
        raise TranscriptionError(f"term counts {counts} differ from manifest {manifest}")


def load_c_expressions(data_text: str | None = None, manifest_text: str | None = None) -> list[SymbolicC]:
    """Parse the transcription and check it against the term-count manifest."""
    pkg = resources.files("hurwitz") / "data"
    if data_text is None:
        data_text = (pkg / "cleared_slice.json").read_text(encoding="utf-8")
    if manifest_text is None:
        manifest_text = (pkg / "cleared_slice_manifest.json").read_text(encoding="utf-8")
    raw = json.loads(data_text)
    manifest = json.loads(manifest_text)["term_counts"]
    exprs: dict[int, list] = {}
    for entry in raw:
        factors = tuple((f["sym"], tuple(f["idx"])) for f in entry["factors"])
        exprs.setdefault(entry["C"], []).append(CTerm(Fraction(entry["coeff"]), factors))
    _validate(exprs, manifest)
    return [SymbolicC(level, tuple(exprs[level])) for level in sorted(exprs)]


@lru_cache(maxsize=1)
def c_expressions() -> tuple[SymbolicC, ...]:
    return tuple(load_c_expressions())


def mutate_coefficient(expr: SymbolicC, old, new) -> SymbolicC:
    """Copy of ``expr`` with the first term whose |coefficient| is ``old`` changed to ``new`` (sign kept)."""
    old, new = Fraction(old), Fraction(new)
    terms = list(expr.terms)
    for n, t in enumerate(terms):
        if abs(t.coeff) == old:
            sign = 1 if t.coeff > 0 else -1
            terms[n] = CTerm(sign * new, t.factors)
            return SymbolicC(expr.level, tuple(terms))
    raise KeyError(f"no coefficient {old} in C_{expr.level}")


# -- route A ------------------------------------------------------------------

def evaluate_series(expr: SymbolicC, K: int) -> QSeries:
    total = QSeries(K)
    for t in expr.terms:
        term = QSeries.one(K).scale(t.coeff)
        for sym, idx in t.factors:
            term = term * building_block_series(sym, idx, K)
        total = total + term
    return total


def check_series_zero(expr: SymbolicC, K: int | None = None) -> dict:
    if K is None:
        K = expr.level + 4
    if K < expr.level + 4:
        raise ValueError(f"K must be >= {expr.level + 4} for C_{expr.level}")
    res = evaluate_series(expr, K)
    first = None
    if not res.is_zero():
        m, c = res.sorted_terms()[0]
        first = {"monomial": list(m), "coefficient": fmt_rational(c)}
    return {"level": expr.level, "route": "A", "K": K, "zero": res.is_zero(),
            "residual_terms": len(res.terms), "first_nonzero": first}


# -- route B: rational functions of w -----------------------------------------

def _padd(out: dict, key, v):
    v = out.get(key, _ZERO) + v
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _padd(out, tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
    return out


def _one_minus_w_power(nvars: int, var: int, e: int) -> dict:
    """``(1 - w_var)^e`` as a polynomial dict."""
    out = {}
    for k in range(e + 1):
        exps = [0] * nvars
        exps[var] = k
        out[tuple(exps)] = Fraction((-1) ** k * comb(e, k))
    return out


@dataclass(frozen=True)
class WMultiRational:
    """``numerator(w_1..w_k) / prod_i (1 - w_i)^{e_i}``."""

    numerator: tuple        # sorted ((exponents, coeff), ...)
    denominator: tuple      # (e_1, ..., e_k)

    @classmethod
    def make(cls, num: dict, den) -> "WMultiRational":
        den = tuple(den)
        if any(e < 0 for e in den):
            raise ValueError("denominator exponents must be >= 0")
        return cls(tuple(sorted((k, v) for k, v in num.items() if v)), den)

    @property
    def nvars(self) -> int:
        return len(self.denominator)

    def num(self) -> dict:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def raised_to(self, den) -> dict:
        """Numerator over the larger denominator ``den``."""
        p = self.num()
        for var, (have, want) in enumerate(zip(self.denominator, den)):
            if want < have:
                raise ValueError("target denominator too small")
            if want > have:
                p = _pmul(p, _one_minus_w_power(self.nvars, var, want - have))
        return p

    def __add__(self, other):
        den = tuple(max(a, b) for a, b in zip(self.denominator, other.denominator))
        out = self.raised_to(den)
        for k, v in other.raised_to(den).items():
            _padd(out, k, v)
        return WMultiRational.make(out, den).reduced()

    def __neg__(self):
        return WMultiRational(tuple((k, -v) for k, v in self.numerator), self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        den = tuple(a + b for a, b in zip(self.denominator, other.denominator))
        return WMultiRational.make(_pmul(self.num(), other.num()), den).reduced()

    def embed(self, nvars: int, positions) -> "WMultiRational":
        """Rename variable ``j`` to ``positions[j]`` inside ``nvars`` variables."""
        num = {}
        for e, c in self.numerator:
            exps = [0] * nvars
            for j, p in enumerate(positions):
                exps[p] = e[j]
            num[tuple(exps)] = c
        den = [0] * nvars
        for j, p in enumerate(positions):
            den[p] = self.denominator[j]
        return WMultiRational.make(num, den)

    def reduced(self) -> "WMultiRational":
        """Cancel factors ``(1 - w_i)`` shared by numerator and denominator."""
        num, den = self.num(), list(self.denominator)
        for var in range(self.nvars):
            while den[var] and num:
                q = _divide_one_minus(num, var)
                if q is None:
                    break
                num = q
                den[var] -= 1
        return WMultiRational.make(num, den)

    def d_log_x(self, var: int = 0) -> "WMultiRational":
        """``x_var d/dx_var``, which is ``w/(1-w) d/dw`` in that variable."""
        e = self.denominator[var]
        out: dict = {}
        # w d/dw(P (1-w)^{-e}) (1-w)^{-1} = w (P'(1-w) + e P) / (1-w)^{e+2}
        for exps, c in self.numerator:
            k = exps[var]
            if k:
                base = list(exps)
                _padd(out, tuple(base), c * k)            # w * P' term: exponent k-1+1
                base[var] = k + 1
                _padd(out, tuple(base), -c * k)
            base = list(exps)
            base[var] = k + 1
            _padd(out, tuple(base), c * e)
        den = list(self.denominator)
        den[var] = e + 2
        return WMultiRational.make(out, den).reduced()


def _divide_one_minus(num: dict, var: int) -> dict | None:
    """``num / (1 - w_var)`` if exact, else None."""
    # Substituting w_var = 1 must give zero.
    rest: dict = {}
    for e, c in num.items():
        key = e[:var] + (0,) + e[var + 1:]
        _padd(rest, key, c)
    if rest:
        return None
    # num = (1 - w) Q  <=>  Q_k = sum_{j <= k} num_j  (in the w_var-degree)
    groups: dict = {}
    for e, c in num.items():
        key = e[:var] + e[var + 1:]
        groups.setdefault(key, {})[e[var]] = c
    out: dict = {}
    for key, coeffs in groups.items():
        acc = _ZERO
        for k in range(max(coeffs)):
            acc += coeffs.get(k, _ZERO)
            if acc:
                out[key[:var] + (k,) + key[var:]] = acc
    return out


def divide_by_difference(num: dict, a: int, b: int) -> dict:
    """Exact quotient ``num / (w_a - w_b)``; raises InexactDivision otherwise."""
    groups: dict = {}
    for e, c in num.items():
        rest = list(e)
        rest[a] = 0
        groups.setdefault(e[a], {})
        _padd(groups[e[a]], tuple(rest), c)
    if not groups:
        return {}
    top = max(groups)

    def shift_b(p: dict) -> dict:
        out = {}
        for e, c in p.items():
            x = list(e)
            x[b] += 1
            out[tuple(x)] = c
        return out

    # Horner division by (x - w_b) in x = w_a.
    quotient: dict = {}
    carry: dict = {}
    for k in range(top, -1, -1):
        coeff = dict(groups.get(k, {}))
        for e, c in carry.items():
            _padd(coeff, e, c)
        if k == 0:
            if coeff:
                raise InexactDivision(f"nonzero remainder dividing by w_{a} - w_{b}")
            break
        for e, c in coeff.items():
            x = list(e)
            x[a] = k - 1
            _padd(quotient, tuple(x), c)
        carry = shift_b(coeff)
    return quotient


@lru_cache(maxsize=None)
def w_rational_derivative(j: int) -> WMultiRational:
    """``(x d/dx)^j w`` as a rational function of ``w``."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return WMultiRational.make({(1,): _ONE}, (0,))
    return w_rational_derivative(j - 1).d_log_x(0)


@lru_cache(maxsize=None)
def block_image(sym: str, idx: tuple) -> WMultiRational:
    """Symmetrization image of a block, in one (psi, M) or two (N) variables."""
    idx = tuple(idx)
    wd = w_rational_derivative
    if sym == "psi":
        return wd(idx[0] + 1)
    if sym == "M":
        return wd(idx[0] + 2) * wd(idx[1] + 2)
    if sym == "N":
        k = idx[0]
        A1, A2 = wd(k + 2).embed(2, (0,)), wd(k + 2).embed(2, (1,))
        B1, B2 = wd(1).embed(2, (0,)), wd(1).embed(2, (1,))
        diff = A1 * B2 - A2 * B1
        quotient = WMultiRational.make(divide_by_difference(diff.num(), 0, 1), diff.denominator)
        return (quotient + A1 * B2 + A2 * B1).reduced()
    raise ValueError(f"unknown building block {sym!r}")


def _cleared(sym: str, idx: tuple, E: int) -> dict:
    """Image multiplied by ``(1 - w)^E`` in each of its variables."""
    img = block_image(sym, idx)
    return img.raised_to((E,) * img.nvars)


def _clearing_exponent(expr: SymbolicC) -> int:
    return max(max(block_image(sym, idx).denominator)
               for t in expr.terms for sym, idx in t.factors)


def symmetrize(expr: SymbolicC, E: int | None = None) -> tuple[int, dict]:
    """``prod_j (1 - w_j)^E`` times the image of ``expr``, in the monomial
    symmetric basis: returns ``(E, {lambda: coefficient})`` where ``lambda`` is
    a sorted exponent tuple of length ``expr.level``.
    """
    if E is None:
        E = _clearing_exponent(expr)
    total: dict = {}
    for t in sorted(expr.terms, key=lambda t: t.label()):
        # Sum over placements of the factors on disjoint variable sets equals
        # (1/prod arity!) * sum over S_i of a fixed placement, and summing
        # a monomial w^e over S_i gives prod(mult(e)!) * m_sort(e).
        states = {(): t.coeff}
        for sym, idx in t.factors:
            poly = _cleared(sym, idx, E)
            new: dict = {}
            for state, v in states.items():
                for e, c in poly.items():
                    key = tuple(sorted(state + e))
                    new[key] = new.get(key, _ZERO) + v * c
            states = new
        n_binary = sum(1 for sym, _ in t.factors if ARITY[sym] == 2)
        for lam, v in states.items():
            _padd(total, lam, v / 2 ** n_binary)
    for lam in list(total):
        total[lam] *= prod(factorial(m) for m in Counter(lam).values())
    return E, {lam: total[lam] for lam in sorted(total) if total[lam]}


def symmetrize_and_verify(expr: SymbolicC) -> dict:
    if expr.level > 6:
        raise ValueError("levels above 6 are not part of the check")
    E, poly = symmetrize(expr)
    first = None
    if poly:
        lam = next(iter(poly))
        first = {"exponents": list(lam), "coefficient": fmt_rational(poly[lam])}
    return {"level": expr.level, "route": "B", "clearing_exponent": E, "zero": not poly,
            "residual_terms": len(poly), "first_nonzero": first}


def _ordered_set_partitions(variables: tuple, sizes: list):
    if not sizes:
        yield ()
        return
    for chosen in combinations(variables, sizes[0]):
        rest = tuple(v for v in variables if v not in chosen)
        for tail in _ordered_set_partitions(rest, sizes[1:]):
            yield (chosen,) + tail


def symmetrize_explicit(expr: SymbolicC, E: int | None = None) -> dict:
    """Same as :func:`symmetrize` but by literally distributing the variables
    over the factors; returns the full polynomial in ``w_1..w_i``.
    """
    if E is None:
        E = _clearing_exponent(expr)
    i = expr.level
    variables = tuple(range(i))
    total: dict = {}
    for t in expr.terms:
        sizes = [ARITY[sym] for sym, _ in t.factors]
        for placement in _ordered_set_partitions(variables, sizes):
            poly = {(0,) * i: t.coeff}
            for (sym, idx), vs in zip(t.factors, placement):
                img = block_image(sym, idx).embed(i, vs)
                den = [0] * i
                for v in vs:
                    den[v] = E
                poly = _pmul(poly, img.raised_to(den))
            for e, c in poly.items():
                _padd(total, e, c)
    return total


def expand_symmetric(basis_poly: dict, nvars: int) -> dict:
    """Monomial-symmetric representation to an explicit polynomial."""
    from itertools import permutations
    out: dict = {}
    for lam, c in basis_poly.items():
        for e in set(permutations(lam)):
            _padd(out, e, c)
    return out


# -- consistency between the routes --------------------------------------------

@lru_cache(maxsize=None)
def _w_power_series(e: int, E: int, K: int) -> tuple:
    """``w^e (1 - w)^{-E}`` expanded in x to degree K."""
    w = list(w_series(K))
    inv = [_ONE] + [_ZERO] * K      # 1/(1 - w) = sum w^k
    term = list(inv)
    for _ in range(K):
        term = univariate_mul(term, w, K)
        inv = [a + b for a, b in zip(inv, term)]
    out = [_ONE] + [_ZERO] * K
    for _ in range(e):
        out = univariate_mul(out, w, K)
    for _ in range(E):
        out = univariate_mul(out, inv, K)
    return tuple(out)


def _rational_coefficient(img: WMultiRational, beta: tuple, K: int) -> Fraction:
    """``[x^beta]`` of the image; one x-variable per w-variable."""
    total = _ZERO
    for exps, c in img.numerator:
        total += c * prod(_w_power_series(e, E, K)[b]
                          for e, E, b in zip(exps, img.denominator, beta))
    return total


def _compositions(total_max: int, parts: int):
    if parts == 0:
        yield ()
        return
    for first in range(1, total_max - parts + 2):
        for rest in _compositions(total_max - first, parts - 1):
            yield (first,) + rest


def _series_image_coefficient(Q: QSeries, beta: tuple) -> Fraction:
    """``[x^beta]`` of the symmetrization of a homogeneous q-polynomial."""
    key = tuple(sorted(beta, reverse=True))
    return Q.terms.get(key, _ZERO) * prod(factorial(m) for m in Counter(beta).values())


def image_series_check(sym: str, idx: tuple, K: int = 8) -> bool:
    """The block's w-image and the symmetrization of its q-series agree up to weight K."""
    img = block_image(sym, idx)
    Q = building_block_series(sym, tuple(idx), K)
    return all(_rational_coefficient(img, beta, K) == _series_image_coefficient(Q, beta)
               for beta in _compositions(K, img.nvars))


def route_b_series_check(expr: SymbolicC, K: int | None = None) -> bool:
    """Route-B output, expanded in x, equals the symmetrized route-A series."""
    if K is None:
        K = expr.level + 4
    E, basis = symmetrize(expr)
    Q = evaluate_series(expr, K)
    i = expr.level
    full = expand_symmetric(basis, i)
    img = WMultiRational.make(full, (E,) * i)
    return all(_rational_coefficient(img, beta, K) == _series_image_coefficient(Q, beta)
               for beta in _compositions(K, i))


_UNARY_POOL = ([("psi", (m,)) for m in range(0, 6)]
               + [("M", (-2, b)) for b in range(0, 5)]
               + [("M", (0, 0)), ("M", (1, 0)), ("M", (1, 1)), ("M", (2, 0))])
_BINARY_POOL = [("N", (k,)) for k in range(0, 5)]


def random_controls(count: int = 20, seed: int = 2024, max_degree: int = 3) -> list[SymbolicC]:
    """Random nonzero homogeneous block polynomials of degree ``<= max_degree``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        degree = rng.randint(1, max_degree)
        acc: dict = {}
        for _ in range(rng.randint(1, 4)):
            factors, left = [], degree
            while left:
                if left >= 2 and rng.random() < 0.3:
                    factors.append(rng.choice(_BINARY_POOL))
                    left -= 2
                else:
                    factors.append(rng.choice(_UNARY_POOL))
                    left -= 1
            key = tuple(sorted(factors))
            acc[key] = acc.get(key, 0) + rng.choice([c for c in range(-9, 10) if c])
        terms = tuple(CTerm(Fraction(c), f) for f, c in sorted(acc.items()) if c)
        if terms:
            out.append(SymbolicC(degree, terms))
    return out


def compare_routes(expr: SymbolicC) -> dict:
    a = check_series_zero(expr)
    b = symmetrize_and_verify(expr)
    return {"level": expr.level, "route_a_zero": a["zero"], "route_b_zero": b["zero"],
            "agree": a["zero"] == b["zero"]}


# -- T1 and the assembled slice -------------------------------------------------

class SymPoly:
    """Polynomial in the formal symbols ``psi_a``, ``M_{a,b}``, ``N_a``.

    Keys are sorted factor tuples as in :class:`CTerm`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_expr(cls, expr: SymbolicC) -> "SymPoly":
        out: dict = {}
        for t in expr.terms:
            _padd(out, tuple(sorted(t.factors)), t.coeff)
        return cls(out)

    def __eq__(self, other):
        return isinstance(other, SymPoly) and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _padd(out, k, v)
        return SymPoly(out)

    def __neg__(self):
        return SymPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _padd(out, tuple(sorted(k1 + k2)), v1 * v2)
        return SymPoly(out)

    def __pow__(self, n: int):
        r = SymPoly({(): _ONE})
        for _ in range(n):
            r = r * self
        return r

    def homogeneous_part(self, d: int) -> "SymPoly":
        return SymPoly({k: v for k, v in self.terms.items()
                        if sum(ARITY[s] for s, _ in k) == d})


class _QRing:
    """Blocks as truncated q-series."""

    def __init__(self, K: int):
        self.K = K

    def block(self, sym, idx):
        return building_block_series(sym, idx, self.K)

    def const(self, c):
        return QSeries.one(self.K).scale(c)


class _SymRing:
    """Blocks as formal symbols."""

    def block(self, sym, idx):
        return SymPoly({((sym, tuple(idx)),): _ONE})

    def const(self, c):
        return SymPoly({(): Fraction(c)})


def _psi(m, K):
    return building_block_series("psi", (m,), K)


@lru_cache(maxsize=None)
def _L(K: int) -> QSeries:
    return _psi(1, K).quasi_inverse()


def t1_direct(K: int) -> QSeries:
    """``B(F_1, F_1) + cut(F_1)`` in the q_i, straight from the derivative formulas."""
    L = _L(K)
    p2, p3 = _psi(2, K), _psi(3, K)
    basis = [L ** 2, p2 * L ** 3, p3 * L ** 3, p2 * p2 * L ** 4]
    total = QSeries(K)
    for n in range(2, K + 1):
        c = [_ZERO] * 4
        for i in range(1, n):
            j = n - i
            w = a_coeff(i) * a_coeff(j) / 2
            c[0] += w * (Fraction((i - 1) * (j - 1), 576) + Fraction(i * i + j * j + i * j - i - j, 24))
            c[1] += w * (Fraction(i + j - 2, 576) + Fraction(2 * (i + j) - 1, 24))
            c[2] += w * Fraction(1, 24)
            c[3] += w * (Fraction(1, 576) + Fraction(2, 24))
        qn = QSeries.q(K, n)
        for ck, b in zip(c, basis):
            if ck:
                total = total + (qn * b).scale(ck)
    return total


def _S(ring, printed: bool = False):
    psi = lambda m: ring.block("psi", (m,))
    M = lambda k, l: ring.block("M", (k, l))
    S2 = M(2, 0).scale(240) + M(1, 1).scale(125) - M(1, 0).scale(250) + M(0, 0).scale(5)
    S3 = psi(2) * (M(1, 0).scale(490) - M(0, 0).scale(130)) + (psi(3) * M(0, 0)).scale(120)
    S4 = M(0, 0).scale(245) if printed else (psi(2) * psi(2) * M(0, 0)).scale(245)
    return S2, S3, S4


def t1_from_S(K: int, printed: bool = False) -> QSeries:
    S2, S3, S4 = _S(_QRing(K), printed)
    L = _L(K)
    return (S2 * L ** 2 + S3 * L ** 3 + S4 * L ** 4).scale(Fraction(1, 5760))


def t1_decomposition_check(K: int = 8, printed: bool = False) -> bool:
    """``5760 T1 (1 - psi_1)^4 == S2 (1 - psi_1)^2 + S3 (1 - psi_1) + S4``."""
    one_minus = QSeries.one(K) - _psi(1, K)
    S2, S3, S4 = _S(_QRing(K), printed)
    lhs = t1_direct(K).scale(5760) * one_minus ** 4
    return lhs == S2 * one_minus ** 2 + S3 * one_minus + S4


def _G2_numerators(ring) -> dict:
    psi = lambda m: ring.block("psi", (m,))
    return {3: psi(4).scale(5) - psi(3).scale(12) + psi(2).scale(7),
            4: (psi(3) * psi(2)).scale(29) - (psi(2) * psi(2)).scale(25),
            5: (psi(2) * psi(2) * psi(2)).scale(28)}


def _R(ring) -> dict:
    """Numerators of ``5760 dG_2/dpsi_m`` over ``(1 - psi_1)^l``."""
    Q = _G2_numerators(ring)
    p2, p3 = ring.block("psi", (2,)), ring.block("psi", (3,))
    R = {(l, 1): Q[l - 1].scale(l - 1) for l in (4, 5, 6)}
    R[(3, 2)] = ring.const(7)
    R[(4, 2)] = p3.scale(29) - p2.scale(50)
    R[(5, 2)] = (p2 * p2).scale(84)
    R[(3, 3)] = ring.const(-12)
    R[(4, 3)] = p2.scale(29)
    R[(3, 4)] = ring.const(5)
    return R


def _assemble(ring, printed_s4: bool = False):
    psi = lambda m: ring.block("psi", (m,))
    M = lambda k, l: ring.block("M", (k, l))
    N = lambda k: ring.block("N", (k,))
    one_minus = ring.const(1) - psi(1)
    pw = {k: one_minus ** k for k in range(8)}
    total = ring.const(0)
    for d, Qd in _G2_numerators(ring).items():
        total = total + (Qd * pw[7 - d]).scale(2)
    for i, Si in zip((2, 3, 4), _S(ring, printed_s4)):
        total = total - Si * pw[7 - i]
    common = ring.const(1) + psi(0) - M(-2, 0) - N(0)
    for (l, m), Rlm in _R(ring).items():
        # psi_{m+1}/(1-psi_1) (1 + psi_0 - M_{-2,0} - N_0) R_{l,m}/(1-psi_1)^l
        total = total + psi(m + 1) * common * Rlm * pw[7 - l - 1]
        total = total + (psi(m) - M(-2, m) - N(m)) * Rlm * pw[7 - l]
    return total


def assemble_cleared_slice(K: int) -> QSeries:
    """``5760 (T_0 G_2 - T_1)(1 - psi_1)^7`` built from S_i, Q_d and R_{l,m}."""
    return _assemble(_QRing(K))


def assemble_symbolic(printed_s4: bool = False) -> SymPoly:
    """The same assembly over formal symbols, for comparison with the data file."""
    return _assemble(_SymRing(), printed_s4)


def transcription_check() -> dict[int, bool]:
    """Level by level: does the shipped C_i equal the symbolic assembly?"""
    total = assemble_symbolic()
    return {c.level: total.homogeneous_part(c.level) == SymPoly.from_expr(c)
            for c in c_expressions()}


def to_pseries(Q: QSeries, N: int) -> PSeries:
    """Substitute ``q_i = s^i p_i``."""
    s = solve_tree_equation(N)
    powers = {0: PSeries.one(N)}
    total = PSeries.zero(N)
    for m, c in Q.sorted_terms():
        w = sum(m)
        if w > N:
            continue
        for k in range(max(powers) + 1, w + 1):
            powers[k] = powers[k - 1] * s
        total = total + powers[w].p_multiply(m, c)
    return total


# -- full report ----------------------------------------------------------------

def proof_report(levels=range(1, 7), route: str = "both", controls: int = 20) -> dict:
    """Every check of the replay; ``report["passed"]`` is the conjunction."""
    if route not in ("a", "b", "both"):
        raise ValueError("route must be a, b or both")
    exprs = {c.level: c for c in c_expressions()}
    checks = []

    def add(name, ok, **extra):
        checks.append({"name": name, "passed": bool(ok), **extra})

    for level in levels:
        if level not in exprs:
            raise ValueError(f"no contribution C_{level}")
        c = exprs[level]
        if route in ("a", "both"):
            r = check_series_zero(c)
            add(f"C_{level} route A (K={r['K']})", r["zero"], detail=r)
        if route in ("b", "both"):
            r = symmetrize_and_verify(c)
            add(f"C_{level} route B", r["zero"], detail=r)

    c2 = mutate_coefficient(exprs[2], 490, 491)
    if route in ("a", "both"):
        add("mutated C_2 (490 -> 491) route A nonzero", not check_series_zero(c2)["zero"])
    if route in ("b", "both"):
        add("mutated C_2 (490 -> 491) route B nonzero", not symmetrize_and_verify(c2)["zero"])
    if route == "both" and controls:
        rows = [compare_routes(c) for c in random_controls(controls)]
        add(f"{controls} random controls: both routes nonzero",
            all(not r["route_a_zero"] and not r["route_b_zero"] for r in rows))
    by_level = transcription_check()
    add("symbolic assembly equals the transcription term by term",
        all(by_level[lv] for lv in levels))
    add("T1 splits into S_2, S_3, S_4 (K=8)", t1_decomposition_check(8))
    return {"suite": "proof", "route": route, "levels": list(levels), "checks": checks,
            "passed": all(ch["passed"] for ch in checks)}
