"""Hurwitz numbers from the cut-and-join equation, and residual checks of
that equation on the closed-form series.

With ``F = sum_r G_r u^r / r!`` and ``G_r = sum_alpha mu_r(alpha) p_alpha``
(x is implied by the weight of alpha), comparing coefficients of ``u^{r-1}``
gives

    G_r = J(G_{r-1}) + 1/2 sum_{r1 + r2 = r-1} C(r-1, r1) B(G_{r1}, G_{r2}).

The genus of a monomial at level r is ``(r - |alpha| - l(alpha) + 2) / 2``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .foundation import a_coeff, fmt_rational, partition_key, partitions_up_to
from .series import PSeries, merge_parts, psi_at_s, solve_tree_equation

__all__ = [
    "HurwitzTable", "TableTooSmall", "genus_of", "transpositions_for",
    "join_cut", "bilinear", "cut_join_step", "hurwitz_table", "mu_via_recursion",
    "slice_residual", "genus2_residual", "verify_derivative_identities",
    "printed_dF1_residual", "genus2_source",
]

_ZERO = Fraction(0)


class TableTooSmall(ValueError):
    pass


def genus_of(r: int, alpha) -> int | None:
    twice = r - sum(alpha) - len(alpha) + 2
    if twice < 0 or twice % 2:
        return None
    return twice // 2


def transpositions_for(g: int, alpha) -> int:
    return sum(alpha) + len(alpha) + 2 * g - 2


def _remove(lam: tuple, k: int) -> tuple:
    i = lam.index(k)
    return lam[:i] + lam[i + 1:]


def _add(out: dict, key, v):
    r = out.get(key, _ZERO) + v
    if r:
        out[key] = r
    else:
        out.pop(key, None)


def join_cut(G: dict, max_n: int) -> dict:
    """``J(G) = 1/2 [sum ij p_{i+j} d^2G/dp_i dp_j + sum (i+j) p_i p_j dG/dp_{i+j}]``."""
    out: dict = {}
    for lam, c in G.items():
        parts = sorted(set(lam))
        mult = {k: lam.count(k) for k in parts}
        # join: two parts i, j merge into i + j (ordered pairs, hence the 1/2)
        for a, i in enumerate(parts):
            for j in parts[a:]:
                if i == j:
                    if mult[i] < 2:
                        continue
                    ways = mult[i] * (mult[i] - 1)
                    base = _remove(_remove(lam, i), i)
                    coef = Fraction(i * i * ways, 2)
                else:
                    ways = mult[i] * mult[j]
                    base = _remove(_remove(lam, i), j)
                    coef = Fraction(i * j * ways)   # (i,j) and (j,i)
                _add(out, merge_parts(base, (i + j,)), c * coef)
        # cut: a part k splits as (i, k - i) for each ordered i
        for k in parts:
            base = _remove(lam, k)
            for i in range(1, k):
                j = k - i
                _add(out, merge_parts(base, (i, j) if i >= j else (j, i)), c * Fraction(k * mult[k], 2))
    return out


def bilinear(F: dict, G: dict, max_n: int) -> dict:
    """``B(F, G) = sum ij p_{i+j} (dF/dp_i)(dG/dp_j)``, weight-truncated."""
    out: dict = {}
    Gw = [(lam, sum(lam), c, sorted(set(lam))) for lam, c in G.items()]
    for lam1, c1 in F.items():
        w1 = sum(lam1)
        parts1 = sorted(set(lam1))
        for lam2, w2, c2, parts2 in Gw:
            if w1 + w2 > max_n:
                continue
            cc = c1 * c2
            for i in parts1:
                b1 = _remove(lam1, i)
                m1 = i * lam1.count(i)
                for j in parts2:
                    key = merge_parts(merge_parts(b1, _remove(lam2, j)), (i + j,))
                    _add(out, key, cc * (m1 * j * lam2.count(j)))
    return out


def cut_join_step(slices: list[dict], max_n: int, max_genus: int | None = None) -> dict:
    """Next slice ``G_r`` from ``G_0 .. G_{r-1}``."""
    r = len(slices)
    out = dict(join_cut(slices[r - 1], max_n))
    for r1 in range(r):
        r2 = r - 1 - r1
        if r2 < r1:
            break
        Fa, Fb = slices[r1], slices[r2]
        if max_genus is not None:
            Fa, Fb = _genus_split(Fa, r1), _genus_split(Fb, r2)
            term: dict = {}
            for g1, A in Fa.items():
                for g2, B in Fb.items():
                    if g1 + g2 <= max_genus:
                        for k, v in bilinear(A, B, max_n).items():
                            _add(term, k, v)
        else:
            term = bilinear(Fa, Fb, max_n)
        weight = Fraction(comb(r - 1, r1), 2) * (1 if r1 == r2 else 2)
        for k, v in term.items():
            _add(out, k, v * weight)
    out = {k: v for k, v in out.items() if sum(k) <= max_n}
    if max_genus is not None:
        out = {k: v for k, v in out.items() if genus_of(r, k) is not None and genus_of(r, k) <= max_genus}
    return out


def _genus_split(G: dict, r: int) -> dict:
    out: dict = {}
    for lam, c in G.items():
        out.setdefault(genus_of(r, lam), {})[lam] = c
    return out


@dataclass
class HurwitzTable:
    """``mu_r(alpha)`` for ``r <= max_r`` and ``|alpha| <= max_n``.

    When ``max_genus`` is set only genera up to it were computed; those
    entries are exact, higher genera are absent.
    """

    max_r: int
    max_n: int
    entries: dict = field(default_factory=dict)   # (r, alpha) -> Fraction
    max_genus: int | None = None

    def get(self, r: int, alpha) -> Fraction:
        return self.entries.get((r, tuple(alpha)), _ZERO)

    def covers(self, g: int, alpha) -> bool:
        r = transpositions_for(g, alpha)
        return (r <= self.max_r and sum(alpha) <= self.max_n
                and (self.max_genus is None or g <= self.max_genus))

    def mu(self, g: int, alpha) -> Fraction:
        alpha = tuple(sorted(alpha, reverse=True))
        if not self.covers(g, alpha):
            raise TableTooSmall(f"table (max_r={self.max_r}, max_n={self.max_n}, "
                                f"max_genus={self.max_genus}) does not cover g={g}, alpha={alpha}")
        return self.get(transpositions_for(g, alpha), alpha)

    def sorted_entries(self) -> list:
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], partition_key(kv[0][1])))

    def to_json(self) -> str:
        if self.max_genus is not None:
            raise ValueError("only complete tables are serialized")
        return json.dumps({
            "version": 1, "max_r": self.max_r, "max_n": self.max_n,
            "entries": [{"r": r, "alpha": list(a), "mu": fmt_rational(v)}
                        for (r, a), v in self.sorted_entries()],
        })

    @classmethod
    def from_json(cls, text: str) -> "HurwitzTable":
        d = json.loads(text)
        if d.get("version") != 1:
            raise ValueError("unsupported table version")
        return cls(d["max_r"], d["max_n"],
                   {(e["r"], tuple(e["alpha"])): Fraction(e["mu"]) for e in d["entries"]})


def hurwitz_table(max_r: int, max_n: int, max_genus: int | None = None) -> HurwitzTable:
    slices = [{(1,): Fraction(1)}]
    for _ in range(max_r):
        slices.append(cut_join_step(slices, max_n, max_genus))
    entries = {(r, lam): c for r, G in enumerate(slices) for lam, c in G.items() if c}
    return HurwitzTable(max_r, max_n, entries, max_genus)


def mu_via_recursion(g: int, alpha, table: HurwitzTable) -> Fraction:
    return table.mu(g, alpha)


# -- residual checks on the closed-form series -------------------------------

def _sum_ij(N: int, term) -> PSeries:
    total = PSeries.zero(N)
    for i in range(1, N + 1):
        for j in range(1, N + 1 - i):
            t = term(i, j)
            if t is not None:
                total = total + t
    return total


def _euler(F: PSeries) -> PSeries:
    """``x d/dx + sum_i p_i d/dp_i``: multiplies ``p_lam x^n`` by ``n + l(lam)``."""
    return PSeries(F.order, {(n, lam): c * (n + len(lam)) for (n, lam), c in F.terms.items()
                             if n + len(lam)}, _trusted=True)


def _join_op(F: PSeries) -> PSeries:
    """``1/2 sum (i+j) p_i p_j dF/dp_{i+j}``."""
    N = F.order
    return _sum_ij(N, lambda i, j: F.p_derivative(i + j).p_multiply((i, j), Fraction(i + j, 2)))


def _cut_op(F: PSeries) -> PSeries:
    """``1/2 sum ij p_{i+j} d^2F/dp_i dp_j``."""
    N = F.order
    return _sum_ij(N, lambda i, j: F.p_derivative(i).p_derivative(j).p_multiply((i + j,), Fraction(i * j, 2)))


def _bil_op(F: PSeries, G: PSeries) -> PSeries:
    """``1/2 sum ij p_{i+j} dF/dp_i dG/dp_j``."""
    N = F.order
    dF = {i: F.p_derivative(i) for i in range(1, N + 1)}
    dG = dF if F is G else {j: G.p_derivative(j) for j in range(1, N + 1)}
    return _sum_ij(N, lambda i, j: (dF[i] * dG[j]).p_multiply((i + j,), Fraction(i * j, 2))
                   if dF[i].terms and dG[j].terms else None)


def slice_residual(g: int, Fs: list[PSeries]) -> PSeries:
    """Genus-g slice of the cut-and-join equation, LHS minus RHS.

    ``Fs[h]`` is F_h for h <= g.  Zero iff the series satisfy the equation.
    """
    Fg = Fs[g]
    lhs = _euler(Fg) + Fg.scale(2 * g - 2)
    rhs = _join_op(Fg)
    if g >= 1:
        rhs = rhs + _cut_op(Fs[g - 1])
    for g1 in range(g + 1):
        rhs = rhs + _bil_op(Fs[g1], Fs[g - g1])
    return lhs - rhs


def genus2_residual(N: int, F2: PSeries | None = None) -> PSeries:
    """``T_0 F_2 - T_1`` on the truncated series (zero when F_2 is right)."""
    from .genfun import build_F
    F0 = build_F(0, N)
    f = build_F(2, N) if F2 is None else F2
    dF0 = {i: F0.p_derivative(i) for i in range(1, N + 1)}
    df = {j: f.p_derivative(j) for j in range(1, N + 1)}
    T0f = _euler(f) + f.scale(2)
    T0f = T0f - _sum_ij(N, lambda i, j: (dF0[i] * df[j]).p_multiply((i + j,), i * j)
                        if dF0[i].terms and df[j].terms else None)
    T0f = T0f - _join_op(f)
    return T0f - genus2_source(N)


def genus2_source(N: int) -> PSeries:
    """The F_2-free part ``B(F_1, F_1) + cut(F_1)`` of the genus-2 slice."""
    from .genfun import build_F
    F1 = build_F(1, N)
    return _bil_op(F1, F1) + _cut_op(F1)


def verify_derivative_identities(N: int, kmax: int = 4, imax: int = 4) -> dict[str, bool]:
    """Check the closed forms of the s-, psi-, F_0- and F_1-derivatives.

    Keys name the identity and indices; values are pass/fail.
    """
    from .genfun import build_F
    s = solve_tree_equation(N)
    psi = {i: psi_at_s(i, N) for i in range(0, imax + 2)}
    L = psi[1].geometric_inverse()
    F0, F1 = build_F(0, N), build_F(1, N)
    s_pow = {0: PSeries.one(N)}
    for k in range(1, 2 * N + 1):
        s_pow[k] = s_pow[k - 1] * s
    report: dict[str, bool] = {}

    report["tree: s = x exp(psi_0(s))"] = (PSeries.x(N) * psi[0].exp()) == s
    report["x ds/dx"] = s.x_log_derivative() == s * L
    for k in range(1, kmax + 1):
        a = a_coeff(k)
        report[f"ds/dp_{k}"] = s.p_derivative(k) == (s_pow[k + 1] * L).scale(a / k)
    for i in range(0, imax + 1):
        report[f"x dpsi_{i}/dx"] = psi[i].x_log_derivative() == psi[i + 1] * L
        for k in range(1, kmax + 1):
            a = a_coeff(k)
            rhs = s_pow[k].scale(Fraction(k) ** (i - 1) * a) + (psi[i + 1] * s_pow[k] * L).scale(a / k)
            report[f"dpsi_{i}/dp_{k}"] = psi[i].p_derivative(k) == rhs

    sum_r = {k: _sum_ij_free(N, k, s_pow) for k in range(1, kmax + 1)}
    for k in range(1, kmax + 1):
        a = a_coeff(k)
        rhs = s_pow[k].scale(a / k ** 3) - sum_r[k].scale(a / k ** 2)
        report[f"dF0/dp_{k}"] = F0.p_derivative(k) == rhs
    for k in range(1, kmax + 1):
        a = a_coeff(k)
        bracket = L.scale(k - 1) + psi[2] * L * L
        rhs = (s_pow[k] * bracket).scale(a / (24 * k))
        report[f"dF1/dp_{k}"] = F1.p_derivative(k) == rhs
    L2, L3, L4 = L * L, L * L * L, L * L * L * L
    for i in range(1, kmax):
        for j in range(1, kmax):
            pref = Fraction(1, 24) * a_coeff(i) / i * a_coeff(j) / j
            bracket = (L2.scale(i * i + j * j + i * j - i - j)
                       + (psi[2].scale(2 * (i + j) - 1) + psi[3]) * L3
                       + (psi[2] * psi[2] * L4).scale(2))
            rhs = (s_pow[i + j] * bracket).scale(pref)
            lhs = F1.p_derivative(i).p_derivative(j)
            report[f"d2F1/dp_{i}dp_{j}"] = lhs == rhs
    return report


def _sum_ij_free(N: int, k: int, s_pow: dict) -> PSeries:
    """``sum_r a_r p_r s^{k+r} / (k + r)``."""
    total = PSeries.zero(N)
    for r in range(1, N + 1):
        if k + r > N:
            break
        total = total + s_pow[k + r].p_multiply((r,), a_coeff(r) / (k + r))
    return total


def printed_dF1_residual(N: int, k: int) -> PSeries:
    """dF_1/dp_k minus the formula with the printed ``(1 - k)`` numerator."""
    from .genfun import build_F
    s = solve_tree_equation(N)
    L = psi_at_s(1, N).geometric_inverse()
    rhs = (s ** k * (L.scale(1 - k) + psi_at_s(2, N) * L * L)).scale(a_coeff(k) / (24 * k))
    return build_F(1, N).p_derivative(k) - rhs
