"""The ten acceptance criteria, all with exact (zero tolerance) comparisons.

Each test records one ``criterion N: PASS``/``FAIL`` line; the lines are
printed in the terminal summary under pytest, or directly when this file is
run as a script.
"""
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from hurwitz import closedform, cutjoin, genfun, proofreplay, univariate
from hurwitz.factorize import mu_via_factorizations
from hurwitz.foundation import factorial, partitions_up_to, theta
from hurwitz.series import psi_at_s, solve_tree_equation

RESULTS: dict[int, bool] = {}


def record(n: int, ok: bool):
    RESULTS[n] = bool(ok)
    assert ok, f"criterion {n} failed"


def summary_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}" for n, ok in sorted(RESULTS.items())]


def test_criterion_1_genus2_fit():
    N = 8
    kt = genfun.fit_K(2, cutjoin.hurwitz_table(2 * N + 2, N, max_genus=2), N)
    expected = {(3, (4,)): 5, (3, (3,)): -12, (3, (2,)): 7,
                (4, (3, 2)): 29, (4, (2, 2)): -25, (5, (2, 2, 2)): 28}
    record(1, kt.terms == {k: Fraction(v, 5760) for k, v in expected.items()})


def test_criterion_2_genus3_fit():
    N = 12
    kt = genfun.fit_K(3, cutjoin.hurwitz_table(2 * N + 4, N, max_genus=3), N)
    ok = (kt.terms == genfun.psi_expression(3).terms
          and kt.terms[(5, (7,))] == Fraction(35, 2 ** 3 * factorial(9))
          and kt.terms[(10, (2,) * 6)] == Fraction(245, 20736))
    record(2, ok)


def test_criterion_3_four_way_agreement():
    max_r = 8
    table = cutjoin.hurwitz_table(max_r, 4)
    ok, checked = True, 0
    for alpha in partitions_up_to(4):
        n, m = sum(alpha), len(alpha)
        g = 0
        while n + m + 2 * g - 2 <= max_r:
            rec = table.mu(g, alpha)
            values = [rec, mu_via_factorizations(g, alpha)]
            if g <= 3:
                values.append(genfun.mu(g, alpha, 4))
            if g == 2:
                values.append(closedform.mu2_explicit(alpha))
            ok &= all(v == rec for v in values)
            checked += 1
            g += 1
    ok &= table.mu(2, (1, 1)) == Fraction(1, 2) and table.mu(0, (3,)) == 1
    record(3, ok and checked > 0)


def test_criterion_4_pde_residuals():
    N = 8
    Fs = [genfun.build_F(g, N) for g in range(3)]
    perturbed = Fs[2] + psi_at_s(2, N) * genfun.inverse_power(3, N)
    ok = (cutjoin.genus2_residual(N).is_zero()
          and cutjoin.slice_residual(0, Fs).is_zero()
          and cutjoin.slice_residual(1, Fs).is_zero()
          and not cutjoin.genus2_residual(N, perturbed).is_zero())
    record(4, ok)


def test_criterion_5_nullspaces():
    F = Fraction
    dim, rel = univariate.ansatz_nullspace()
    printed = {
        3: {1: -4, 2: -2, 4: 240, 5: 120},
        6: {1: F(-11, 2), 2: F(-3, 2), 4: -72, 5: -70},
        7: {1: F(47, 4), 2: F(23, 4), 4: -1236, 5: -875},
        8: {1: F(-293, 4), 2: F(-85, 4), 4: -264, 5: -420},
        9: {1: 13, 2: 3, 4: 144, 5: 140},
        10: {1: F(35, 2), 2: F(7, 2), 4: 336, 5: 280},
    }
    fit = univariate.genus1_form_fit()
    ok = (dim == 4 and rel == printed and fit["dimension"] == 1
          and (fit["b6"], fit["b5"], fit["b4"]) == (F(7, 720), F(-8, 720), F(-14, 15)))
    record(5, ok)


def test_criterion_6_recurrences():
    n_max = 12
    ok = all(univariate.recurrence_check(w, n_max)["passed"]
             for w in ("mu2_recurrence", "second_order", "first_order", "genus1_form"))
    unram = [closedform.mu2_unramified(n) for n in range(1, n_max + 1)]
    ok &= unram == [univariate.mu2(n, n_max) for n in range(1, n_max + 1)]
    # the n = 3 value is the recursion's, checked independently here
    ok &= unram[:3] == [0, Fraction(1, 2), cutjoin.hurwitz_table(9, 3).mu(2, (1, 1, 1))] == [0, Fraction(1, 2), 364]
    record(6, ok)


def test_criterion_7_cleared_slice():
    exprs = proofreplay.c_expressions()
    ok = len(exprs) == 6
    for c in exprs:
        a = proofreplay.check_series_zero(c, K=c.level + 4)
        b = proofreplay.symmetrize_and_verify(c)
        ok &= a["zero"] and b["zero"]
    rows = [proofreplay.compare_routes(c) for c in proofreplay.random_controls(20)]
    ok &= len(rows) == 20 and all(not r["route_a_zero"] and not r["route_b_zero"] for r in rows)
    record(7, ok)


def test_criterion_8_derivative_identities():
    res = cutjoin.verify_derivative_identities(8, kmax=4, imax=4)
    record(8, bool(res) and all(res.values()))


def test_criterion_9_single_part():
    ok = all(genfun.mu_single_part(g, n) == genfun.mu(g, (n,), 6)
             for g in (2, 3) for n in range(1, 7))
    table = cutjoin.hurwitz_table(6, 7)
    ok &= all(table.mu(0, (n,)) == Fraction(n) ** (n - 3) for n in range(1, 8))
    record(9, ok)


_DUMP = r"""
import json, sys
from hurwitz import cutjoin, genfun
from hurwitz.series import psi_at_s
print(psi_at_s(2, 5).to_json())
print(genfun.build_F(1, 5).to_json())
print(cutjoin.hurwitz_table(8, 5).to_json())
print(genfun.KTable(2, genfun.psi_expression(2).terms).to_json())
"""


def _dump(seed: str) -> bytes:
    env = {**os.environ, "PYTHONHASHSEED": seed}
    return subprocess.run([sys.executable, "-c", _DUMP], env=env, capture_output=True,
                          check=True).stdout


def _cli(seed: str, *argv) -> bytes:
    env = {**os.environ, "PYTHONHASHSEED": seed}
    return subprocess.run([sys.executable, "-m", "hurwitz.cli", *argv], env=env,
                          capture_output=True, check=True).stdout


def test_criterion_10_properties():
    N = 6
    ok = True
    # weight grading: x^n p_lambda with |lambda| <= n, and |lambda| == n in F_g
    for S in [solve_tree_equation(N)] + [psi_at_s(i, N) for i in range(5)]:
        ok &= all(sum(lam) <= n for (n, lam) in S.terms)
    for g in range(4):
        ok &= all(sum(lam) == n for (n, lam) in genfun.build_F(g, N).terms)
    # theta * mu is a nonnegative integer (a count of tuples)
    table = cutjoin.hurwitz_table(12, 7)
    for (r, alpha), v in table.entries.items():
        tv = theta(alpha) * v
        ok &= tv.denominator == 1 and tv >= 0
    # byte-determinism under different hash seeds
    ok &= _dump("0") == _dump("12345")
    for argv in (["table", "--genus", "2", "--max-n", "5", "--no-cache"],
                 ["table", "--genus", "1", "--max-n", "4", "--format", "csv", "--no-cache"],
                 ["fit", "--genus", "2", "--order", "4"],
                 ["oracle", "--alpha", "2,2", "--r", "6"]):
        ok &= _cli("1", *argv) == _cli("777", *argv)
    record(10, ok)


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    print("\n".join(summary_lines()))
    sys.exit(code)
