from fractions import Fraction

import pytest

from hurwitz.cutjoin import hurwitz_table
from hurwitz.univariate import (
    D_power, LaurentW, ansatz_nullspace, degree_span, f_closed_form, genus1_form_fit,
    mu0, mu1, mu2, no_linear_recurrence_nullspace, recurrence_check, report_csv,
    specialize_f, to_x_series, x_D,
)

F = Fraction


def test_laurent_arithmetic_and_D():
    W = LaurentW.W
    f = W(2) - W(1)                     # W(W-1)
    assert (f * W(-1)) == W(1) - 1
    # D W = W^2 (W - 1)
    assert W(1).D() == W(3) - W(2)
    assert degree_span(W(3) - W(-2) * 5) == (-2, 3)


def test_D_matches_x_derivative():
    N = 7
    for g, r in [(2, 0), (2, 1), (1, 2), (0, 3), (3, 0)]:
        assert to_x_series(D_power(g, r).D(), N) == x_D(to_x_series(D_power(g, r), N))


def test_degree_spans():
    assert degree_span(D_power(0, 1)) == (-2, 0)
    assert degree_span(D_power(0, 2)) == (-1, 0)
    assert degree_span(D_power(0, 3)) == (0, 1)
    assert degree_span(D_power(1, 1)) == (0, 2)
    for r in range(4, 8):
        assert degree_span(D_power(0, r)) == (r - 2, 2 * r - 5)
    for r in range(2, 6):
        assert degree_span(D_power(1, r)) == (r, 2 * r)
    for r in range(0, 5):
        assert degree_span(D_power(2, r)) == (r + 2, 2 * r + 5)


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_two_routes_to_f(g):
    assert list(specialize_f(g, 8)) == f_closed_form(g, 8)


def test_mu_tables_against_recursion():
    table = hurwitz_table(8 + 1 + 2, 8)      # (1^n) with r = 2n + 2g - 2
    for n in range(1, 5):
        assert mu0(n) == table.mu(0, (1,) * n)
        assert mu1(n) == table.mu(1, (1,) * n)
        assert mu2(n) == table.mu(2, (1,) * n)
    assert [mu2(n) for n in (1, 2, 3)] == [0, F(1, 2), 364]


def test_nullspace_relations():
    dim, rel = ansatz_nullspace()
    assert dim == 4
    assert rel == {
        3: {1: -4, 2: -2, 4: 240, 5: 120},
        6: {1: F(-11, 2), 2: F(-3, 2), 4: -72, 5: -70},
        7: {1: F(47, 4), 2: F(23, 4), 4: -1236, 5: -875},
        8: {1: F(-293, 4), 2: F(-85, 4), 4: -264, 5: -420},
        9: {1: 13, 2: 3, 4: 144, 5: 140},
        10: {1: F(35, 2), 2: F(7, 2), 4: 336, 5: 280},
    }


def test_genus1_form_is_unique():
    fit = genus1_form_fit()
    assert fit["dimension"] == 1
    assert (fit["b1"], fit["b2"], fit["b3"]) == (0, 1, 0)
    assert (fit["b6"], fit["b5"], fit["b4"]) == (F(7, 720), F(-8, 720), F(-14, 15))


def test_no_linear_recurrence():
    assert no_linear_recurrence_nullspace() == []


@pytest.mark.parametrize("which", ["mu2_recurrence", "second_order", "first_order", "genus1_form"])
def test_recurrences(which):
    rep = recurrence_check(which, 12)
    assert rep["passed"] and rep["w_identity"]
    assert [r["n"] for r in rep["rows"]] == list(range(1, 13))


def test_recurrence_rejects_unknown():
    with pytest.raises(ValueError):
        recurrence_check("nope")


def test_report_csv():
    text = report_csv(recurrence_check("genus1_form", 3))
    assert text.splitlines()[0] == "n,lhs,rhs,equal"
    assert text.count("\n") == 4
