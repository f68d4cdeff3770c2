from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.closedform import (
    mu2_explicit, mu2_unramified, nu_from_multiplicities, psi_monomial_coefficient,
)
from hurwitz.foundation import make_partition, partitions_up_to, theta
from hurwitz.genfun import inverse_power, mu, psi_product


def test_nu_from_multiplicities():
    assert nu_from_multiplicities((0, 2, 1)) == (3, 2, 2)
    assert nu_from_multiplicities(()) == ()


@pytest.mark.parametrize("j", [(0, 1), (0, 0, 1), (0, 2), (0, 1, 1), (0, 3)])
def test_coefficient_formula_against_series(j):
    # (1 - psi_1)^{-1} prod psi_i^{j_i}/j_i!
    N = 6
    nu = nu_from_multiplicities(j)
    series = (psi_product(nu, N) * inverse_power(1, N)).scale(
        Fraction(1, prod(factorial(x) for x in j)))
    for alpha in partitions_up_to(N):
        assert series.coefficient(sum(alpha), alpha) == psi_monomial_coefficient(sum(alpha), alpha, j)


def test_explicit_matches_series():
    for alpha in partitions_up_to(7):
        assert mu2_explicit(alpha) == mu(2, alpha, 7)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
@settings(max_examples=20, deadline=None)
def test_explicit_nonnegative_integral(parts):
    alpha = make_partition(parts)
    v = mu2_explicit(alpha)
    assert v >= 0 and (v * theta(alpha)).denominator == 1
    assert (v > 0) == (sum(alpha) >= 2)


def test_unramified_pins():
    assert [mu2_unramified(n) for n in (1, 2, 3, 4)] == [0, Fraction(1, 2), 364, 206640]
    for n in range(1, 9):
        assert mu2_unramified(n) == mu2_explicit((1,) * n)


def test_unramified_rejects_zero():
    with pytest.raises(ValueError):
        mu2_unramified(0)
