from fractions import Fraction
from itertools import permutations
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from hurwitz.foundation import (
    a_alpha, a_coeff, bernoulli, enumerate_partitions, fmt_rational, make_partition,
    matvec, monomial_sym, multiplicities, nullspace, parse_partition, parse_rational,
    partition_key, partitions, partitions_up_to, rank, rref, solve_for, theta,
)

# number of partitions of n, n = 0..12
P = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(13)] == P
    assert len(partitions_up_to(6)) == sum(P[1:7])
    assert partitions_up_to(2, include_empty=True)[0] == ()


def test_partition_order_is_reverse_lex():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert sorted(partitions_up_to(3), key=partition_key) == [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]


def test_constrained_partitions():
    assert enumerate_partitions(6, "no_part_one") == [(6,), (4, 2), (3, 3), (2, 2, 2)]
    assert enumerate_partitions(7, "no_part_one_with_length", 2) == [(5, 2), (4, 3)]
    with pytest.raises(ValueError):
        enumerate_partitions(3, "nonsense")


def test_make_partition_validates():
    assert make_partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        make_partition([2, 0])
    assert parse_partition("2;1;1") == parse_partition("1,2,1") == (2, 1, 1)


def test_theta_and_a():
    assert theta((2, 2, 1)) == 2 * 2 * 2 * 1      # 2^2 2! * 1^1 1!
    assert theta((1, 1, 1)) == 6
    assert a_coeff(1) == 1 and a_coeff(2) == 4 and a_coeff(3) == Fraction(27, 2)
    assert a_alpha((2, 1)) == 4


@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
def test_theta_is_centralizer_order(parts):
    alpha = make_partition(parts)
    n = sum(alpha)
    # n!/theta is the size of the conjugacy class, an integer
    size = Fraction(factorial(n)) / theta(alpha)
    assert size.denominator == 1
    assert sum(multiplicities(alpha).values()) == len(alpha)


def _m_brute(nu, alpha):
    nu = list(nu) + [0] * (len(alpha) - len(nu))
    return sum(prod(a ** e for a, e in zip(alpha, p)) for p in set(permutations(nu)))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3),
       st.lists(st.integers(1, 5), min_size=1, max_size=5))
def test_monomial_sym_matches_brute_force(nu, alpha):
    nu, alpha = make_partition(nu), make_partition(alpha)
    if len(nu) > len(alpha):
        assert monomial_sym(nu, alpha) == 0
    else:
        assert monomial_sym(nu, alpha) == _m_brute(nu, alpha)


def test_monomial_sym_small():
    assert monomial_sym((1,), (3, 2, 1)) == 6
    assert monomial_sym((1, 1), (3, 2, 1)) == 11
    assert monomial_sym((2, 1), (1, 1)) == 2
    assert monomial_sym((), (5, 2)) == 1


def test_bernoulli():
    assert [bernoulli(k) for k in (0, 2, 4, 6, 8)] == [1, Fraction(1, 6), Fraction(-1, 30),
                                                      Fraction(1, 42), Fraction(-1, 30)]
    assert bernoulli(12) == Fraction(-691, 2730)


def test_rref_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    red, piv = rref(rows)
    assert piv == [0, 1]
    assert rank(rows) == 2
    (v,) = nullspace(rows)
    assert v == [-1, -1, 1]
    assert matvec(rows, v) == [0, 0, 0]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_property(rows):
    basis = nullspace(rows, 4)
    assert len(basis) == 4 - rank(rows, 4)
    for v in basis:
        assert all(x == 0 for x in matvec(rows, v))


def test_solve_for():
    # x0 + x1 + x2 = 0, x1 - x2 = 0
    rel = solve_for([[1, 1, 1], [0, 1, -1]], dependent=[0, 1], free=[2])
    assert rel == {0: {2: -2}, 1: {2: 1}}


def test_rational_format_round_trip():
    for q in (Fraction(0), Fraction(-7, 3), Fraction(12)):
        assert parse_rational(fmt_rational(q)) == q
    assert fmt_rational(Fraction(4, 2)) == "2"
