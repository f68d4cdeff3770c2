from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import assume, given, settings, strategies as st

from hurwitz.factorize import (
    CapExceeded, canonical_permutation, class_size_by_orbits, compose,
    count_all_factorizations, count_transitive_dfs, count_transitive_factorizations,
    cycle_type, mu_via_factorizations, transpositions,
)
from hurwitz.foundation import make_partition, theta


def test_canonical_permutation():
    p = canonical_permutation((3, 1))
    assert p == (1, 2, 0, 3)
    assert cycle_type(p) == (3, 1)


def test_transpositions():
    ts = transpositions(4)
    assert len(ts) == comb(4, 2)
    assert all(compose(t, t) == tuple(range(4)) for t in ts)


def test_frozen_counts():
    assert count_transitive_factorizations((1, 1), 6) == 1
    assert count_transitive_factorizations((3,), 2) == 3
    assert count_transitive_factorizations((1, 1, 1), 2) == 0
    # Cayley: n^{n-2} minimal factorizations of an n-cycle
    for n in range(1, 7):
        assert count_transitive_factorizations((n,), n - 1) == n ** (n - 2)


@pytest.mark.parametrize("alpha,r", [((2, 1), 3), ((1, 1, 1), 4), ((2, 2), 4), ((3, 1), 3),
                                     ((2, 1, 1), 5), ((1, 1, 1, 1), 6), ((4,), 5)])
def test_sieve_matches_enumeration(alpha, r):
    assert count_transitive_factorizations(alpha, r) == count_transitive_dfs(alpha, r)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 4))
@settings(max_examples=25, deadline=None)
def test_count_independent_of_representative(parts, r):
    alpha = make_partition(parts)
    n = sum(alpha)
    assume(n <= 7)
    # conjugate the canonical representative by a cyclic shift
    sigma = canonical_permutation(alpha)
    shift = tuple((i + 1) % n for i in range(n))
    inv = tuple((i - 1) % n for i in range(n))
    other = compose(compose(shift, sigma), inv)
    assert cycle_type(other) == alpha
    assert count_all_factorizations(alpha, r, sigma=other) == count_all_factorizations(alpha, r)


def test_class_sizes():
    for alpha in [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1), (4,)]:
        assert class_size_by_orbits(alpha) * theta(alpha) == factorial(4)


def test_genus_zero_unramified():
    # (2n-2)! n^{n-3} / n! for alpha = 1^n
    for n in range(1, 6):
        assert mu_via_factorizations(0, (1,) * n) == factorial(2 * n - 2) * Fraction(n) ** (n - 3) / factorial(n)


def test_cap():
    with pytest.raises(CapExceeded):
        count_transitive_factorizations((1,) * 9, 2)
    with pytest.raises(CapExceeded):
        mu_via_factorizations(0, (5, 4))
