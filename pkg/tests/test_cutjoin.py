from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.cutjoin import (
    HurwitzTable, TableTooSmall, bilinear, cut_join_step, genus_of, genus2_residual,
    hurwitz_table, join_cut, printed_dF1_residual, slice_residual, transpositions_for,
    verify_derivative_identities,
)
from hurwitz.genfun import build_F, inverse_power
from hurwitz.series import psi_at_s

TABLE = hurwitz_table(10, 6)


def test_first_step_by_hand():
    G0 = {(1,): Fraction(1)}
    assert join_cut(G0, 4) == {}
    assert bilinear(G0, G0, 4) == {(2,): Fraction(1)}
    assert cut_join_step([G0], 4) == {(2,): Fraction(1, 2)}


def test_recursion_matches_oracle(oracle_rows):
    for row in oracle_rows:
        assert TABLE.get(row["r"], row["alpha"]) == row["mu"], row


def test_genus_relation():
    assert genus_of(6, (1, 1)) == 2
    assert genus_of(5, (1, 1)) is None
    assert transpositions_for(3, (2, 1)) == 3 + 2 + 4
    for (r, alpha) in TABLE.entries:
        assert genus_of(r, alpha) is not None


def test_integrality_and_sign():
    from hurwitz.foundation import theta
    for (r, alpha), v in TABLE.entries.items():
        assert v > 0
        assert (v * theta(alpha)).denominator == 1


def test_pruned_table_agrees_with_full():
    pruned = hurwitz_table(10, 6, max_genus=1)
    for (r, alpha), v in pruned.entries.items():
        assert TABLE.get(r, alpha) == v
    assert pruned.covers(1, (2, 2)) and not pruned.covers(2, (1, 1))
    with pytest.raises(TableTooSmall):
        pruned.mu(2, (1, 1))
    with pytest.raises(ValueError):
        pruned.to_json()


def test_json_round_trip_and_determinism():
    text = TABLE.to_json()
    back = HurwitzTable.from_json(text)
    assert back.entries == TABLE.entries
    assert back.to_json() == text == hurwitz_table(10, 6).to_json()


@given(st.integers(1, 6), st.integers(0, 10))
@settings(max_examples=30, deadline=None)
def test_extension_is_consistent(n, r):
    small = hurwitz_table(r, n)
    for key, v in small.entries.items():
        assert TABLE.entries[key] == v


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_slices_vanish(g):
    N = 7
    Fs = [build_F(h, N) for h in range(g + 1)]
    assert slice_residual(g, Fs).is_zero()


def test_genus2_residual_and_negative_control():
    N = 7
    assert genus2_residual(N).is_zero()
    perturbed = build_F(2, N) + psi_at_s(2, N) * inverse_power(3, N)
    assert not genus2_residual(N, perturbed).is_zero()


def test_derivative_identities():
    report = verify_derivative_identities(7)
    assert report and all(report.values()), [k for k, v in report.items() if not v]


def test_printed_dF1_numerator_fails_beyond_k1():
    assert printed_dF1_residual(6, 1).is_zero()
    assert all(not printed_dF1_residual(6, k).is_zero() for k in (2, 3, 4))
