import json
from fractions import Fraction

import pytest

from hurwitz.cutjoin import genus2_source
from hurwitz.proofreplay import (
    CTerm, InexactDivision, QSeries, SymbolicC, TranscriptionError, WMultiRational,
    block_image, building_block_series, c_expressions, check_series_zero, compare_routes,
    divide_by_difference, expand_symmetric, image_series_check, load_c_expressions,
    mutate_coefficient, random_controls, route_b_series_check, symmetrize,
    symmetrize_and_verify, symmetrize_explicit, t1_decomposition_check, t1_direct,
    t1_from_S, to_pseries, w_rational_derivative, assemble_cleared_slice, evaluate_series,
    SymPoly, assemble_symbolic, transcription_check,
)
from hurwitz.series import psi_at_s

F = Fraction
C = {c.level: c for c in c_expressions()}


def _has(expr, coeff, factors):
    return any(t.coeff == coeff and sorted(t.factors) == sorted(factors) for t in expr.terms)


def test_block_examples():
    assert building_block_series("M", (0, 0), 6).terms[(2,)] == 1
    assert building_block_series("M", (1, 0), 6).terms[(3,)] == 12
    assert building_block_series("N", (0,), 6).terms[(1, 1)] == 2


def test_M_symmetric():
    for k in range(5):
        for l in range(5):
            assert building_block_series("M", (k, l), 10) == building_block_series("M", (l, k), 10)


def test_blocks_are_homogeneous():
    assert all(len(m) == 1 for m in building_block_series("M", (-2, 3), 8).terms)
    assert all(len(m) == 2 for m in building_block_series("N", (2,), 8).terms)


def test_transcription():
    assert sorted(C) == [1, 2, 3, 4, 5, 6]
    assert [len(C[i].terms) for i in range(1, 7)] == [11, 33, 56, 69, 63, 31]
    assert _has(C[1], -240, [("M", (2, 0))])
    assert _has(C[6], -140, [("psi", (2,))] * 4 + [("N", (0,))])
    for level, c in C.items():
        assert all(t.degree == level for t in c.terms)


def test_manifest_mismatch_is_loud():
    from importlib import resources
    pkg = resources.files("hurwitz") / "data"
    raw = json.loads((pkg / "cleared_slice.json").read_text(encoding="utf-8"))
    with pytest.raises(TranscriptionError):
        load_c_expressions(json.dumps(raw[1:]))
    bad = [dict(raw[0], C=2)] + raw[1:]
    with pytest.raises(TranscriptionError):
        load_c_expressions(json.dumps(bad))


@pytest.mark.parametrize("level", range(1, 7))
def test_route_a(level):
    rep = check_series_zero(C[level])
    assert rep["zero"] and rep["K"] == level + 4


def test_route_a_needs_enough_indices():
    with pytest.raises(ValueError):
        check_series_zero(C[3], K=6)


def test_w_derivatives():
    assert w_rational_derivative(1) == WMultiRational.make({(1,): 1}, (1,))
    assert w_rational_derivative(2) == WMultiRational.make({(1,): 1}, (3,))
    assert w_rational_derivative(3) == WMultiRational.make({(1,): 1, (2,): 2}, (5,))
    for j in range(1, 7):
        assert w_rational_derivative(j).denominator == (2 * j - 1,)


def test_images():
    assert block_image("psi", (1,)) == w_rational_derivative(2)
    assert block_image("psi", (2,)) == w_rational_derivative(3)
    for sym, idx in [("psi", (0,)), ("psi", (5,)), ("M", (-2, 4)), ("M", (2, 0)),
                     ("N", (0,)), ("N", (4,))]:
        assert image_series_check(sym, idx, 7)


def test_divided_difference_exact():
    # (w1^2 - w2^2) / (w1 - w2) = w1 + w2
    assert divide_by_difference({(2, 0): F(1), (0, 2): F(-1)}, 0, 1) == {(1, 0): 1, (0, 1): 1}
    with pytest.raises(InexactDivision):
        divide_by_difference({(2, 0): F(1), (0, 1): F(-1)}, 0, 1)


def test_N_image_is_a_polynomial_over_powers_of_one_minus_w():
    img = block_image("N", (0,))
    assert img.nvars == 2 and img.denominator == (3, 3)
    # symmetric in the two variables
    assert {(e[1], e[0]): c for e, c in img.numerator} == dict(img.numerator)


@pytest.mark.parametrize("level", range(1, 7))
def test_route_b(level):
    assert symmetrize_and_verify(C[level])["zero"]


@pytest.mark.parametrize("level", [1, 2, 3])
def test_explicit_distribution_agrees(level):
    assert symmetrize_explicit(C[level]) == {}


def test_negative_control():
    bad = mutate_coefficient(C[2], 490, 491)
    assert _has(bad, -491, [("psi", (2,)), ("M", (1, 0))])
    assert not check_series_zero(bad)["zero"]
    assert not symmetrize_and_verify(bad)["zero"]
    _, basis = symmetrize(bad)
    assert expand_symmetric(basis, 2) == symmetrize_explicit(bad)
    assert route_b_series_check(bad)


def test_random_controls():
    controls = random_controls(20)
    assert len(controls) == 20
    assert controls == random_controls(20)          # seeded
    for c in controls:
        r = compare_routes(c)
        assert r["agree"] and not r["route_a_zero"]
        assert route_b_series_check(c)


def test_known_zero_combination():
    # M_{1,0} - M_{0,1} vanishes identically on both routes
    z = SymbolicC(1, (CTerm(F(1), (("M", (1, 0)),)), CTerm(F(-1), (("M", (0, 1)),))))
    r = compare_routes(z)
    assert r["route_a_zero"] and r["route_b_zero"]


def test_t1():
    assert t1_decomposition_check(8)
    assert not t1_decomposition_check(8, printed=True)
    assert t1_direct(8) == t1_from_S(8)
    assert building_block_series("T1", (), 6) == t1_direct(6)


def test_q_substitution_recovers_series():
    for m in range(5):
        assert to_pseries(building_block_series("psi", (m,), 6), 6) == psi_at_s(m, 6)
    assert to_pseries(t1_direct(6), 6) == genus2_source(6)


def test_assembled_slice_matches_transcription():
    total = assemble_symbolic()
    for level, c in C.items():
        assert total.homogeneous_part(level) == SymPoly.from_expr(c), level
    # nothing outside the six levels
    assert set(total.terms) == {k for c in C.values() for k in SymPoly.from_expr(c).terms}
    assert all(transcription_check().values())


def test_assembled_slice_vanishes_as_series():
    assert assemble_cleared_slice(10).is_zero()


def test_symbolic_assembly_detects_printed_s4():
    # the uncorrected S_4 leaves a stray -245 M_{0,0} at level 1
    wrong = assemble_symbolic(printed_s4=True)
    assert wrong.homogeneous_part(1) != SymPoly.from_expr(C[1])
    diff = wrong.homogeneous_part(1) - SymPoly.from_expr(C[1])
    assert diff.terms == {(("M", (0, 0)),): Fraction(-245)}


def test_qseries_basics():
    K = 5
    q1 = QSeries.q(K, 1)
    inv = q1.quasi_inverse()
    assert inv * (QSeries.one(K) - q1) == QSeries.one(K)
    assert (q1 ** 6).is_zero()
    with pytest.raises(ValueError):
        QSeries.one(K).quasi_inverse()
