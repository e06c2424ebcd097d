"""Tests for hypercomplex/characteristic.py"""
from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercomplex.characteristic import (
    BasisTriple,
    Mode,
    SpectralParams,
    _residual_via_products,
    cauchy_square,
    char_residual,
    constrained_count_for,
    printed_closed_forms,
    solve_g,
    w_coefficients,
)
from hypercomplex.errors import DegeneratePivotError, ValidationError
from hypercomplex.jets import Jet, jet_pow
from tests.strategies import SWEEP, UNIT_DISK, spectral_params


def max_abs(values) -> float:
    return max(abs(v) for v in values)


class TestSpectralParams:
    def test_isotropic_direction_rejected(self):
        with pytest.raises(DegeneratePivotError, match="isotropic base direction"):
            SpectralParams(1, (1,), (1j,))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0, "k": (), "m": ()},
            {"n": 2, "k": (1,), "m": (0, 0)},
            {"n": 1, "k": (1,), "m": (0,), "branch": 2},
            {"n": 1, "k": (1,), "m": (0,), "mode": "triharmonic"},
            {"n": 2, "k": (1, 0), "m": (0, 0), "free_g": (1,)},
        ],
    )
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(ValidationError):
            SpectralParams(**kwargs)

    def test_mode_accepts_string(self):
        assert SpectralParams(1, (1,), (0,), mode="harmonic").mode is Mode.HARMONIC

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 2), (4, 2), (7, 4)])
    def test_biharmonic_constrained_count(self, n, expected):
        assert constrained_count_for(Mode.BIHARMONIC, n) == expected
        assert constrained_count_for(Mode.HARMONIC, n) == n


class TestWCoefficients:
    def test_isotropic_triple(self):
        assert w_coefficients((1, 0), (0, 0), (1j, 0)).W == (0, 0)

    def test_first_order_term(self):
        assert w_coefficients((1, 1), (0, 0), (1j, 0)).W == (0, 2)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            w_coefficients((1, 0), (0,), (1j, 0))

    @SWEEP
    @given(st.lists(UNIT_DISK, min_size=15, max_size=15))
    def test_matches_jet_squares(self, values):
        k, m, g = values[:5], values[5:10], values[10:]
        expected = jet_pow(Jet(tuple(k)), 2) + jet_pow(Jet(tuple(m)), 2) + jet_pow(Jet(tuple(g)), 2)
        W = w_coefficients(k, m, g).W
        assert max_abs([a - b for a, b in zip(W, expected.coeffs)]) <= 1e-12 * max(1.0, max_abs(W))

    @pytest.mark.parametrize(
        "seq,expected",
        [
            ((2, 3), [4, 12]),
            ((2, 3, 5), [4, 12, 9 + 20]),
            ((1, 1, 1, 1), [1, 2, 3, 4]),
        ],
    )
    def test_cauchy_square_even_odd_split(self, seq, expected):
        assert cauchy_square(seq) == expected


class TestCharResidual:
    def test_unsolved_triple(self):
        t = BasisTriple.from_coefficients((1, 0), (0, 0), (0, 0))
        assert char_residual(t) == [1, 0]

    def test_routes_agree_on_random_triples(self):
        t = BasisTriple.from_coefficients((1, 0.5j, -0.3, 2), (0.2, 1, 0, -1j), (0.7j, 0.1, 1, 0))
        W = w_coefficients(t.k, t.m, t.g).W
        expected = [sum(W[i] * W[r - i] for i in range(r + 1)) for r in range(4)]
        residual = char_residual(t)
        assert max_abs([a - b for a, b in zip(residual, expected)]) <= 1e-12
        assert max_abs([a - b for a, b in zip(residual, _residual_via_products(t.k, t.m, t.g))]) <= 1e-12

    def test_perturbing_g1_breaks_entry_two(self):
        params = SpectralParams(4, (1, 0.3, -0.2, 0.1), (0.5j, 0.2, 0, 1), mode=Mode.BIHARMONIC)
        solved = solve_g(params)
        g = list(solved.g)
        g[1] += 1
        residual = char_residual(solved.with_g(g))
        assert residual[2] == pytest.approx((2 * solved.g[0]) ** 2, rel=1e-12)

    @given(UNIT_DISK)
    def test_entry_one_vanishes_for_any_g1(self, g1):
        t = BasisTriple.from_coefficients((1, 0.4), (0, 0.3j), (1j, g1))
        assert abs(char_residual(t)[1]) <= 1e-15


class TestSolveG:
    def test_one_dimensional(self):
        assert solve_g(SpectralParams(1, (1,), (0,))).g == (1j,)

    def test_two_dimensional_harmonic(self):
        basis = solve_g(SpectralParams(2, (1, 0), (0, 1), mode=Mode.HARMONIC))
        assert basis.g == (1j, 0)
        assert basis.constrained_count == 2

    def test_free_g_beyond_constrained_indices(self):
        params = SpectralParams(4, (1, 0, 0, 0), (0, 0, 0, 0), free_g=(9, 9, 1, 1))
        basis = solve_g(params)
        assert basis.g == (1j, 0, 1, 1)
        assert basis.constrained_count == 2
        assert w_coefficients(basis.k, basis.m, basis.g).W[2] == pytest.approx(2j)
        assert max_abs(char_residual(basis)) == 0

    def test_closed_form_g1_solution(self):
        basis = solve_g(SpectralParams(3, (1, 1, 0), (0, 0, 0)))
        assert basis.g[1] == pytest.approx(1j)

    @SWEEP
    @given(spectral_params())
    def test_residual_vanishes(self, params):
        basis = solve_g(params)
        assert max_abs(char_residual(basis)) <= 1e-10 * basis.scale**4
        assert basis.e1.coeffs == params.k and basis.e2.coeffs == params.m

    @SWEEP
    @given(spectral_params(modes=(Mode.HARMONIC,)))
    def test_harmonic_mode_zeroes_every_w(self, params):
        basis = solve_g(params)
        assert max_abs(w_coefficients(basis.k, basis.m, basis.g).W) <= 1e-10 * basis.scale**2
        assert basis.residual_ok()

    @SWEEP
    @given(spectral_params())
    def test_branch_flip_negates_constrained_g(self, params):
        flipped = SpectralParams(params.n, params.k, params.m, -params.branch, params.mode, params.free_g)
        a, b = solve_g(params), solve_g(flipped)
        for s in range(params.constrained_count):
            assert b.g[s] == pytest.approx(-a.g[s], rel=1e-12, abs=1e-12)

    def test_scaling_is_homogeneous(self):
        base = SpectralParams(3, (1, 0.5, 0.2), (0.3, 0.1j, 0), mode=Mode.HARMONIC)
        scaled = SpectralParams(3, tuple(2 * c for c in base.k), tuple(2 * c for c in base.m), mode=Mode.HARMONIC)
        a, b = solve_g(base), solve_g(scaled)
        assert list(b.g) == pytest.approx([2 * g for g in a.g], rel=1e-12)


class TestPrintedClosedForms:
    def test_g1_disagreement_reported(self):
        report = printed_closed_forms(SpectralParams(3, (1, 1, 0), (0, 0, 0)))
        assert report.printed_g[1] == pytest.approx(0.5j)
        assert report.solved_g[1] == pytest.approx(1j)
        assert report.agreement[1] is False
        assert not report.agrees
        assert report.solved_w1_zero and not report.printed_w1_zero
        assert len(report.printed_residual) == len(report.solved_residual) == 3

    def test_trivial_case_agrees(self):
        report = printed_closed_forms(SpectralParams(3, (1, 0, 0), (0, 0, 0), mode=Mode.HARMONIC))
        assert report.printed_g[1] == 0 and report.solved_g[1] == 0
        assert report.agreement[:2] == (True, True)

    def test_needs_three_dimensions(self):
        with pytest.raises(ValidationError):
            printed_closed_forms(SpectralParams(2, (1, 0), (0, 0)))

    def test_singular_printed_denominator_substituted(self):
        # k_0 = i on the negative branch gives g_0 = -i * sqrt(-1) = 1, where 4(g_0^3 - g_0^4) = 0
        report = printed_closed_forms(SpectralParams(3, (1j, 0, 0), (0, 0, 0), branch=-1))
        assert report.solved_g[0] == pytest.approx(1)
        assert report.printed_g[2] is None
        assert any("denominator" in note for note in report.notes)
