"""Tests for hypercomplex/holo.py"""
from __future__ import annotations

import cmath
import math

import pytest

from hypercomplex import holo
from hypercomplex.errors import ConvergenceError, DomainError, ValidationError
from hypercomplex.holo import Cos, Exp, Polynomial, PowerSeries, Sin, from_record

GEOMETRIC = PowerSeries(center=0, coefficients=(1,) * 200, radius=1.0)

FUNCTIONS = [
    Polynomial((1, -2, 0.5j, 3, 0.25)),
    Exp(1.5 - 0.5j),
    Sin(0.7 + 0.2j),
    Cos(-1.1),
    PowerSeries(center=0, coefficients=tuple(1 / math.factorial(m) for m in range(40)), radius=math.inf),
]


class TestDerivatives:
    def test_cubic(self):
        assert holo.derivatives(Polynomial((0, 0, 0, 1)), 2, 5) == [8, 12, 12, 6, 0]

    def test_exp_at_zero(self):
        assert holo.derivatives(Exp(1), 0, 4) == [1, 1, 1, 1]

    def test_geometric_series_matches_closed_form(self):
        values = holo.derivatives(GEOMETRIC, 0.5, 3)
        expected = [math.factorial(j) * (1 - 0.5) ** -(j + 1) for j in range(3)]
        assert values == pytest.approx(expected, rel=1e-12)
        assert values == pytest.approx([2, 4, 16], rel=1e-12)

    @pytest.mark.parametrize("f", FUNCTIONS, ids=lambda f: f.kind)
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_matches_central_difference_of_previous_derivative(self, f, j):
        z0, h = 0.3 - 0.2j, 1e-5
        exact = f.derivatives(z0, j + 1)[j]
        previous = lambda z: f.derivatives(z, j)[j - 1]  # noqa: E731
        estimate = (previous(z0 + h) - previous(z0 - h)) / (2 * h)
        assert abs(estimate - exact) <= 1e-6 * max(1.0, abs(exact))

    def test_polynomial_derivatives_vanish_past_degree(self):
        f = Polynomial((3, 1j, -2, 5))
        assert f.derivatives(1.5 + 2j, 9)[4:] == [0] * 5

    @pytest.mark.parametrize("f", [Sin(0.8 + 0.1j), Cos(1.3j)], ids=["sin", "cos"])
    def test_four_cycle(self, f):
        values = f.derivatives(0.4 + 0.1j, 8)
        for j in range(4):
            assert values[j + 4] == pytest.approx(f.scale**4 * values[j], rel=1e-12)

    def test_outside_disk_is_domain_error(self):
        with pytest.raises(DomainError):
            GEOMETRIC.derivatives(2, 1)

    def test_count_must_be_positive(self):
        with pytest.raises(ValidationError):
            Exp().derivatives(0, 0)

    def test_series_without_convergence_raises(self, monkeypatch):
        monkeypatch.setattr(holo, "SERIES_MAX_TERMS", 50)
        slow = PowerSeries(center=0, coefficients=(1,) * 500, radius=1.0)
        with pytest.raises(ConvergenceError):
            slow.derivatives(0.999, 1)

    def test_truncated_series_raises_instead_of_returning_partial_sum(self):
        with pytest.raises(ConvergenceError, match="run out"):
            GEOMETRIC.derivatives(0.999, 1)

    def test_derivative_beyond_coefficients_raises(self):
        with pytest.raises(ConvergenceError):
            PowerSeries(center=0, coefficients=(1, 2), radius=1.0).derivatives(0.1, 3)

    def test_series_at_center_is_exact(self):
        assert GEOMETRIC.derivatives(0, 3) == [1, 1, 2]

    def test_one_tiny_coefficient_does_not_stop_the_sum(self):
        f = PowerSeries(center=0, coefficients=(1, 1e-20) + (1,) * 198, radius=1.0)
        # 1 / (1 - w) with the w term removed
        assert f(0.5) == pytest.approx(1.5, rel=1e-12)

    @pytest.mark.parametrize(
        "f,z0",
        [(Exp(), 800), (Exp(1000), 0.7), (Sin(), 1000j), (Cos(2), 600j)],
        ids=["exp-overflow", "exp-scaled-derivative", "sin", "cos"],
    )
    def test_overflow_is_domain_error(self, f, z0):
        with pytest.raises(DomainError, match="xi_0"):
            f.derivatives(z0, 3)

    def test_call_is_value(self):
        assert Exp(1j)(cmath.pi) == pytest.approx(-1)


class TestInDomain:
    def test_entire(self):
        assert holo.in_domain(Exp(), 1e6 + 1e6j)

    def test_outside_disk(self):
        assert not holo.in_domain(GEOMETRIC, 2)

    def test_inside_disk_near_edge(self):
        assert holo.in_domain(GEOMETRIC, 0.999)


class TestConstruction:
    def test_trailing_zeros_normalized(self):
        assert Polynomial((1, 2, 0, 0)).coefficients == (1, 2)
        assert Polynomial((0, 0)).coefficients == (0,)

    def test_empty_polynomial_rejected(self):
        with pytest.raises(ValidationError):
            Polynomial(())

    @pytest.mark.parametrize("radius", [0, -1, "wide"])
    def test_bad_radius_rejected(self, radius):
        with pytest.raises(ValidationError):
            PowerSeries(center=0, coefficients=(1,), radius=radius)


class TestFromRecord:
    @pytest.mark.parametrize("f", FUNCTIONS[:4] + [GEOMETRIC], ids=lambda f: f.kind)
    def test_round_trip(self, f):
        assert from_record(f.to_record()) == f

    def test_plain_numbers_accepted(self):
        assert from_record({"kind": "polynomial", "coefficients": [0, 1]}) == Polynomial((0, 1))

    def test_default_scale(self):
        assert from_record({"kind": "exp"}) == Exp(1)

    @pytest.mark.parametrize(
        "record",
        [
            {"kind": "log"},
            {"coefficients": [1]},
            {"kind": "exp", "scale": 1, "radius": 2},
            {"kind": "polynomial"},
            {"kind": "power_series", "coefficients": [1]},
            {"kind": "sin", "scale": True},
        ],
    )
    def test_invalid_records_rejected(self, record):
        with pytest.raises(ValidationError):
            from_record(record)
