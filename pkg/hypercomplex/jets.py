"""
jets.py - arithmetic of the algebra E^n_rho with basis {1, rho, ..., rho^(n-1)}, rho^n = 0.

An element is a truncated complex power series (a "jet"). Multiplication is the
truncated Cauchy product, so the algebra is commutative, associative and every
jet with a zero rho^0 coefficient is nilpotent.

Jets are immutable; every operation returns a fresh value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number
from typing import Any, Sequence

import numpy as np

from hypercomplex.errors import OrderMismatchError, ValidationError


def as_complex(value: Any) -> complex:
    """Coerce to a finite Python complex, rejecting NaN and Inf."""
    try:
        z = complex(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"Not a complex number: {value!r}") from exc
    if not cmath.isfinite(z):
        raise ValidationError(f"Non-finite complex value: {value!r}")
    return z


@dataclass(frozen=True)
class Jet:
    """Element of E^n_rho; coeffs[r] is the coefficient of rho^r."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        values = tuple(as_complex(c) for c in self.coeffs)
        if not values:
            raise ValidationError("A jet needs at least one coefficient (order >= 1).")
        object.__setattr__(self, "coeffs", values)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, order: int) -> Jet:
        _check_order(order)
        return cls((0j,) * order)

    @classmethod
    def constant(cls, value: Any, order: int) -> Jet:
        _check_order(order)
        return cls((value,) + (0j,) * (order - 1))

    @classmethod
    def unit(cls, order: int) -> Jet:
        return cls.constant(1, order)

    @classmethod
    def rho(cls, order: int) -> Jet:
        """The generator rho itself (the zero jet when order == 1)."""
        _check_order(order)
        if order == 1:
            return cls.zero(1)
        return cls((0j, 1 + 0j) + (0j,) * (order - 2))

    def __getitem__(self, r: int) -> complex:
        return self.coeffs[r]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def nilpotent_part(self) -> Jet:
        return Jet((0j,) + self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: Jet) -> Jet:
        return jet_add(self, other)

    def __sub__(self, other: Jet) -> Jet:
        return jet_add(self, jet_scale(-1, other))

    def __neg__(self) -> Jet:
        return jet_scale(-1, self)

    def __mul__(self, other: Jet | Number) -> Jet:
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return jet_scale(other, self)

    def __rmul__(self, other: Number) -> Jet:
        return jet_scale(other, self)

    def __pow__(self, p: int) -> Jet:
        return jet_pow(self, p)


def _check_order(order: int) -> None:
    if not isinstance(order, int) or order < 1:
        raise ValidationError(f"Jet order must be a positive integer, got {order!r}.")


def _check_same_order(a: Jet, b: Jet) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"Jet orders differ: {a.order} vs {b.order}.")


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_same_order(a, b)
    return Jet(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Truncated Cauchy product: terms with i + j >= n are discarded."""
    _check_same_order(a, b)
    product = np.convolve(a.as_array(), b.as_array())[: a.order]
    return Jet(tuple(product.tolist()))


def jet_scale(s: Any, a: Jet) -> Jet:
    factor = as_complex(s)
    return Jet(tuple(factor * c for c in a.coeffs))


def jet_pow(a: Jet, p: int) -> Jet:
    """a**p by repeated squaring; p == 0 gives the unit jet."""
    if not isinstance(p, int) or p < 0:
        raise ValidationError(f"Jet power must be a nonnegative integer, got {p!r}.")
    result = Jet.unit(a.order)
    base = a
    while p:
        if p & 1:
            result = jet_mul(result, base)
        p >>= 1
        if p:
            base = jet_mul(base, base)
    return result


def compose_taylor(derivs: Sequence[Any], zeta: Jet) -> Jet:
    """
    Evaluate F on the jet zeta from the derivative vector of F at zeta's rho^0 term.

    With eta = zeta - zeta[0] (nilpotent), returns sum_j derivs[j] / j! * eta^j,
    the series truncating itself at j = n - 1. The rho^k coefficient of the result
    is the residue of F(t) A_k at t = xi_0.
    """
    n = zeta.order
    if len(derivs) < n:
        raise ValidationError(
            f"compose_taylor needs {n} derivatives for a jet of order {n}, got {len(derivs)}."
        )
    eta = zeta.nilpotent_part()
    result = Jet.zero(n)
    for j in reversed(range(n)):
        result = jet_mul(result, eta) + Jet.constant(as_complex(derivs[j]) / math.factorial(j), n)
    return result


def polynomial_on_jet(coefficients: Sequence[Any], zeta: Jet) -> Jet:
    """Horner evaluation of sum_d c_d zeta^d (ascending coefficients) in jet arithmetic."""
    result = Jet.zero(zeta.order)
    for c in reversed(list(coefficients)):
        result = jet_mul(result, zeta) + Jet.constant(c, zeta.order)
    return result
