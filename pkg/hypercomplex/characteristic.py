"""
characteristic.py - solve (e1^2 + e2^2 + e3^2)^2 = 0 in E^n_rho for the g_r.

k_r and m_r are free; g_0 = branch * i * sqrt(k_0^2 + m_0^2) and each further
constrained g_s comes from a linear equation with pivot 2 g_0.

Writing W for the rho-coefficients of e1^2 + e2^2 + e3^2, the characteristic
equation says the truncated Cauchy square of W vanishes. Once W_0 = 0 that
square starts at index 2 * (lowest nonzero W index), so:

  Harmonic mode    W_s = 0 for every s < n (e1^2 + e2^2 + e3^2 = 0 outright)
  Biharmonic mode  W_s = 0 only for s < ceil(n / 2); the remaining g_s are free
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from hypercomplex.errors import DegeneratePivotError, ValidationError, VerificationError
from hypercomplex.jets import Jet, as_complex

logger = logging.getLogger(__name__)

PIVOT_RTOL = 1e-12
RESIDUAL_RTOL = 1e-10
ROUTE_RTOL = 1e-12
AGREEMENT_RTOL = 1e-10


class Mode(str, Enum):
    HARMONIC = "harmonic"
    BIHARMONIC = "biharmonic"


def constrained_count_for(mode: Mode, n: int) -> int:
    """Number of leading g indices fixed by equations."""
    return n if Mode(mode) is Mode.HARMONIC else (n + 1) // 2


def _complex_tuple(values: Sequence[Any], name: str) -> tuple[complex, ...]:
    try:
        return tuple(as_complex(v) for v in values)
    except TypeError as exc:
        raise ValidationError(f"{name} must be a sequence of complex numbers.") from exc


@dataclass(frozen=True)
class SpectralParams:
    """Free data of a basis triple: k_r, m_r, the sign of g_0, the mode and free g overrides."""

    n: int
    k: tuple[complex, ...]
    m: tuple[complex, ...]
    branch: int = 1
    mode: Mode = Mode.BIHARMONIC
    free_g: tuple[complex, ...] | None = None

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"algebra dimension n must be a positive integer, got {self.n!r}.")
        k = _complex_tuple(self.k, "k")
        m = _complex_tuple(self.m, "m")
        if len(k) != self.n or len(m) != self.n:
            raise ValidationError(
                f"k and m must both have n = {self.n} entries, got {len(k)} and {len(m)}."
            )
        if self.branch not in (1, -1):
            raise ValidationError(f"branch must be +1 or -1, got {self.branch!r}.")
        try:
            mode = Mode(self.mode)
        except ValueError as exc:
            raise ValidationError(f"mode must be 'harmonic' or 'biharmonic', got {self.mode!r}.") from exc
        free_g = None
        if self.free_g is not None:
            free_g = _complex_tuple(self.free_g, "free_g")
            if len(free_g) != self.n:
                raise ValidationError(f"free_g must have n = {self.n} entries, got {len(free_g)}.")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "free_g", free_g)

        pivot = self.pivot
        if abs(pivot) <= PIVOT_RTOL * max(abs(k[0]) ** 2, abs(m[0]) ** 2, 1.0):
            raise DegeneratePivotError(
                f"isotropic base direction: k_0^2 + m_0^2 = {pivot} vanishes, so g_0 = 0 "
                "and the linear equations for g_s are singular."
            )

    @property
    def pivot(self) -> complex:
        return self.k[0] ** 2 + self.m[0] ** 2

    @property
    def constrained_count(self) -> int:
        return constrained_count_for(self.mode, self.n)


@dataclass(frozen=True)
class BasisTriple:
    """Basis vectors e1 = sum k_r rho^r, e2 = sum m_r rho^r, e3 = sum g_r rho^r."""

    e1: Jet
    e2: Jet
    e3: Jet
    constrained_count: int = 0

    def __post_init__(self) -> None:
        if not self.e1.order == self.e2.order == self.e3.order:
            raise ValidationError(
                f"basis vectors must share one order, got {self.e1.order}, {self.e2.order}, {self.e3.order}."
            )
        if not 0 <= self.constrained_count <= self.e1.order:
            raise ValidationError(f"constrained_count out of range: {self.constrained_count}.")

    @classmethod
    def from_coefficients(
        cls,
        k: Sequence[Any],
        m: Sequence[Any],
        g: Sequence[Any],
        constrained_count: int = 0,
    ) -> BasisTriple:
        return cls(Jet(tuple(k)), Jet(tuple(m)), Jet(tuple(g)), constrained_count)

    @property
    def n(self) -> int:
        return self.e1.order

    @property
    def k(self) -> tuple[complex, ...]:
        return self.e1.coeffs

    @property
    def m(self) -> tuple[complex, ...]:
        return self.e2.coeffs

    @property
    def g(self) -> tuple[complex, ...]:
        return self.e3.coeffs

    @property
    def scale(self) -> float:
        return max([1.0] + [abs(c) for c in self.k + self.m + self.g])

    def with_g(self, g: Sequence[Any], constrained_count: int | None = None) -> BasisTriple:
        count = self.constrained_count if constrained_count is None else constrained_count
        return BasisTriple(self.e1, self.e2, Jet(tuple(g)), count)

    def residual_ok(self) -> bool:
        residual = char_residual(self)
        return max(abs(r) for r in residual) <= RESIDUAL_RTOL * self.scale**4


@dataclass(frozen=True)
class WSequence:
    """rho-coefficients of e1^2 + e2^2 + e3^2."""

    W: tuple[complex, ...]

    def lowest_nonzero(self, tol: float = 0.0) -> int | None:
        return next((r for r, w in enumerate(self.W) if abs(w) > tol), None)


def _truncated_convolve(a: Sequence[complex], b: Sequence[complex]) -> list[complex]:
    n = len(a)
    return np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))[:n].tolist()


def cauchy_square(seq: Sequence[Any]) -> list[complex]:
    """
    B_r(a_0, ..., a_r) with the even/odd split written out term by term:

      r even: a_{r/2}^2 + 2 (a_0 a_r + a_1 a_{r-1} + ... + a_{r/2-1} a_{r/2+1})
      r odd:  2 (a_0 a_r + a_1 a_{r-1} + ... + a_{(r-1)/2} a_{(r+1)/2})
    """
    a = [as_complex(x) for x in seq]
    out = []
    for r in range(len(a)):
        cross = sum((a[i] * a[r - i] for i in range((r + 1) // 2)), 0j)
        total = 2 * cross
        if r % 2 == 0:
            total += a[r // 2] ** 2
        out.append(total)
    return out


def w_coefficients(k: Sequence[Any], m: Sequence[Any], g: Sequence[Any]) -> WSequence:
    if not len(k) == len(m) == len(g):
        raise ValidationError(f"k, m, g lengths differ: {len(k)}, {len(m)}, {len(g)}.")
    squares = [_truncated_convolve(v, v) for v in (k, m, g)]
    return WSequence(tuple(sum(parts) for parts in zip(*squares)))


def _residual_via_products(k: Sequence[complex], m: Sequence[complex], g: Sequence[complex]) -> list[complex]:
    """G_r + H_r + M_r + 2P_r + 2R_r + 2S_r, built from the B/C/D coefficient sequences."""
    B, C, D = cauchy_square(k), cauchy_square(m), cauchy_square(g)
    G, H, M = cauchy_square(B), cauchy_square(C), cauchy_square(D)
    P = _truncated_convolve(B, C)
    R = _truncated_convolve(B, D)
    S = _truncated_convolve(C, D)
    return [G[r] + H[r] + M[r] + 2 * (P[r] + R[r] + S[r]) for r in range(len(k))]


def char_residual(t: BasisTriple) -> list[complex]:
    """
    rho-coefficients of (e1^2 + e2^2 + e3^2)^2 in E^n_rho.

    Computed as the Cauchy square of W and cross-checked against the expanded
    G/H/M/P/R/S system; the two must agree or VerificationError is raised.
    """
    W = w_coefficients(t.k, t.m, t.g).W
    via_w = _truncated_convolve(W, W)
    via_products = _residual_via_products(t.k, t.m, t.g)
    tolerance = ROUTE_RTOL * t.scale**4 * t.n**2
    for r, (a, b) in enumerate(zip(via_w, via_products)):
        if abs(a - b) > tolerance:
            raise VerificationError(
                f"char_residual routes disagree at r={r}: W-square {a} vs expanded system {b}."
            )
    return via_w


def solve_g(p: SpectralParams) -> BasisTriple:
    """Solve for g given the free data; constrained indices per p.mode, the rest from free_g."""
    n = p.n
    count = p.constrained_count
    free = p.free_g or (0j,) * n
    g0 = p.branch * 1j * cmath.sqrt(p.pivot)
    g = [g0] + [0j] * (n - 1)
    for s in range(1, n):
        if s < count:
            K_s = sum((p.k[i] * p.k[s - i] for i in range(s + 1)), 0j)
            M_s = sum((p.m[i] * p.m[s - i] for i in range(s + 1)), 0j)
            middle = sum((g[i] * g[s - i] for i in range(1, s)), 0j)
            g[s] = -(K_s + M_s + middle) / (2 * g0)
        else:
            g[s] = free[s]

    triple = BasisTriple.from_coefficients(p.k, p.m, g, count)
    if not triple.residual_ok():
        raise VerificationError(f"solved basis fails the characteristic equation: {char_residual(triple)}")
    logger.debug("solve_g n=%d mode=%s branch=%+d: g=%s", n, p.mode.value, p.branch, g)
    return triple


@dataclass(frozen=True)
class ClosedFormReport:
    """Printed closed forms for g_1, g_2 side by side with the W-based solve. Diagnostic only."""

    params: SpectralParams
    printed_g: tuple[complex | None, ...]
    solved_g: tuple[complex, ...]
    printed_triple: BasisTriple
    solved_triple: BasisTriple
    printed_residual: tuple[complex, ...]
    solved_residual: tuple[complex, ...]
    printed_w1_zero: bool
    solved_w1_zero: bool
    agreement: tuple[bool, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def agrees(self) -> bool:
        return all(self.agreement)


def _printed_g1(p: SpectralParams) -> complex:
    k0, k1, m0, m1 = p.k[0], p.k[1], p.m[0], p.m[1]
    root = cmath.sqrt(p.pivot)
    return p.branch * 1j * (k0**3 * k1 + m0**3 * m1) / (2 * root**3)


def _printed_g2(p: SpectralParams, g0: complex, g1: complex) -> complex | None:
    k0, k1, k2 = p.k[:3]
    m0, m1, m2 = p.m[:3]
    denominator = 4 * (g0**3 - g0**4)
    if abs(denominator) <= PIVOT_RTOL * max(abs(g0) ** 4, 1.0):
        return None
    numerator = (
        4 * k0**6 * k1**2 + 4 * k0**4 * k2 + 2 * k0**2 * k1**2
        + 4 * m0**6 * m1**2 + 4 * m0**4 * m2 + 2 * m0**2 * m1**2
        + 4 * g0**6 * g1**2 + 2 * g0**2 * g1**2
        + 2 * k0**2 * m1**2 + 4 * k0**2 * m0 * m2 + 8 * k0 * k1 * m0 * m1
        + 2 * m0**2 * k1**2 + 4 * m0**2 * k0 * k2
        + 2 * k0**2 * g1**2 + 8 * k0 * k1 * g0 * g1 + 2 * k1**2 * g0**2 + 4 * k0 * k2 * g0**2
        + 2 * m0**2 * g1**2 + 8 * m0 * m1 * g0 * g1 + 2 * m1**2 * g0**2 + 4 * m0 * m2 * g0**2
    )
    return numerator / denominator


def printed_closed_forms(p: SpectralParams) -> ClosedFormReport:
    """Evaluate the printed g_1, g_2 closed forms and compare them with solve_g."""
    if p.n < 3:
        raise ValidationError(f"printed_closed_forms needs n >= 3, got n = {p.n}.")
    solved = solve_g(p)
    g0 = solved.g[0]
    notes: list[str] = []

    g1 = _printed_g1(p)
    g2 = _printed_g2(p, g0, g1)
    if g2 is None:
        notes.append("printed g_2 denominator 4(g_0^3 - g_0^4) vanishes; solved g_2 substituted")
    if p.constrained_count < 3:
        notes.append(f"{p.mode.value} mode constrains only {p.constrained_count} indices; solved g_2 is free")

    printed_g = (g0, g1, g2)
    printed_values = [g0, g1, solved.g[2] if g2 is None else g2] + list(solved.g[3:])
    printed_triple = BasisTriple.from_coefficients(p.k, p.m, printed_values, 0)

    def w1_zero(t: BasisTriple) -> bool:
        return abs(w_coefficients(t.k, t.m, t.g).W[1]) <= RESIDUAL_RTOL * t.scale**2

    agreement = tuple(
        value is not None and abs(value - solved.g[i]) <= AGREEMENT_RTOL * max(1.0, abs(solved.g[i]))
        for i, value in enumerate(printed_g)
    )
    if not all(agreement):
        logger.warning(
            "printed closed forms disagree with the W-based solve for k=%s m=%s: printed=%s solved=%s",
            p.k, p.m, printed_g, solved.g[:3],
        )
    return ClosedFormReport(
        params=p,
        printed_g=printed_g,
        solved_g=solved.g,
        printed_triple=printed_triple,
        solved_triple=solved,
        printed_residual=tuple(char_residual(printed_triple)),
        solved_residual=tuple(char_residual(solved)),
        printed_w1_zero=w1_zero(printed_triple),
        solved_w1_zero=w1_zero(solved),
        agreement=agreement,
        notes=tuple(notes),
    )
