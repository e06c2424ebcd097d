"""
verify.py - independent oracles for Delta U and Delta^2 U.

Symbolic route (ground truth, polynomial F): U_k is expanded exactly into a
polynomial in x, y, z by Horner evaluation of F on a jet whose coefficients are
the linear forms xi_r; the Laplacian then acts on exponents.

Finite-difference route (any F): the 7-point second-order Laplacian applied
twice, Richardson-extrapolated over h, h/2, h/4, ...
"""
from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from hypercomplex.errors import UnsupportedFunctionError, ValidationError
from hypercomplex.holo import Polynomial
from hypercomplex.jets import as_complex
from hypercomplex.solutions import Evaluable, Point3, SolutionSpec, evaluate

logger = logging.getLogger(__name__)

PRUNE_RTOL = 1e-12
SYMBOLIC_RTOL = 1e-9
MIN_FD_STEP = 1e-4
# rounding floor of an FD estimate, in units of eps * max|U| / h_min^order
FD_NOISE_FACTOR = 1e4

Exponent = tuple[int, int, int]
_AXES: tuple[Exponent, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_ORIGIN: Exponent = (0, 0, 0)


class TriPoly:
    """sum coeff * x^a y^b z^c; exact zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Any] | None = None) -> None:
        cleaned: dict[Exponent, complex] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != 3 or any(not isinstance(a, int) or a < 0 for a in exponent):
                raise ValidationError(f"TriPoly exponent must be three nonnegative integers, got {exponent!r}.")
            value = as_complex(coeff)
            if value != 0:
                cleaned[exponent] = value
        self._terms = cleaned

    @classmethod
    def constant(cls, c: Any) -> TriPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def linear(cls, a: Any, b: Any, c: Any) -> TriPoly:
        """a x + b y + c z."""
        return cls(dict(zip(_AXES, (a, b, c))))

    @property
    def terms(self) -> Mapping[Exponent, complex]:
        return MappingProxyType(dict(sorted(self._terms.items())))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def normalized(self, rtol: float = PRUNE_RTOL) -> TriPoly:
        """Drop coefficients at or below rtol times the largest one."""
        cutoff = rtol * self.max_abs()
        return TriPoly({e: c for e, c in self._terms.items() if abs(c) > cutoff})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self._terms:
            return "TriPoly(0)"
        body = " + ".join(f"({c})*x^{a}*y^{b}*z^{d}" for (a, b, d), c in sorted(self._terms.items()))
        return f"TriPoly({body})"

    def __add__(self, other: TriPoly | Any) -> TriPoly:
        if not isinstance(other, TriPoly):
            other = TriPoly.constant(other)
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0j) + c
        return TriPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> TriPoly:
        return TriPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: TriPoly | Any) -> TriPoly:
        if not isinstance(other, TriPoly):
            other = TriPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: TriPoly | Any) -> TriPoly:
        if not isinstance(other, TriPoly):
            factor = as_complex(other)
            return TriPoly({e: factor * c for e, c in self._terms.items()})
        product: dict[Exponent, complex] = {}
        for (a1, b1, c1), v1 in self._terms.items():
            for (a2, b2, c2), v2 in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                product[key] = product.get(key, 0j) + v1 * v2
        return TriPoly(product)

    __rmul__ = __mul__

    def derivative(self, axis: int, times: int = 1) -> TriPoly:
        out: dict[Exponent, complex] = {}
        for e, c in self._terms.items():
            if e[axis] < times:
                continue
            shifted = list(e)
            shifted[axis] -= times
            out[tuple(shifted)] = c * math.perm(e[axis], times)
        return TriPoly(out)

    def laplacian(self) -> TriPoly:
        total = TriPoly()
        for axis in range(3):
            total = total + self.derivative(axis, 2)
        return total

    def evaluate(self, p: Point3 | Sequence[float]) -> complex:
        x, y, z = p.as_tuple() if isinstance(p, Point3) else p
        return sum((c * x**a * y**b * z**d for (a, b, d), c in self._terms.items()), 0j)


def laplacian(p: TriPoly) -> TriPoly:
    """d^2/dx^2 + d^2/dy^2 + d^2/dz^2 by exact exponent shifts."""
    return p.laplacian()


@dataclass(frozen=True)
class SymbolicExpansion:
    u: TriPoly
    max_intermediate: float


def _require_polynomial(spec: SolutionSpec) -> Polynomial:
    if not isinstance(spec.f, Polynomial):
        raise UnsupportedFunctionError(
            f"the symbolic oracle needs a polynomial F, got kind {spec.f.kind!r}."
        )
    return spec.f


def symbolic_expansion(spec: SolutionSpec) -> SymbolicExpansion:
    """Expand U_k exactly, tracking the largest coefficient met along the way."""
    f = _require_polynomial(spec)
    order = spec.k + 1
    basis = spec.basis
    zeta = [TriPoly.linear(basis.k[r], basis.m[r], basis.g[r]) for r in range(order)]

    result = [TriPoly() for _ in range(order)]
    largest = 0.0
    for c in reversed(f.coefficients):
        product = []
        for r in range(order):
            entry = TriPoly()
            for i in range(r + 1):
                entry = entry + result[i] * zeta[r - i]
            product.append(entry)
        product[0] = product[0] + c
        result = product
        largest = max([largest] + [poly.max_abs() for poly in result])
    return SymbolicExpansion(result[spec.k], largest)


def symbolic_u(spec: SolutionSpec) -> TriPoly:
    return symbolic_expansion(spec).u


def biharmonic_residual_sym(spec: SolutionSpec) -> TriPoly:
    return laplacian(laplacian(symbolic_u(spec)))


def harmonic_residual_sym(spec: SolutionSpec) -> TriPoly:
    return laplacian(symbolic_u(spec))


@dataclass(frozen=True)
class SymbolicCheck:
    residual: TriPoly
    max_coeff: float
    scale: float
    is_zero: bool

    @property
    def relative(self) -> float:
        return self.max_coeff / self.scale if self.scale > 0 else self.max_coeff


def check_symbolic(spec: SolutionSpec, laplacians: int = 2, rtol: float = SYMBOLIC_RTOL) -> SymbolicCheck:
    """
    Apply the Laplacian `laplacians` times and decide whether the result is zero.

    Residual coefficients are compared with the largest intermediate coefficient:
    those of the Horner expansion and of Delta U.
    """
    expansion = symbolic_expansion(spec)
    residual = expansion.u
    scale = expansion.max_intermediate
    for step in range(laplacians):
        residual = laplacian(residual)
        if step < laplacians - 1:
            scale = max(scale, residual.max_abs())
    max_coeff = residual.max_abs()
    return SymbolicCheck(residual, max_coeff, scale, max_coeff <= rtol * max(scale, 1e-300))


@dataclass(frozen=True)
class FDConfig:
    h: float = 1e-2
    richardson_levels: int = 2
    min_h: float = MIN_FD_STEP

    def __post_init__(self) -> None:
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h) and self.h > 0):
            raise ValidationError(f"FD step h must be positive, got {self.h!r}.")
        if self.h < self.min_h:
            raise ValidationError(
                f"FD step h={self.h} is below {self.min_h}; cancellation would swamp a fourth difference."
            )
        if isinstance(self.richardson_levels, bool) or not isinstance(self.richardson_levels, int) \
                or self.richardson_levels < 1:
            raise ValidationError(f"richardson_levels must be an integer >= 1, got {self.richardson_levels!r}.")


@dataclass(frozen=True)
class FDResult:
    """
    An extrapolated FD estimate of Delta U or Delta^2 U.

    `scale` is max |U| over the stencils divided by h^order. `magnitude` sums the
    absolute values of the separate second-difference pieces (D_a D_b U, or D_a U),
    whose signed sum is `value`; `noise` is the rounding floor of the finest level.
    """

    value: complex
    scale: float
    estimates: tuple[complex, ...] = field(default_factory=tuple)
    magnitude: float = 0.0
    noise: float = 0.0

    @property
    def normalized(self) -> float:
        return abs(self.value) / self.scale if self.scale > 0 else abs(self.value)

    def vanishes(self, rtol: float) -> bool:
        """Whether the pieces cancel to within rtol of their size, above the rounding floor."""
        return abs(self.value) <= rtol * self.magnitude + self.noise


class _Sampler:
    """Evaluates the field on integer offsets around a base point, once per offset."""

    def __init__(self, target: Evaluable, p: Point3, h: float) -> None:
        self._target = target
        self._p = p
        self._h = h
        self.values: dict[Exponent, complex] = {}

    def __call__(self, offset: Exponent) -> complex:
        if offset not in self.values:
            i, j, l = offset
            q = Point3(self._p.x + i * self._h, self._p.y + j * self._h, self._p.z + l * self._h)
            self.values[offset] = evaluate(self._target, q)
        return self.values[offset]

    def second(self, offset: Exponent, axis: Exponent) -> complex:
        """Central second difference along one axis at offset, without the 1/h^2 factor."""
        return self(_shift(offset, axis, 1)) + self(_shift(offset, axis, -1)) - 2 * self(offset)

    def lap_parts(self) -> list[complex]:
        """The three terms of the 7-point Laplacian at the base point."""
        return [self.second(_ORIGIN, axis) for axis in _AXES]

    def bilap_parts(self) -> list[complex]:
        """D_b D_a U at the base point for every axis pair; they sum to Delta_h(Delta_h U)."""
        parts = []
        for a in _AXES:
            for b in _AXES:
                parts.append(
                    self.second(_shift(_ORIGIN, b, 1), a)
                    + self.second(_shift(_ORIGIN, b, -1), a)
                    - 2 * self.second(_ORIGIN, a)
                )
        return parts


def _shift(offset: Exponent, axis: Exponent, sign: int) -> Exponent:
    return tuple(o + sign * a for o, a in zip(offset, axis))  # type: ignore[return-value]


def _richardson(estimates: Sequence[complex]) -> complex:
    """Eliminate h^2, h^4, ... from estimates at h, h/2, h/4, ..."""
    row = list(estimates)
    for j in range(1, len(estimates)):
        factor = 4**j
        row = [(factor * row[i + 1] - row[i]) / (factor - 1) for i in range(len(row) - 1)]
    return row[0]


def _fd(target: Evaluable, p: Point3, cfg: FDConfig, laplacians: int) -> FDResult:
    order = 2 * laplacians
    levels = []
    largest = 0.0
    for level in range(cfg.richardson_levels + 1):
        h = cfg.h / 2**level
        sampler = _Sampler(target, p, h)
        raw = sampler.bilap_parts() if laplacians == 2 else sampler.lap_parts()
        levels.append([part / h**order for part in raw])
        largest = max([largest] + [abs(v) for v in sampler.values.values()])
    parts = [_richardson(column) for column in zip(*levels)]
    value = sum(parts, 0j)
    scale = largest / cfg.h**order
    h_min = cfg.h / 2**cfg.richardson_levels
    noise = FD_NOISE_FACTOR * sys.float_info.epsilon * largest / h_min**order
    logger.debug("fd order=%d at %s: %s (scale %.3e)", order, p, value, scale)
    return FDResult(
        value,
        scale,
        tuple(sum(row, 0j) for row in levels),
        magnitude=sum(abs(v) for v in parts),
        noise=noise,
    )


def fd_biharmonic(target: Evaluable, p: Point3, cfg: FDConfig | None = None) -> FDResult:
    """Richardson-extrapolated Delta_h(Delta_h U) at p; scale = max |U| over the stencil / h^4."""
    return _fd(target, p, cfg or FDConfig(), laplacians=2)


def fd_laplacian(target: Evaluable, p: Point3, cfg: FDConfig | None = None) -> FDResult:
    return _fd(target, p, cfg or FDConfig(), laplacians=1)


def harmonic_residual(
    spec: SolutionSpec, p: Point3 | None = None, cfg: FDConfig | None = None
) -> TriPoly | FDResult:
    """Symbolic Delta U for polynomial F when no point is given, FD estimate otherwise."""
    if p is None:
        return harmonic_residual_sym(spec)
    return fd_laplacian(spec, p, cfg)


@dataclass(frozen=True)
class VerificationReport:
    spec_id: str
    mode: str
    symbolic_zero: bool | None
    max_coeff: float | None
    fd_residual: float
    fd_scale: float
    harmonic_zero: bool | None
    fd_points: int
    tolerance: float
    fd_zero: bool = True

    @property
    def fd_normalized(self) -> float:
        return self.fd_residual / self.fd_scale if self.fd_scale > 0 else self.fd_residual

    @property
    def passed(self) -> bool:
        return self.symbolic_zero is not False and self.fd_zero and self.fd_normalized <= self.tolerance

    def to_record(self) -> dict[str, Any]:
        return {
            "spec_id": self.spec_id,
            "mode": self.mode,
            "symbolic_zero": self.symbolic_zero,
            "max_coeff": self.max_coeff,
            "fd_residual": self.fd_residual,
            "fd_scale": self.fd_scale,
            "fd_zero": self.fd_zero,
            "harmonic_zero": self.harmonic_zero,
            "fd_points": self.fd_points,
            "passed": self.passed,
        }


def verify_spec(
    spec: SolutionSpec,
    points: Iterable[Point3],
    cfg: FDConfig | None = None,
    tolerance: float = 1e-4,
    symbolic_rtol: float = SYMBOLIC_RTOL,
    spec_id: str = "",
    mode: str = "",
) -> VerificationReport:
    """
    Symbolic oracle when F is polynomial, FD always; the worst FD point is reported.

    The FD verdict needs both fd_residual / fd_scale <= tolerance and, at every
    point, the second-difference pieces of Delta^2 U cancelling to within
    tolerance of their summed size. Without a symbolic verdict, harmonic_zero
    applies the same cancellation test to the pieces of Delta U.
    """
    cfg = cfg or FDConfig()
    symbolic_zero = max_coeff = harmonic_zero = None
    if isinstance(spec.f, Polynomial):
        bih = check_symbolic(spec, laplacians=2, rtol=symbolic_rtol)
        harm = check_symbolic(spec, laplacians=1, rtol=symbolic_rtol)
        symbolic_zero, max_coeff, harmonic_zero = bih.is_zero, bih.max_coeff, harm.is_zero

    worst: FDResult | None = None
    fd_zero = True
    harmonic_fd_zero = True
    count = 0
    for p in points:
        count += 1
        result = fd_biharmonic(spec, p, cfg)
        if worst is None or result.normalized > worst.normalized:
            worst = result
        if not result.vanishes(tolerance):
            fd_zero = False
        if harmonic_zero is None and not fd_laplacian(spec, p, cfg).vanishes(tolerance):
            harmonic_fd_zero = False
    if worst is None:
        raise ValidationError("verify_spec needs at least one sample point.")
    if harmonic_zero is None:
        harmonic_zero = harmonic_fd_zero

    report = VerificationReport(
        spec_id=spec_id,
        mode=mode,
        symbolic_zero=symbolic_zero,
        max_coeff=max_coeff,
        fd_residual=abs(worst.value),
        fd_scale=worst.scale,
        harmonic_zero=harmonic_zero,
        fd_points=count,
        tolerance=tolerance,
        fd_zero=fd_zero,
    )
    logger.info(
        "verified %s: symbolic_zero=%s fd=%.3e fd_zero=%s harmonic_zero=%s",
        spec_id or f"U_{spec.k}", symbolic_zero, report.fd_normalized, fd_zero, harmonic_zero,
    )
    return report
