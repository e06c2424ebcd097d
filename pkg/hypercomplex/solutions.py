"""
solutions.py - evaluable solution fields U_k(x, y, z) and their superpositions.

U_k is the rho^k coefficient of F(zeta), zeta = x e1 + y e2 + z e3. The jet path
(compose_taylor) is the production route; the pole-expansion route
(residue_eval) is kept as an independent check.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence, Union

import numpy as np

from hypercomplex.characteristic import BasisTriple
from hypercomplex.errors import DomainError, ValidationError
from hypercomplex.holo import HolomorphicFn
from hypercomplex.jets import Jet, as_complex, compose_taylor
from hypercomplex.resolvent import residue_eval, resolvent_coeffs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"point coordinate {name} must be a real number, got {value!r}.") from exc
            if not math.isfinite(value):
                raise ValidationError(f"point coordinate {name} must be finite, got {value!r}.")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def shifted(self, axis: int, delta: float) -> Point3:
        coords = list(self.as_tuple())
        coords[axis] += delta
        return Point3(*coords)


def required_constraints(k: int) -> int:
    """ceil((k + 1) / 2): leading W's that must vanish for U_k to be biharmonic."""
    return (k + 2) // 2


@dataclass(frozen=True)
class SolutionSpec:
    """Basis + F + index k. Insufficiently constrained bases need unchecked=True."""

    basis: BasisTriple
    f: HolomorphicFn
    k: int
    unchecked: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or not 0 <= self.k < self.basis.n:
            raise ValidationError(f"solution index k must satisfy 0 <= k <= n - 1 = {self.basis.n - 1}, got {self.k!r}.")
        needed = required_constraints(self.k)
        if self.basis.constrained_count < needed:
            if not self.unchecked:
                raise ValidationError(
                    f"U_{self.k} needs {needed} constrained g indices for biharmonicity, "
                    f"basis has {self.basis.constrained_count}; set unchecked to explore anyway."
                )
            logger.warning(
                "unchecked spec: U_%d on a basis with %d constrained indices (needs %d) may not be biharmonic.",
                self.k, self.basis.constrained_count, needed,
            )

    @property
    def guaranteed(self) -> bool:
        return self.basis.constrained_count >= required_constraints(self.k)


@dataclass(frozen=True)
class Superposition:
    members: tuple[tuple[complex, SolutionSpec], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValidationError("a superposition needs at least one member.")
        object.__setattr__(self, "members", tuple((as_complex(w), spec) for w, spec in self.members))


Evaluable = Union[SolutionSpec, Superposition, Callable[[Point3], complex]]


def xi_values(basis: BasisTriple, p: Point3) -> list[complex]:
    """xi_r = k_r x + m_r y + g_r z for r = 0..n-1."""
    return [k * p.x + m * p.y + g * p.z for k, m, g in zip(basis.k, basis.m, basis.g)]


def _xi_in_domain(spec: SolutionSpec, p: Point3) -> list[complex]:
    xi = xi_values(spec.basis, p)[: spec.k + 1]
    if not spec.f.in_domain(xi[0]):
        raise DomainError(f"point ({p.x}, {p.y}, {p.z}) lies outside the solution domain: xi_0 = {xi[0]}.")
    return xi


def evaluate_u(spec: SolutionSpec, p: Point3) -> complex:
    xi = _xi_in_domain(spec, p)
    try:
        derivs = spec.f.derivatives(xi[0], spec.k + 1)
    except DomainError as exc:
        raise type(exc)(f"point ({p.x}, {p.y}, {p.z}): {exc}") from exc
    return compose_taylor(derivs, Jet(tuple(xi)))[spec.k]


def evaluate_u_residue(spec: SolutionSpec, p: Point3) -> complex:
    """Same value as evaluate_u, through the pole expansion of A_k."""
    xi = _xi_in_domain(spec, p)
    return residue_eval(resolvent_coeffs(spec.k), spec.f, xi)


def evaluate_superposition(s: Superposition, p: Point3) -> complex:
    return sum((w * evaluate_u(spec, p) for w, spec in s.members), 0j)


def evaluate(target: Evaluable, p: Point3) -> complex:
    if isinstance(target, SolutionSpec):
        return evaluate_u(target, p)
    if isinstance(target, Superposition):
        return evaluate_superposition(target, p)
    return complex(target(p))


def _three(values: Any, where: str) -> tuple:
    if not isinstance(values, (list, tuple)) or len(values) != 3:
        raise ValidationError(f"{where} needs exactly three entries, got {values!r}.")
    return tuple(values)


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned lattice; an axis with one step sits at its min."""

    min: tuple[float, float, float]
    max: tuple[float, float, float]
    steps: tuple[int, int, int]

    def __post_init__(self) -> None:
        lo = Point3(*_three(self.min, "grid.min")).as_tuple()
        hi = Point3(*_three(self.max, "grid.max")).as_tuple()
        steps = _three(self.steps, "grid.steps")
        for s in steps:
            if isinstance(s, bool) or not isinstance(s, int) or s < 1:
                raise ValidationError(f"grid steps must be integers >= 1, got {list(steps)}.")
        object.__setattr__(self, "min", lo)
        object.__setattr__(self, "max", hi)
        object.__setattr__(self, "steps", steps)

    @property
    def size(self) -> int:
        return math.prod(self.steps)

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, s) for lo, hi, s in zip(self.min, self.max, self.steps)]

    def points(self) -> Iterator[Point3]:
        """Row-major lattice points, z fastest."""
        xs, ys, zs = self.axes()
        for x, y, z in itertools.product(xs, ys, zs):
            yield Point3(float(x), float(y), float(z))

    def to_record(self) -> dict[str, Any]:
        return {"min": list(self.min), "max": list(self.max), "steps": list(self.steps)}


@dataclass(frozen=True)
class Field:
    grid: GridSpec
    points: tuple[Point3, ...]
    values: tuple[complex, ...]

    def records(self) -> list[dict[str, float]]:
        return [
            {"x": p.x, "y": p.y, "z": p.z, "re": v.real, "im": v.imag}
            for p, v in zip(self.points, self.values)
        ]


def grid_eval(target: Evaluable, grid: GridSpec) -> Field:
    """Evaluate at every lattice point; each value depends only on its own point."""
    points = tuple(grid.points())
    values = tuple(evaluate(target, p) for p in points)
    logger.info("grid_eval: %d points on a %s lattice", len(points), "x".join(map(str, grid.steps)))
    return Field(grid, points, values)


def superposition_of(specs: Sequence[SolutionSpec], weights: Sequence[Any] | None = None) -> Superposition:
    weights = [1] * len(specs) if weights is None else list(weights)
    if len(weights) != len(specs):
        raise ValidationError(f"{len(weights)} weights for {len(specs)} solutions.")
    return Superposition(tuple(zip(weights, specs)))
