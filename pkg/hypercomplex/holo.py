"""
holo.py - holomorphic functions F : D -> C, consumed only through exact derivatives at a point.

Kinds: Polynomial, Exp, Sin, Cos (entire) and PowerSeries (open disk). No contour
integration ever runs; the solution family needs only F(xi_0), F'(xi_0), ...
"""
from __future__ import annotations

import cmath
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, Literal, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from hypercomplex.errors import ConvergenceError, DomainError, ValidationError
from hypercomplex.jets import as_complex
from hypercomplex.records import (
    complex_from_record,
    complex_list_from_record,
    complex_to_record,
    reject_unknown_keys,
)

logger = logging.getLogger(__name__)

SERIES_TERM_RTOL = 1e-17
SERIES_MAX_TERMS = 10_000
SERIES_SMALL_RUN = 2


@dataclass(frozen=True)
class DomainCheck:
    """Where F is holomorphic: the whole plane, or the open disk |z - center| < radius."""

    kind: Literal["entire", "disk"]
    center: complex = 0j
    radius: float = math.inf

    def contains(self, z: complex) -> bool:
        z = complex(z)
        if not cmath.isfinite(z):
            return False
        if self.kind == "entire":
            return True
        return abs(z - self.center) < self.radius


ENTIRE = DomainCheck("entire")


class HolomorphicFn(ABC):
    kind: ClassVar[str]

    @property
    def domain(self) -> DomainCheck:
        return ENTIRE

    def in_domain(self, z0: Any) -> bool:
        return self.domain.contains(z0)

    def derivatives(self, z0: Any, count: int) -> list[complex]:
        """[F(z0), F'(z0), ..., F^(count-1)(z0)]."""
        if not isinstance(count, int) or count < 1:
            raise ValidationError(f"Derivative count must be a positive integer, got {count!r}.")
        z0 = complex(z0)
        if not self.in_domain(z0):
            raise DomainError(f"{self.kind}: point {z0} lies outside the domain {self.domain}.")
        try:
            values = self._derivatives(z0, count)
        except OverflowError as exc:
            raise DomainError(f"{self.kind}: F overflows at xi_0 = {z0}.") from exc
        if not all(cmath.isfinite(v) for v in values):
            raise DomainError(f"{self.kind}: a derivative of order < {count} is not finite at xi_0 = {z0}.")
        return values

    def __call__(self, z: Any) -> complex:
        return self.derivatives(z, 1)[0]

    @abstractmethod
    def _derivatives(self, z0: complex, count: int) -> list[complex]: ...

    @abstractmethod
    def to_record(self) -> dict[str, Any]: ...


@dataclass(frozen=True)
class Polynomial(HolomorphicFn):
    """sum_d coefficients[d] t^d, ascending degree; trailing zeros are dropped."""

    coefficients: tuple[complex, ...]
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self) -> None:
        values = [as_complex(c) for c in self.coefficients]
        if not values:
            raise ValidationError("Polynomial needs at least one coefficient.")
        while len(values) > 1 and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coefficients", tuple(values))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _derivatives(self, z0: complex, count: int) -> list[complex]:
        coeffs = np.array(self.coefficients, dtype=complex)
        out = []
        for j in range(count):
            # polyder returns [0] once j exceeds the degree
            dj = P.polyder(coeffs, m=j) if j else coeffs
            out.append(complex(P.polyval(z0, dj)))
        return out

    def to_record(self) -> dict[str, Any]:
        return {"kind": self.kind, "coefficients": [complex_to_record(c) for c in self.coefficients]}


@dataclass(frozen=True)
class Exp(HolomorphicFn):
    """exp(scale * t)."""

    scale: complex = 1 + 0j
    kind: ClassVar[str] = "exp"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", as_complex(self.scale))

    def _derivatives(self, z0: complex, count: int) -> list[complex]:
        base = cmath.exp(self.scale * z0)
        return [self.scale**j * base for j in range(count)]

    def to_record(self) -> dict[str, Any]:
        return {"kind": self.kind, "scale": complex_to_record(self.scale)}


@dataclass(frozen=True)
class Sin(HolomorphicFn):
    """sin(scale * t); derivatives cycle with period 4."""

    scale: complex = 1 + 0j
    kind: ClassVar[str] = "sin"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", as_complex(self.scale))

    def _derivatives(self, z0: complex, count: int) -> list[complex]:
        s, c = cmath.sin(self.scale * z0), cmath.cos(self.scale * z0)
        cycle = (s, c, -s, -c)
        return [self.scale**j * cycle[j % 4] for j in range(count)]

    def to_record(self) -> dict[str, Any]:
        return {"kind": self.kind, "scale": complex_to_record(self.scale)}


@dataclass(frozen=True)
class Cos(HolomorphicFn):
    """cos(scale * t); derivatives cycle with period 4."""

    scale: complex = 1 + 0j
    kind: ClassVar[str] = "cos"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", as_complex(self.scale))

    def _derivatives(self, z0: complex, count: int) -> list[complex]:
        s, c = cmath.sin(self.scale * z0), cmath.cos(self.scale * z0)
        cycle = (c, -s, -c, s)
        return [self.scale**j * cycle[j % 4] for j in range(count)]

    def to_record(self) -> dict[str, Any]:
        return {"kind": self.kind, "scale": complex_to_record(self.scale)}


@dataclass(frozen=True)
class PowerSeries(HolomorphicFn):
    """
    sum_m coefficients[m] (t - center)^m, holomorphic on the open disk of the given radius.

    Each derivative is the term-wise differentiated series, summed until
    SERIES_SMALL_RUN consecutive terms with nonzero coefficients drop below
    SERIES_TERM_RTOL of the partial sum. Running out of coefficients, or past
    SERIES_MAX_TERMS terms, before that happens is a ConvergenceError: the list
    is a truncation and its tail is not negligible there.
    """

    center: complex
    coefficients: tuple[complex, ...]
    radius: float
    kind: ClassVar[str] = "power_series"

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_complex(self.center))
        values = tuple(as_complex(c) for c in self.coefficients)
        if not values:
            raise ValidationError("PowerSeries needs at least one coefficient.")
        object.__setattr__(self, "coefficients", values)
        try:
            radius = float(self.radius)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"PowerSeries radius must be a number, got {self.radius!r}.") from exc
        if not radius > 0:
            raise ValidationError(f"PowerSeries radius must be positive, got {self.radius!r}.")
        object.__setattr__(self, "radius", radius)

    @property
    def domain(self) -> DomainCheck:
        return DomainCheck("disk", self.center, self.radius)

    def _derivatives(self, z0: complex, count: int) -> list[complex]:
        w = z0 - self.center
        return [self._differentiated_sum(w, j) for j in range(count)]

    def _differentiated_sum(self, w: complex, j: int) -> complex:
        if j >= len(self.coefficients):
            raise ConvergenceError(
                f"power series has {len(self.coefficients)} coefficients; derivative {j} needs degree {j}."
            )
        if w == 0:
            return self.coefficients[j] * math.factorial(j)
        total = 0j
        power = 1 + 0j  # w ** (m - j)
        small = 0
        for m in range(j, len(self.coefficients)):
            if m - j >= SERIES_MAX_TERMS:
                raise ConvergenceError(
                    f"power series derivative {j} at offset {w} did not converge "
                    f"within {SERIES_MAX_TERMS} terms."
                )
            c = self.coefficients[m]
            if c != 0:
                term = c * math.perm(m, j) * power
                total += term
                small = small + 1 if abs(term) <= SERIES_TERM_RTOL * abs(total) else 0
                if small >= SERIES_SMALL_RUN:
                    logger.debug("power series derivative %d converged after %d terms", j, m - j + 1)
                    return total
            power *= w
        raise ConvergenceError(
            f"power series derivative {j} at offset {w} has not converged when its "
            f"{len(self.coefficients)} coefficients run out; supply more terms or move closer to the center."
        )

    def to_record(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "center": complex_to_record(self.center),
            "coefficients": [complex_to_record(c) for c in self.coefficients],
            "radius": self.radius,
        }


_KINDS: dict[str, type[HolomorphicFn]] = {
    cls.kind: cls for cls in (Polynomial, Exp, Sin, Cos, PowerSeries)
}


def derivatives(f: HolomorphicFn, z0: Any, count: int) -> list[complex]:
    return f.derivatives(z0, count)


def in_domain(f: HolomorphicFn, z0: Any) -> bool:
    return f.in_domain(z0)


def from_record(record: dict[str, Any]) -> HolomorphicFn:
    """Build a HolomorphicFn from its tagged config record {kind, coefficients?, scale?, center?, radius?}."""
    if not isinstance(record, dict) or "kind" not in record:
        raise ValidationError(f"function: expected an object with a 'kind' key, got {record!r}.")
    kind = record["kind"]
    if kind not in _KINDS:
        raise ValidationError(f"function.kind: unknown kind {kind!r}; expected one of {sorted(_KINDS)}.")

    if kind == Polynomial.kind:
        reject_unknown_keys(record, {"kind", "coefficients"}, "function")
        if "coefficients" not in record:
            raise ValidationError("function: polynomial needs 'coefficients'.")
        return Polynomial(tuple(complex_list_from_record(record["coefficients"], "function.coefficients")))

    if kind == PowerSeries.kind:
        reject_unknown_keys(record, {"kind", "center", "coefficients", "radius"}, "function")
        missing = {"coefficients", "radius"} - set(record)
        if missing:
            raise ValidationError(f"function: power_series needs {', '.join(sorted(missing))}.")
        return PowerSeries(
            center=complex_from_record(record.get("center", 0), "function.center"),
            coefficients=tuple(complex_list_from_record(record["coefficients"], "function.coefficients")),
            radius=record["radius"],
        )

    reject_unknown_keys(record, {"kind", "scale"}, "function")
    return _KINDS[kind](complex_from_record(record.get("scale", 1), "function.scale"))
