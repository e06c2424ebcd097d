"""
resolvent.py - resolvent coefficients A_k as pole expansions, their residues, and the U_k printer.

(t - zeta)^(-1) = sum_k A_k rho^k with

    A_0 = 1 / (t - xi_0),   A_s = (xi_s A_0 + xi_(s-1) A_1 + ... + xi_1 A_(s-1)) / (t - xi_0).

Each A_k is a sum of integer polynomials in xi_1..xi_k over powers of (t - xi_0), so
the contour integral of F(t) A_k is just its residue at xi_0:

    U_k = sum_j poly_j(xi) F^(j-1)(xi_0) / (j-1)!
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Iterator, Mapping, Sequence

from hypercomplex.errors import ValidationError
from hypercomplex.holo import HolomorphicFn
from hypercomplex.jets import as_complex

logger = logging.getLogger(__name__)

MAX_INDEX = 24

_PRIMES = {0: "", 1: "′", 2: "″", 3: "‴"}


@dataclass(frozen=True)
class XiMonomial:
    """xi_1^a_1 xi_2^a_2 ..., stored as sorted (index, power) pairs with positive powers."""

    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = defaultdict(int)
        for index, power in self.exponents:
            if index < 1 or power < 0:
                raise ValidationError(f"invalid xi exponent ({index}, {power}).")
            merged[index] += power
        object.__setattr__(
            self, "exponents", tuple(sorted((i, a) for i, a in merged.items() if a > 0))
        )

    @classmethod
    def of(cls, *indices: int) -> XiMonomial:
        """XiMonomial.of(1, 1, 2) is xi_1^2 xi_2."""
        return cls(tuple((i, 1) for i in indices))

    @property
    def degree(self) -> int:
        return sum(a for _, a in self.exponents)

    @property
    def weight(self) -> int:
        return sum(i * a for i, a in self.exponents)

    @property
    def sort_key(self) -> tuple[int, ...]:
        return tuple(i for i, a in self.exponents for _ in range(a))

    def times(self, index: int) -> XiMonomial:
        return XiMonomial(self.exponents + ((index, 1),))

    def evaluate(self, xi: Sequence[complex]) -> complex:
        value = 1 + 0j
        for i, a in self.exponents:
            value *= xi[i] ** a
        return value

    def text(self) -> str:
        return "·".join(f"ξ{i}" if a == 1 else f"ξ{i}^{a}" for i, a in self.exponents)

    def latex(self) -> str:
        return "".join(rf"\xi_{{{i}}}" if a == 1 else rf"\xi_{{{i}}}^{{{a}}}" for i, a in self.exponents)


def _sorted_poly(poly: Mapping[XiMonomial, Any]) -> list[tuple[XiMonomial, Any]]:
    return sorted(poly.items(), key=lambda item: item[0].sort_key)


def _frozen(terms: Mapping[int, Mapping[XiMonomial, Any]]) -> Mapping[int, Mapping[XiMonomial, Any]]:
    return MappingProxyType(
        {order: MappingProxyType(dict(_sorted_poly(poly))) for order, poly in sorted(terms.items())}
    )


@dataclass(frozen=True)
class PoleExpansion:
    """A_k = sum_j terms[j](xi) (t - xi_0)^(-j), integer coefficients."""

    k: int
    terms: Mapping[int, Mapping[XiMonomial, int]]

    def as_plain(self) -> dict[int, dict[tuple[tuple[int, int], ...], int]]:
        return {j: {mono.exponents: c for mono, c in poly.items()} for j, poly in self.terms.items()}

    def iter_terms(self) -> Iterator[tuple[int, XiMonomial, int]]:
        for j, poly in self.terms.items():
            for mono, c in poly.items():
                yield j, mono, c


def _check_index(k: Any) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValidationError(f"resolvent index must be a nonnegative integer, got {k!r}.")
    if k > MAX_INDEX:
        raise ValidationError(f"resolvent index {k} exceeds the cap {MAX_INDEX}.")
    return k


@lru_cache(maxsize=None)
def _pole_expansion(k: int) -> PoleExpansion:
    if k == 0:
        return PoleExpansion(0, _frozen({1: {XiMonomial(): 1}}))
    acc: dict[int, dict[XiMonomial, int]] = defaultdict(lambda: defaultdict(int))
    for i in range(1, k + 1):
        for j, mono, c in _pole_expansion(k - i).iter_terms():
            acc[j + 1][mono.times(i)] += c
    return PoleExpansion(k, _frozen(acc))


def resolvent_coeffs(k: int) -> PoleExpansion:
    """A_k from the recurrence; cached, read-only."""
    return _pole_expansion(_check_index(k))


def residue_eval(pe: PoleExpansion, f: HolomorphicFn, xi: Sequence[Any]) -> complex:
    """(1 / 2 pi i) * contour integral of F(t) A_k dt, taken as the residue at t = xi_0."""
    if len(xi) < pe.k + 1:
        raise ValidationError(f"residue_eval for A_{pe.k} needs xi_0..xi_{pe.k}, got {len(xi)} values.")
    values = [as_complex(v) for v in xi[: pe.k + 1]]
    derivs = f.derivatives(values[0], pe.k + 1)
    total = 0j
    for j, mono, c in pe.iter_terms():
        total += c * mono.evaluate(values) * derivs[j - 1] / math.factorial(j - 1)
    return total


@dataclass(frozen=True)
class UFormula:
    """U_k = sum_d terms[d](xi) F^(d)(xi_0), exact rational coefficients."""

    k: int
    terms: Mapping[int, Mapping[XiMonomial, Fraction]]

    def evaluate(self, derivs: Sequence[complex], xi: Sequence[complex]) -> complex:
        return sum(
            (complex(c) * mono.evaluate(xi) * derivs[d] for d, poly in self.terms.items() for mono, c in poly.items()),
            0j,
        )

    def text(self) -> str:
        parts = []
        for d, poly in self.terms.items():
            coefficient = _poly_text(poly)
            derivative = _derivative_text(d)
            parts.append(f"{coefficient}·{derivative}" if coefficient else derivative)
        return f"U_{self.k} = " + " + ".join(parts)

    def latex(self) -> str:
        parts = [_poly_latex(poly) + _derivative_latex(d) for d, poly in self.terms.items()]
        return f"U_{{{self.k}}} = " + " + ".join(parts)

    def render(self, fmt: str = "text") -> str:
        if fmt == "text":
            return self.text()
        if fmt == "latex":
            return self.latex()
        raise ValidationError(f"formula format must be 'text' or 'latex', got {fmt!r}.")


def u_formula(k: int) -> UFormula:
    pe = resolvent_coeffs(k)
    terms = {
        j - 1: {mono: Fraction(c, math.factorial(j - 1)) for mono, c in poly.items()}
        for j, poly in pe.terms.items()
    }
    return UFormula(pe.k, _frozen(terms))


def _derivative_text(d: int) -> str:
    mark = _PRIMES.get(d, f"^({d})")
    return f"F{mark}(ξ0)"


def _derivative_latex(d: int) -> str:
    mark = "'" * d if d <= 3 else f"^{{({d})}}"
    return rf"F{mark}(\xi_{{0}})"


def _common_denominator(poly: Mapping[XiMonomial, Fraction]) -> int:
    return math.lcm(*(c.denominator for c in poly.values()))


def _scaled_text(mono: XiMonomial, c: Fraction) -> str:
    body = mono.text()
    if not body:
        return "" if c == 1 else str(c)
    if c == 1:
        return body
    if c.denominator == 1:
        return f"{c.numerator}·{body}"
    if c.numerator == 1:
        return f"{body}/{c.denominator}"
    return f"({c})·{body}"


def _poly_text(poly: Mapping[XiMonomial, Fraction]) -> str:
    items = _sorted_poly(poly)
    if len(items) == 1:
        return _scaled_text(*items[0])
    denominator = _common_denominator(poly)
    inner = " + ".join(_scaled_text(mono, c * denominator) for mono, c in items)
    return f"({inner})" if denominator == 1 else f"(1/{denominator})·({inner})"


def _scaled_latex(mono: XiMonomial, c: Fraction) -> str:
    body = mono.latex()
    if c == 1:
        return body
    if c.denominator == 1:
        return f"{c.numerator}{body}"
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}{body}"


def _poly_latex(poly: Mapping[XiMonomial, Fraction]) -> str:
    items = _sorted_poly(poly)
    if len(items) == 1:
        return _scaled_latex(*items[0])
    denominator = _common_denominator(poly)
    inner = "+".join(_scaled_latex(mono, c * denominator) for mono, c in items)
    if denominator == 1:
        return rf"\left({inner}\right)"
    return rf"\frac{{1}}{{{denominator}}}\left({inner}\right)"
