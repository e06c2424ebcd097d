"""
records.py - helpers for the JSON record forms used by the config document and exports.

Complex numbers travel as [re, im] pairs; plain numbers are accepted on input.
"""
from __future__ import annotations

from typing import Any, Iterable, Mapping

from hypercomplex.errors import ValidationError
from hypercomplex.jets import as_complex


def complex_from_record(value: Any, where: str = "value") -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValidationError(f"{where}: expected [re, im], got {value!r}.")
        re, im = value
        if isinstance(re, bool) or isinstance(im, bool):
            raise ValidationError(f"{where}: booleans are not numbers ({value!r}).")
        try:
            return as_complex(complex(float(re), float(im)))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{where}: expected [re, im], got {value!r}.") from exc
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number or [re, im], got {value!r}.")
    return as_complex(value)


def complex_list_from_record(values: Any, where: str) -> list[complex]:
    if not isinstance(values, (list, tuple)):
        raise ValidationError(f"{where}: expected a list, got {values!r}.")
    return [complex_from_record(v, f"{where}[{i}]") for i, v in enumerate(values)]


def complex_to_record(z: complex) -> list[float]:
    # + 0.0 folds -0.0 into 0.0 so serialized output is stable
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def reject_unknown_keys(record: Mapping[str, Any], allowed: Iterable[str], where: str) -> None:
    if not isinstance(record, Mapping):
        raise ValidationError(f"{where}: expected an object, got {type(record).__name__}.")
    unknown = sorted(set(record) - set(allowed))
    if unknown:
        raise ValidationError(f"{where}: unknown key(s) {', '.join(unknown)}.")


def number_text(value: float) -> str:
    """Shortest round-tripping decimal; integral values lose their '.0' and -0 prints as 0."""
    text = repr(float(value) + 0.0)
    return text[:-2] if text.endswith(".0") else text


def complex_text(z: Any) -> str:
    """i, -2.5i, 1+2i, 3 ... ; the human-facing complex notation of reports."""
    z = complex(z)
    re, im = z.real + 0.0, z.imag + 0.0
    if im == 0:
        return number_text(re)
    imag = "i" if im == 1 else "-i" if im == -1 else f"{number_text(im)}i"
    if re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{number_text(re)}{sign}{imag}"
