"""
config.py - environment settings and the JSON run document that drives every command.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from dotenv import load_dotenv

from hypercomplex.characteristic import Mode, SpectralParams
from hypercomplex.errors import ValidationError
from hypercomplex.holo import HolomorphicFn, from_record
from hypercomplex.records import (
    complex_from_record,
    complex_list_from_record,
    complex_to_record,
    reject_unknown_keys,
)
from hypercomplex.solutions import GridSpec
from hypercomplex.verify import FDConfig

load_dotenv()

logger = logging.getLogger(__name__)

SECTIONS = ("algebra", "function", "solution", "grid", "verify", "output")
OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SolutionSection:
    """Either a single k_index or an inclusive k_range with optional weights."""

    k_index: int = 0
    k_range: tuple[int, int] | None = None
    weights: tuple[complex, ...] | None = None
    # solve_g constrains enough indices for every k <= n-1, so this never changes a config-driven run
    unchecked: bool = False

    @property
    def indices(self) -> list[int]:
        if self.k_range is None:
            return [self.k_index]
        lo, hi = self.k_range
        return list(range(lo, hi + 1))

    @property
    def resolved_weights(self) -> list[complex]:
        return list(self.weights) if self.weights is not None else [1 + 0j] * len(self.indices)

    def validate(self, n: int) -> None:
        for k in self.indices:
            if not 0 <= k < n:
                raise ValidationError(f"solution index {k} out of range for n = {n} (0 <= k <= {n - 1}).")
        if self.weights is not None and len(self.weights) != len(self.indices):
            raise ValidationError(
                f"solution.weights has {len(self.weights)} entries for {len(self.indices)} indices."
            )

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> SolutionSection:
        reject_unknown_keys(record, {"k_index", "k_range", "weights", "unchecked"}, "solution")
        if "k_index" in record and "k_range" in record:
            raise ValidationError("solution: give either k_index or k_range, not both.")
        k_index = record.get("k_index", 0)
        if isinstance(k_index, bool) or not isinstance(k_index, int):
            raise ValidationError(f"solution.k_index must be an integer, got {k_index!r}.")
        k_range = record.get("k_range")
        if k_range is not None:
            if (
                not isinstance(k_range, list)
                or len(k_range) != 2
                or any(isinstance(v, bool) or not isinstance(v, int) for v in k_range)
                or k_range[0] > k_range[1]
            ):
                raise ValidationError(f"solution.k_range must be [lo, hi] integers with lo <= hi, got {k_range!r}.")
            k_range = (k_range[0], k_range[1])
        weights = record.get("weights")
        if weights is not None:
            if k_range is None:
                raise ValidationError("solution.weights needs solution.k_range.")
            weights = tuple(complex_list_from_record(weights, "solution.weights"))
        unchecked = record.get("unchecked", False)
        if not isinstance(unchecked, bool):
            raise ValidationError(f"solution.unchecked must be true or false, got {unchecked!r}.")
        return cls(k_index, k_range, weights, unchecked)

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"unchecked": self.unchecked}
        if self.k_range is None:
            record["k_index"] = self.k_index
        else:
            record["k_range"] = list(self.k_range)
            if self.weights is not None:
                record["weights"] = [complex_to_record(w) for w in self.weights]
        return record


@dataclass(frozen=True)
class VerifySection:
    h: float = 1e-2
    richardson_levels: int = 2
    tolerance: float = 1e-4
    symbolic_tolerance: float = 1e-9
    sample_points: int = 5

    def __post_init__(self) -> None:
        self.fd_config()
        for name in ("tolerance", "symbolic_tolerance"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                raise ValidationError(f"verify.{name} must be a positive number, got {value!r}.")
        if isinstance(self.sample_points, bool) or not isinstance(self.sample_points, int) or self.sample_points < 1:
            raise ValidationError(f"verify.sample_points must be an integer >= 1, got {self.sample_points!r}.")

    def fd_config(self) -> FDConfig:
        return FDConfig(h=self.h, richardson_levels=self.richardson_levels)

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> VerifySection:
        reject_unknown_keys(record, set(cls.__dataclass_fields__), "verify")
        return cls(**record)

    def to_record(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class OutputSection:
    format: str = "csv"
    path: str | None = None

    def __post_init__(self) -> None:
        if self.format not in OUTPUT_FORMATS:
            raise ValidationError(f"output.format must be one of {list(OUTPUT_FORMATS)}, got {self.format!r}.")
        if self.path is not None and not isinstance(self.path, str):
            raise ValidationError(f"output.path must be a string or null, got {self.path!r}.")

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> OutputSection:
        reject_unknown_keys(record, {"format", "path"}, "output")
        return cls(**record)

    def to_record(self) -> dict[str, Any]:
        return {"format": self.format, "path": self.path}


def _params_from_record(record: Any) -> SpectralParams:
    if not isinstance(record, dict):
        raise ValidationError(f"algebra: expected an object, got {record!r}.")
    reject_unknown_keys(record, {"n", "k", "m", "branch", "mode", "free_g"}, "algebra")
    missing = {"n", "k", "m"} - set(record)
    if missing:
        raise ValidationError(f"algebra: missing {', '.join(sorted(missing))}.")
    free_g = record.get("free_g")
    return SpectralParams(
        n=record["n"],
        k=tuple(complex_list_from_record(record["k"], "algebra.k")),
        m=tuple(complex_list_from_record(record["m"], "algebra.m")),
        branch=record.get("branch", 1),
        mode=record.get("mode", Mode.BIHARMONIC.value),
        free_g=None if free_g is None else tuple(complex_list_from_record(free_g, "algebra.free_g")),
    )


def _params_to_record(p: SpectralParams) -> dict[str, Any]:
    record: dict[str, Any] = {
        "n": p.n,
        "k": [complex_to_record(c) for c in p.k],
        "m": [complex_to_record(c) for c in p.m],
        "branch": p.branch,
        "mode": p.mode.value,
    }
    if p.free_g is not None:
        record["free_g"] = [complex_to_record(c) for c in p.free_g]
    return record


def _grid_from_record(record: Any) -> GridSpec:
    if not isinstance(record, dict):
        raise ValidationError(f"grid: expected an object, got {record!r}.")
    reject_unknown_keys(record, {"min", "max", "steps"}, "grid")
    missing = {"min", "max", "steps"} - set(record)
    if missing:
        raise ValidationError(f"grid: missing {', '.join(sorted(missing))}.")
    return GridSpec(record["min"], record["max"], record["steps"])


def _section(document: dict[str, Any], name: str) -> dict[str, Any]:
    value = document.get(name, {})
    if not isinstance(value, dict):
        raise ValidationError(f"{name}: expected an object, got {value!r}.")
    return value


@dataclass(frozen=True)
class RunConfig:
    """One experiment: basis parameters, F, which U_k, where to evaluate, how to verify and write."""

    params: SpectralParams
    function: HolomorphicFn
    solution: SolutionSection = field(default_factory=SolutionSection)
    grid: GridSpec | None = None
    verify: VerifySection = field(default_factory=VerifySection)
    output: OutputSection = field(default_factory=OutputSection)

    @classmethod
    def from_dict(cls, document: Any) -> RunConfig:
        if not isinstance(document, dict):
            raise ValidationError(f"run config must be a JSON object, got {type(document).__name__}.")
        reject_unknown_keys(document, set(SECTIONS), "config")
        for required in ("algebra", "function"):
            if required not in document:
                raise ValidationError(f"config: missing section '{required}'.")
        params = _params_from_record(document["algebra"])
        solution = SolutionSection.from_record(_section(document, "solution"))
        solution.validate(params.n)
        run = cls(
            params=params,
            function=from_record(document["function"]),
            solution=solution,
            grid=None if document.get("grid") is None else _grid_from_record(document["grid"]),
            verify=VerifySection.from_record(_section(document, "verify")),
            output=OutputSection.from_record(_section(document, "output")),
        )
        logger.debug("run config parsed: n=%d mode=%s indices=%s", params.n, params.mode.value, solution.indices)
        return run

    def to_dict(self) -> dict[str, Any]:
        return {
            "algebra": _params_to_record(self.params),
            "function": self.function.to_record(),
            "solution": self.solution.to_record(),
            "grid": None if self.grid is None else self.grid.to_record(),
            "verify": self.verify.to_record(),
            "output": self.output.to_record(),
        }


def parse_override(text: str) -> tuple[str, str, Any]:
    """'section.key=JSON' -> (section, key, value); a value that is not JSON is kept as a string."""
    target, sep, raw = text.partition("=")
    section, dot, key = target.partition(".")
    if not sep or not dot or not section or not key:
        raise ValidationError(f"override must look like section.key=value, got {text!r}.")
    if section not in SECTIONS:
        raise ValidationError(f"override section {section!r} is not one of {list(SECTIONS)}.")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return section, key, value


def apply_overrides(document: dict[str, Any], overrides: Iterable[str]) -> dict[str, Any]:
    merged = json.loads(json.dumps(document))
    for text in overrides:
        section, key, value = parse_override(text)
        target = merged.get(section)
        if target is None:
            target = merged[section] = {}
        if not isinstance(target, dict):
            raise ValidationError(f"cannot override {section}.{key}: section is not an object.")
        target[key] = value
        logger.debug("override %s.%s = %r", section, key, value)
    return merged


def load_run_config(path: str | Path, overrides: Iterable[str] = ()) -> RunConfig:
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ValidationError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path} is not valid JSON: {exc}") from exc
    run = RunConfig.from_dict(apply_overrides(document, overrides))
    logger.info("Loaded run config from %s.", path)
    return run


@dataclass
class Config:
    config_path: str = field(default_factory=lambda: os.getenv("HYPERBIH_CONFIG", "run_config.json"))
    log_level: str = field(default_factory=lambda: os.getenv("LOG_LEVEL", "INFO").upper())

    # Run document; loaded on demand by the commands that need it
    run: RunConfig | None = None

    def load_run(self, overrides: Iterable[str] = ()) -> RunConfig:
        try:
            self.run = load_run_config(self.config_path, overrides)
        except Exception:
            logger.exception("Failed to load run config from %s.", self.config_path)
            raise
        return self.run

    def require_run(self) -> RunConfig:
        if self.run is None:
            raise ValidationError("this command needs a run config; pass --config or set HYPERBIH_CONFIG.")
        return self.run


def load_config() -> Config:
    return Config()
