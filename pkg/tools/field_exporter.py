"""
field_exporter.py - evaluates U_k (or a weighted sum over a k_range) on the configured grid and exports it.

CSV: columns x,y,z,re,im, one row per lattice point, z fastest.
JSON: grid metadata, basis, function, solution selection and [re, im] values.

Schema: docs/schema.md
"""
from __future__ import annotations

import logging
import time
from typing import Any

from hypercomplex.errors import ValidationError
from hypercomplex.records import complex_to_record
from hypercomplex.solutions import Evaluable, Field, SolutionSpec, grid_eval, superposition_of


def run(config: Any, logger: logging.Logger, context: dict[str, Any]) -> dict[str, Any]:
    """
    Evaluate the configured solution field and write it to output.path.

    Args:
        config:  Config dataclass instance with a loaded run document.
        logger:  Bound logger for this tool.
        context: Shared pipeline context (read/write).

    Returns:
        dict with keys: status, rows_written, errors, duration_s
    """
    start = time.perf_counter()

    try:
        run_config = config.require_run()
        if run_config.grid is None:
            raise ValidationError("eval needs a grid section (min, max, steps).")

        from tools import basis_report, output_writer  # noqa: PLC0415

        basis = basis_report.solved_basis(config, context, logger)
        target = build_target(run_config, basis)
        field = grid_eval(target, run_config.grid)

        if run_config.output.format == "csv":
            rows_written = output_writer.write_table(
                run_config.output.path, field.records(), output_writer.FIELD_COLUMNS, logger
            )
        else:
            output_writer.write_json(run_config.output.path, field_document(run_config, basis, field), logger)
            rows_written = len(field.values)

        context["field"] = field

    except Exception:
        logger.exception("field_exporter failed.")
        raise

    return {
        "status": "success",
        "rows_written": rows_written,
        "errors": [],
        "duration_s": round(time.perf_counter() - start, 3),
    }


def build_target(run_config: Any, basis: Any) -> Evaluable:
    """A single SolutionSpec for k_index, a Superposition for k_range."""
    solution = run_config.solution
    specs = [SolutionSpec(basis, run_config.function, k, solution.unchecked) for k in solution.indices]
    if solution.k_range is None:
        return specs[0]
    return superposition_of(specs, solution.resolved_weights)


def field_document(run_config: Any, basis: Any, field: Field) -> dict[str, Any]:
    return {
        "grid": field.grid.to_record(),
        "order": "z fastest, then y, then x",
        "basis": {
            "k": [complex_to_record(c) for c in basis.k],
            "m": [complex_to_record(c) for c in basis.m],
            "g": [complex_to_record(c) for c in basis.g],
            "constrained_count": basis.constrained_count,
            "mode": run_config.params.mode.value,
            "branch": run_config.params.branch,
        },
        "function": run_config.function.to_record(),
        "solution": run_config.solution.to_record(),
        "values": [complex_to_record(v) for v in field.values],
    }
