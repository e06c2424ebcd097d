"""
verifier.py - certifies Delta^2 U_k = 0 for each configured index.

The symbolic oracle runs when F is a polynomial; the finite-difference oracle
always runs, at verify.sample_points points spread over the grid (or at one
default point when no grid is configured). Human-readable lines go to stdout;
options["out"] receives the JSON report.

Schema: docs/schema.md
"""
from __future__ import annotations

import logging
import time
from typing import Any

import numpy as np

from hypercomplex.solutions import Point3, SolutionSpec
from hypercomplex.verify import VerificationReport, verify_spec

DEFAULT_SAMPLE_POINT = Point3(0.1, 0.2, 0.3)


def run(config: Any, logger: logging.Logger, context: dict[str, Any]) -> dict[str, Any]:
    """
    Verify every configured U_k.

    Args:
        config:  Config dataclass instance with a loaded run document.
        logger:  Bound logger for this tool.
        context: Shared pipeline context (read/write).

    Returns:
        dict with keys: status, rows_written, errors, duration_s
    """
    start = time.perf_counter()
    errors: list[str] = []
    options = context.get("options", {})

    try:
        run_config = config.require_run()

        from tools import basis_report, output_writer  # noqa: PLC0415

        basis = basis_report.solved_basis(config, context, logger)
        points = sample_points(run_config)
        reports = []
        for k in run_config.solution.indices:
            spec = SolutionSpec(basis, run_config.function, k, run_config.solution.unchecked)
            report = verify_spec(
                spec,
                points,
                cfg=run_config.verify.fd_config(),
                tolerance=run_config.verify.tolerance,
                symbolic_rtol=run_config.verify.symbolic_tolerance,
                spec_id=f"U_{k}",
                mode=run_config.params.mode.value,
            )
            reports.append(report)
            if not report.passed:
                errors.append(f"{report.spec_id} failed verification")
                logger.warning("%s failed: %s", report.spec_id, report.to_record())

        rows_written = output_writer.write_text(None, render_reports(reports), logger)
        if options.get("out"):
            output_writer.write_json(options["out"], {"reports": [r.to_record() for r in reports]}, logger)

        context["verification"] = reports

    except Exception:
        logger.exception("verifier failed.")
        raise

    return {
        "status": "success" if not errors else "failed",
        "rows_written": rows_written,
        "errors": errors,
        "duration_s": round(time.perf_counter() - start, 3),
    }


def sample_points(run_config: Any) -> list[Point3]:
    """verify.sample_points lattice points at evenly spaced positions in grid order."""
    if run_config.grid is None:
        return [DEFAULT_SAMPLE_POINT]
    points = list(run_config.grid.points())
    count = min(run_config.verify.sample_points, len(points))
    picks = np.unique(np.linspace(0, len(points) - 1, count).round().astype(int))
    return [points[i] for i in picks]


def render_reports(reports: list[VerificationReport]) -> list[str]:
    lines = []
    for r in reports:
        symbolic = "n/a" if r.symbolic_zero is None else str(r.symbolic_zero).lower()
        lines.append(
            f"{r.spec_id} [{r.mode}] symbolic_zero={symbolic} "
            f"fd_residual={r.fd_residual:.3e} fd_scale={r.fd_scale:.3e} fd_zero={str(r.fd_zero).lower()} "
            f"harmonic_zero={str(r.harmonic_zero).lower()} -> {'pass' if r.passed else 'FAIL'}"
        )
    return lines
