"""
formula_printer.py - prints U_k as a polynomial in xi_1..xi_k times derivatives of F at xi_0.

Options (context["options"]): k, k_to (inclusive upper end of a range), format
("text" or "latex"), out (file path, default stdout).
"""
from __future__ import annotations

import logging
import time
from typing import Any

from hypercomplex.errors import ValidationError
from hypercomplex.resolvent import u_formula


def run(config: Any, logger: logging.Logger, context: dict[str, Any]) -> dict[str, Any]:
    start = time.perf_counter()
    options = context.get("options", {})

    try:
        k = options.get("k", 0)
        k_to = options.get("k_to")
        k_to = k if k_to is None else k_to
        if k_to < k:
            raise ValidationError(f"formula range is empty: k={k}, k_to={k_to}.")
        fmt = options.get("format", "text")
        lines = render_formulas(range(k, k_to + 1), fmt)

        from tools import output_writer  # noqa: PLC0415

        rows_written = output_writer.write_text(options.get("out"), lines, logger)
        logger.info("Rendered %d formula(s) as %s.", rows_written, fmt)

    except Exception:
        logger.exception("formula_printer failed.")
        raise

    return {
        "status": "success",
        "rows_written": rows_written,
        "errors": [],
        "duration_s": round(time.perf_counter() - start, 3),
    }


def render_formulas(indices: range, fmt: str) -> list[str]:
    return [u_formula(k).render(fmt) for k in indices]
