"""
basis_report.py - solves the characteristic equation for the configured algebra and reports the basis.

Prints g_r, constrained_count, the W sequence, the characteristic residual and
the linear forms xi_r. The solved BasisTriple is left in context["basis"] for
downstream tools.

Schema: docs/schema.md
"""
from __future__ import annotations

import logging
import time
from typing import Any

from hypercomplex.characteristic import BasisTriple, char_residual, solve_g, w_coefficients
from hypercomplex.records import complex_text


def run(config: Any, logger: logging.Logger, context: dict[str, Any]) -> dict[str, Any]:
    """
    Solve and print the basis of the configured run.

    Args:
        config:  Config dataclass instance with a loaded run document.
        logger:  Bound logger for this tool.
        context: Shared pipeline context (read/write).

    Returns:
        dict with keys: status, rows_written, errors, duration_s
    """
    start = time.perf_counter()
    errors: list[str] = []

    try:
        basis = solved_basis(config, context, logger)
        residual = char_residual(basis)
        passed = basis.residual_ok()
        if not passed:
            errors.append("characteristic residual above tolerance")
            logger.warning("Basis fails the characteristic equation: %s", residual)

        lines = render_report(basis, residual, config.require_run().params, passed)

        from tools import output_writer  # noqa: PLC0415

        rows_written = output_writer.write_text(None, lines, logger)

    except Exception:
        logger.exception("basis_report failed.")
        raise

    return {
        "status": "success" if passed else "failed",
        "rows_written": rows_written,
        "errors": errors,
        "duration_s": round(time.perf_counter() - start, 3),
    }


def solved_basis(config: Any, context: dict[str, Any], logger: logging.Logger) -> BasisTriple:
    """Basis from context when an earlier tool solved it, otherwise solve and cache it."""
    if "basis" not in context:
        params = config.require_run().params
        context["basis"] = solve_g(params)
        logger.info(
            "Solved basis: n=%d mode=%s branch=%+d constrained_count=%d",
            params.n, params.mode.value, params.branch, context["basis"].constrained_count,
        )
    return context["basis"]


def linear_form_text(k: complex, m: complex, g: complex) -> str:
    """k x + m y + g z with zero terms dropped."""
    parts = []
    for coeff, var in ((k, "x"), (m, "y"), (g, "z")):
        if coeff == 0:
            continue
        text = complex_text(coeff)
        if text == "1":
            parts.append(var)
        elif text == "-1":
            parts.append(f"-{var}")
        else:
            parts.append(f"({text})·{var}")
    return " + ".join(parts) if parts else "0"


def render_report(basis: BasisTriple, residual: list[complex], params: Any, passed: bool) -> list[str]:
    W = w_coefficients(basis.k, basis.m, basis.g).W
    lines = [
        f"n = {basis.n}, mode = {params.mode.value}, branch = {params.branch:+d}",
        f"constrained_count = {basis.constrained_count}",
    ]
    lines += [f"g_{r} = {complex_text(g)}" for r, g in enumerate(basis.g)]
    lines += [f"W_{r} = {complex_text(w)}" for r, w in enumerate(W)]
    lines += [f"residual_{r} = {complex_text(c)}" for r, c in enumerate(residual)]
    lines += [
        f"ξ{r} = {linear_form_text(k, m, g)}"
        for r, (k, m, g) in enumerate(zip(basis.k, basis.m, basis.g))
    ]
    lines.append(f"characteristic residual: {'pass' if passed else 'FAIL'}")
    return lines
