"""
reference_checker.py - cross-checks the published resolvent table and the printed g_1, g_2 closed forms.

Part (a) regenerates A_1..A_6 and diffs them against the embedded reference
table; a mismatch fails the tool. Part (b) is a discrepancy report: for each
sample parameter set it shows printed vs solved g_0..g_2, both characteristic
residuals, W_1 = 0, and the symbolic Delta^2 verdict for U_(n-1) with F = t^5.
Disagreement in (b) is reported, never failed.
"""
from __future__ import annotations

import logging
import time
from typing import Any

from hypercomplex.characteristic import ClosedFormReport, Mode, SpectralParams, printed_closed_forms
from hypercomplex.holo import Polynomial
from hypercomplex.records import complex_text, complex_to_record
from hypercomplex.resolvent import XiMonomial, resolvent_coeffs
from hypercomplex.solutions import SolutionSpec
from hypercomplex.verify import check_symbolic

X = XiMonomial.of

# A_k as published: pole order j -> {monomial: coefficient}
REFERENCE_A: dict[int, dict[int, dict[XiMonomial, int]]] = {
    1: {2: {X(1): 1}},
    2: {2: {X(2): 1}, 3: {X(1, 1): 1}},
    3: {2: {X(3): 1}, 3: {X(1, 2): 2}, 4: {X(1, 1, 1): 1}},
    4: {
        2: {X(4): 1},
        3: {X(1, 3): 2, X(2, 2): 1},
        4: {X(1, 1, 2): 3},
        5: {X(1, 1, 1, 1): 1},
    },
    5: {
        2: {X(5): 1},
        3: {X(1, 4): 2, X(2, 3): 2},
        4: {X(1, 1, 3): 3, X(1, 2, 2): 3},
        5: {X(1, 1, 1, 2): 4},
        6: {X(1, 1, 1, 1, 1): 1},
    },
    6: {
        2: {X(6): 1},
        3: {X(1, 5): 2, X(2, 4): 2, X(3, 3): 1},
        4: {X(1, 1, 4): 3, X(1, 2, 3): 6, X(2, 2, 2): 1},
        5: {X(1, 1, 1, 3): 4, X(1, 1, 2, 2): 6},
        6: {X(1, 1, 1, 1, 2): 5},
        7: {X(1, 1, 1, 1, 1, 1): 1},
    },
}

SAMPLE_CASES: list[tuple[str, SpectralParams]] = [
    ("k=(1,1,0) m=(0,0,0)", SpectralParams(3, (1, 1, 0), (0, 0, 0), mode=Mode.HARMONIC)),
    ("k=(1,0,0) m=(0,0,0)", SpectralParams(3, (1, 0, 0), (0, 0, 0), mode=Mode.HARMONIC)),
    (
        "k=(1,0.5,0.25) m=(0.5i,0.3,-0.2)",
        SpectralParams(3, (1, 0.5, 0.25), (0.5j, 0.3, -0.2), mode=Mode.HARMONIC),
    ),
]

PROBE_FUNCTION = Polynomial((0, 0, 0, 0, 0, 1))


def run(config: Any, logger: logging.Logger, context: dict[str, Any]) -> dict[str, Any]:
    """
    Produce the resolvent-table diff and the closed-form discrepancy report.

    Args:
        config:  Config dataclass instance (unused; the check is self-contained).
        logger:  Bound logger for this tool.
        context: Shared pipeline context; options["out"] receives the JSON report.

    Returns:
        dict with keys: status, rows_written, errors, duration_s
    """
    start = time.perf_counter()
    options = context.get("options", {})

    try:
        table_diff = diff_resolvent_table()
        errors = [line for lines in table_diff.values() for line in lines]
        if errors:
            logger.error("Resolvent table mismatch: %s", errors)

        cases = [closed_form_entry(label, params) for label, params in SAMPLE_CASES]
        disagreements = sum(1 for case in cases if not case["agrees"])
        logger.info("Closed-form check: %d of %d sample cases disagree with the solve.", disagreements, len(cases))

        from tools import output_writer  # noqa: PLC0415

        rows_written = output_writer.write_text(None, render(table_diff, cases), logger)
        if options.get("out"):
            output_writer.write_json(
                options["out"],
                {"resolvent_table": {f"A_{k}": diff for k, diff in table_diff.items()}, "closed_forms": cases},
                logger,
            )

        context["reference_check"] = {"table_diff": table_diff, "closed_forms": cases}

    except Exception:
        logger.exception("reference_checker failed.")
        raise

    return {
        "status": "success" if not errors else "failed",
        "rows_written": rows_written,
        "errors": errors,
        "duration_s": round(time.perf_counter() - start, 3),
    }


def diff_resolvent_table() -> dict[int, list[str]]:
    """Per k, the lines describing differences between generated and reference A_k; empty when equal."""
    diff: dict[int, list[str]] = {}
    for k, reference in REFERENCE_A.items():
        generated = {j: dict(poly) for j, poly in resolvent_coeffs(k).terms.items()}
        lines = []
        for j in sorted(set(reference) | set(generated)):
            want, got = reference.get(j, {}), generated.get(j, {})
            for mono in sorted(set(want) | set(got), key=lambda m: m.sort_key):
                if want.get(mono, 0) != got.get(mono, 0):
                    lines.append(
                        f"A_{k} pole {j} {mono.text() or '1'}: reference {want.get(mono, 0)}, generated {got.get(mono, 0)}"
                    )
        diff[k] = lines
    return diff


def _biharmonic_zero(report_triple: Any) -> bool:
    spec = SolutionSpec(report_triple, PROBE_FUNCTION, report_triple.n - 1, unchecked=True)
    return check_symbolic(spec, laplacians=2).is_zero


def closed_form_entry(label: str, params: SpectralParams) -> dict[str, Any]:
    report: ClosedFormReport = printed_closed_forms(params)
    return {
        "case": label,
        "mode": params.mode.value,
        "printed_g": [None if g is None else complex_to_record(g) for g in report.printed_g],
        "solved_g": [complex_to_record(g) for g in report.solved_g[: len(report.printed_g)]],
        "agreement": list(report.agreement),
        "agrees": report.agrees,
        "printed_residual": [complex_to_record(c) for c in report.printed_residual],
        "solved_residual": [complex_to_record(c) for c in report.solved_residual],
        "printed_w1_zero": report.printed_w1_zero,
        "solved_w1_zero": report.solved_w1_zero,
        "printed_biharmonic_zero": _biharmonic_zero(report.printed_triple),
        "solved_biharmonic_zero": _biharmonic_zero(report.solved_triple),
        "notes": list(report.notes),
    }


def _record_text(pair: list[float] | None) -> str:
    return "n/a" if pair is None else complex_text(complex(*pair))


def render(table_diff: dict[int, list[str]], cases: list[dict[str, Any]]) -> list[str]:
    lines = ["resolvent table A_1..A_6"]
    for k, diff in table_diff.items():
        lines.append(f"  A_{k}: {'match' if not diff else 'MISMATCH'}")
        lines += [f"    {line}" for line in diff]
    for case in cases:
        lines.append(f"closed forms {case['case']} [{case['mode']}]")
        for r, (printed, solved, agree) in enumerate(zip(case["printed_g"], case["solved_g"], case["agreement"])):
            verdict = "agree" if agree else "disagree"
            lines.append(f"  g_{r}: printed {_record_text(printed)} | solved {_record_text(solved)} | {verdict}")
        lines.append(
            "  residual printed: [" + ", ".join(_record_text(c) for c in case["printed_residual"]) + "]"
        )
        lines.append(
            "  residual solved:  [" + ", ".join(_record_text(c) for c in case["solved_residual"]) + "]"
        )
        lines.append(f"  W_1 = 0: printed {case['printed_w1_zero']}, solved {case['solved_w1_zero']}")
        lines.append(
            "  Delta^2 U (F=t^5): printed "
            f"{'zero' if case['printed_biharmonic_zero'] else 'nonzero'}, solved "
            f"{'zero' if case['solved_biharmonic_zero'] else 'nonzero'}"
        )
        lines += [f"  note: {note}" for note in case["notes"]]
    return lines
