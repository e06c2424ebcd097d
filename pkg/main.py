"""
main.py - command-line front end and orchestrator for the hypercomplex biharmonic toolkit.

Each command runs its tools in order with a shared context and maps failures
onto exit codes: 0 success, 2 validation error, 3 domain error, 4 verification
failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from types import ModuleType
from typing import Any, Sequence

from config import Config, load_config
from hypercomplex.errors import DomainError, ValidationError, VerificationError
from tools import basis_report, field_exporter, formula_printer, reference_checker, verifier

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_VERIFICATION = 4

COMMANDS: dict[str, list[tuple[str, ModuleType]]] = {
    "basis": [("basis_report", basis_report)],
    "formula": [("formula_printer", formula_printer)],
    "eval": [("field_exporter", field_exporter)],
    "verify": [("verifier", verifier)],
    "paper-check": [("reference_checker", reference_checker)],
}

# commands that read the run document
NEEDS_RUN_CONFIG = {"basis", "eval", "verify"}


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s — %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def run_workflow(config: Config, command: str, options: dict[str, Any] | None = None) -> dict[str, Any]:
    """Run the tools registered for a command and return a summary of results."""
    logger.info("=== %s starting ===", command)
    workflow_start = time.perf_counter()

    results: dict[str, Any] = {}
    context: dict[str, Any] = {"options": options or {}}  # shared data passed between tools

    for tool_name, tool_module in COMMANDS[command]:
        logger.info("Running tool: %s", tool_name)
        tool_start = time.perf_counter()
        try:
            result = tool_module.run(config=config, logger=logging.getLogger(tool_name), context=context)
            result["duration_s"] = round(time.perf_counter() - tool_start, 3)
            results[tool_name] = result
            context[tool_name] = result
            logger.info(
                "Tool %s finished — status=%s, rows_written=%s, duration=%.3fs",
                tool_name,
                result.get("status"),
                result.get("rows_written"),
                result["duration_s"],
            )
        except Exception:
            logger.exception("Tool %s raised an unhandled exception.", tool_name)
            raise

    total_duration = round(time.perf_counter() - workflow_start, 3)
    logger.info("=== %s complete in %.3fs ===", command, total_duration)
    return {"tools": results, "total_duration_s": total_duration}


def _config_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="run document (JSON); default $HYPERBIH_CONFIG or run_config.json")
    shared.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=JSON",
        help="override one key of the run document, e.g. --set solution.k_index=2",
    )
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperbih",
        description="Exact solutions of the 3D biharmonic equation from hypercomplex basis triples.",
    )
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default $LOG_LEVEL or INFO)")
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _config_flags()

    sub.add_parser("basis", parents=[shared], help="solve g_r and print the basis with its residual")

    formula = sub.add_parser("formula", help="print U_k in terms of xi_r and derivatives of F")
    formula.add_argument("--k", type=int, default=0, help="index k (0..24)")
    formula.add_argument("--k-to", type=int, help="print U_k..U_(k-to) inclusive")
    formula.add_argument("--format", choices=["text", "latex"], default="text")
    formula.add_argument("--out", help="write to this file instead of stdout")

    sub.add_parser("eval", parents=[shared], help="evaluate the solution field on the configured grid")

    verify = sub.add_parser("verify", parents=[shared], help="certify Delta^2 U = 0 symbolically and by finite differences")
    verify.add_argument("--out", help="also write the JSON verification report here")

    check = sub.add_parser("paper-check", help="diff the published A_k table and report the printed g_1, g_2")
    check.add_argument("--out", help="also write the JSON discrepancy report here")
    return parser


def _options(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"command", "config", "overrides", "log_level"}
    return {key: value for key, value in vars(args).items() if key not in skip}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config()
    configure_logging(args.log_level or config.log_level)
    if getattr(args, "config", None):
        config.config_path = args.config

    try:
        if args.command in NEEDS_RUN_CONFIG:
            config.load_run(args.overrides)
        summary = run_workflow(config, args.command, _options(args))
    except ValidationError as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_VALIDATION
    except DomainError as exc:
        logger.error("Domain error: %s", exc)
        return EXIT_DOMAIN
    except VerificationError as exc:
        logger.error("Verification error: %s", exc)
        return EXIT_VERIFICATION

    if any(result.get("status") == "failed" for result in summary["tools"].values()):
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
