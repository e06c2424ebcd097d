"""
output_writer.py - writes command artifacts (CSV tables, JSON documents, text reports).

ALL artifact writes from other tools must go through this module. A target of
None means stdout. Output is byte-stable: identical inputs give identical bytes.

Schema: docs/schema.md
"""
from __future__ import annotations

import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

import pandas as pd

from hypercomplex.records import number_text

FIELD_COLUMNS = ["x", "y", "z", "re", "im"]


def write_table(
    target: str | Path | None,
    records: list[dict[str, Any]],
    columns: Sequence[str],
    logger: logging.Logger,
) -> int:
    """
    Write records as CSV with a fixed header.

    Args:
        target:  File path, or None for stdout.
        records: Row dicts; floats are rendered with number_text.
        columns: Header and column order.
        logger:  Bound logger.

    Returns:
        Number of data rows written.
    """
    df = pd.DataFrame(_records_to_rows(records, columns), columns=list(columns))
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    _emit(target, buffer.getvalue())
    logger.info("Wrote %d rows to %s.", len(df), _describe(target))
    return len(df)


def write_json(target: str | Path | None, payload: Any, logger: logging.Logger) -> int:
    """Write payload as sorted, indented JSON. Returns 1 (documents written)."""
    _emit(target, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    logger.info("Wrote JSON document to %s.", _describe(target))
    return 1


def write_text(target: str | Path | None, lines: Sequence[str], logger: logging.Logger) -> int:
    """Write lines of a text report. Returns the number of lines."""
    _emit(target, "".join(f"{line}\n" for line in lines))
    logger.debug("Wrote %d text lines to %s.", len(lines), _describe(target))
    return len(lines)


def _records_to_rows(records: list[dict[str, Any]], columns: Sequence[str]) -> list[list[str]]:
    rows = []
    for record in records:
        missing = [c for c in columns if c not in record]
        if missing:
            raise KeyError(f"record is missing column(s) {missing}: {record!r}")
        rows.append([_cell(record[c]) for c in columns])
    return rows


def _cell(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, (int, float)):
        return number_text(value)
    return str(value)


def _emit(target: str | Path | None, text: str) -> None:
    if target is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _describe(target: str | Path | None) -> str:
    return "stdout" if target is None else str(target)
