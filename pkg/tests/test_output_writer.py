"""Tests for tools/output_writer.py"""
from __future__ import annotations

import json
import logging

import pytest

from tools import output_writer
from tools.output_writer import FIELD_COLUMNS, write_json, write_table, write_text

LOG = logging.getLogger("test_output_writer")


def test_table_to_stdout(capsys):
    rows = write_table(None, [{"x": 1.0, "y": 2.0, "z": 3.0, "re": 1.0, "im": 3.0}], FIELD_COLUMNS, LOG)
    assert rows == 1
    assert capsys.readouterr().out == "x,y,z,re,im\n1,2,3,1,3\n"


def test_table_number_rendering(capsys):
    write_table(None, [{"x": -0.0, "y": 0.1, "z": 1e-20, "re": -2.5, "im": 1e16}], FIELD_COLUMNS, LOG)
    assert capsys.readouterr().out.splitlines()[1] == "0,0.1,1e-20,-2.5,1e+16"


def test_table_to_file_creates_parent(tmp_path):
    target = tmp_path / "nested" / "field.csv"
    write_table(target, [{"x": 0, "y": 0, "z": 0, "re": 1, "im": 0}], FIELD_COLUMNS, LOG)
    assert target.read_bytes() == b"x,y,z,re,im\n0,0,0,1,0\n"


def test_empty_table_keeps_header(capsys):
    assert write_table(None, [], FIELD_COLUMNS, LOG) == 0
    assert capsys.readouterr().out == "x,y,z,re,im\n"


def test_missing_column_raises():
    with pytest.raises(KeyError):
        write_table(None, [{"x": 1}], FIELD_COLUMNS, LOG)


def test_json_is_sorted_and_indented(tmp_path):
    target = tmp_path / "report.json"
    assert write_json(target, {"b": 1, "a": [1, 2]}, LOG) == 1
    text = target.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("}\n")
    assert json.loads(text) == {"a": [1, 2], "b": 1}


def test_text_lines(capsys):
    assert write_text(None, ["one", "two"], LOG) == 2
    assert capsys.readouterr().out == "one\ntwo\n"


def test_identical_input_identical_bytes(tmp_path):
    records = [{"x": 0.1 * i, "y": 0.0, "z": -0.3, "re": 1 / 3, "im": -1 / 7} for i in range(10)]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    output_writer.write_table(a, records, FIELD_COLUMNS, LOG)
    output_writer.write_table(b, records, FIELD_COLUMNS, LOG)
    assert a.read_bytes() == b.read_bytes()
