"""Tests for tools/field_exporter.py"""
from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from config import Config, RunConfig
from hypercomplex.characteristic import solve_g
from hypercomplex.errors import ValidationError
from hypercomplex.solutions import Field, SolutionSpec, Superposition
from tools.field_exporter import build_target, run

LOG = logging.getLogger("test_field_exporter")
SAMPLE = Path(__file__).resolve().parent.parent / "configs" / "sample_run.json"

# basis k=(1,0), m=(0,0), g=(i,1); F = t^3; U_1 = 3 z (x + i z)^2
WITNESS_RUN = {
    "algebra": {"n": 2, "k": [1, 0], "m": [0, 0], "free_g": [0, 1]},
    "function": {"kind": "polynomial", "coefficients": [0, 0, 0, 1]},
    "solution": {"k_index": 1},
    "grid": {"min": [1, 0, 1], "max": [1, 0, 1], "steps": [1, 1, 1]},
}


def _config(document: dict, **sections) -> Config:
    merged = {**document, **sections}
    return Config(config_path="unused.json", run=RunConfig.from_dict(merged))


def test_single_point_csv(capsys):
    result = run(config=_config(WITNESS_RUN), logger=LOG, context={})
    assert result["status"] == "success"
    assert result["rows_written"] == 1
    assert capsys.readouterr().out == "x,y,z,re,im\n1,0,1,0,6\n"


def test_superposition_csv(capsys):
    config = _config(WITNESS_RUN, solution={"k_range": [0, 1], "weights": [1, 2]})
    run(config=config, logger=LOG, context={})
    # U_0 = (1 + i)^3 = -2 + 2i, plus 2 * 6i
    assert capsys.readouterr().out.splitlines()[1] == "1,0,1,-2,14"


def test_json_document(tmp_path):
    target = tmp_path / "field.json"
    config = _config(WITNESS_RUN, output={"format": "json", "path": str(target)})
    result = run(config=config, logger=LOG, context={})
    document = json.loads(target.read_text(encoding="utf-8"))

    assert result["rows_written"] == 1
    assert document["values"] == [[0.0, 6.0]]
    assert document["basis"]["g"] == [[0.0, 1.0], [1.0, 0.0]]
    assert document["basis"]["constrained_count"] == 1
    assert document["basis"]["mode"] == "biharmonic"
    assert document["function"] == {"kind": "polynomial", "coefficients": [[0.0, 0.0]] * 3 + [[1.0, 0.0]]}
    assert document["solution"] == {"k_index": 1, "unchecked": False}
    assert document["grid"] == {"min": [1.0, 0.0, 1.0], "max": [1.0, 0.0, 1.0], "steps": [1, 1, 1]}


def test_sample_config_writes_125_rows(tmp_path):
    target = tmp_path / "sample.csv"
    config = Config(config_path=str(SAMPLE))
    config.load_run([f"output.path={json.dumps(str(target))}"])
    context: dict = {}

    result = run(config=config, logger=LOG, context=context)

    lines = target.read_text(encoding="utf-8").splitlines()
    assert result["rows_written"] == 125
    assert len(lines) == 126
    assert lines[0] == "x,y,z,re,im"
    assert lines[1].startswith("-1,-1,-1,")
    assert lines[2].startswith("-1,-1,-0.5,")
    assert isinstance(context["field"], Field)
    assert "basis" in context


def test_export_is_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        config = Config(config_path=str(SAMPLE))
        config.load_run([f"output.path={json.dumps(str(path))}", 'function.coefficients=[1, [0, 1], 0.5]'])
        run(config=config, logger=LOG, context={})
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_goes_through_output_writer(mocker):
    write_table = mocker.patch("tools.output_writer.write_table", return_value=1)
    run(config=_config(WITNESS_RUN), logger=LOG, context={})
    target, records, columns, _ = write_table.call_args.args
    assert target is None
    assert columns == ["x", "y", "z", "re", "im"]
    assert records[0]["im"] == pytest.approx(6)


def test_missing_grid_rejected():
    document = {key: value for key, value in WITNESS_RUN.items() if key != "grid"}
    with pytest.raises(ValidationError, match="grid"):
        run(config=_config(document), logger=LOG, context={})


def test_build_target_shapes():
    solved = solve_g(_config(WITNESS_RUN).run.params)
    assert isinstance(build_target(_config(WITNESS_RUN).run, solved), SolutionSpec)
    target = build_target(_config(WITNESS_RUN, solution={"k_range": [0, 1]}).run, solved)
    assert isinstance(target, Superposition)
    assert [w for w, _ in target.members] == [1, 1]
    assert [spec.k for _, spec in target.members] == [0, 1]
