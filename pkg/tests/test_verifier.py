"""Tests for tools/verifier.py"""
from __future__ import annotations

import json
import logging

import pytest

from config import Config, RunConfig
from hypercomplex.characteristic import solve_g
from hypercomplex.solutions import Point3
from tools.verifier import DEFAULT_SAMPLE_POINT, run, sample_points

LOG = logging.getLogger("test_verifier")

BASE_RUN = {
    "algebra": {"n": 4, "k": [1, 0.5, 0, 0.25], "m": [0, [0, 0.5], 0.3, 0], "free_g": [0, 0, 1, [0, 1]]},
    "function": {"kind": "polynomial", "coefficients": [0, 0, 0, 0, 1]},
    "solution": {"k_range": [0, 3]},
    "grid": {"min": [-0.5, -0.5, -0.5], "max": [0.5, 0.5, 0.5], "steps": [3, 3, 3]},
    "verify": {"sample_points": 3},
}


def _config(**sections) -> Config:
    return Config(config_path="unused.json", run=RunConfig.from_dict({**BASE_RUN, **sections}))


def test_polynomial_run_passes(capsys):
    context: dict = {}
    result = run(config=_config(), logger=LOG, context=context)
    lines = capsys.readouterr().out.splitlines()

    assert result["status"] == "success"
    assert result["errors"] == []
    assert len(lines) == 4
    assert lines[3].startswith("U_3 [biharmonic] symbolic_zero=true")
    assert all(line.endswith("-> pass") for line in lines)
    reports = context["verification"]
    assert [r.spec_id for r in reports] == ["U_0", "U_1", "U_2", "U_3"]
    assert all(r.symbolic_zero for r in reports)
    assert reports[0].harmonic_zero
    assert all(r.fd_points == 3 for r in reports)


def test_exp_has_no_symbolic_verdict(capsys):
    config = _config(function={"kind": "exp", "scale": [0.5, 0.5]}, solution={"k_index": 2})
    result = run(config=config, logger=LOG, context={})
    line = capsys.readouterr().out.strip()
    assert result["status"] == "success"
    assert "symbolic_zero=n/a" in line
    assert line.endswith("-> pass")


def test_broken_basis_fails(capsys):
    config = _config(solution={"k_index": 3})
    basis = solve_g(config.run.params)
    g = list(basis.g)
    g[1] += 1
    result = run(config=config, logger=LOG, context={"basis": basis.with_g(g)})
    assert result["status"] == "failed"
    assert result["errors"] == ["U_3 failed verification"]
    assert capsys.readouterr().out.strip().endswith("-> FAIL")


def test_broken_basis_fails_without_symbolic_oracle(capsys):
    config = _config(function={"kind": "exp"}, solution={"k_index": 2})
    basis = solve_g(config.run.params)
    g = list(basis.g)
    g[1] += 1
    result = run(config=config, logger=LOG, context={"basis": basis.with_g(g)})
    line = capsys.readouterr().out.strip()
    assert result["status"] == "failed"
    assert "symbolic_zero=n/a" in line
    assert "fd_zero=false" in line
    assert line.endswith("-> FAIL")


def test_json_report_written(tmp_path):
    target = tmp_path / "verify.json"
    run(config=_config(), logger=LOG, context={"options": {"out": str(target)}})
    document = json.loads(target.read_text(encoding="utf-8"))
    assert [r["spec_id"] for r in document["reports"]] == ["U_0", "U_1", "U_2", "U_3"]
    assert set(document["reports"][0]) == {
        "spec_id", "mode", "symbolic_zero", "max_coeff", "fd_residual",
        "fd_scale", "fd_zero", "harmonic_zero", "fd_points", "passed",
    }
    assert all(r["passed"] for r in document["reports"])


def test_tolerance_drives_verdict():
    config = _config(function={"kind": "exp"}, solution={"k_index": 1}, verify={"tolerance": 1e-300})
    result = run(config=config, logger=LOG, context={})
    assert result["status"] == "failed"


def test_sample_points_spread_over_grid():
    run_config = _config().run
    points = sample_points(run_config)
    assert points == [Point3(-0.5, -0.5, -0.5), Point3(0, 0, 0), Point3(0.5, 0.5, 0.5)]


def test_sample_points_capped_by_grid_size():
    run_config = _config(verify={"sample_points": 50}).run
    assert len(sample_points(run_config)) == 27


def test_sample_point_without_grid():
    run_config = _config(grid=None).run
    assert sample_points(run_config) == [DEFAULT_SAMPLE_POINT]


def test_verification_errors_propagate(mocker):
    mocker.patch("tools.verifier.verify_spec", side_effect=RuntimeError("boom"))
    with pytest.raises(RuntimeError):
        run(config=_config(), logger=LOG, context={})
