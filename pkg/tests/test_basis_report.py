"""Tests for tools/basis_report.py"""
from __future__ import annotations

import logging

import pytest

from config import Config, RunConfig
from hypercomplex.characteristic import solve_g
from tools.basis_report import linear_form_text, run, solved_basis

LOG = logging.getLogger("test_basis_report")


def _config(**algebra) -> Config:
    record = {"n": 4, "k": [1, 0, 0, 0], "m": [0, 0, 0, 0]}
    record.update(algebra)
    return Config(config_path="unused.json", run=RunConfig.from_dict({"algebra": record, "function": {"kind": "exp"}}))


def test_report_lines(capsys):
    context: dict = {}
    result = run(config=_config(), logger=LOG, context=context)
    out = capsys.readouterr().out.splitlines()

    assert result["status"] == "success"
    assert result["errors"] == []
    assert result["rows_written"] == len(out)
    assert out[0] == "n = 4, mode = biharmonic, branch = +1"
    assert out[1] == "constrained_count = 2"
    assert "g_0 = i" in out
    assert "W_0 = 0" in out
    assert "ξ0 = x + (i)·z" in out
    assert out[-1] == "characteristic residual: pass"


def test_negative_branch(capsys):
    run(config=_config(branch=-1, mode="harmonic"), logger=LOG, context={})
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n = 4, mode = harmonic, branch = -1"
    assert out[1] == "constrained_count = 4"
    assert "g_0 = -i" in out


def test_basis_left_in_context():
    config = _config(k=[1, 0.5, 0, 0])
    context: dict = {}
    run(config=config, logger=LOG, context=context)
    assert context["basis"] == solve_g(config.run.params)


def test_solved_basis_reuses_context():
    config = _config()
    sentinel = object()
    assert solved_basis(config, {"basis": sentinel}, LOG) is sentinel


def test_broken_basis_fails(capsys):
    config = _config()
    basis = solve_g(config.run.params)
    broken = basis.with_g([basis.g[0], 1, 0, 0])
    result = run(config=config, logger=LOG, context={"basis": broken})
    assert result["status"] == "failed"
    assert result["errors"]
    assert capsys.readouterr().out.splitlines()[-1] == "characteristic residual: FAIL"


def test_writer_failure_propagates(mocker):
    mocker.patch("tools.output_writer.write_text", side_effect=OSError("closed"))
    with pytest.raises(OSError):
        run(config=_config(), logger=LOG, context={})


@pytest.mark.parametrize(
    "k,m,g,expected",
    [
        (1, 0, 1j, "x + (i)·z"),
        (-1, 2, 0, "-x + (2)·y"),
        (0, 0, 0, "0"),
        (0.5, 1 - 1j, -1, "(0.5)·x + (1-i)·y + -z"),
    ],
)
def test_linear_form_text(k, m, g, expected):
    assert linear_form_text(k, m, g) == expected
