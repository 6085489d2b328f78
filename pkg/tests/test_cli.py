import json
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from rigged.cli import main
from rigged.serialize import dumps, loads, sset_from_dict, sset_to_dict
from rigged.sset import horn

INPUTS = Path(__file__).resolve().parents[1] / "scripts" / "inputs"


@pytest.fixture(scope="module", autouse=True)
def inputs():
    subprocess.run([sys.executable, str(INPUTS.parent / "make_inputs.py")], check=True)


def invoke(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_build_product_counts():
    r = invoke("build", "product", "d1", "d1")
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert [len(d["cells"][str(i)]) for i in range(3)] == [4, 5, 2]


def test_build_is_byte_stable():
    a = invoke("build", "join", "d1", "d0").output
    b = invoke("build", "join", "d1", "d0").output
    assert a == b and a.endswith("\n")


def test_text_and_dot_formats():
    assert invoke("--format", "text", "build", "horn", "2", "1").output.strip() == "L2_1: counts (3, 2)"
    dot = invoke("--format", "dot", "build", "simplex", "1").output
    assert dot.startswith('digraph "D1"') and '"(0)" -> "(1)"' in dot


def test_sset_round_trip():
    S, _ = horn(3, 1)
    text = dumps(sset_to_dict(S))
    assert dumps(sset_to_dict(sset_from_dict(loads(text)))) == text


def test_bad_arguments_exit_2():
    assert invoke("build", "horn", "2", "5").exit_code == 2
    assert invoke("--k", "-1", "build", "simplex", "1").exit_code == 2
    assert invoke("build", "simplex", "x").exit_code == 2


def test_schema_error_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "A": {"top_dim": 0,\n  "cells": 5}\n}\n')
    r = invoke("compute", "comma", str(bad))
    assert r.exit_code == 2
    assert "line 3" in r.output and "A/cells" in r.output


def test_check_exit_codes():
    r = invoke("check", "prism", "--n", "2", "--m", "2")
    assert r.exit_code == 0
    line = json.loads(r.output.splitlines()[0])
    assert line["suite"] == "prism" and line["passed"] and line["instances"] == 9


def test_check_pullback_la_fails():
    r = invoke("check", "pullback-la", "--count", "30")
    assert r.exit_code == 1
    line = json.loads(r.output.splitlines()[0])
    assert line["failure_count"] > 0
    parts = line["details"]["failing_parts"]
    assert parts["reflection"] > 0
    assert all(v == 0 for k, v in parts.items() if k != "reflection")


def test_comma_of_identities():
    r = invoke("compute", "comma", str(INPUTS / "comma_identity.json"))
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert d["report"]["counts"] == [3, 3, 1]
    assert set(d["projections"]) == {"p1", "p2"}


def test_rins_from_file():
    r = invoke("rins", str(INPUTS / "inserter_d1.json"))
    assert r.exit_code == 0
    assert json.loads(r.output)["report"]["counts"][0] == 1


def test_weighted_power():
    r = invoke("compute", "weighted-limit", str(INPUTS / "power_bd1.json"))
    assert r.exit_code == 0
    rep = json.loads(r.output)["report"]
    assert rep["counts"] == [4, 5, 2]
    assert rep["tight_vertices"] == 1


def test_lift_universal_and_witness():
    yes = json.loads(invoke("lift", str(INPUTS / "lift_arrow_1.json")).output)
    no = json.loads(invoke("lift", str(INPUTS / "lift_arrow_0.json")).output)
    assert yes["universal"] and yes["witness"] is None
    assert not no["universal"] and no["witness"] is not None


def test_em_object_of_closure_monad():
    r = invoke("compute", "em-object", str(INPUTS / "monad_closure.json"))
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert d["report"]["algebras"] == 1 and d["report"]["ok"]


def test_out_option(tmp_path):
    out = tmp_path / "d2.json"
    assert invoke("--out", str(out), "build", "simplex", "2").exit_code == 0
    assert json.loads(out.read_text())["top_dim"] == 2
