"""Command-line behaviour: golden outputs, exit codes and error payloads."""

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from splitjac.cli import dispatch, dumps, to_json

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("SPLITJAC_REGEN_GOLDEN") == "1"

CASES = {
    "analyze_d8": ["analyze", "--curve", "1,0,-1,0,1,0,-1"],
    "analyze_l3": ["analyze", "--curve", "4,5,7,8,4,3,1"],
    "invariants": ["invariants", "--curve", "1,0,0,0,0,0,-1"],
    "l2_check": ["l2", "check", "--curve", "0,1,0,0,0,-1,0"],
    "l2_params": ["l2", "params", "--s1", "2", "--s2", "3"],
    "l2_group": ["l2", "group", "--u", "25", "--v", "-250"],
    "l2_jpair": ["l2", "jpair", "--u", "1", "--v", "2"],
    "l2_isogeny": ["l2", "isogeny", "--u", "5", "--v", "150", "--degree", "3"],
    "l2_derive_locus": ["l2", "derive-locus"],
    "l3_build": ["l3", "build", "--a", "1", "--b", "2"],
    "l3_check": ["l3", "check", "--curve", "4,5,7,8,4,3,1"],
    "l3_jpair": ["l3", "jpair", "--u", "2", "--v", "8"],
    "ram_list": ["ram", "list", "--degree", "5"],
    "hurwitz_count": ["hurwitz", "count", "--degree", "5", "--types", "2.2,2.2,2.2,3"],
    "verify_all_hurwitz": ["verify-all", "--only", "hurwitz"],
}


def run_cli(argv):
    buf = io.StringIO()
    code = dispatch(argv, buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out = run_cli(CASES[name])
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if REGEN:
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()
    # byte-stable across runs
    assert run_cli(CASES[name])[1] == out
    json.loads(out)


def test_json_conventions():
    _, out = run_cli(CASES["l2_params"])
    data = json.loads(out)
    # exact rationals are strings, plain counts stay integers
    assert data["u"] == "6"
    assert list(data) == sorted(data)
    assert out.startswith("{\n  ")
    _, out = run_cli(["l2", "jpair", "--u", "1/2", "--v", "3"])
    assert json.loads(out)["u"] == "1/2"
    _, out = run_cli(CASES["hurwitz_count"])
    assert json.loads(out)["class_count"] == 9


def test_to_json_conversions():
    from fractions import Fraction
    assert to_json(Fraction(3, 1)) == "3"
    assert to_json(3) == 3
    assert to_json(Fraction(-1, 4)) == "-1/4"
    assert to_json({"a": [Fraction(1, 2), None, True]}) == {"a": ["1/2", None, True]}
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}'


@pytest.mark.parametrize("argv", [
    ["analyze", "--curve", "1,2,3"],
    ["analyze", "--curve", "1,2,3,4,5,6,x"],
    ["l2", "group", "--u", "abc", "--v", "1"],
    ["nonsense"],
    ["l2", "isogeny", "--u", "1", "--v", "2", "--degree", "5"],
])
def test_invalid_input_exit_2(argv):
    code, out = run_cli(argv)
    assert code == 2
    err = json.loads(out)
    assert err["code"] == 2 and err["message"]


def test_singular_curve_exit_3():
    code, out = run_cli(["analyze", "--curve", "1,-2,1,1,-1,-1,1"])
    assert code == 3
    assert json.loads(out)["code"] == 3


def test_vanishing_j2_carries_note():
    # Y^2 = X^5 + 1 has J2 = J4 = J6 = 0
    code, out = run_cli(["l2", "check", "--curve", "0,1,0,0,0,0,1"])
    assert code == 3
    err = json.loads(out)
    assert "J2" in err["message"] and "paper_note" in err


def test_singular_normal_form_exit_3():
    code, out = run_cli(["l2", "params", "--s1", "3", "--s2", "3"])
    assert code == 3
    assert "singular" in json.loads(out)["message"]


def test_degree_too_large_exit_3():
    code, out = run_cli(["hurwitz", "count", "--degree", "9", "--types", "2,2"])
    assert code == 3


def test_ram_text_mode():
    code, out = run_cli(["ram", "list", "--degree", "3", "--text"])
    assert code == 0
    assert "[2],[2],[2],[2]" in out


def test_derive_locus_write(tmp_path, monkeypatch):
    monkeypatch.setenv("SPLITJAC_WORKDIR", str(tmp_path))
    code, out = run_cli(["l2", "derive-locus", "--write"])
    assert code == 0
    art = Path(json.loads(out)["artifact"])
    assert art.parent == tmp_path and art.exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "splitjac", "l2", "group", "--u", "0", "--v", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["group"] == "Z3:D8"
