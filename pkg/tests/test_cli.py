import json
import math
import subprocess
import sys

import pytest

from jlexponents import cli
from jlexponents.errors import CapExceededError
from jlexponents.formatting import dumps

KEYS = {
    "exponents": {"n", "s", "a", "k1", "k2", "p1", "p2", "p2_infinite", "p_sobolev", "hardy", "regime"},
    "root": {"n", "s", "a", "lo", "hi", "width", "f", "a_max", "evaluations"},
    "critical-dim": {"s", "n0"},
    "classify": {"n", "s", "p", "state", "log_margin"},
    "verify": {
        "n", "s", "a", "f_at_a", "residual_p1", "residual_p2",
        "closed_form_a", "closed_form_a_uncorrected", "jl_reference", "jl_reference_infinite",
    },
    "bounds": {"n", "s", "a", "f", "v1", "v2"},
    "thresholds": {"s", "upper", "lower"},
    "table1": {"rows", "all_verified"},
    "table2": {"rows", "all_ok"},
    "sweep": {"records"},
}

COMMANDS = {
    "exponents": ["exponents", "--n", "11", "--s", "1"],
    "root": ["root", "--n", "13", "--s", "2"],
    "critical-dim": ["critical-dim", "--s", "1"],
    "classify": ["classify", "--n", "11", "--s", "1", "--p", "5"],
    "verify": ["verify", "--n", "13", "--s", "2"],
    "bounds": ["bounds", "--n", "44", "--s", "2.5", "--a", "0.7"],
    "thresholds": ["thresholds", "--s", "1", "--eps1", "1", "--eps2", "0.4"],
    "table2": ["table2"],
    "sweep": ["sweep", "--s", "1", "--n-min", "9", "--n-max", "12"],
}


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exponents_json(capsys):
    code, out, _ = run(capsys, "exponents", "--n", "11", "--s", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["p2"] == pytest.approx(6.9220246, rel=1e-7)
    assert data["regime"] == "TwoRoots" and data["p2_infinite"] is False


def test_infinite_p2_is_null(capsys):
    code, out, _ = run(capsys, "exponents", "--n", "10", "--s", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["p2"] is None and data["p2_infinite"] is True
    assert data["regime"] == "SingleRoot"


def test_critical_dim(capsys):
    assert run(capsys, "critical-dim", "--s", "1") == (0, "10\n", "")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "11", "--s", "1", "--p", "5")
    assert code == 0
    state, margin = out.split()
    assert state == "Unstable"
    assert float(margin.split("=")[1]) > 0


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_json_key_sets(capsys, name):
    code, out, _ = run(capsys, *COMMANDS[name], "--json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == KEYS[name]


def test_table1_json(capsys, monkeypatch, table1_rows):
    monkeypatch.setattr(cli.tables, "table1_check", lambda: table1_rows)
    code, out, _ = run(capsys, "table1", "--json")
    data = json.loads(out)
    assert code == 0 and set(data) == KEYS["table1"]
    assert data["all_verified"] is True
    assert sum(len(r["claims"]) for r in data["rows"]) == 30


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_json_round_trips(capsys, name):
    _, out, _ = run(capsys, *COMMANDS[name], "--json")
    assert dumps(json.loads(out)) + "\n" == out


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_text_output(capsys, name):
    code, out, err = run(capsys, *COMMANDS[name])
    assert code == 0 and out and err == ""


def test_floats_are_17_digits(capsys):
    _, out, _ = run(capsys, "root", "--n", "11", "--s", "1", "--json")
    assert '"a": 0.95346258924559' in out
    assert json.loads(out)["a"] == pytest.approx(math.sqrt(10 / 11), abs=1e-14)


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--s", "1", "--n-min", "11", "--n-max", "13", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,s,a,k1,k2,p1,p2,p_sobolev,hardy" and len(lines) == 4


def test_sweep_out(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--s", "1", "--n-min", "9", "--n-max", "10", "--csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,s,a,")


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["bogus"],
            ["exponents", "--s", "1"],
            ["exponents", "--n", "x", "--s", "1"],
            ["exponents", "--n", "10.5", "--s", "1"],
            ["thresholds", "--s", "1"],
            ["classify", "--n", "11", "--s", "1"],
        ],
    )
    def test_usage(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and err

    def test_help_is_success(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_real_n_allowed_by_flag(self, capsys):
        code, out, _ = run(capsys, "exponents", "--n", "10.5", "--s", "1", "--allow-real-n", "--json")
        assert code == 0 and json.loads(out)["n"] == 10.5

    @pytest.mark.parametrize(
        "argv",
        [
            ["exponents", "--n", "2", "--s", "1"],
            ["exponents", "--n", "5", "--s", "-1"],
            ["classify", "--n", "11", "--s", "1", "--p", "1.1"],
            ["bounds", "--n", "6", "--s", "1", "--a", "0.5"],
            ["thresholds", "--s", "1", "--eps2", "1.5"],
            ["sweep", "--s", "1", "--n-min", "13", "--n-max", "11"],
            ["critical-dim", "--s", "0"],
        ],
    )
    def test_domain(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 3 and out == "" and "domain error" in err

    def test_numerical(self, capsys, monkeypatch):
        def boom(s):
            raise CapExceededError("scan cap passed")

        monkeypatch.setattr(cli.exponents, "critical_dimension", boom)
        code, out, err = run(capsys, "critical-dim", "--s", "1")
        assert code == 4 and out == "" and "scan cap" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "jlexponents", "critical-dim", "--s", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "12\n"
    proc = subprocess.run([sys.executable, "-m", "jlexponents", "exponents", "--n", "1", "--s", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 3
