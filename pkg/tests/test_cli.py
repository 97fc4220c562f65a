import io
import json
import subprocess
import sys

import pytest

from conftest import theory_path
from lawvere_cs import cli
from lawvere_cs.report import CheckReport

MONOID = theory_path("monoid.th")
MAGMA = theory_path("magma.th")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_roundtrip_monoid():
    code, out, _ = run("roundtrip", MONOID, "--max-n", "4", "--seed", "7")
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("PASS")


def test_models_monoid():
    code, out, _ = run("models", MONOID, "--size", "2")
    assert code == 0
    assert out.startswith("4 models")


def test_models_json_lists_tables():
    code, out, _ = run("models", MONOID, "--size", "2", "--json")
    data = json.loads(out)
    (entry,) = data["entries"]
    assert entry["witness"]["count"] == 4
    assert {"e": [0], "m": [0, 1, 1, 0]} in entry["witness"]["models"]


def test_homcount_clone():
    code, out, _ = run("homcount", "clone:2", "1", "1")
    assert code == 0 and out.splitlines()[0] == "4"
    assert run("homcount", "clone:2", "2", "1")[1].splitlines()[0] == "16"
    assert run("homcount", "telescope:2", "1", "1")[1].splitlines()[0] == "4"


def test_compose_normalizes():
    code, out, _ = run("compose", MONOID, "[2] m(x0,x1)", "[1] m(x0,e())")
    assert code == 0 and out.splitlines()[0] == "[2] m(x0,x1)"
    code, out, _ = run("compose", MAGMA, "[2] m(x0,x1), x1", "[2] m(x1,x0)")
    assert out.splitlines()[0] == "[2] m(x1,m(x0,x1))"


@pytest.mark.parametrize("argv", [
    ("check-theory", MAGMA, "--max-n", "2"),
    ("check-csystem", MONOID, "--max-n", "2"),
    ("check-csystem", "clone:2"),
    ("check-csystem", "telescope:1"),
    ("lc", MAGMA, "--max-n", "2"),
    ("cl", "clone:2"),
    ("cl", MAGMA, "--max-n", "2"),
    ("subsystem", "telescope:2", "--fiber", "2"),
])
def test_checks_pass(argv):
    code, out, err = run(*argv)
    assert code == 0, out + err


def test_json_schema_and_determinism():
    argv = ("check-csystem", "clone:2", "--json", "--seed", "3")
    a, b = run(*argv)[1], run(*argv)[1]
    assert a == b
    data = json.loads(a)
    assert list(data) == ["command", "seed", "bounds", "entries"]
    assert data["command"] == "check-csystem" and data["seed"] == 3
    keys = [(e["check"], e["instance"]) for e in data["entries"]]
    assert keys == sorted(keys)
    assert all(list(e)[:3] == ["check", "instance", "status"] for e in data["entries"])


@pytest.mark.parametrize("argv", [
    ("check-theory", "no/such/file.th"),
    ("check-csystem", "clone:0"),
    ("check-csystem", "clone:x"),
    ("compose", MAGMA, "[1] x3", "[1] x0"),
    ("frobnicate",),
    ("homcount", "clone:2", "1"),
    ("check-theory", MAGMA, "--max-n", "-1"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_parse_error_position(tmp_path):
    bad = tmp_path / "bad.th"
    bad.write_text("theory Bad\nop m : 2\neq [1] m(x0,x1) = x0\n")
    code, _, err = run("check-theory", str(bad))
    assert code == 2
    assert "bad.th:3:" in err


def test_budget_exit_code():
    assert run("models", MAGMA, "--size", "3", "--budget", "1000")[0] == 3
    assert run("compose", MONOID, "[1] m(e(),x0)", "[1] x0", "--rewrite-budget", "0")[0] == 3


def test_failing_check_exit_code(monkeypatch):
    def failing(args):
        rep = CheckReport()
        rep.record("X", "always", False, {"why": "test"})
        return rep, cli.make_probe(args), None

    monkeypatch.setitem(cli.COMMANDS, "check-theory", failing)
    code, out, _ = run("check-theory", MAGMA)
    assert code == 1
    assert "FAIL X always" in out and "witness" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lawvere_cs", "homcount", "clone:2", "1", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("4")
