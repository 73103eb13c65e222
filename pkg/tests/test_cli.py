import json
import subprocess
import sys

import pytest

from shiftcolor import cli

A2_DOC = {"kind": "finite", "names": ["a", "b"], "leq": [[True, False], [False, True]]}
WORKED = '{"pre":[],"per":[{"seq":["a","b"]},{"seq":["b","a"]}]}'


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, doc in {
        "a2": A2_DOC,
        "seqa2": {"kind": "seq", "of": A2_DOC},
        "chain": {"kind": "finite", "names": ["a", "b", "c"],
                  "leq": [[True, True, True], [False, True, True], [False, False, True]]},
        "broken": {"kind": "finite", "names": ["a"], "leq": [[False]]},
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    return paths


def call(capsys, *argv):
    code = cli.run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_check(capsys, specs):
    code, out = call(capsys, "check", "--spec", specs["seqa2"],
                     "--left", '{"seq":["a"]}', "--right", '{"seq":["b","a"]}')
    assert code == 0
    assert out == {"leq": True, "witness": [[0, 1]], "oracle": True}


def test_color_worked_chain(capsys, specs):
    code, out = call(capsys, "color", "--spec", specs["seqa2"], "--x", WORKED)
    assert code == 0 and out["color"] == 0
    assert [e["branch"] for e in out["trace"]] == ["B", "d-infty", "witness", "base"]


def test_bad_and_not_bad(capsys, specs):
    code, out = call(capsys, "bad", "--spec", specs["a2"], "--x", '{"pre":[],"per":["a","b"]}')
    assert code == 0 and out["bad"]
    code, out = call(capsys, "color", "--spec", specs["a2"], "--x", '{"pre":[],"per":["a"]}')
    assert code == 2 and "not bad" in out["error"]


def test_gen_bad(capsys, specs):
    code, out = call(capsys, "gen-bad", "--spec", specs["a2"], "--count", "5")
    assert code == 0 and out["count"] == 2


def test_derive(capsys, specs, tmp_path):
    fig = tmp_path / "d.png"
    code, out = call(capsys, "derive", "--spec", specs["seqa2"], "--x", WORKED,
                     "--figure", str(fig))
    assert code == 0
    assert out["M"] == {"pre": [], "per": [1]}
    assert out["witness"] == {"pre": [], "per": ["a", "b"]}
    assert fig.stat().st_size > 0


def test_audit_chain_passes_with_zero_samples(capsys, specs, tmp_path):
    fig = tmp_path / "r.png"
    code, out = call(capsys, "audit", "--suite", "properness", "--spec", specs["chain"],
                     "--count", "20", "--figure", str(fig))
    assert code == 0 and out["valid"] == 0 and out["notes"]
    assert "elapsed_s" not in out
    assert fig.stat().st_size > 0


def test_audit_violation_exit_code(capsys, specs):
    code, out = call(capsys, "audit", "--suite", "well-order", "--spec", specs["a2"],
                     "--max-pre", "0", "--max-per", "2")
    assert code == 1 and not out["passed"]


def test_audit_timing_flag(capsys):
    code, out = call(capsys, "audit", "--suite", "oracle", "--spec", "zoo:A2", "--timing")
    assert code == 0 and "elapsed_s" in out


@pytest.mark.parametrize("argv", [
    [],
    ["check"],
    ["color", "--spec", "zoo:Nope", "--x", "{}"],
    ["audit", "--suite", "bogus", "--spec", "zoo:A2"],
    ["bad", "--spec", "zoo:A2", "--x", "not json"],
    ["bad", "--spec", "zoo:A2", "--x", '{"pre":[],"per":["z"]}'],
    ["derive", "--spec", "zoo:A2", "--x", '{"pre":[],"per":["a","b"]}'],
    ["audit", "--suite", "identities", "--spec", "zoo:A2"],
])
def test_usage_errors_exit_2(capsys, argv):
    code = cli.run(argv)
    assert code == 2
    assert "error" in json.loads(capsys.readouterr().out)


def test_invalid_spec_file(capsys, specs):
    code, out = call(capsys, "bad", "--spec", specs["broken"], "--x", '{"pre":[],"per":["a"]}')
    assert code == 2 and "reflexive" in out["error"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shiftcolor", "bad", "--spec", "zoo:A2",
                           "--x", '{"pre":[],"per":["b","a"]}'],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["bad"] is True
