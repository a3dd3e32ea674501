import io
import json
import subprocess
import sys

import pytest

from modlie import cli


def invoke(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    return code, [json.loads(line) for line in buf.getvalue().splitlines()]


def test_simples_sl2():
    code, reports = invoke("simples", "--type", "A1", "--p", "5", "--chi", "1,1", "--lambda", "0")
    assert code == 0
    (r,) = reports
    assert r["schema"] == cli.SCHEMA and r["subcommand"] == "simples"
    assert r["verdicts"] and all(v["pass"] for v in r["verdicts"])


def test_report_fields_and_roundtrip():
    code, reports = invoke("springer", "--partition", "2,1", "--no-timing")
    assert code == 0
    r = reports[0]
    assert set(r) == {"subcommand", "check", "inputs", "outputs", "verdicts", "anchor", "seed", "timing", "schema"}
    assert r["outputs"]["coefficients"] == [1, 2] and r["timing"] is None
    rep = cli.Report.from_json(json.dumps(r))
    assert json.loads(rep.to_json()) == r


def test_report_requires_verdicts():
    with pytest.raises(ValueError):
        cli.Report("x", "y", {}, {}, [], "a", 0).to_json()


def test_deterministic_without_timing():
    argv = ("kw", "--type", "A2", "--p", "5", "--chi", "2,1", "--no-timing", "--seed", "3")
    assert invoke(*argv) == invoke(*argv)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("MODLIE_SEED", "7")
    _, reports = invoke("bwb", "--type", "A2", "--lambda=-5,-5")
    assert reports[0]["seed"] == 7
    monkeypatch.setenv("MODLIE_SEED", "x")
    assert invoke("bwb", "--type", "A2", "--lambda=-5,-5")[0] == 2


def test_translate_expectations():
    code, reports = invoke("translate", "--p", "5", "--chi", "1,1", "--lambda=-1", "--mu", "0", "--expect", "10")
    assert code == 0 and reports[0]["outputs"]["dim"] == 10
    code, reports = invoke("translate", "--p", "5", "--chi", "1,1", "--lambda=-1", "--mu", "0", "--expect", "9")
    assert code == 1
    assert [v["pass"] for v in reports[0]["verdicts"]] == [True, False]


@pytest.mark.parametrize("argv", [
    ("simples", "--type", "A2", "--p", "3"),
    ("simples", "--p", "6"),
    ("simples", "--chi", "2,1"),
    ("simples", "--lambda", "1,2"),
    ("simples", "--lambda=-1"),
    ("springer", "--partition", "3,2"),
    ("nonsense",),
    ("bwb", "--type", "B2"),
])
def test_usage_errors(argv):
    assert invoke(*argv)[0] == 2


def test_internal_error(monkeypatch):
    import modlie.envalg.blocks as B

    monkeypatch.setattr(B, "central_scalars", lambda lie, mu: (0,))
    code, reports = invoke("translate", "--p", "5", "--chi", "1,1", "--lambda", "0", "--mu", "1")
    assert code == 3 and reports == []


def test_weylalg_and_frobid():
    code, reports = invoke("weylalg", "--n", "1", "--p", "3", "--point", "1", "--omega", "2")
    assert code == 0 and reports
    code, reports = invoke("frobid", "--type", "A2", "--p", "7")
    assert code == 0


def test_dimpoly_outputs():
    code, reports = invoke("dimpoly", "--p", "5", "--chi", "1,1", "--lambda", "0", "--module", "simples")
    assert code == 0 and len(reports) == 2
    for r in reports:
        assert "d" in r["outputs"] and "d0" in r["outputs"]


def test_out_file(tmp_path):
    path = tmp_path / "reports.jsonl"
    code, reports = invoke("bwb", "--type", "A1", "--lambda=-4", "--out", str(path), "--no-timing")
    assert code == 0
    assert [json.loads(line) for line in path.read_text().splitlines()] == reports


def test_suite_desk():
    code, reports = invoke("suite", "--level", "desk")
    assert code == 0
    assert [r["check"] for r in reports] == [f"criterion-{k:02d}" for k in range(1, 13)]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "modlie.cli", "springer", "--partition", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["outputs"]["total"] == 1
