import json
import subprocess
import sys
from pathlib import Path

import pytest

from codescent.cli import Report, Scenario, ScenarioError, TaskRecord, main, parse_field, run

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

IDENTITY = """
[scenario]
name = "tmp"
seed = 1

[algebras.k]
kind = "field"

[morphisms.id]
kind = "identity"
algebra = "k"
"""


def _write(tmp_path, text):
    path = tmp_path / "s.toml"
    path.write_text(text)
    return path


@pytest.mark.parametrize("text", ["QQ", "GF(2)", "GF(5)"])
def test_parse_field(text):
    assert parse_field(text) is not None


@pytest.mark.parametrize("text", ["GF(4)", "RR", ""])
def test_parse_field_rejects(text):
    with pytest.raises(ScenarioError):
        parse_field(text)


@pytest.mark.parametrize("path", sorted(SCENARIOS.glob("*.toml")), ids=lambda p: p.stem)
def test_shipped_scenarios_meet_expectations(path):
    assert main([str(path)]) == 0


def test_json_report_round_trip_and_determinism(tmp_path):
    path = SCENARIOS / "identity_qq.toml"
    out = tmp_path / "r.json"
    assert main([str(path), "--json", str(out)]) == 0
    report = Report.from_json(out.read_text())
    assert report == run(path)
    assert report.to_json() == out.read_text()
    assert all(t.status == "pass" for t in report.tasks)


def test_json_to_stdout(capsys):
    assert main([str(SCENARIOS / "identity_qq.toml"), "--json", "-"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [t["name"] for t in doc["tasks"]] == ["analyze", "beck"]
    assert "seconds" not in doc["tasks"][0]


@pytest.mark.parametrize("tail", [
    "[[tasks]]\nname = \"no-such-task\"\n",
    "[[tasks]]\nmorphism = \"id\"\n",
    "[[tasks]]\nname = \"analyze\"\nexpect = \"maybe\"\n",
    "[morphisms.bad]\nkind = \"identity\"\nalgebra = \"missing\"\n",
    "this is = = not toml\n",
    "[groups.G]\nkind = \"cyclic\"\n",
    "[groups.G]\nkind = \"cyclic\"\norder = \"two\"\n",
    "[[tasks]]\nname = \"derived\"\n",
])
def test_bad_scenarios_exit_2(tmp_path, tail, capsys):
    assert main([str(_write(tmp_path, IDENTITY + tail))]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_and_bad_flags_exit_2(tmp_path):
    assert main([str(tmp_path / "absent.toml")]) == 2
    assert main(["--bogus"]) == 2


def test_unmet_expectation_exits_1(tmp_path):
    path = _write(tmp_path, IDENTITY + "[[tasks]]\nname = \"analyze\"\nmorphism = \"id\"\nexpect = \"counterexample\"\n")
    assert main([str(path)]) == 1


def test_task_record_met():
    assert TaskRecord("x", "pass").met
    assert TaskRecord("x", "not-applicable").met
    assert not TaskRecord("x", "fail").met
    assert TaskRecord("x", "counterexample", expect="counterexample").met


def test_seed_override():
    sc = Scenario.load(SCENARIOS / "identity_qq.toml")
    assert run(sc, seed=99).seed == 99


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "codescent", str(SCENARIOS / "identity_qq.toml")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "result: ok" in proc.stdout
