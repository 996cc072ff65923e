import csv
import io
import json
from fractions import Fraction

import pytest

from nfbridge.bridge import FieldQuad
from nfbridge.cli import build_parser, main
from nfbridge.errors import ConfigError
from nfbridge.planewave import PROFILES, PlaneWaveState, apply_dirac
from nfbridge.report import CSV_COLUMNS, Check, SuiteReport, emit_report, summarize, to_csv, to_json
from nfbridge.scenario import MODE_ENV, SUITES, Scenario, load_scenario, scenario_from_dict
from nfbridge.suites import run_suite

FAST = Scenario(trials=3, bilinear_trials=5)


def _off_shell_check() -> Check:
    rows = apply_dirac("2.11", PlaneWaveState(FieldQuad(1, 0, 0, 1), Fraction(2), Fraction(1)), PROFILES["natural"].with_mass(0))
    bad = [str(v) for v in rows if v != 0]
    return Check("planewave.offshell_probe", "Eq 2.11", not bad, "nonzero_rows=" + ",".join(bad))


def test_empty_report_is_valid_json():
    data = json.loads(to_json(SuiteReport("algebra", "exact", 1)))
    assert set(data) == {"suite", "mode", "seed", "checks", "summary"}
    assert data["checks"] == [] and data["summary"]["total"] == 0 and data["summary"]["pass"] is True


def test_failing_check_serializes_pass_false():
    rep = SuiteReport("planewave", "exact", 1, [_off_shell_check()])
    data = json.loads(to_json(rep))
    check = data["checks"][0]
    assert check["pass"] is False and "nonzero_rows=" in check["detail"] and check["detail"] != "nonzero_rows="
    assert set(check) == {"id", "paper_eq", "pass", "detail"}
    assert not rep.passed and data["summary"]["failed"] == 1


def test_json_round_trip_summary():
    rep = run_suite("algebra", FAST)
    rep.checks.append(_off_shell_check())
    data = json.loads(to_json(rep))
    recomputed = summarize(data["checks"])
    for key, value in recomputed.items():
        assert data["summary"][key] == value


def test_csv_columns_and_rows():
    rep = run_suite("algebra", FAST)
    rows = list(csv.DictReader(io.StringIO(to_csv(rep))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == len(rep.checks)
    assert {r["pass"] for r in rows} == {"true"}


def test_emit_report_writes_files(tmp_path):
    rep = run_suite("algebra", FAST)
    emit_report(rep, "json", tmp_path / "r.json")
    emit_report(rep, "csv", tmp_path / "r.csv")
    assert json.loads((tmp_path / "r.json").read_text())["suite"] == "algebra"
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    with pytest.raises(ValueError):
        emit_report(rep, "xml", tmp_path / "r.xml")
    with pytest.raises(OSError):
        emit_report(rep, "json", tmp_path / "missing" / "r.json")


def test_run_suite_is_deterministic():
    a, b = run_suite("all", FAST).to_dict(), run_suite("all", FAST).to_dict()
    a["summary"].pop("wall_time_s")
    b["summary"].pop("wall_time_s")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_every_suite_tags_its_checks():
    rep = run_suite("all", FAST)
    prefixes = {c.id.split(".")[0] for c in rep.checks}
    assert prefixes == set(SUITES) - {"all"}
    assert all(c.paper_eq for c in rep.checks)


def test_algebra_suite_passes():
    assert run_suite("algebra").passed


def test_unknown_suite():
    with pytest.raises(ConfigError):
        run_suite("optics")


def test_scenario_schema_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        scenario_from_dict({"colour": "blue"})
    with pytest.raises(ConfigError):
        scenario_from_dict({"grid": {"h": -1}})
    with pytest.raises(ConfigError):
        scenario_from_dict({"mode": "symbolic"})
    sc = scenario_from_dict({"mode": "float", "grid": {"h": 0.05}, "ring": {"E_p": 1, "H_p": 2}})
    assert sc.mode == "float" and sc.grid.h == 0.05 and sc.ring.H_p == 2


def test_mode_precedence(tmp_path):
    path = tmp_path / "sc.json"
    path.write_text(json.dumps({"mode": "float", "seed": 4}))
    assert load_scenario(path, env={}).mode == "float"
    assert load_scenario(path, env={MODE_ENV: "exact"}).mode == "exact"
    assert load_scenario(None, env={MODE_ENV: "float"}).mode == "float"
    with pytest.raises(ConfigError):
        load_scenario(None, env={MODE_ENV: "fuzzy"})
    sc = load_scenario(path, env={MODE_ENV: "exact"}).with_overrides(mode="float")
    assert sc.mode == "float" and sc.seed == 4


def test_load_scenario_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(tmp_path / "nope.json", env={})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_scenario(bad, env={})
    bad.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_scenario(bad, env={})


def test_parser_flags():
    args = build_parser().parse_args(["--suite", "grid", "--mode", "float", "--seed", "3", "--h", "0.05", "-v"])
    assert (args.suite, args.mode, args.seed, args.h, args.verbose) == ("grid", "float", 3, 0.05, True)


def test_cli_exit_codes(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv(MODE_ENV, raising=False)
    out = tmp_path / "a.json"
    assert main(["--suite", "algebra", "--json", str(out), "--csv", str(tmp_path / "a.csv")]) == 0
    assert json.loads(out.read_text())["summary"]["pass"] is True
    # the curl error ratio of a linear field cannot reach 4, so hydro reports a failure
    assert main(["--suite", "hydro"]) == 1
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"suite": "algebra", "unknown": 1}))
    assert main(["--config", str(cfg)]) == 2
    assert main(["--suite", "algebra", "--json", str(tmp_path / "missing" / "a.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_stdout_report_stays_clean(capsys, monkeypatch):
    monkeypatch.setenv(MODE_ENV, "float")
    assert main(["--suite", "algebra", "--json", "-"]) == 0
    captured = capsys.readouterr()
    data = json.loads(captured.out)
    assert data["mode"] == "float"
    assert "checks passed" in captured.err
