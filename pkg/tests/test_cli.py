import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from lcitor import cli
from lcitor.cli import load_schema, load_scenario, main, parse_scenario_text
from lcitor.intersect import Verdict, VerdictRow
from lcitor.modules import HilbertFunction
from conftest import SCENARIOS

BUNDLED = sorted(p.name for p in Path(SCENARIOS).iterdir() if p.suffix in (".scn", ".json"))


def scn(name):
    return os.path.join(SCENARIOS, name)


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def write(tmp_path, text, name="s.scn"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- the documented invocations ----------------------------------------------------


def test_excess_check_doubleline(capsys):
    code, rep = run_json(capsys, "excess-check", "doubleline", "-s", scn("doubleline.scn"))
    assert code == 0 and rep["exit_code"] == 0
    [res] = rep["results"]
    assert res["status"] == "pass" and res["verdict"]["passed"]
    assert res["verdict"]["extra"]["excess"] == 1
    assert [m["q"] for m in res["modules"]] == [0, 1, 2]
    assert res["modules"][1]["hilbert_function"][:3] == [0, 1, 1]
    assert res["modules"][2]["zero"]


def test_regular_badseq_reports_both_oracles(capsys):
    code, rep = run_json(capsys, "regular", "badseq", "-s", scn("badseq.scn"))
    [res] = rep["results"]
    assert code == 0
    assert res["regular"] is False and res["koszul"] is False
    assert res["height"] == 1 and res["length"] == 2 and res["height_criterion"] is False
    assert res["oracles_agree"] is True


def test_tor_transversal_q1(capsys):
    code, rep = run_json(capsys, "tor", "transversal", "--q", "1", "-s", scn("transversal.scn"))
    [res] = rep["results"]
    assert code == 0 and [m["q"] for m in res["modules"]] == [1]
    assert res["modules"][0]["zero"]


def test_text_output(capsys):
    assert main(["excess-check", "doubleline", "-s", scn("doubleline.scn")]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "excess" in out


def test_quiet_prints_nothing(capsys):
    assert main(["run", "-s", scn("point.scn"), "--quiet"]) == 0
    assert capsys.readouterr().out == ""


# -- exit codes ------------------------------------------------------------------------


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_scenarios_pass(name, capsys):
    if name == "corpus.scn":
        pytest.skip("covered by the acceptance suite")
    code, rep = run_json(capsys, "run", "-s", scn(name))
    assert code == 0, [r for r in rep["results"] if r["status"] in ("fail", "error")]


def test_failed_verdict_exits_1(capsys, monkeypatch):
    def broken(inst, bound):
        h = HilbertFunction.zeros(bound)
        v = Verdict("excess-intersection", bound,
                    [VerdictRow(0, h, h.shifted(0) + HilbertFunction(bound, [1] + [0] * bound), False)])
        return v.finalize()
    monkeypatch.setattr(cli, "verify_excess_formula", broken)
    code, rep = run_json(capsys, "excess-check", "doubleline", "-s", scn("doubleline.scn"))
    assert code == 1 and rep["results"][0]["status"] == "fail"


def test_oracle_disagreement_exits_1(capsys, monkeypatch):
    from lcitor.intersect import RegularityReport
    monkeypatch.setattr(cli, "is_regular_sequence", lambda fs: RegularityReport(
        regular=True, koszul=True, koszul_failure_degree=None, height_value=1,
        height_criterion=False, homogeneous=True))
    code, rep = run_json(capsys, "regular", "badseq", "-s", scn("badseq.scn"))
    assert code == 1 and rep["results"][0]["status"] == "fail"


def test_unknown_name_exits_2_with_location(capsys):
    assert main(["tor", "nosuch", "-s", scn("doubleline.scn")]) == 2
    err = capsys.readouterr().err
    assert "nosuch" in err and "command line" in err


def test_unknown_name_in_scenario(tmp_path, capsys):
    p = write(tmp_path, "field Q\nvars x\nideal a = [x]\ncheck tor missing\n")
    assert main(["run", "-s", p]) == 2
    err = capsys.readouterr().err
    assert "missing" in err and ":4" in err


def test_certificate_failure_exits_2(capsys):
    code, rep = run_json(capsys, "excess-check", "bad", "-s", scn("badseq.scn"))
    assert code == 2
    assert "badseq" in rep["results"][0]["error"] if rep else True


def test_certificate_failure_names_sequence(capsys):
    assert main(["self-check", "badseq", "-s", scn("badseq.scn")]) == 2
    captured = capsys.readouterr()
    assert "badseq" in captured.out + captured.err


def test_non_homogeneous_verdict_exits_2(tmp_path, capsys):
    p = write(tmp_path, "field Q\nvars x y\nideal c = [y - x^2]\ncheck self-check c\n")
    assert main(["run", "-s", p]) == 2
    captured = capsys.readouterr()
    assert "homogeneous" in captured.out + captured.err


@pytest.mark.parametrize("text, needle", [
    ("field Q\nvars x\nideal a = [x +]\n", ":3:"),
    ("field Q\nvars x\nideal a = [y]\ncheck gb a\n", ":3"),
    ("field 4\nvars x\n", ":1"),
    ("field Q\nvars x\nfrobnicate\n", ":3"),
])
def test_malformed_scenarios(tmp_path, capsys, text, needle):
    assert main(["run", "-s", write(tmp_path, text)]) == 2
    assert needle in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["run", "-s", "/nonexistent.scn"]) == 2


def test_negative_bound(capsys):
    assert main(["tor", "doubleline", "-s", scn("doubleline.scn"), "--degree-bound", "-1"]) == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "-s", scn("doubleline.scn")])
    assert exc.value.code == 2


# -- reports ---------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["run", "-s", scn("doubleline.scn")],
    ["run", "-s", scn("badseq.scn")],
    ["koszul", "badseq", "--homology", "-s", scn("badseq.scn")],
    ["excess-check", "bad", "-s", scn("badseq.scn")],
    ["run", "-s", scn("doubleline_f7.scn"), "--timings"],
])
def test_report_matches_schema(capsys, argv):
    _, rep = run_json(capsys, *argv)
    jsonschema.validate(rep, load_schema("report"))


@pytest.mark.parametrize("name", [n for n in BUNDLED if n != "corpus.scn"])
def test_reports_are_byte_identical(name, capsys):
    outs = []
    for _ in range(2):
        main(["run", "-s", scn(name), "--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_json_and_text_scenarios_agree(capsys):
    for argv in (["excess-check", "doubleline"], ["tor", "doubleline", "--q", "1"]):
        _, a = run_json(capsys, *argv, "-s", scn("doubleline.scn"))
        _, b = run_json(capsys, *argv, "-s", scn("doubleline.json"))
        assert a["results"] == b["results"]


def test_validate_roundtrip(tmp_path, capsys):
    assert main(["validate", "-s", scn("planes.scn")]) == 0
    data = capsys.readouterr().out
    jsonschema.validate(json.loads(data), load_schema("scenario"))
    p = write(tmp_path, data, "planes.json")
    _, a = run_json(capsys, "run", "-s", scn("planes.scn"))
    _, b = run_json(capsys, "run", "-s", p)
    assert a["results"] == b["results"]


def test_scenario_hash_tracks_content(tmp_path):
    a = load_scenario(write(tmp_path, "field Q\nvars x\nideal a = [x]\n", "a.scn"))
    b = load_scenario(write(tmp_path, "field Q\nvars x\nideal a = [x^2]\n", "b.scn"))
    assert a.digest != b.digest and len(a.digest) == 64


def test_parse_scenario_text_structure():
    data, where = parse_scenario_text(
        "field 7\nvars x y\norder lex\nseed 3\nideal L = [x]\n"
        "instance d = {L, L; W = [x]}\ncheck tor d --q 1 --degree-bound 4\n")
    assert data["field"] == 7 and data["vars"] == ["x", "y"] and data["order"] == "lex"
    assert data["instances"]["d"] == {"varieties": ["L", "L"], "W": ["x"]}
    assert where["L"] == 5 and where["d"] == 6
    assert data["checks"] == [{"command": "tor", "args": ["d"], "q": 1, "degree_bound": 4}]


# -- flags and environment --------------------------------------------------------------


def test_env_degree_bound(capsys, monkeypatch):
    monkeypatch.setenv("LCITOR_DEGREE_BOUND", "3")
    _, rep = run_json(capsys, "tor", "doubleline", "-s", scn("doubleline.scn"))
    assert rep["degree_bound"] == 3
    assert len(rep["results"][0]["modules"][0]["hilbert_function"]) == 4
    _, rep = run_json(capsys, "tor", "doubleline", "-s", scn("doubleline.scn"), "--degree-bound", "5")
    assert rep["degree_bound"] == 5


def test_env_degree_bound_rejects_garbage(capsys, monkeypatch):
    monkeypatch.setenv("LCITOR_DEGREE_BOUND", "ten")
    assert main(["tor", "doubleline", "-s", scn("doubleline.scn")]) == 2


def test_order_flag(capsys):
    _, a = run_json(capsys, "gb", "L", "-s", scn("doubleline.scn"), "--order", "lex")
    assert a["ring"]["order"] == "lex"


def test_positive_characteristic_warns(capsys):
    code, rep = run_json(capsys, "run", "-s", scn("doubleline_f7.scn"))
    assert code == 0 and any("characteristic" in w for w in rep["warnings"])


def test_empty_intersection_vacuous(capsys):
    code, rep = run_json(capsys, "excess-check", "disjoint", "-s", scn("empty.scn"))
    assert code == 0 and rep["results"][0]["verdict"]["extra"]["vacuous"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lcitor", "tor", "transversal", "--q", "1",
                        "-s", scn("transversal.scn"), "--json"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and json.loads(r.stdout)["results"][0]["modules"][0]["zero"]


# -- corpus generator ---------------------------------------------------------------------


def test_corpus_generator_is_reproducible():
    sys.path.insert(0, SCENARIOS)
    try:
        import generate_corpus
    finally:
        sys.path.remove(SCENARIOS)
    text = generate_corpus.emit()
    assert text == generate_corpus.emit()
    assert text == Path(scn("corpus.scn")).read_text()
    assert f"seed {generate_corpus.SEED}" in text
