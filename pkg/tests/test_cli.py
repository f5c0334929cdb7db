import json

import pytest

from conftest import FIXTURES, QUERIES
from ssdkb.cli import main


def fixture(name):
    return str(FIXTURES / name)


def test_validate_clean_file(capsys):
    assert main(["validate", fixture("fig3.ttl")]) == 0
    assert capsys.readouterr().out == ""


def test_validate_broken_file(capsys):
    assert main(["validate", fixture("broken_alternating.ttl")]) == 1
    out = capsys.readouterr().out
    assert "AlternatingNeedsTwoTreatments" in out
    assert "bad01" in out


def test_validate_missing_file(capsys):
    assert main(["validate", "no_such_file.ttl"]) == 2
    assert "error:" in capsys.readouterr().err


def test_validate_syntax_error(tmp_path, capsys):
    bad = tmp_path / "bad.ttl"
    bad.write_text("this is not turtle")
    assert main(["validate", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_classify_fig3(capsys):
    assert main(["classify", fixture("fig3.ttl")]) == 0
    out = capsys.readouterr().out
    assert out == "ssd01: ABAB_Design, WithdrawalDesign, SingleSubjectDesign\n"


def test_classify_broken_exits_one(capsys):
    assert main(["classify", fixture("broken_alternating.ttl")]) == 1
    assert "AlternatingNeedsTwoTreatments" in capsys.readouterr().err


def test_query_dl_expr(capsys):
    code = main(
        [
            "query",
            "--dl",
            "-e",
            "Result and isResultOfPhase some {ph01}",
            fixture("fig3.ttl"),
        ]
    )
    assert code == 0
    assert capsys.readouterr().out == "res01\nres02\n"


def test_query_dl_from_file(capsys):
    code = main(
        [
            "query",
            "--dl",
            "-f",
            str(QUERIES / "dl_across_setting_complex.dl"),
            fixture("mbd_setting.ttl"),
        ]
    )
    assert code == 0
    assert capsys.readouterr().out == "mbd01\n"


def test_query_dl_json(capsys):
    code = main(
        [
            "query",
            "--dl",
            "-e",
            "Result and isResultOfPhase some {ph01}",
            "--format",
            "json",
            fixture("fig3.ttl"),
        ]
    )
    assert code == 0
    assert json.loads(capsys.readouterr().out) == ["res01", "res02"]


def test_query_sparql_file(capsys):
    code = main(
        [
            "query",
            "--sparql",
            "-f",
            str(QUERIES / "sparql_best_result.rq"),
            fixture("ab_study.ttl"),
        ]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "?study\t?interType\t?val"
    assert lines[1] == "ab01\tweekendInterview\t20.4"


def test_query_bad_expression(capsys):
    assert main(["query", "--dl", "-e", "Result and", fixture("fig3.ttl")]) == 2
    assert "error:" in capsys.readouterr().err


def test_query_requires_mode(capsys):
    assert main(["query", "-e", "Result", fixture("fig3.ttl")]) == 2


def test_gen_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.ttl"
    b = tmp_path / "b.ttl"
    assert main(["gen", "-n", "5", "--seed", "12", "-o", str(a)]) == 0
    assert main(["gen", "-n", "5", "--seed", "12", "-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert main(["validate", str(a)]) == 0


def test_gen_then_stats(tmp_path, capsys):
    out = tmp_path / "kb.ttl"
    assert main(["gen", "-n", "3", "--seed", "4", "-o", str(out)]) == 0
    capsys.readouterr()
    assert main(["stats", str(out)]) == 0
    text = capsys.readouterr().out
    assert "studies: 3" in text
    assert "triples: " in text


def test_stats_fig3(capsys):
    assert main(["stats", fixture("fig3.ttl")]) == 0
    out = capsys.readouterr().out
    assert "studies: 1" in out
    assert "triples: 69" in out
    assert "individuals: 25" in out


def test_bench_small_run(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SSDKB_BENCH_REPS", "1")
    monkeypatch.chdir(tmp_path)
    assert main(["bench", "-n", "5", "--report", "report.kv"]) == 0
    out = capsys.readouterr().out
    assert "materialize" in out
    kv = (tmp_path / "report.kv").read_text()
    assert "studies=5" in kv
    assert any(line.startswith("materialize_ms=") for line in kv.splitlines())


def test_bench_with_query_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SSDKB_BENCH_REPS", "1")
    qdir = tmp_path / "queries"
    qdir.mkdir()
    (qdir / "simple.dl").write_text("Result\n")
    (qdir / "listing.rq").write_text(
        "PREFIX ssid: <http://bdi.si.ehu.es/bdi/ontologies/SSDOnt/SSDOnt#>\n"
        "SELECT ?s WHERE { ?s a ssid:Result }\n"
    )
    report = tmp_path / "report.kv"
    code = main(
        ["bench", "-n", "4", "--queries", str(qdir), "--report", str(report)]
    )
    assert code == 0
    kv = report.read_text()
    assert "simple" in kv
    assert "listing" in kv


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2
