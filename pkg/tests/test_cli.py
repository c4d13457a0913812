import json

import pytest

from planeschemes.cli import main
from planeschemes.scheme import scheme_from_bytes


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_p3(tmp_path, capsys):
    out_file = tmp_path / "xa.afsc"
    code, out, _ = run_cli(["build", "--p", "3", "--out", str(out_file)], capsys)
    assert code == 0
    assert "degree 9, rank 5, valencies [2,2,2,2]" in out
    X = scheme_from_bytes(out_file.read_bytes())
    assert X.n == 9 and X.rank == 5


def test_build_p13(tmp_path, capsys):
    out_file = tmp_path / "xa13.afsc"
    code, out, _ = run_cli(["build", "--p", "13", "--out", str(out_file)], capsys)
    assert code == 0
    assert "degree 169, rank 15" in out


def test_build_rejects_composite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--p", "4"])
    assert exc.value.code == 2


def test_classify_subtensor(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    code, out, _ = run_cli(["classify", "--p", "3", "--partition", "0123"], capsys)
    assert code == 0
    record = json.loads(out)
    assert record["verdict"] == "SubtensorOfTrivial"
    assert record["schurian"] is True


def test_classify_trivial(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    code, out, _ = run_cli(["classify", "--p", "3", "--partition", "0000"], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "PrimitivePseudocyclic"


def test_classify_wreath_0111(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    code, out, _ = run_cli(["classify", "--p", "3", "--partition", "0111"], capsys)
    assert code == 0
    record = json.loads(out)
    assert record["verdict"] == "WreathOfTrivial"
    assert record["witness"]


def test_classify_non_canonical(capsys):
    code, _, err = run_cli(["classify", "--p", "3", "--partition", "0021"], capsys)
    assert code == 2
    assert "RGS" in err or "error" in err


def test_classify_wrong_length(capsys):
    code, _, err = run_cli(["classify", "--p", "5", "--partition", "0123"], capsys)
    assert code == 2


def test_subgroups_cyclic2_p5(capsys):
    code, out, _ = run_cli(["subgroups", "--p", "5", "--spec", "Cyclic:2", "--json"],
                           capsys)
    assert code == 0
    report = json.loads(out)[0]
    assert report["status"] == "found"
    assert set(report["orbit_size_set"]) <= {1, 2}


def test_subgroups_dihedral3_p7(capsys):
    code, out, _ = run_cli(["subgroups", "--p", "7", "--spec", "Dihedral:3", "--json"],
                           capsys)
    report = json.loads(out)[0]
    assert set(report["orbit_size_set"]) <= {2, 3, 6}


def test_subgroups_a4_p7(capsys):
    code, out, _ = run_cli(["subgroups", "--p", "7", "--spec", "A4", "--json"], capsys)
    report = json.loads(out)[0]
    assert report["order"] == 12
    assert report["orbit_sizes"] == [4, 4]


def test_subgroups_absent_is_exit_zero(capsys):
    code, out, _ = run_cli(["subgroups", "--p", "7", "--spec", "A5"], capsys)
    assert code == 0
    assert "absent" in out


def test_subgroups_all(capsys):
    code, out, _ = run_cli(["subgroups", "--p", "5", "--spec", "all"], capsys)
    assert code == 0
    assert "C1" in out and "Alt(4)" in out


def test_sweep_p3_json(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    out_file = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["sweep", "--p", "3", "--out", str(out_file)], capsys)
    assert code == 0
    data = json.loads(out_file.read_bytes())
    assert data["summary"]["total"] == 15
    assert data["summary"]["counts_by_verdict"] == {
        "PrimitivePseudocyclic": 4,
        "SubtensorOfTrivial": 7,
        "WreathOfTrivial": 4,
    }


def test_sweep_p3_csv_matches_json(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    json_file = tmp_path / "report.json"
    csv_file = tmp_path / "report.csv"
    assert run_cli(["sweep", "--p", "3", "--out", str(json_file)], capsys)[0] == 0
    assert run_cli(["sweep", "--p", "3", "--format", "csv",
                    "--out", str(csv_file)], capsys)[0] == 0
    from planeschemes.report import read_csv_report, record_to_dict

    csv_records = [record_to_dict(r) for r in read_csv_report(str(csv_file))]
    json_records = json.loads(json_file.read_bytes())["records"]
    assert csv_records == json_records


def test_sweep_jobs_digest(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    f1 = tmp_path / "r1.json"
    f2 = tmp_path / "r2.json"
    run_cli(["sweep", "--p", "3", "--out", str(f1), "--jobs", "1"], capsys)
    run_cli(["sweep", "--p", "3", "--out", str(f2), "--jobs", "2"], capsys)
    assert f1.read_bytes() == f2.read_bytes()


def test_sweep_unsupported_prime(capsys):
    code, _, err = run_cli(["sweep", "--p", "11"], capsys)
    assert code == 2


def test_verify_paper_quick(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("AFS_CACHE", str(tmp_path / "cache"))
    code, out, _ = run_cli(["verify-paper", "--level", "quick"], capsys)
    assert code == 0
    assert "all checks passed" in out
    assert out.count("[PASS]") >= 8
