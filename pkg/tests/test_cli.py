import json

import pytest

from permlat import cli, cohom, report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_h1_text_and_json(capsys):
    code, out, _ = run(capsys, "h1", "--lattice", "A(4)")
    assert code == 0 and "Z/4" in out
    code, out, _ = run(capsys, "h1", "--lattice", "A(5)", "--path", "dual-fast", "--json")
    assert code == 0 and json.loads(out)["invariants"] == [5]
    code, out, _ = run(capsys, "h1", "--group", "V4", "--lattice", "A(4)", "--path", "formula", "--json")
    assert json.loads(out)["invariants"] == [4]


def test_sha_commands(capsys):
    code, out, _ = run(capsys, "sha1", "--group", "alpha_beta(6,2)", "--lattice", "A(6)", "--json")
    assert code == 0 and json.loads(out)["invariants"] == [2]
    code, out, _ = run(capsys, "sha1", "--group", "A8", "--lattice", "A(8)", "--fast", "--json")
    assert json.loads(out)["invariants"] == [2]
    code, out, _ = run(capsys, "sha2", "--group", "V4", "--lattice", "A2(4)", "--json")
    assert json.loads(out)["invariants"] == [2]


def test_coflasque_and_resolution(capsys):
    code, out, _ = run(capsys, "coflasque", "--lattice", "Sym2A(4)", "--json")
    assert code == 0 and json.loads(out)["value"] == "yes"
    code, out, _ = run(capsys, "coflasque", "--lattice", "Sym2A(4)", "--catalog", "cyclic", "--json")
    assert json.loads(out)["value"] == "unknown"
    code, out, _ = run(capsys, "flasque-res", "--lattice", "A(4)", "--json")
    assert code == 0 and json.loads(out)["verified"]


def test_user_catalog_file(capsys, tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([{"degree": 4, "generators": [[[1, 2], [3, 4]], [[1, 3], [2, 4]]]}]))
    code, out, _ = run(capsys, "coflasque", "--lattice", "A(4)", "--catalog", str(path), "--json")
    assert code == 0 and json.loads(out)["value"] == "no"


def test_cert_iso_seq(capsys):
    code, out, _ = run(capsys, "cert", "--n", "3", "--json")
    assert code == 0 and json.loads(out)["certificate"]["m"]
    code, out, _ = run(capsys, "iso", "--lattice", "Wedge2A(3)", "--target", "sign(3)", "--json")
    assert code == 0 and json.loads(out)["found"]
    code, out, _ = run(capsys, "seq", "--name", "rho", "--n", "4")
    assert code == 0 and "verified=True" in out


def test_config_errors_exit_2(capsys):
    assert run(capsys, "h1", "--lattice", "B(4)")[0] == 2
    assert run(capsys, "h1", "--group", "Q8", "--lattice", "A(4)")[0] == 2
    assert run(capsys, "h1", "--lattice", "A(4)", "--caps", "one=2")[0] == 2
    assert run(capsys, "cert", "--n", "6")[0] == 2
    assert run(capsys, "coflasque", "--lattice", "A(4)", "--catalog", "/nonexistent.json")[0] == 2


def test_cap_exceeded_exit_3(capsys):
    code, _, err = run(capsys, "h1", "--group", "S6", "--lattice", "A(6)", "--caps", "1=100")
    assert code == 3 and "cap" in err


def test_report_subset(capsys):
    code, out, _ = run(capsys, "report", "--only", "h1.transitive", "--json", "--no-runtimes")
    d = json.loads(out)
    assert code == 0 and d["summary"]["fail"] == 0 and "total_ms" not in d


def test_report_skips_exit_3(capsys):
    code, out, _ = run(capsys, "report", "--only", "h1.transitive", "--caps", "1=6,2=6")
    assert code == 3 and "skipped" in out


def test_report_failure_exit_1(capsys, monkeypatch):
    wrong = [{"claim_id": "h1.transitive.n3", "criterion": 2, "statement": "wrong on purpose",
              "n": [3], "expected": [4]}]
    monkeypatch.setattr(report, "load_manifest", lambda: wrong)
    code, out, _ = run(capsys, "report")
    assert code == 1 and "fail" in out


def test_broken_gate_aborts(capsys, monkeypatch):
    monkeypatch.setattr(cohom, "h1_dual_fast", lambda h, m: cohom.AbelianInvariants((7,)))
    code, out, _ = run(capsys, "report", "--only", "gate.h1_dual_fast", "--only", "h1.transitive.n3")
    assert code == 1 and "aborted" in out


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        cli.main(["nope"])


def test_cert_even_four(capsys):
    code, out, _ = run(capsys, "cert", "--n", "4")
    assert code == 0 and "verified" in out


def test_report_restricted_to_n3(capsys):
    code, out, _ = run(capsys, "report", "--n", "3", "--json", "--no-runtimes")
    rows = json.loads(out)["rows"]
    assert code == 0 and 0 < len(rows) < len(report.load_manifest())
    assert all(3 in e["n"] for e in report.load_manifest() if e["claim_id"] in {r["claim_id"] for r in rows}
               and not e["claim_id"].startswith("gate."))
