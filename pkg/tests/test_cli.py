import json
import subprocess
import sys

import pytest

from expsum.cli import infer_nvars, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_helpers():
    assert infer_nvars("x^2 + y^3") == 2
    assert infer_nvars("x1*x4") == 4
    assert infer_nvars("z") == 3
    assert parse_range("3..11", primes_only=True) == (3, 5, 7, 11)
    assert parse_range("2,5") == (2, 5)


def test_sum(capsys):
    code, out, _ = run(capsys, "sum", "x^2", "--p", "5", "--m", "2")
    assert code == 0
    assert json.loads(out)["modulus"] == pytest.approx(0.2)


def test_sum_local_and_fields(capsys):
    _, out, _ = run(capsys, "sum", "x^2", "--p", "3", "--m", "2", "--y", "1")
    assert json.loads(out)["modulus"] == pytest.approx(0.0, abs=1e-12)
    _, out, _ = run(capsys, "sum", "x^2*y", "--q", "3")
    assert json.loads(out)["modulus"] == pytest.approx(3.0)
    _, out, _ = run(capsys, "sum", "x^2", "--p", "3", "--m", "2", "--field", "tseries")
    assert json.loads(out)["modulus"] == pytest.approx(1 / 3)


def test_sum_budget_refusal(capsys):
    code, _, err = run(capsys, "sum", "x^2+y^2+z^2", "--p", "101", "--m", "3", "--method", "enumerate",
                       "--cap", "1000")
    assert code == 2 and "budget" in err


def test_sum_needs_modulus(capsys):
    code, _, _ = run(capsys, "sum", "x^2")
    assert code == 1


def test_parse_error(capsys):
    code, _, err = run(capsys, "lct", "x^^2")
    assert code == 1 and "position" in err


def test_lct(capsys):
    code, out, _ = run(capsys, "lct", "x^2+y^3", "--checks")
    d = json.loads(out)
    assert code == 0
    assert d["lct_at_origin"]["value"] == "5/6" and d["r"] == "2"
    assert all(c["verdict"] != "fail" for c in d["checks"])


def test_jets(capsys):
    code, out, _ = run(capsys, "jets", "x^2", "--k", "2", "--m", "2", "--q", "3", "--k-max", "4")
    d = json.loads(out)
    assert code == 0 and d["counts"]["3"] == 9
    assert d["lct_upper"]["upper"] == "1/2"


def test_sweep_and_report(capsys, tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps([{"name": "sq", "expr": "x^2", "nvars": 1}]))
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "sweep", "--catalog", str(cat), "--primes", "3..7", "--m-range", "2..4",
                       "--theorem-window", "--out", str(out), "--plot", str(tmp_path / "plot.json"))
    assert code == 0 and "sq: consistent" in err
    assert len(json.loads(out.read_text())["rows"]) == 9
    code, text, _ = run(capsys, "report", str(out), "--format", "csv")
    assert code == 0 and len(text.splitlines()) == 10


def test_sweep_katz(capsys):
    code, out, _ = run(capsys, "sweep", "--mode", "katz", "--primes", "5..13")
    assert code == 0
    assert json.loads(out)["verdicts"]


def test_catalog_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _, err = run(capsys, "sweep", "--catalog", str(bad))
    assert code == 3 and "catalog" in err


def test_theorem_defect_exit_code(capsys, monkeypatch):
    import expsum.cli as cli
    from expsum.harness import TheoremVerdict

    monkeypatch.setattr(cli, "check_theorem_rplus1",
                        lambda rep, name: TheoremVerdict(name, "violation", 9.0, 1.0, 9.0, 9.0, False, 1, (3,)))
    code, _, _ = run(capsys, "sweep", "--primes", "3", "--m-range", "2..2", "--theorem-window")
    assert code == 4


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "expsum", "sum", "x", "--p", "3", "--m", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["kind"] == "global"
