from __future__ import annotations

import json

import pytest

from stoichgeom.cli import main
from stoichgeom.corpus import AZOMETHANE, AZOMETHANE_M
from stoichgeom.geometry import convex_hull


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def azomethane_file(tmp_path):
    data = AZOMETHANE.to_json()
    data["M"] = AZOMETHANE_M.to_json() if hasattr(AZOMETHANE_M, "to_json") else AZOMETHANE_M
    path = tmp_path / "azo.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_no_balance_is_a_result(capsys):
    code, out, _ = run(capsys, "balance", "XY + YZ -> XYZ2")
    assert code == 0
    assert "no balancing exists" in out


def test_unique_balance(capsys):
    code, out, _ = run(capsys, "balance", "S + HNO3 -> SO2 + NO + H2O")
    assert code == 0
    assert "balance: 3S + 4HNO3 = 3SO2 + 4NO + 2H2O" in out


def test_balance_at_point(capsys):
    code, out, _ = run(capsys, "balance", "NO + O3 -> NO2 + O2", "--at", "1/4,3/4")
    assert code == 0
    assert "balance at (1/4,3/4): 6NO + 4O3 = 6NO2 + 3O2" in out


def test_balance_json(capsys):
    code, out, _ = run(capsys, "balance", "--json", "--polytopes", "NO + O3 -> NO2 + O2")
    data = json.loads(out)
    assert data["classification"]["kind"] == "Multiple"
    assert len(data["balances"]) == 2
    assert data["polytopes"]["coordinates"] == ["N", "O"]


def test_balance_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("H2 + O2 -> H2O\n"))
    code, out, _ = run(capsys, "balance", "-")
    assert code == 0 and "2H2 + O2 = 2H2O" in out


def test_bad_formula_is_a_domain_error(capsys):
    code, _, err = run(capsys, "balance", "h2 -> H2")
    assert code == 1
    assert err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["redox", "Fe^2+ -> Fe^3+", "--splits"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unreadable_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "count", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "mechanism", "report", str(bad))
    assert code == 2


def test_redox_methods(capsys):
    eq = "MnO4^- + Fe^2+ + H^+ -> Mn^2+ + Fe^3+ + H2O"
    want = "MnO4^- + 5Fe^2+ + 8H^+ = Mn^2+ + 5Fe^3+ + 4H2O"
    for method in ("charge-row", "spectator"):
        code, out, _ = run(capsys, "redox", eq, "--method", method)
        assert code == 0 and want in out
    code, out, _ = run(capsys, "redox", "Au + CN^- + O2 -> [Au(CN)2]^- + H2O2", "--method", "half-reaction", "--medium", "basic", "--splits")
    assert code == 0 and "splits:" in out


def test_mechanism_verbs(capsys, azomethane_file):
    code, out, _ = run(capsys, "mechanism", "report", azomethane_file)
    assert code == 0 and "conservative: yes" in out
    code, out, _ = run(capsys, "mechanism", "represent", azomethane_file, "--c=-5,3,1,1,1,1")
    assert code == 0 and "x = (3, 1, 1, 1, 1, 1)" in out
    code, out, _ = run(capsys, "mechanism", "precedence", azomethane_file)
    assert "level 2: steps 2, 3, 5" in out
    code, out, _ = run(capsys, "mechanism", "inverse", "--json", azomethane_file)
    assert json.loads(out)["table"]["NS(M)"] == 6
    code, out, _ = run(capsys, "mechanism", "consistent", azomethane_file, "--t", "2", "--json")
    assert code == 0 and json.loads(out)["count"] == len(json.loads(out)["reactions"])


def test_count(capsys, tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(convex_hull([(0, 0), (2, 0), (0, 2)]).to_json()))
    code, out, _ = run(capsys, "count", str(path), "--fit")
    assert code == 0 and "2n^2 + 3n + 1" in out
    code, out, _ = run(capsys, "count", str(path), "--n", "2", "--json")
    assert json.loads(out) == {"dim": 2, "n": 2, "nu": 15, "nu0": 3}
    code, out, _ = run(capsys, "count", str(path))
    assert "6 lattice points" in out


def test_polytope_export(capsys):
    code, out, _ = run(capsys, "polytope", "NO + O3 -> NO2 + O2")
    data = json.loads(out)
    assert code == 0
    assert sorted(data["intersection"]["vertices"]) == [["0", "1"], ["1/3", "2/3"]]


def test_corpus_subset(capsys):
    code, out, _ = run(capsys, "corpus", "--only", "A1", "A5")
    assert code == 0
    assert out.count("[PASS]") == 2
