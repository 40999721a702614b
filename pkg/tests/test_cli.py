import json

import pytest

from hochschild.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hh_dihedral_char2(capsys):
    code, out, err = run(capsys, "hh", "--algebra", "dihedral:2", "--char", "2", "--max-degree", "3")
    assert code == 0
    rep = json.loads(out)
    assert [r["HH^n"] for r in rep["degrees"]] == [5, 9, 13, 17]
    assert [r["HH_n"] for r in rep["degrees"]] == [5, 9, 13, 17]
    assert "dim" in err


def test_hh_ground_field(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", "field", "--max-degree", "2", "--depth", "3")
    assert [r["HH^n"] for r in json.loads(out)["degrees"]] == [1, 0, 0]


def test_hh_dual_numbers_matches_bar(capsys, tmp_path):
    code, out, _ = run(capsys, "hh", "--algebra", "dual-numbers", "--char", "0", "--max-degree", "2")
    dims = [r["HH^n"] for r in json.loads(out)["degrees"]]
    # the same algebra from a file goes through the bar resolution
    from hochschild.algebra import dual_numbers
    from hochschild.fields import Field
    path = tmp_path / "dual.json"
    A = dual_numbers(Field(0))
    obj = A.to_json()
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "hh", "--algebra", str(path), "--max-degree", "2", "--depth", "3")
    assert [r["HH^n"] for r in json.loads(out)["degrees"]] == dims == [2, 1, 1]


def test_bracket_methods_agree(capsys):
    code, out, err = run(capsys, "bracket", "--algebra", "dihedral:2", "--char", "2", "--degrees", "1", "1",
                         "--method", "contracting", "--method", "bar", "--method", "lifting", "--method", "nw",
                         "--method", "bv")
    assert code == 0
    rep = json.loads(out)
    assert all(r["verdict"] == "equal" for r in rep["brackets"])
    assert "0 different" in err


def test_bracket_with_unit_class(capsys):
    code, out, _ = run(capsys, "bracket", "--algebra", "dual-numbers", "--degrees", "0", "1", "--classes", "0", "0",
                       "--method", "bar", "--method", "contracting")
    rep = json.loads(out)
    # the first HH^0 basis class is the unit
    assert rep["brackets"][0]["coordinates"]["bar"] == {}
    assert code == 0


def test_bracket_bv_needs_symmetric(capsys, tmp_path):
    path = tmp_path / "ut.json"
    path.write_text(json.dumps({
        "field": {"kind": "rationals"}, "basis": ["1", "e", "a"], "unit": {"1": "1"},
        "mult": [{"left": l, "right": r, "value": v} for l, r, v in [
            ("1", "1", {"1": "1"}), ("1", "e", {"e": "1"}), ("1", "a", {"a": "1"}), ("e", "1", {"e": "1"}),
            ("e", "e", {"e": "1"}), ("e", "a", {"a": "1"}), ("a", "1", {"a": "1"})]],
    }))
    code, _, err = run(capsys, "bracket", "--algebra", str(path), "--degrees", "1", "1", "--method", "bv")
    assert code == 2 and "symmetric" in err


def test_verify_reports_and_exit_status(capsys):
    code, out, err = run(capsys, "verify", "--k", "2", "--char", "2", "--depth", "4")
    rows = json.loads(out)
    assert code == (1 if any(r["status"] == "mismatch" for r in rows) else 0)
    assert "match=" in err


def test_verify_from_exported_file(capsys, tmp_path):
    path = tmp_path / "res.json"
    code, _, _ = run(capsys, "export-resolution", "--algebra", "dihedral:2", "--char", "2", "--depth", "4",
                     "--out", str(path))
    assert code == 0
    _, a, _ = run(capsys, "verify", "--k", "2", "--char", "2", "--depth", "4")
    _, b, _ = run(capsys, "verify", "--k", "2", "--char", "2", "--depth", "4", "--resolution", str(path))
    assert a == b


def test_verify_corrupted_file(capsys, tmp_path):
    path = tmp_path / "res.json"
    run(capsys, "export-resolution", "--algebra", "dihedral:2", "--char", "2", "--depth", "4", "--out", str(path))
    obj = json.loads(path.read_text())
    obj["contraction"]["t"][3]["image"] = []
    path.write_text(json.dumps(obj))
    code, out, err = run(capsys, "verify", "--k", "2", "--char", "2", "--depth", "4", "--resolution", str(path))
    assert code == 1
    (row,) = json.loads(out)
    assert row["status"] == "mismatch" and row["claim-id"] == "structure:dt+td+eta mu=1"


def test_usage_errors(capsys):
    assert run(capsys, "hh", "--max-degree", "5", "--depth", "4")[0] == 2
    assert run(capsys, "hh", "--algebra", "nonsense")[0] == 2
    assert run(capsys, "hh", "--char", "4")[0] == 2
    with pytest.raises(SystemExit):
        main(["bracket", "--degrees", "1", "1", "--method", "magic"])
