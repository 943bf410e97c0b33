import json
from pathlib import Path

import pytest

from homlie.catalog import ENV_VAR
from homlie.cli import main, parse_ideal
from homlie.linalg import Subspace
from homlie.serialize import algebra_from_doc, algebra_to_doc, dumps, loads


@pytest.fixture
def files(tmp_path, catalog):
    """Write every catalog algebra to ``tmp_path/<name>.json``."""
    out = {}
    for name, entry in catalog.items():
        path = tmp_path / f"{name}.json"
        path.write_text(dumps(algebra_to_doc(entry.algebra)), encoding="utf-8")
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


# -- invariants and validation --------------------------------------------------

def test_invariants_golden(capsys, files):
    code, out, _ = run(capsys, "invariants", files["V-ex310"])
    assert code == 0
    assert out == ("dim=3\ncenter_dim=0\nderived_dim=2\nmultiplicative=true\n"
                   "regular=true\nstem=true\nabelian=false\n")
    _, out, _ = run(capsys, "invariants", files["W-ex310"])
    got = kv(out)
    assert (got["center_dim"], got["derived_dim"], got["stem"]) == ("1", "2", "false")
    _, out, _ = run(capsys, "invariants", files["abelian-2"])
    got = kv(out)
    assert (got["center_dim"], got["derived_dim"], got["abelian"]) == ("2", "0", "true")


def test_validate_exit_codes(capsys, files, tmp_path):
    code, out, _ = run(capsys, "validate", files["W-ex310"])
    assert code == 0 and out.startswith("valid\n")
    doc = loads(Path(files["heisenberg"]).read_text())
    doc["brackets"].append({"i": 2, "j": 3, "coeffs": {"2": "1"}})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert out.splitlines()[0] == "invalid"
    assert kv(out)["at"] == "1,2,3"


def test_parse_errors_exit_3(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == 3 and err.startswith("[parse]")
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 3 and err.startswith("[io]")
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"name": "x", "dim": 2, "brackets": [{"i": 2, "j": 1}],
                                 "phi": [["1", "0"], ["0", "1"]]}))
    code, _, err = run(capsys, "validate", str(wrong))
    assert code == 3 and err.startswith("[parse]")


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 3
    assert "[arguments]" in capsys.readouterr().err


# -- catalog ----------------------------------------------------------------------

def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    names = out.split()
    assert code == 0
    for want in ("V-ex310", "W-ex310", "abelian-1", "abelian-2", "heisenberg",
                 "heisenberg-twisted", "V-plus-abelian1"):
        assert want in names


def test_catalog_emit_phi_rows(capsys):
    code, out, _ = run(capsys, "catalog", "emit", "V-ex310")
    assert code == 0
    assert loads(out)["phi"] == [["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]]
    code, _, err = run(capsys, "catalog", "emit", "nope")
    assert code == 3 and err.startswith("[catalog]")


def test_emit_parse_emit_is_byte_identical(capsys, catalog):
    for name in catalog:
        _, first, _ = run(capsys, "catalog", "emit", name)
        again = dumps(algebra_to_doc(algebra_from_doc(loads(first))))
        assert again == first, name


def test_catalog_dir_override(capsys, tmp_path, monkeypatch, catalog):
    for name in ("V-ex310", "heisenberg"):
        (tmp_path / f"{name}.json").write_text(dumps(catalog[name].to_doc()), encoding="utf-8")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out.split() == ["V-ex310", "heisenberg"]
    # a recorded profile that disagrees with recomputation is rejected on load
    doc = catalog["heisenberg"].to_doc()
    doc["expected"]["center_dim"] = 2
    (tmp_path / "heisenberg.json").write_text(dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "catalog", "list")
    assert code == 3 and err.startswith("[catalog]") and "center_dim" in err


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "catalog", "verify-paper")
    lines = out.splitlines()
    assert "Lemma_3_3_roundtrip PASS" in lines
    assert code == 0
    assert all(line.endswith(" PASS") for line in lines)


# -- verdicts ---------------------------------------------------------------------

def test_isoclinic_yes(capsys, files):
    code, out, _ = run(capsys, "isoclinic", files["V-ex310"], files["W-ex310"])
    assert code == 0
    head, body = out.split("\n", 1)
    assert head == "YES"
    doc = loads(body)
    assert len(doc["alpha"]) == 3 and len(doc["beta"]) == 2


def test_isoclinic_no(capsys, files):
    code, out, _ = run(capsys, "isoclinic", files["heisenberg"], files["sl2"])
    assert code == 1 and out.startswith("NO\nreason=")


def test_isomorphic_no_by_dimension(capsys, files):
    code, out, _ = run(capsys, "isomorphic", files["V-ex310"], files["W-ex310"])
    assert code == 1
    assert out.splitlines()[0] == "NO" and "dimension" in out


def test_isomorphic_yes_with_witness(capsys, files):
    code, out, _ = run(capsys, "isomorphic", files["W-ex310"], files["V-plus-abelian1"])
    assert code == 0
    assert len(loads(out.split("\n", 1)[1])["map"]) == 4


def test_isomorphic_unknown_within_bound(capsys, tmp_path):
    a = {"name": "a", "dim": 2, "brackets": [], "phi": [["1", "0"], ["0", "2"]]}
    b = dict(a, name="b", phi=[["1", "5"], ["0", "2"]])
    for d in (a, b):
        (tmp_path / f"{d['name']}.json").write_text(json.dumps(d))
    args = (str(tmp_path / "a.json"), str(tmp_path / "b.json"))
    code, out, _ = run(capsys, "isomorphic", *args)
    assert code == 2 and out.startswith("UNKNOWN\n")
    code, out, _ = run(capsys, "isomorphic", *args, "--bound", "5")
    assert code == 0
    code, _, err = run(capsys, "isomorphic", *args, "--bound", "0")
    assert code == 3 and err.startswith("[arguments]")


def test_isoclinic_rejects_invalid_input(capsys, files, tmp_path):
    doc = loads(Path(files["heisenberg"]).read_text())
    doc["brackets"].append({"i": 2, "j": 3, "coeffs": {"2": "1"}})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "isoclinic", str(bad), files["heisenberg"])
    assert code == 3 and err.startswith("[isoclinic]")


# -- quotients, factor sets, stem decomposition ------------------------------------------

def test_parse_ideal_labels():
    assert parse_ideal("v4", 4) == Subspace.coordinate(4, [3])
    assert parse_ideal("w2, w3", 4) == Subspace.coordinate(4, [1, 2])
    assert parse_ideal("1", 2) == Subspace.coordinate(2, [0])


def test_quotient(capsys, files):
    code, out, _ = run(capsys, "quotient", files["W-ex310"], "--ideal", "w4")
    assert code == 0
    q = algebra_from_doc(loads(out))
    assert q.dim == 3
    code, _, err = run(capsys, "quotient", files["W-ex310"], "--ideal", "w2")
    assert code == 3 and err.startswith("[quotient]")
    code, _, err = run(capsys, "quotient", files["W-ex310"], "--ideal", "w9")
    assert code == 3 and err.startswith("[parse]")


def test_factorset_extract_w(capsys, files):
    code, out, _ = run(capsys, "factorset", "extract", files["W-ex310"])
    assert code == 0
    doc = loads(out)
    assert (doc["z_dim"], doc["q_dim"]) == (1, 3)
    assert all(x == "0" for row in doc["r"] for v in row for x in v)
    assert len(doc["theta"]) == 4


def test_factorset_extract_then_build(capsys, files, tmp_path):
    _, out, _ = run(capsys, "factorset", "extract", files["heisenberg"])
    fs_path = tmp_path / "fs.json"
    fs_path.write_text(out)
    code, out, _ = run(capsys, "factorset", "build", str(fs_path), files["heisenberg"])
    assert code == 0
    rebuilt = tmp_path / "rebuilt.json"
    rebuilt.write_text(out)
    code, out, _ = run(capsys, "isomorphic", str(rebuilt), files["heisenberg"])
    assert code == 0


def test_factorset_build_invalid(capsys, files, tmp_path, ins):
    fs, _ = ins.extracted["W-sheared"]
    doc = {"base": "W-sheared", "z_dim": 1, "q_dim": 3,
           "r": [[[str(x) for x in v] for v in row] for row in fs.with_entry(1, 2, [1]).r]}
    path = tmp_path / "fs.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "factorset", "build", str(path), files["W-sheared"])
    assert code == 1 and out.startswith("invalid\nreason=")


def test_stem_decompose(capsys, files):
    code, out, _ = run(capsys, "stem-decompose", files["W-ex310"])
    assert code == 0
    doc = loads(out)
    assert doc["stem"]["dim"] == 3 and doc["abelian"]["dim"] == 1
    assert len(doc["witness"]) == 4


def test_output_is_canonical_json(capsys, files):
    _, out, _ = run(capsys, "stem-decompose", files["W-ex310"])
    assert dumps(loads(out)) == out
