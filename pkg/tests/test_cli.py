import io
import json

import pytest

from lcsnovikov.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_catalog_listing():
    code, out = call("catalog")
    assert code == 0 and "inoue_solv" in out


def test_check_entry():
    code, out = call("check", "inoue_solv", "--params", "1,1")
    assert code == 0 and out.rstrip().endswith("result: ok")


def test_cohomology_text_and_json_agree():
    code, text = call("cohomology", "inoue_solv(1,1)", "--theta", "g", "--k", "-1,1")
    assert code == 0
    code, js = call("cohomology", "inoue_solv(1,1)", "--theta", "g", "--k", "-1,1", "--json")
    assert code == 0
    payload = json.loads(js)
    assert payload["ok"] is True and payload["command"] == "cohomology"
    for row in payload["cohomology"]:
        assert "k=%s  dims %s" % (row["k"], " ".join(map(str, row["dims"]))) in text
    assert [row["dims"] for row in payload["cohomology"]] == [[0, 1, 2, 1, 0]] * 2


def test_json_is_deterministic():
    a = call("spectral", "heisenberg", "--params", "1", "--k", "1", "--max-page", "4", "--json")
    b = call("spectral", "heisenberg", "--params", "1", "--k", "1", "--max-page", "4", "--json")
    assert a == b and a[0] == 0
    payload = json.loads(a[1])
    recs = [r for r in payload["records"] if r["page"] == 2]
    assert recs and all(r["dim"] == 0 for r in recs)


def test_spectral_text_reports_index():
    code, out = call("spectral", "heisenberg", "--params", "1", "--k", "1", "--max-page", "4")
    assert code == 0 and "stabilization index 2" in out


@pytest.mark.parametrize("cmd", ["primitive", "sequences", "identities"])
def test_other_commands(cmd):
    code, out = call(cmd, "inoue_solv(1,1)", "--structure", "omega-", "--trials", "20")
    assert code == 0, out


def test_exit_codes(tmp_path, capsys):
    assert call("check", "inoue_solv", "--params", "0,1")[0] == 1
    assert call("check", "nowhere")[0] == 1
    assert call("cohomology", "abelian(1)", "--k", "0.5")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("cohomology", "abelian(1)", "--structure", "missing")[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{oops")
    assert call("check", str(broken))[0] == 2
    assert call("check", str(tmp_path / "absent.json"))[0] == 2


def test_jacobi_violation_file(tmp_path, capsys):
    doc = {"names": ["a", "b", "c"],
           "brackets": [{"i": "a", "j": "b", "coeffs": {"a": 1}}, {"i": "b", "j": "c", "coeffs": {"b": 1}}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert call("check", str(path))[0] == 1
    assert "(a, b, c)" in capsys.readouterr().err


def test_model_file_with_structure(tmp_path):
    doc = {"names": ["x", "y", "z", "w"],
           "brackets": [{"i": "x", "j": "y", "coeffs": {"z": 1}}],
           "forms": {"omega": "x^w + y^z"}}
    path = tmp_path / "kt.json"
    path.write_text(json.dumps(doc))
    code, out = call("cohomology", str(path), "--json")
    assert code == 0
    code, out = call("spectral", str(path), "--k", "0")
    assert code == 0 and "stabilization index" in out
