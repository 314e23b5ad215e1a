import io
import json

import pytest

from fogus import serialization as ser
from fogus.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "x.json").write_text(json.dumps(
        {"tail_gen": [["0"]], "exceptional": [{"p": 2, "value": [["1"]]}]}))
    (tmp_path / "y.json").write_text(json.dumps({"tail_gen": [["3"]], "exceptional": []}))
    (tmp_path / "m.cx").write_text(json.dumps({"terms": [{"degree": 0, "object": "@q"}]}))
    (tmp_path / "n.cx").write_text(json.dumps({"terms": [{"degree": 0, "object": "@q1"}]}))
    (tmp_path / "b.json").write_text(json.dumps({"b": [{"p": 2, "degree": 0, "value": [["1"]]}]}))
    return tmp_path


def test_twist_then_hom(tmp_path):
    out = tmp_path / "tw.json"
    assert call("twist", "@q", 1, "-o", out)[0] == 0
    code, data, _ = call_json("hom", out, "@q1")
    assert code == 0 and data["dim"] == 1


def test_hom_modes():
    assert call_json("hom", "@q", "@qm1", "--og")[1]["dim"] == 0
    assert call_json("hom", "@unipotent", "@unipotent", "--fog")[1]["dim"] == 2
    assert call_json("hom", "@weight1", "@weight1", "--fog-prime")[1]["dim"] == 2
    assert call("hom", "@weight1", "@weight1", "--fog")[0] == 1


def test_ihom():
    code, data, _ = call_json("ihom", "@q", "@q1")
    assert code == 0 and data["tail"] == [1] and data["weights"][0]["index"] == -2


def test_check_pure(monkeypatch):
    code, data, _ = call_json("check-pure", "@weight1", "--place", "5")
    assert code == 0 and data["verdict"] == "pure"
    assert call("check-pure", "@weight1")[0] == 1
    assert call("check-pure", "@unipotent", "--tol", "1/1000")[0] == 0
    assert call("check-pure", "@unipotent", "--tol", "-1")[0] == 2
    monkeypatch.setenv("FOGUS_DEFAULT_TOL", "1e-30")
    assert call("check-pure", "@q1")[0] == 0


def test_ext1(files):
    code, data, _ = call_json("ext1", "@q", "@q1", "--cocycles", files / "x.json", files / "y.json")
    assert code == 0 and data["rank"] == 1
    assert [c["coboundary"] for c in data["classes"]] == [False, True]
    assert data["classes"][1]["h"] == [["3"]]
    code, data, _ = call_json("ext1", "@q", "@q1", "--cocycles", files / "x.json", "--probe", "2")
    assert data["rank"] == 0


def test_extension_verbs(files):
    e = files / "e.json"
    assert call("build-ext", "@q", "@q1", files / "x.json", "-o", e)[0] == 0
    assert call("validate", e)[0] == 0
    code, data, _ = call_json("extract-class", e)
    assert data == {"tail_gen": [["0"]], "exceptional": [{"p": 2, "value": [["1"]]}]}
    s = files / "s.json"
    assert call("baer-sum", e, e, "-o", s)[0] == 0
    code, data, _ = call_json("extract-class", s)
    assert data["exceptional"] == [{"p": 2, "value": [["2"]]}]


def test_ext_and_kill_cocycle(files):
    code, data, _ = call_json("ext", files / "m.cx", files / "n.cx", "--degree", 1, "--probe", "2,3")
    assert code == 0 and data["dim"] == 1
    assert call_json("ext", files / "m.cx", files / "n.cx", "--degree", 1, "--probe", "2")[1]["dim"] == 0
    E = files / "e.cx"
    code, data, _ = call_json("kill-cocycle", files / "m.cx", files / "n.cx", files / "b.json", "-o", E)
    assert code == 0 and data["quasi_isomorphism"]
    assert call("validate", E)[0] == 0
    again = ser.complex_from_json(json.loads(E.read_text()))
    assert ser.complex_to_json(again) == json.loads(E.read_text())


def test_verify_example():
    code, data, _ = call_json("verify", "example-q-q1")
    assert code == 0
    (suite,) = data["suites"]
    assert suite["details"]["delta_rank"] == 4 and suite["details"]["b3_class_zero"]


def test_verify_seeded_is_deterministic():
    a = call("verify", "ses", "--format", "json")[1]
    b = call("verify", "ses", "--format", "json")[1]
    assert a == b


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 1, "exceptional": [{"p": 4, "frobenius": [["1"]]}]}')
    code, _, err = call("validate", bad)
    assert code == 2 and "exceptional[0].p" in err
    assert call("validate", tmp_path / "missing.json")[0] == 2
    assert call("hom", "@nope", "@q")[0] == 2
    assert call("ext", "@q", "@q", "--degree", 0, "--probe", "4")[0] == 2
    assert call("frobnicate")[0] == 2


def test_validate_impure_is_negative():
    assert call("validate", "@weight1")[0] == 1
    assert call("validate", "@unipotent")[0] == 0


def test_json_output_is_byte_identical():
    a = call("ihom", "@unipotent", "@q", "--format", "json")[1]
    b = call("ihom", "@unipotent", "@q", "--format", "json")[1]
    assert a == b and a.endswith("\n")
