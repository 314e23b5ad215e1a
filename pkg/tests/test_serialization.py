import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from fogus import homext as he
from fogus import samples as sm
from fogus import serialization as ser
from fogus import weights as wt
from fogus.errors import FormatError
from fogus.exactq import Matrix


def test_bundled_examples():
    assert {"q", "q1", "qm1", "weight1", "unipotent"} <= set(ser.bundled_names())
    assert ser.load_object("@q1") == wt.tate_fog(1)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_object_round_trip(seed):
    X = sm.random_fog(random.Random(seed))
    text = ser.dumps(ser.object_to_json(X))
    Y = ser.object_from_json(json.loads(text))
    assert Y == X
    assert ser.dumps(ser.object_to_json(Y)) == text


def test_gauge_field():
    data = {"dim": 1, "tail": [0], "exceptional": [{"p": 3, "frobenius": [["2"]], "epsilon": [["5"]]}]}
    assert ser.object_from_json(data).frobenius(3) == Matrix([[2]])


def test_cocycle_and_extension_round_trip():
    Q, Q1 = wt.unit_fog(), wt.tate_fog(1)
    x = he.make_cocycle(Q, Q1, Matrix([[2]]), {5: Matrix([["1/3"]])})
    y = ser.cocycle_from_json(json.loads(ser.dumps(ser.cocycle_to_json(x))), Q, Q1)
    assert y == x
    T = he.build_extension(x)
    T2 = ser.extension_from_json(json.loads(ser.dumps(ser.extension_to_json(T))))
    assert T2.E == T.E and T2.incl == T.incl and T2.proj == T.proj


def test_complex_round_trip():
    C = sm.random_complex(random.Random(3), 3)
    D = ser.complex_from_json(json.loads(ser.dumps(ser.complex_to_json(C))))
    assert D == C


@pytest.mark.parametrize("data, field", [
    ({"tail": [0]}, "object: missing field 'dim'"),
    ({"dim": 1, "tail": [0, 0]}, "object.tail"),
    ({"dim": 1, "exceptional": [{"p": 2, "frobenius": [["x"]]}]}, "object.exceptional[0].frobenius[0][0]"),
    ({"dim": 1, "exceptional": [{"p": 2, "frobenius": [[1.5]]}]}, "object.exceptional[0].frobenius[0][0]"),
    ({"dim": 1, "exceptional": [{"p": 2, "frobenius": [["0"]]}]}, "not invertible"),
    ({"dim": 1, "exceptional": [{"p": 9, "frobenius": [["1"]]}]}, "object.exceptional[0].p"),
    ({"dim": 2, "exceptional": [{"p": 2, "frobenius": [["1"]]}]}, "shape"),
    ({"dim": 1, "weights": [{"index": 0, "basis": [["1", "0"]]}]}, "object.weights[0].basis"),
    ({"dim": 1, "weights": [{"index": 1, "basis": [["1"]]}, {"index": 0, "basis": [["1"]]}]},
     "strictly increasing"),
    ({"dim": 1, "weights": [{"index": 0, "basis": [["1"]]}], "fog_prime": "yes"}, "fog_prime"),
])
def test_errors_name_the_field(data, field):
    with pytest.raises(FormatError) as info:
        ser.object_from_json(data)
    assert field in str(info.value)


def test_cocycle_weight_violation_is_reported():
    with pytest.raises(FormatError) as info:
        ser.cocycle_from_json({"exceptional": [{"p": 2, "value": [["1"]]}]},
                              wt.unit_fog(), wt.tate_fog(-1), "x.json")
    assert "x.json" in str(info.value)


def test_json_syntax_error_has_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1,\n "tail": [0,]}')
    with pytest.raises(FormatError) as info:
        ser.read_json(p)
    assert "line 2" in str(info.value)


def test_element_format():
    b = {2: {0: Matrix([[1]])}, 3: {1: Matrix([["1/2"]])}}
    assert ser.element_from_json(ser.element_to_json(b)) == b
