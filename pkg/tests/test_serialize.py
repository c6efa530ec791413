import json
from fractions import Fraction

from newton_smoothing import serialize as ser
from newton_smoothing.catalog import P_A
from newton_smoothing.geometry import INF, build_newton_data
from newton_smoothing.polynomial import parse_polynomial
from newton_smoothing.profile import sharp_profile


def test_scalars():
    assert ser.rational(Fraction(6, 4)) == "3/2"
    assert ser.rational(2) == "2"
    assert ser.point((4, INF)) == [4, "inf"]


def test_newton_block():
    block = ser.newton_json(build_newton_data(parse_polynomial(P_A)))
    assert block["chain"] == [[0, 8], [4, 6], ["inf", 6]]
    assert block["M"] == 0 and block["ms"] == 2 and block["ns"] == 8


def test_profile_block_is_json_ready():
    block = ser.profile_json(sharp_profile(build_newton_data(parse_polynomial(P_A))))
    text = ser.dumps(block)
    assert text.endswith("}\n")
    assert json.loads(text)["pieces"][2]["slope"] == "7/8"


def test_dumps_sorts_keys():
    assert ser.dumps({"b": 1, "a": 2}).index('"a"') < ser.dumps({"b": 1, "a": 2}).index('"b"')


def test_rows_keep_float_precision():
    text = ser.rows_to_text([{"x": 0.1, "y": "1/3"}], ["x", "y"], "\t")
    assert text == "x\ty\n0.1\t1/3\n"


def test_schema_loads():
    schema = ser.load_schema()
    assert schema["$schema"].endswith("2020-12/schema")
