"""Named polynomials and the JSON/CSV writers."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kinkforge.orbit_solver import constant_profile
from kinkforge.presets import parse_complex, preset, presets, product
from kinkforge.report_io import dumps, orbit_csv, plain, read_orbit_csv


def test_fixed_presets():
    np.testing.assert_array_equal(preset("phi4").coeffs, [-1, 0, 1])
    np.testing.assert_array_equal(preset("iphi4").coeffs, [1, 0, 1])
    np.testing.assert_array_equal(preset("triple").coeffs, [0, -1, 0, 1])
    assert "phi4" in presets()


def test_product_preset():
    p = preset("product:-1,i,1")
    assert p.degree == 3
    for a in (-1, 1j, 1):
        assert abs(p(a)) < 1e-14
    assert product(-1, 1j, 1) == p


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown preset"):
        preset("phi6")
    with pytest.raises(ValueError):
        preset("product:")


@pytest.mark.parametrize(
    "token,value", [("1", 1), ("-i", -1j), ("i", 1j), ("0.5+2i", 0.5 + 2j), ("3j", 3j), ("1-i", 1 - 1j)]
)
def test_parse_complex(token, value):
    assert parse_complex(token) == value


def test_plain_conversions():
    out = plain({"z": 1 + 2j, "a": np.arange(2), "b": np.bool_(True), "f": np.float32(0.5)})
    assert out == {"z": [1.0, 2.0], "a": [0, 1], "b": True, "f": 0.5}


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_dumps_round_trips_floats_exactly(x):
    assert json.loads(dumps({"x": x}))["x"] == x


def test_dumps_nonfinite_and_format():
    text = dumps({"a": float("nan"), "b": [0.1, 2], "c": "q\"uote"})
    assert json.loads(text) == {"a": None, "b": [0.1, 2], "c": 'q"uote'}
    assert "0.10000000000000001" in text


def test_orbit_csv_round_trip(phi4):
    _, prof = phi4
    text = orbit_csv(prof)
    assert text.startswith("x,e1,e2,de1,de2\n") and "\r" not in text
    assert text.count("\n") == prof.N + 2
    x, e, de = read_orbit_csv(text)
    assert np.array_equal(x, prof.x) and np.array_equal(e, prof.e) and np.array_equal(de, prof.de)


def test_read_orbit_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        read_orbit_csv("a,b\n1,2\n")


def test_constant_profile_csv():
    f = preset("phi4")
    x, e, de = read_orbit_csv(orbit_csv(constant_profile(f, 1.0, X=1.0, N=8)))
    assert np.all(e == 1) and np.all(de == 0) and x[0] == -1 and x[-1] == 1
