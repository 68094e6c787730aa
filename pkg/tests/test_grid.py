import json

import pytest

from dfrac.exceptions import InputError
from dfrac.grid import (ArgKind, Family, FracParams, GridSeq, as_values, format_real,
                        make_base_arg)
from dfrac.special import ExactArg


def test_params_validation():
    with pytest.raises(InputError):
        FracParams(0.0, 1.5)
    with pytest.raises(InputError):
        FracParams(float("nan"), 0.5)


def test_points_for_both_families():
    p = FracParams(2.0, 0.25)
    assert GridSeq.constant(0, 3, p, Family.INTEGER).point(3) == 5.0
    assert GridSeq.constant(0, 3, p).point(0) == pytest.approx(1.25)


def test_empty_sequence_rejected():
    with pytest.raises(InputError):
        GridSeq(Family.SHIFTED, FracParams(), ())


def test_csv_round_trip_is_bit_exact():
    vals = (0.1, -1e-300, 1 / 3, 2.0 ** 60)
    g = GridSeq(Family.INTEGER, FracParams(), vals)
    text = g.to_csv()
    assert text.splitlines()[0] == "offset,value"
    assert GridSeq.from_csv(text, FracParams()).values == vals


@pytest.mark.parametrize("text", ["x,y\n0,1\n", "offset,value\n0,1\n2,3\n", "offset,value\n0,abc\n",
                                  "offset,value\n0,1,2\n", ""])
def test_csv_rejects_malformed(text):
    with pytest.raises(InputError):
        GridSeq.from_csv(text, FracParams())


def test_csv_accepts_unsorted_rows():
    g = GridSeq.from_csv("offset,value\n1,2\n0,1\n", FracParams())
    assert g.values == (1.0, 2.0)


def test_json_round_trip_and_errors():
    g = GridSeq.from_function(lambda n: n / 7, 4, FracParams(1.0, 0.3))
    assert GridSeq.from_json(g.to_json()) == g
    with pytest.raises(InputError):
        GridSeq.from_json(json.dumps({"family": "shifted"}))
    with pytest.raises(InputError):
        GridSeq.from_json("not json")


def test_format_real_round_trips():
    for v in (0.1, 1 / 3, -2.5e-17, 1e300):
        assert float(format_real(v)) == v


def test_as_values_accepts_both():
    g = GridSeq.constant(2, 2, FracParams())
    assert as_values(g) == as_values([2, 2, 2]) == (2.0, 2.0, 2.0)


@pytest.mark.parametrize("kind, idx, want", [
    (ArgKind.SUM_KERNEL, (5, 2), ExactArg(1, 1)),
    (ArgKind.ML_BASE, (2, 7), ExactArg(3, 4)),
    (ArgKind.ML_EXPONENT, (2, 1), ExactArg(3, 0)),
    (ArgKind.DIRECT_KERNEL, (4, 1), ExactArg(-1, 3)),
    (ArgKind.SHIFTED_POINT, (3,), ExactArg(1, 2)),
])
def test_make_base_arg(kind, idx, want):
    assert make_base_arg(kind, *idx) == want
