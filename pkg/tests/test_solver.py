import json
import random
from fractions import Fraction

import pytest

from dfrac.exceptions import GridMismatchError, HorizonError, InputError
from dfrac.grid import Family, FracParams, GridSeq
from dfrac.mittag import MlQuery, ml_eval
from dfrac.solver import (IvpSpec, apply_T, ivp_residual, max_relative_deviation,
                          relative_deviation, solve_closed_const, solve_oracle, solve_series)
from oracles import mp_recursion, random_spec_dict


def _specs(count, seed, constant_y):
    rng = random.Random(seed)
    return [IvpSpec.from_dict(random_spec_dict(rng, constant_y=constant_y)) for _ in range(count)]


@pytest.mark.parametrize("spec", _specs(15, 1, False) + _specs(15, 2, True))
def test_oracle_matches_high_precision_recursion(spec):
    want = mp_recursion(spec.nu, spec.x0, spec.y.values, spec.z.values, spec.horizon)
    got = solve_oracle(spec).values
    assert all(relative_deviation(g, float(w)) <= 1e-10 or abs(g - float(w)) < 1e-12
               for g, w in zip(got, want))


@pytest.mark.parametrize("spec", _specs(15, 3, False))
def test_series_agrees_with_oracle(spec):
    dev = max_relative_deviation(solve_series(spec).values, solve_oracle(spec).values)
    assert max(dev) <= 1e-8


@pytest.mark.parametrize("spec", _specs(15, 4, True))
def test_closed_form_agrees_with_exact_oracle(spec):
    closed = solve_closed_const(spec).values
    exact = solve_oracle(spec, exact=True).values
    assert max(max_relative_deviation(closed, exact)) <= 1e-10


def test_exact_series_equals_exact_oracle():
    spec = IvpSpec.build(0.0, 0.375, 1.5, [0.5, -0.25, 1.0, 0.75], [1.0, 0.0, -2.0, 0.5], 4)
    s = solve_series(spec, exact=True).values
    o = solve_oracle(spec, exact=True).values
    assert s == o


def test_homogeneous_solution_is_mittag_leffler():
    spec = IvpSpec.build(0.0, 0.6, 2.0, -0.3, 0.0, 12)
    xs = solve_oracle(spec).values
    for n, x in enumerate(xs):
        assert x == pytest.approx(2.0 * ml_eval(MlQuery(0.6, 0, -0.3, n)), rel=1e-12, abs=1e-15)


def test_order_one_is_ordinary_recursion():
    # Delta x = c x + z at nu = 1 is x[n+1] = (1 + c) x[n] + z.
    spec = IvpSpec.build(0.0, 1.0, 1.0, 0.5, 2.0, 6)
    want = [Fraction(1)]
    for _ in range(6):
        want.append(Fraction(3, 2) * want[-1] + 2)
    for method in (solve_series, solve_oracle, solve_closed_const):
        assert method(spec).values == pytest.approx([float(w) for w in want], rel=1e-13)


@pytest.mark.parametrize("spec", _specs(10, 5, False))
def test_residual_is_small(spec):
    traj = solve_oracle(spec)
    res = ivp_residual(traj)
    assert len(res) == spec.horizon
    scale = max([1.0] + [abs(v) for v in traj.values])
    assert all(abs(r) <= 1e-10 * scale for r in res)


def test_exact_residual_vanishes_for_exact_trajectory():
    spec = IvpSpec.build(0.0, 0.5, 1.0, [0.25, -0.5, 0.75], [1.0, 2.0, -1.0], 3)
    traj = solve_oracle(spec, exact=True)
    # The trajectory is rounded to floats once, so the residual is at rounding level.
    assert max(abs(r) for r in ivp_residual(traj, exact=True)) < 1e-14


def test_apply_T_first_entry_is_zero_and_checks_grids():
    p = FracParams(0.0, 0.5)
    y = GridSeq.constant(1.0, 4, p)
    f = GridSeq.constant(1.0, 4, p)
    out = apply_T(y, f)
    assert out[0] == 0.0 and len(out) == 5
    with pytest.raises(GridMismatchError):
        apply_T(y, GridSeq.constant(1.0, 4, FracParams(0.0, 0.4)))
    with pytest.raises(GridMismatchError):
        apply_T(y, f, nu=0.3)


def test_spec_validation():
    with pytest.raises(InputError):
        IvpSpec.from_json("{")
    with pytest.raises(InputError):
        IvpSpec.from_dict({"a": 0, "nu": 0.5})
    with pytest.raises(InputError):
        IvpSpec.from_dict({"a": 0, "nu": 0.5, "x0": 1, "y": [1], "z": [1], "horizon": 3})
    with pytest.raises(InputError):
        IvpSpec.from_dict({"a": 0, "nu": 0.5, "x0": 1, "y": "x", "z": 1, "horizon": 1})
    with pytest.raises(HorizonError):
        IvpSpec.build(0, 0.5, 1, 1, 1, -1)
    with pytest.raises(GridMismatchError):
        IvpSpec(FracParams(0, 0.5), 1.0, GridSeq.constant(1, 1, FracParams(0, 0.5), Family.INTEGER),
                GridSeq.constant(1, 1, FracParams(0, 0.5)), 1)
    with pytest.raises(InputError):
        solve_closed_const(IvpSpec.build(0, 0.5, 1, [1.0, 2.0], 0, 2))


def test_spec_json_round_trip():
    spec = IvpSpec.build(1.5, 0.25, -1.0, [0.5, 0.1], 3.0, 2)
    assert IvpSpec.from_json(json.dumps(spec.to_dict())) == spec
    assert spec.constant_value("z") == 3.0 and spec.constant_value("y") is None


def test_zero_horizon():
    spec = IvpSpec.build(0.0, 0.5, 4.0, 1.0, 1.0, 0)
    for method in (solve_series, solve_oracle, solve_closed_const):
        assert method(spec).values == (4.0,)
    assert ivp_residual(solve_oracle(spec)) == []


def test_relative_deviation_conventions():
    assert relative_deviation(0.0, 0.0) == 0.0
    assert relative_deviation(1.0, 2.0) == 0.5
    assert max_relative_deviation([1.0, 0.0], [1.0, 0.0], [1.0, 1e-3]) == [0.0, 1.0]
