import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfrac.exceptions import PoleError, UndefinedPowerError
from dfrac.special import (ExactArg, SignedLog, falling_power, falling_power_log,
                           falling_power_real, lgamma_signed, normalized_power,
                           pochhammer_ratio, pochhammer_ratios)
from oracles import mp_falling, rel_err

orders = st.floats(min_value=0.01, max_value=0.99)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 7.25, 33.3, 170.5, -0.5, -1.5, -2.25, -7.9])
def test_lgamma_signed_matches_mpmath(x):
    got = lgamma_signed(x)
    want = mpmath.gamma(x)
    assert got.sign == (1 if want > 0 else -1)
    assert abs(got.log_abs - float(mpmath.log(abs(want)))) < 1e-13 * max(1.0, abs(got.log_abs))


@pytest.mark.parametrize("x", [0.0, -1.0, -4.0])
def test_lgamma_poles(x):
    with pytest.raises(PoleError):
        lgamma_signed(x)


def test_signed_log_arithmetic():
    a, b = SignedLog.from_float(-6.0), SignedLog.from_float(2.0)
    assert (a * b).value == pytest.approx(-12.0)
    assert (a / b).value == pytest.approx(-3.0)
    assert (SignedLog.ZERO * a).value == 0.0
    with pytest.raises(ZeroDivisionError):
        a / SignedLog.ZERO


def test_exact_arg_integrality():
    assert ExactArg(0, 3).integer_value(0.4) == 3
    assert ExactArg(2, -1).integer_value(0.4) is None
    assert ExactArg(2, -1).integer_value(1.0) == 1
    assert ExactArg(1, 2) - ExactArg(1, -1) == ExactArg(0, 3)
    assert -ExactArg(1, 2) + 5 == ExactArg(-1, 3)
    with pytest.raises(TypeError):
        ExactArg(0.5, 1)


def test_falling_power_integer_case_is_exact():
    assert falling_power(ExactArg.integer(10), ExactArg.integer(3), 0.5) == 720.0
    assert falling_power(ExactArg.integer(25), ExactArg.integer(25), 0.3) == float(math.factorial(25))


def test_falling_power_zero_branch_and_undefined():
    # x - y = -1 with x not a negative integer: zero branch.
    assert falling_power(ExactArg(1, 0), ExactArg(1, 1), 0.4) == 0.0
    assert falling_power_log(ExactArg(1, 0), ExactArg(1, 1), 0.4) == SignedLog.ZERO
    with pytest.raises(UndefinedPowerError):
        falling_power(ExactArg.integer(-2), ExactArg.integer(-5), 0.4)


@settings(max_examples=200, deadline=None)
@given(nu=orders, p=st.integers(-3, 4), q=st.integers(0, 20), k=st.integers(0, 15))
def test_falling_power_matches_mpmath(nu, p, q, k):
    x = ExactArg(p, q)
    y = x - k
    if x.value(nu) + 1 <= 0:
        return
    want = mp_falling(x.value(nu), y.value(nu))
    assert rel_err(falling_power(x, y, nu), want) < 1e-12


def test_falling_power_real_tolerance():
    assert falling_power_real(0.5, 1.5 + 1e-12) == 0.0  # x - y within 1e-9 of -1
    assert falling_power_real(4.0, 2.0) == pytest.approx(12.0)
    with pytest.raises(UndefinedPowerError):
        falling_power_real(-3.0 + 1e-12, 0.5)


def test_pochhammer_ratios_exact():
    half = Fraction(1, 2)
    assert pochhammer_ratios(half, 3) == [1, Fraction(1, 2), Fraction(3, 8), Fraction(5, 16)]
    assert pochhammer_ratio(Fraction(-1), 2) == 0
    with pytest.raises(ValueError):
        pochhammer_ratio(half, -1)


@settings(max_examples=100, deadline=None)
@given(nu=orders, k=st.integers(0, 40))
def test_normalized_power_float_vs_exact(nu, k):
    x, y = ExactArg(1, k - 1), ExactArg(1, -1)
    exact = normalized_power(x, y, nu, exact=True)
    assert isinstance(exact, Fraction)
    assert abs(normalized_power(x, y, nu) - float(exact)) <= 1e-12 * abs(float(exact))


def test_normalized_power_pole_in_denominator_gives_zero():
    # y + 1 = 0 at nu = 1: 1/Gamma(0) = 0.
    assert normalized_power(ExactArg(1, 0), ExactArg(-1, 0), 1.0) == 0.0
