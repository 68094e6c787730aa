"""Shared independent oracles (mpmath at 50 digits, exact rationals)."""

from __future__ import annotations

import random

import mpmath

mpmath.mp.dps = 50


def mp_falling(x, y):
    """x^(y) = Gamma(x+1) / Gamma(x+1-y), zero when 1/Gamma(x+1-y) vanishes."""
    x, y = mpmath.mpf(x), mpmath.mpf(y)
    return mpmath.gamma(x + 1) * mpmath.rgamma(x + 1 - y)


def mp_ml(nu, b, c, n, shift=0, dps=120):
    """Discrete Mittag-Leffler value by direct summation of every term j = 0..n.

    Alternating terms cancel heavily for c < 0, so the sum runs at ``dps``
    digits (default 120) rather than the module-wide 50.
    """
    with mpmath.workdps(dps):
        return +_mp_ml(nu, b, c, n, shift)


def _mp_ml(nu, b, c, n, shift):
    nu, c = mpmath.mpf(nu), mpmath.mpf(c)
    d = n - shift
    if d < 0:
        return mpmath.mpf(0)
    beta = nu + b
    total = mpmath.mpf(0)
    for j in range(d + 1):
        x = (j + 1) * (nu - 1) + d
        y = j * nu + beta - 1
        total += c ** j * mpmath.rgamma(j * nu + beta) * mp_falling(x, y)
    return total


def mp_frac_sum(f, nu, n):
    """Order-nu sum at output offset n with kernel (t - sigma(s))^(nu-1) / Gamma(nu)."""
    nu = mpmath.mpf(nu)
    total = mpmath.mpf(0)
    for m in range(n):
        lag = n - 1 - m
        total += mp_falling(nu - 1 + lag, nu - 1) * mpmath.rgamma(nu) * f[m]
    return total


def mp_diff_direct(f, nu, n):
    """Direct-form difference with kernel (t - sigma(m))^(-nu-1) / Gamma(-nu)."""
    nu = mpmath.mpf(nu)
    total = mpmath.mpf(0)
    for m in range(n + 2):
        total += mp_falling(-nu + n - m, -nu - 1) * mpmath.rgamma(-nu) * f[m]
    return total


def mp_recursion(nu, x0, y, z, horizon):
    """Summation-equation recursion carried out in 50-digit arithmetic."""
    nu = mpmath.mpf(nu)
    w = [mpmath.mpf(1)]
    for k in range(horizon):
        w.append(w[-1] * (nu + k) / (k + 1))
    xs = [mpmath.mpf(x0)]
    for n in range(1, horizon + 1):
        xs.append(w[n] * x0 + mpmath.fsum(w[n - 1 - m] * (y[m] * xs[m] + z[m]) for m in range(n)))
    return xs


def rel_err(got, want):
    want = mpmath.mpf(want)
    if want == 0:
        return abs(mpmath.mpf(got))
    return abs((mpmath.mpf(got) - want) / want)


def random_spec_dict(rng: random.Random, *, constant_y: bool) -> dict:
    horizon = rng.randint(0, 25)
    length = max(horizon, 1)
    nu = 1.0 - rng.random()
    y = rng.uniform(-2, 2) if constant_y else [rng.uniform(-2, 2) for _ in range(length)]
    z = [rng.uniform(-2, 2) for _ in range(length)] if rng.random() < 0.7 else rng.uniform(-2, 2)
    return {"a": rng.uniform(-3, 3), "nu": nu, "x0": rng.uniform(-3, 3), "y": y, "z": z,
            "horizon": horizon}
