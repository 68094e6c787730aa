"""Fractional sum and the two forms of the Riemann-Liouville fractional difference.

Offset conventions. ``f`` lives on ``N_b`` with ``f[m]`` at point ``b + m``.

=====================  ====================  ===============  ==================
operator               output offset ``n``   uses ``f[m]``    needs ``len(f)``
=====================  ====================  ===============  ==================
``frac_sum`` (order μ)  ``b + μ - 1 + n``     ``m < n``        ``>= n``
``frac_diff_comp``      ``b + 1 - ν + n``     ``m <= n + 1``   ``>= n + 2``
``frac_diff_direct``    ``b + 1 - ν + n``     ``m <= n + 1``   ``>= n + 2``
=====================  ====================  ===============  ==================

Both differences are reported on ``N_{b+1-ν}``, the domain on which the direct
form is a finite sum. With this labelling the composition form at ``ν = 1``
is ``f[n+1] - f[n]`` and the ``ν -> 1`` limit is continuous offset by offset.
For the IVP with ``b = a + ν - 1`` the output offset ``n`` is the point
``t = a + n``.

Every routine takes ``exact=False``. When true, the input values and the
order are converted to :class:`~fractions.Fraction` (exact binary value) and
the kernel weights become the Pochhammer ratios ``(μ)_k/k!`` and
``(-ν)_k/k!``; the result is rounded to float once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ._validation import check_offset, check_order
from .exceptions import HorizonError, RepresentationError
from .grid import ArgKind, GridSeq, as_values, make_base_arg
from .special import ExactArg, normalized_power, pochhammer_ratios


def sum_weights(mu, count: int, *, exact: bool = False) -> list:
    """Kernel weights ``(t - sigma(s))^(mu-1) / Gamma(mu)`` for lags ``k = 0..count-1``.

    Lag ``k`` is ``n - 1 - m``. ``mu = 0`` gives the identity (``[1, 0, 0, ...]``).
    """
    if count <= 0:
        return []
    if mu == 0:
        zero = Fraction(0) if exact else 0.0
        return [zero + 1] + [zero] * (count - 1)
    if exact:
        return pochhammer_ratios(Fraction(mu), count - 1)
    exponent = ExactArg(1, -1)
    return [normalized_power(make_base_arg(ArgKind.SUM_KERNEL, k + 1, 0), exponent, mu)
            for k in range(count)]


def direct_weights(nu, count: int, *, exact: bool = False) -> list:
    """Kernel weights ``(t - sigma(k))^(-nu-1) / Gamma(-nu)`` for lags ``0..count-1``."""
    if count <= 0:
        return []
    if exact:
        return pochhammer_ratios(-Fraction(nu), count - 1)
    exponent = ExactArg(-1, -1)
    # DIRECT_KERNEL(n, m) has lag n + 1 - m.
    return [normalized_power(make_base_arg(ArgKind.DIRECT_KERNEL, k - 1, 0), exponent, nu)
            for k in range(count)]


def _prepare(f, exact: bool) -> list:
    values = as_values(f)
    return [Fraction(v) for v in values] if exact else list(values)


def _dot(weights: Sequence, values: Sequence, exact: bool):
    """``sum_m weights[last - m] * values[m]`` with exact or compensated accumulation."""
    last = len(values) - 1
    terms = [weights[last - m] * values[m] for m in range(len(values))]
    if exact:
        return sum(terms, Fraction(0))
    return math.fsum(terms)


def _frac_sum_raw(vals: list, mu, n: int, exact: bool, weights=None):
    if n == 0:
        return Fraction(0) if exact else 0.0
    if weights is None:
        weights = sum_weights(mu, n, exact=exact)
    return _dot(weights, vals[:n], exact)


def frac_sum_raw_values(vals: list, mu, horizon: int, *, exact: bool, weights=None) -> list:
    """Unrounded fractional sums of prepared values at offsets ``0..horizon``.

    ``vals`` holds floats (or Fractions when ``exact``); ``weights`` may be a
    precomputed :func:`sum_weights` list of length ``>= horizon``.
    """
    if weights is None:
        weights = sum_weights(mu, horizon, exact=exact)
    return [_frac_sum_raw(vals, mu, n, exact, weights[:n]) for n in range(horizon + 1)]


def frac_sum(f: GridSeq | Sequence[float], nu: float, n: int, *, exact: bool = False) -> float:
    """Order-``nu`` fractional sum of ``f`` at output offset ``n``.

    The result lives on the grid shifted by ``nu - 1`` from the grid of ``f``.

    >>> frac_sum([1.0] * 6, 1.0, 5)
    5.0
    """
    nu = check_order(nu)
    vals = _prepare(f, exact)
    check_offset(n, upper=len(vals))
    mu = Fraction(nu) if exact else nu
    return float(_frac_sum_raw(vals, mu, n, exact))


def frac_sum_values(f: GridSeq | Sequence[float], nu: float, *, horizon: int | None = None,
                    exact: bool = False) -> list[float]:
    """:func:`frac_sum` at every offset ``0..horizon`` (default: ``len(f) - 1``)."""
    nu = check_order(nu)
    vals = _prepare(f, exact)
    horizon = len(vals) - 1 if horizon is None else check_offset(horizon, "horizon", upper=len(vals))
    mu = Fraction(nu) if exact else nu
    weights = sum_weights(mu, horizon, exact=exact)
    return [float(_frac_sum_raw(vals, mu, n, exact, weights[:n])) for n in range(horizon + 1)]


def _inner_order(nu: float, exact: bool):
    return 1 - Fraction(nu) if exact else 1.0 - nu


def frac_diff_comp(f: GridSeq | Sequence[float], nu: float, n: int, *, exact: bool = False) -> float:
    """Fractional difference as the forward difference of the order ``1 - nu`` sum.

    Returns ``g[n+2] - g[n+1]`` with ``g[k] = frac_sum(f, 1 - nu, k)``; for
    ``nu == 1`` this is ``f[n+1] - f[n]``.
    """
    nu = check_order(nu)
    vals = _prepare(f, exact)
    _check_diff_horizon(n, len(vals))
    return float(_diff_comp_raw(vals, nu, n, exact))


def _check_diff_horizon(n: int, length: int) -> None:
    check_offset(n)
    if n + 2 > length:
        raise HorizonError(f"the fractional difference at offset {n} needs {n + 2} values, "
                           f"got {length}")


def _diff_comp_raw(vals: list, nu: float, n: int, exact: bool, weights=None):
    if nu == 1:
        return vals[n + 1] - vals[n]
    mu = _inner_order(nu, exact)
    if weights is None:
        weights = sum_weights(mu, n + 2, exact=exact)
    upper = _frac_sum_raw(vals, mu, n + 2, exact, weights[: n + 2])
    lower = _frac_sum_raw(vals, mu, n + 1, exact, weights[: n + 1])
    return upper - lower


def frac_diff_comp_values(f: GridSeq | Sequence[float], nu: float, *, exact: bool = False) -> list[float]:
    """:func:`frac_diff_comp` at every offset ``0..len(f) - 2``."""
    nu = check_order(nu)
    vals = _prepare(f, exact)
    count = len(vals) - 1
    weights = None if nu == 1 else sum_weights(_inner_order(nu, exact), count + 1, exact=exact)
    return [float(_diff_comp_raw(vals, nu, n, exact, weights)) for n in range(count)]


def frac_diff_direct(f: GridSeq | Sequence[float], nu: float, n: int, *, exact: bool = False) -> float:
    """Fractional difference as a single weighted sum with kernel ``(-nu)_k / k!``.

    Only valid for ``0 < nu < 1``; ``Gamma(-nu)`` has a pole at ``nu = 1``.
    """
    if nu == 1:
        raise RepresentationError("the direct form is invalid at nu = 1 (Gamma(-1) pole); "
                                  "use frac_diff_comp instead")
    nu = check_order(nu, allow_one=False)
    vals = _prepare(f, exact)
    _check_diff_horizon(n, len(vals))
    weights = direct_weights(nu, n + 2, exact=exact)
    return float(_dot(weights, vals[: n + 2], exact))


def frac_diff_direct_values(f: GridSeq | Sequence[float], nu: float, *, exact: bool = False) -> list[float]:
    """:func:`frac_diff_direct` at every offset ``0..len(f) - 2``."""
    if nu == 1:
        raise RepresentationError("the direct form is invalid at nu = 1 (Gamma(-1) pole); "
                                  "use frac_diff_comp instead")
    nu = check_order(nu, allow_one=False)
    vals = _prepare(f, exact)
    weights = direct_weights(nu, len(vals), exact=exact)
    return [float(_dot(weights[: n + 2], vals[: n + 2], exact)) for n in range(len(vals) - 1)]
