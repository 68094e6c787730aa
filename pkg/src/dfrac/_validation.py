"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import math
from numbers import Integral, Real

from .exceptions import HorizonError, InputError


def check_order(nu, *, allow_one: bool = True, name: str = "nu") -> float:
    """Validate a fractional order in (0, 1] (or (0, 1) when ``allow_one`` is False)."""
    if isinstance(nu, bool) or not isinstance(nu, Real):
        raise InputError(f"{name} must be a real number, got {nu!r}")
    nu = float(nu)
    if not math.isfinite(nu) or nu <= 0 or nu > 1 or (nu == 1 and not allow_one):
        interval = "(0, 1]" if allow_one else "(0, 1)"
        raise InputError(f"{name} must lie in {interval}, got {nu!r}")
    return nu


def check_real(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InputError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"{name} must be finite, got {value!r}")
    return value


def check_offset(n, name: str = "n", *, upper: int | None = None) -> int:
    if isinstance(n, bool) or not isinstance(n, Integral):
        raise InputError(f"{name} must be an integer offset, got {n!r}")
    n = int(n)
    if n < 0:
        raise HorizonError(f"{name} must be non-negative, got {n}")
    if upper is not None and n > upper:
        raise HorizonError(f"{name}={n} exceeds the available horizon {upper}")
    return n
