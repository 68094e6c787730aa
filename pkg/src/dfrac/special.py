"""Scalar kernels: signed log-gamma and the falling-factorial power function.

The power function is

    x^(y) = Gamma(x + 1) / Gamma(x + 1 - y)     for x, x - y not in {-1, -2, ...}
    x^(y) = 0                                   for x not in Z^- and x - y in Z^-

Every argument that occurs in this package has the form ``p*nu + q`` with
integer ``p`` and ``q``, and the base minus the exponent is always an exact
integer. :class:`ExactArg` carries those integers so that pole and zero
classification never consults a floating-point "is integer" test.

Because ``x - y = k`` is a non-negative integer whenever the power is
non-zero, the normalized power ``x^(y) / Gamma(y + 1)`` is the Pochhammer
ratio ``(y + 1)_k / k!``, a polynomial in ``nu``. :func:`normalized_power`
exposes that form and evaluates it exactly when given rational input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exceptions import PoleError, UndefinedPowerError

Real = Union[float, int, Fraction]

#: Integrality tolerance of :func:`falling_power_real` (general-real overload only).
INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(log_abs)``.

    ``sign == 0`` means the value is exactly zero and ``log_abs`` is ignored.
    """

    log_abs: float
    sign: int

    ZERO = None  # set below

    @classmethod
    def from_float(cls, value: float) -> "SignedLog":
        if value == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(value)), 1 if value > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.value

    def __mul__(self, other: "SignedLog") -> "SignedLog":
        if self.sign == 0 or other.sign == 0:
            return SignedLog.ZERO
        return SignedLog(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "SignedLog") -> "SignedLog":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLog")
        if self.sign == 0:
            return SignedLog.ZERO
        return SignedLog(self.log_abs - other.log_abs, self.sign * other.sign)


SignedLog.ZERO = SignedLog(-math.inf, 0)


def lgamma_signed(x: float) -> SignedLog:
    """Return ``log|Gamma(x)|`` together with the sign of ``Gamma(x)``.

    Raises :class:`PoleError` for ``x`` in {0, -1, -2, ...}.

    >>> round(lgamma_signed(5.0).value, 9)
    24.0
    >>> lgamma_signed(-0.5).sign
    -1
    """
    if not math.isfinite(x):
        raise ValueError(f"lgamma_signed requires a finite argument, got {x!r}")
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    log_abs = math.lgamma(x)
    if x > 0:
        return SignedLog(log_abs, 1)
    # Gamma alternates sign between consecutive negative integers: negative on (-1, 0).
    return SignedLog(log_abs, -1 if math.floor(x) % 2 else 1)


@dataclass(frozen=True)
class ExactArg:
    """The real number ``nu_coeff * nu + int_const`` for an ambient order ``nu``."""

    nu_coeff: int
    int_const: int

    def __post_init__(self) -> None:
        if not (isinstance(self.nu_coeff, int) and isinstance(self.int_const, int)):
            raise TypeError("ExactArg coefficients must be integers")

    @classmethod
    def integer(cls, q: int) -> "ExactArg":
        return cls(0, q)

    def value(self, nu: Real) -> Real:
        return self.nu_coeff * nu + self.int_const

    def integer_value(self, nu: Real) -> int | None:
        """The integer this argument equals, or ``None`` when it is not an integer.

        For ``0 < nu < 1`` the value ``p*nu + q`` is an integer iff ``p == 0``.
        ``nu == 1`` is the only other admissible order.
        """
        if self.nu_coeff == 0:
            return self.int_const
        if nu == 1:
            return self.nu_coeff + self.int_const
        return None

    def __add__(self, other: "ExactArg | int") -> "ExactArg":
        if isinstance(other, int):
            return ExactArg(self.nu_coeff, self.int_const + other)
        return ExactArg(self.nu_coeff + other.nu_coeff, self.int_const + other.int_const)

    __radd__ = __add__

    def __sub__(self, other: "ExactArg | int") -> "ExactArg":
        if isinstance(other, int):
            return ExactArg(self.nu_coeff, self.int_const - other)
        return ExactArg(self.nu_coeff - other.nu_coeff, self.int_const - other.int_const)

    def __neg__(self) -> "ExactArg":
        return ExactArg(-self.nu_coeff, -self.int_const)


def _classify(x: ExactArg, y: ExactArg, nu: Real) -> int | None:
    """Return the integer ``k = x - y``; ``k < 0`` selects the zero branch."""
    x_int = x.integer_value(nu)
    if x_int is not None and x_int < 0:
        raise UndefinedPowerError(f"x^(y) is undefined for x = {x_int} in Z^-")
    k = (x - y).integer_value(nu)
    if k is None:
        raise ValueError("x - y must be an exact integer for ExactArg powers")
    return k


def falling_power(x: ExactArg, y: ExactArg, nu: float) -> float:
    """Evaluate ``x^(y)`` where ``x`` and ``y`` are exact arguments at order ``nu``.

    >>> falling_power(ExactArg.integer(5), ExactArg.integer(2), 0.5)
    20.0
    >>> falling_power(ExactArg(1, -1), ExactArg(1, 0), 0.5)
    0.0
    """
    k = _classify(x, y, nu)
    if k < 0:
        return 0.0
    x_int = x.integer_value(nu)
    if x_int is not None:
        # Both Gamma arguments are positive integers: x!/k! exactly, rounded once.
        return float(Fraction(math.factorial(x_int), math.factorial(k)))
    return falling_power_log(x, y, nu).value


def falling_power_log(x: ExactArg, y: ExactArg, nu: float) -> SignedLog:
    """Same semantics as :func:`falling_power`, returned as a :class:`SignedLog`."""
    k = _classify(x, y, nu)
    if k < 0:
        return SignedLog.ZERO
    num = lgamma_signed(float(x.value(nu)) + 1.0)
    return SignedLog(num.log_abs - math.lgamma(k + 1), num.sign)


def falling_power_real(x: float, y: float, tol: float = INTEGER_TOL) -> float:
    """General-real ``x^(y)`` for exploratory use.

    Integrality of ``x`` and ``x - y`` is decided with absolute tolerance
    ``tol``; prefer :func:`falling_power` whenever exact arguments exist.
    """

    def neg_int(v: float) -> bool:
        r = round(v)
        return r < 0 and abs(v - r) <= tol

    if neg_int(x):
        raise UndefinedPowerError(f"x^(y) is undefined for x = {x!r} in Z^-")
    if neg_int(x - y):
        return 0.0
    num = lgamma_signed(x + 1.0)
    den = lgamma_signed(x + 1.0 - y)
    return (num / den).value


def pochhammer_ratio(a: Real, k: int) -> Real:
    """``(a)_k / k!`` computed as a running product; exact for Fraction input.

    >>> pochhammer_ratio(Fraction(1, 2), 2)
    Fraction(3, 8)
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    out = Fraction(1) if isinstance(a, Fraction) else 1.0
    for i in range(k):
        out = out * (a + i) / (i + 1)
    return out


def pochhammer_ratios(a: Real, kmax: int) -> list:
    """All of ``(a)_k / k!`` for ``k = 0..kmax``."""
    out = [Fraction(1) if isinstance(a, Fraction) else 1.0]
    for i in range(kmax):
        out.append(out[-1] * (a + i) / (i + 1))
    return out


def normalized_power(x: ExactArg, y: ExactArg, nu: Real, exact: bool = False) -> Real:
    """``x^(y) / Gamma(y + 1)``.

    With ``exact=True`` the result is a :class:`~fractions.Fraction` computed
    from the exact binary value of ``nu``; otherwise the float route through
    :func:`falling_power_log` and :func:`lgamma_signed` is used. When
    ``y + 1`` is a pole of Gamma the ratio is 0 (1/Gamma vanishes there).
    """
    if exact:
        nu_q = Fraction(nu)
        k = _classify(x, y, nu_q)
        if k < 0:
            return Fraction(0)
        return pochhammer_ratio(y.value(nu_q) + 1, k)
    k = _classify(x, y, nu)
    if k < 0:
        return 0.0
    y_int = y.integer_value(nu)
    if y_int is not None:
        # Integer exponent: a binomial-type rational, evaluated exactly and rounded once.
        return float(pochhammer_ratio(Fraction(y_int + 1), k))
    y1 = float(y.value(nu)) + 1.0
    return (falling_power_log(x, y, nu) / lgamma_signed(y1)).value
