"""Discrete Mittag-Leffler function.

For ``t`` at offset ``n`` of ``N_{a+nu-1}``, ``beta = nu + b`` and
``lambda = a + shift`` (``shift = 0`` is ``lambda = a``, ``shift = r + 1`` is
``lambda = sigma(a + r)``), with ``d = n - shift``::

    E = sum_j  c^j / Gamma(j*nu + beta) * ((j+1)(nu-1) + d)^((j+1)*nu + b - 1)

Base minus exponent is ``d - j - b``, so every term with ``j > d - b`` hits
the zero branch of the power function. A surviving term equals
``c^j * ((j+1)nu + b)_k / k!`` with ``k = d - j - b``, which is how the exact
path evaluates it.

Two evaluation routes exist:

``float``
    log-domain terms from :func:`~dfrac.special.falling_power_log`, rescaled
    by the largest magnitude and summed with :func:`math.fsum`.
``exact``
    integer arithmetic on the exact binary values of ``nu`` and ``c``; one
    final rounding.

``auto`` (the default) uses the float route unless the terms cancel by more
than a factor :data:`CANCELLATION_LIMIT`, which for ``c < 0`` and moderate
``n`` happens quickly. At ``nu = 1`` the terms are binomial coefficients and
``auto`` always takes the exact route, so integer results come out exact.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from ._validation import check_offset, check_order, check_real
from .exceptions import HorizonError, InputError
from .grid import ArgKind, make_base_arg
from .special import SignedLog, falling_power_log, lgamma_signed

#: ``sum |term| / |sum|`` above which ``method="auto"`` switches to exact arithmetic.
CANCELLATION_LIMIT = 64.0

METHODS = ("auto", "float", "exact")


@dataclass(frozen=True)
class MlQuery:
    """One evaluation ``E(t, a, nu, nu + beta_offset, c, lambda)``."""

    nu: float
    beta_offset: int = 0
    c: float = 1.0
    n: int = 0
    shift: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", check_order(self.nu))
        object.__setattr__(self, "c", check_real(self.c, "c"))
        if self.beta_offset not in (0, 1):
            raise InputError(f"beta_offset must be 0 or 1, got {self.beta_offset!r}")
        object.__setattr__(self, "n", check_offset(self.n, "n"))
        object.__setattr__(self, "shift", check_offset(self.shift, "shift"))

    @property
    def beta(self) -> float:
        return self.nu + self.beta_offset


def _check_method(method: str) -> str:
    if method not in METHODS:
        raise InputError(f"method must be one of {METHODS}, got {method!r}")
    return method


class _CoefficientCache:
    """``log|x^(y)| - log Gamma(j*nu + beta)`` and its sign, indexed by ``(j, k)``.

    Independent of ``c``, so one cache serves every ``c`` swept at a given order.
    """

    def __init__(self, nu: float, b: int):
        self.nu = nu
        self.b = b
        self.logs: list[list[float]] = []
        self.signs: list[list[int]] = []
        self._lock = threading.Lock()

    def ensure(self, j: int, k: int) -> None:
        if j < len(self.logs) and k < len(self.logs[j]):
            return
        with self._lock:
            self._extend(j, k)

    def _extend(self, j: int, k: int) -> None:
        while len(self.logs) <= j:
            self.logs.append([])
            self.signs.append([])
        log_row, sign_row = self.logs[j], self.signs[j]
        inv_gamma = lgamma_signed(j * self.nu + self.nu + self.b)
        while len(log_row) <= k:
            d = len(log_row) + j + self.b
            power = falling_power_log(make_base_arg(ArgKind.ML_BASE, j, d),
                                      make_base_arg(ArgKind.ML_EXPONENT, j, self.b), self.nu)
            log_row.append(power.log_abs - inv_gamma.log_abs)
            sign_row.append(power.sign * inv_gamma.sign)


@functools.lru_cache(maxsize=128)
def _coefficients(nu: float, b: int) -> _CoefficientCache:
    return _CoefficientCache(nu, b)


class MittagLefflerTable:
    """Shared per-``(nu, beta_offset, c)`` caches for evaluating many ``d = n - shift``.

    Results do not depend on which values were requested before, so a table
    shared across a row returns the same bits as fresh single evaluations.
    """

    def __init__(self, nu: float, beta_offset: int, c: float):
        self.nu = check_order(nu)
        self.b = beta_offset
        self.c = check_real(c, "c")
        self._coef = _coefficients(self.nu, self.b)
        # exact data
        nu_q, c_q = Fraction(self.nu), Fraction(self.c)
        self._P, self._Q = nu_q.numerator, nu_q.denominator
        self._C, self._R = c_q.numerator, c_q.denominator
        self._prods: list[list[int]] = []
        self._fact = [1]

    # -- float route -----------------------------------------------------

    def log_terms(self, d: int, jmax: int | None = None) -> list[SignedLog]:
        """Terms ``j = 0..jmax`` (default ``d - b``) as signed logs.

        Terms with ``j > d - b`` are exact zeros (zero branch of the power).
        """
        if jmax is None:
            jmax = d - self.b
        if self.c == 0:
            jmax = min(jmax, 0)
        log_c = math.log(abs(self.c)) if self.c != 0 else 0.0
        odd_sign = -1 if self.c < 0 else 1
        out = []
        for j in range(jmax + 1):
            k = d - j - self.b
            if k < 0:
                out.append(SignedLog.ZERO)
                continue
            self._coef.ensure(j, k)
            out.append(SignedLog(j * log_c + self._coef.logs[j][k],
                                 self._coef.signs[j][k] * (odd_sign if j % 2 else 1)))
        return out

    def float_stats(self, d: int) -> tuple[float, float, float]:
        """``(sum, sum of |terms|, max |term|)`` by rescaled compensated summation."""
        J = d - self.b
        if J < 0:
            return 0.0, 0.0, 0.0
        jmax = 0 if self.c == 0 else J
        coef = self._coef
        for j in range(jmax + 1):
            coef.ensure(j, J - j)
        log_c = math.log(abs(self.c)) if self.c != 0 else 0.0
        logs = [j * log_c + coef.logs[j][J - j] for j in range(jmax + 1)]
        top = max(logs)
        if self.c < 0:
            signs = [coef.signs[j][J - j] * (-1 if j % 2 else 1) for j in range(jmax + 1)]
        else:
            signs = [coef.signs[j][J - j] for j in range(jmax + 1)]
        scaled = [s * math.exp(lg - top) for s, lg in zip(signs, logs)]
        scale = math.exp(top)
        return math.fsum(scaled) * scale, math.fsum(map(abs, scaled)) * scale, scale

    def float_value(self, d: int) -> tuple[float, float]:
        """``(sum, sum of |terms|)`` of the float route."""
        return self.float_stats(d)[:2]

    def max_term(self, d: int) -> float:
        """Largest ``|term|``; the natural scale for sign tests."""
        return self.float_stats(d)[2]

    # -- exact route -----------------------------------------------------

    def _factorial(self, k: int) -> int:
        while len(self._fact) <= k:
            self._fact.append(self._fact[-1] * len(self._fact))
        return self._fact[k]

    def _prod(self, j: int, k: int) -> int:
        """``prod_{i<k} ((j+1)P + (b+i)Q)``, i.e. ``Q^k ((j+1)nu + b)_k``."""
        while len(self._prods) <= j:
            self._prods.append([1])
        row = self._prods[j]
        base = (j + 1) * self._P + self.b * self._Q
        while len(row) <= k:
            row.append(row[-1] * (base + (len(row) - 1) * self._Q))
        return row[k]

    def exact_value(self, d: int) -> Fraction:
        J = d - self.b
        if J < 0:
            return Fraction(0)
        jmax = 0 if self.c == 0 else J
        C, R, Q = self._C, self._R, self._Q
        # term_j = (C/R)^j * prod(j, k) / (Q^k k!)  with k = J - j, over D = R^J Q^J J!
        total = 0
        for j in range(jmax + 1):
            k = J - j
            total += (C ** j * R ** (J - j) * Q ** j * (self._factorial(J) // self._factorial(k))
                      * self._prod(j, k))
        return Fraction(total, R ** J * Q ** J * self._factorial(J))

    # -- dispatch --------------------------------------------------------

    def value(self, d: int, method: str = "auto") -> float:
        if d < 0:
            return 0.0
        if method == "exact" or (method == "auto" and self.nu == 1):
            return float(self.exact_value(d))
        value, abs_sum = self.float_value(d)
        if method == "float" or self.c >= 0:
            return value
        if abs_sum > CANCELLATION_LIMIT * abs(value):
            return float(self.exact_value(d))
        return value

    def fraction(self, d: int, method: str = "auto") -> Fraction:
        """Like :meth:`value` but returns the exact rational when the exact route is taken."""
        if d < 0:
            return Fraction(0)
        if method == "exact" or (method == "auto" and self.nu == 1):
            return self.exact_value(d)
        value, abs_sum = self.float_value(d)
        if method == "float" or self.c >= 0 or abs_sum <= CANCELLATION_LIMIT * abs(value):
            return Fraction(value)
        return self.exact_value(d)


def ml_terms(q: MlQuery, *, truncate: bool = True) -> list[float]:
    """Individual terms ``j = 0..n - shift - b`` (or ``0..n`` when ``truncate`` is False)."""
    table = MittagLefflerTable(q.nu, q.beta_offset, q.c)
    d = q.n - q.shift
    jmax = None if truncate else q.n
    if d < 0:
        return [0.0] * (0 if truncate else q.n + 1)
    return [t.value for t in table.log_terms(d, jmax)]


def ml_eval(q: MlQuery, *, method: str = "auto") -> float:
    """Evaluate the discrete Mittag-Leffler function for one query.

    >>> ml_eval(MlQuery(nu=0.5, beta_offset=0, c=3.0, n=0))
    1.0
    >>> ml_eval(MlQuery(nu=1.0, beta_offset=0, c=1.0, n=10))
    1024.0
    """
    _check_method(method)
    return MittagLefflerTable(q.nu, q.beta_offset, q.c).value(q.n - q.shift, method)


def ml_eval_values(nu: float, beta_offset: int, c: float, n_max: int, *, shift: int = 0,
                   method: str = "auto") -> list[float]:
    """``ml_eval`` for ``n = 0..n_max`` sharing one table (bit-identical to single calls)."""
    MlQuery(nu, beta_offset, c, n_max, shift)
    _check_method(method)
    table = MittagLefflerTable(nu, beta_offset, c)
    return [table.value(n - shift, method) for n in range(n_max + 1)]


def ml_kernel_row(q: MlQuery, r_offsets, *, method: str = "auto") -> list[float]:
    """``E(t, a, nu, beta, c, sigma(r))`` for each ``r`` in ``r_offsets`` at the query's ``t``.

    ``q.shift`` is ignored; each entry uses ``shift = r + 1``.
    """
    _check_method(method)
    table = MittagLefflerTable(q.nu, q.beta_offset, q.c)
    out = []
    for r in r_offsets:
        r = check_offset(r, "r")
        if r > q.n - 1:
            raise HorizonError(f"r offset {r} outside 0..{q.n - 1}")
        out.append(table.value(q.n - r - 1, method))
    return out
