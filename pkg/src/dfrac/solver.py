"""Linear fractional difference IVP.

Solves, for ``t`` in ``{a, a+1, ...}``::

    (Delta^nu_{a+nu-1} x)(t) = y(t+nu-1) x(t+nu-1) + z(t+nu-1),   x(a+nu-1) = x0

All sequences live on ``N_{a+nu-1}`` and are indexed by offset, so
``y[m]``, ``z[m]`` and ``x[m]`` sit at the point ``a + nu - 1 + m``. A
trajectory covers offsets ``0..N`` and uses ``y[m]``, ``z[m]`` for ``m < N``.

Three independent routes:

* :func:`solve_oracle` -- forward recursion on the equivalent summation
  equation ``x[n] = w[n] x0 + sum_{m<n} w[n-1-m] (y[m] x[m] + z[m])`` where
  ``w[k] = (nu)_k / k!``; each ``x[n]`` only needs earlier offsets.
* :func:`solve_series` -- the iterated-operator series
  ``x = sum_j (x0 T^j u + T^j v)`` with ``u[m] = w[m]`` and ``v`` the
  fractional sum of ``z``.
* :func:`solve_closed_const` -- Mittag-Leffler closed form for constant ``y``.

``exact=None`` (the default for the series and closed form) runs in floating
point and repeats the computation in rational arithmetic when the terms being
added cancel by more than :data:`~dfrac.mittag.CANCELLATION_LIMIT`.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ._validation import check_offset, check_real
from .exceptions import GridMismatchError, InputError
from .fracops import frac_diff_comp_values, frac_sum_raw_values, sum_weights
from .grid import Family, FracParams, GridSeq
from .mittag import CANCELLATION_LIMIT, MittagLefflerTable


@dataclass(frozen=True)
class IvpSpec:
    params: FracParams
    x0: float
    y: GridSeq
    z: GridSeq
    horizon: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x0", check_real(self.x0, "x0"))
        check_offset(self.horizon, "horizon")
        for name in ("y", "z"):
            seq = getattr(self, name)
            if seq.family is not Family.SHIFTED:
                raise GridMismatchError(f"{name} must live on the shifted grid")
            if seq.params != self.params:
                raise GridMismatchError(f"{name} has parameters {seq.params}, expected {self.params}")
            if len(seq) < self.horizon:
                raise InputError(f"{name} needs at least {self.horizon} values, got {len(seq)}")

    @classmethod
    def build(cls, a: float, nu: float, x0: float, y, z, horizon: int) -> "IvpSpec":
        """Construct from plain numbers; scalar ``y``/``z`` are broadcast."""
        params = FracParams(a, nu)
        check_offset(horizon, "horizon")
        length = max(horizon, 1)

        def seq(v, name):
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                return GridSeq.constant(v, length - 1, params)
            if isinstance(v, GridSeq):
                return v
            if not isinstance(v, (list, tuple)):
                raise InputError(f"{name} must be a number or a list of numbers")
            return GridSeq(Family.SHIFTED, params, tuple(v))

        return cls(params, x0, seq(y, "y"), seq(z, "z"), horizon)

    @classmethod
    def from_dict(cls, obj: dict) -> "IvpSpec":
        if not isinstance(obj, dict):
            raise InputError("IVP spec must be a JSON object")
        missing = {"a", "nu", "x0", "y", "z", "horizon"} - obj.keys()
        if missing:
            raise InputError(f"IVP spec is missing keys: {sorted(missing)}")
        horizon = obj["horizon"]
        if isinstance(horizon, bool) or not isinstance(horizon, int):
            raise InputError("horizon must be an integer")
        return cls.build(obj["a"], obj["nu"], obj["x0"], obj["y"], obj["z"], horizon)

    @classmethod
    def from_json(cls, text: str) -> "IvpSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed IVP spec JSON: {exc}") from exc
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        return {"a": self.params.a, "nu": self.params.nu, "x0": self.x0,
                "y": list(self.y.values), "z": list(self.z.values), "horizon": self.horizon}

    @property
    def nu(self) -> float:
        return self.params.nu

    def constant_value(self, name: str) -> float | None:
        """The common value of ``y`` or ``z`` over offsets ``0..N-1``, or None."""
        vals = getattr(self, name).values[: max(self.horizon, 1)]
        return vals[0] if all(v == vals[0] for v in vals) else None


class Method(str, enum.Enum):
    SERIES = "series"
    CLOSED_FORM = "closed_form"
    ORACLE = "oracle"


@dataclass(frozen=True)
class Trajectory:
    spec: IvpSpec
    values: tuple
    method: Method

    def __post_init__(self) -> None:
        if self.values[0] != self.spec.x0:
            raise AssertionError("trajectory must start at x0")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


def _ill_conditioned(magnitudes: Sequence[float], values: Sequence[float]) -> bool:
    return any(m > CANCELLATION_LIMIT * abs(v) for m, v in zip(magnitudes, values) if m > 0)


def _apply_T_raw(weights, yv, fv, horizon: int, exact: bool) -> list:
    prod = [yv[m] * fv[m] for m in range(horizon)]
    return frac_sum_raw_values(prod, None, horizon, exact=exact, weights=weights)


def apply_T(y: GridSeq, f: GridSeq, nu: float | None = None, *, exact: bool = False) -> GridSeq:
    """``(T_y f)[n]``: the order-``nu`` fractional sum of ``y[m] * f[m]`` at offset ``n``.

    The output has the same length as ``f`` and ``(T_y f)[0] == 0``.
    """
    if y.params != f.params or y.family is not Family.SHIFTED or f.family is not Family.SHIFTED:
        raise GridMismatchError("apply_T needs y and f on the same shifted grid")
    if len(y) < len(f) - 1:
        raise GridMismatchError("y is shorter than the support of f")
    nu = f.params.nu if nu is None else nu
    if nu != f.params.nu:
        raise GridMismatchError(f"order {nu} does not match the grid order {f.params.nu}")
    horizon = f.horizon
    conv = (lambda v: Fraction(v)) if exact else float
    weights = sum_weights(Fraction(nu) if exact else nu, horizon, exact=exact)
    out = _apply_T_raw(weights, [conv(v) for v in y.values], [conv(v) for v in f.values],
                       horizon, exact)
    return f.with_values(float(v) for v in out)


def _series_raw(spec: IvpSpec, exact: bool) -> tuple[list, list]:
    N = spec.horizon
    conv = (lambda v: Fraction(v)) if exact else float
    nu = Fraction(spec.nu) if exact else spec.nu
    weights = sum_weights(nu, N + 1, exact=exact)
    yv = [conv(v) for v in spec.y.values[:N]]
    zv = [conv(v) for v in spec.z.values[:N]]
    x0 = conv(spec.x0)
    homog = [x0 * w for w in weights[: N + 1]]
    forced = frac_sum_raw_values(zv, nu, N, exact=exact, weights=weights)
    columns = [[] for _ in range(N + 1)]
    for j in range(N + 1):
        for n in range(j, N + 1):
            columns[n].append(homog[n])
            columns[n].append(forced[n])
        if j < N:
            homog = _apply_T_raw(weights, yv, homog, N, exact)
            forced = _apply_T_raw(weights, yv, forced, N, exact)
    if exact:
        return [sum(c, Fraction(0)) for c in columns], []
    return [math.fsum(c) for c in columns], [math.fsum(map(abs, c)) for c in columns]


def solve_series(spec: IvpSpec, *, exact: bool | None = None) -> Trajectory:
    """Iterated-operator series; terms ``j > n`` vanish identically and are skipped."""
    if exact is None:
        values, mags = _series_raw(spec, False)
        if _ill_conditioned(mags, values):
            values, _ = _series_raw(spec, True)
    else:
        values, _ = _series_raw(spec, exact)
    return Trajectory(spec, tuple(float(v) for v in values), Method.SERIES)


def _recursion(x0, nu, horizon: int, rhs: Callable[[int, object], object], exact: bool) -> list:
    weights = sum_weights(nu, horizon + 1, exact=exact)
    xs = [x0 * weights[0]]
    forcing = []
    for n in range(1, horizon + 1):
        forcing.append(rhs(n - 1, xs[n - 1]))
        terms = [x0 * weights[n]] + [weights[n - 1 - m] * forcing[m] for m in range(n)]
        xs.append(sum(terms, Fraction(0)) if exact else math.fsum(terms))
    return xs


def solve_oracle(spec: IvpSpec, *, exact: bool = False) -> Trajectory:
    """Forward recursion on the summation equation; the reference solution."""
    conv = (lambda v: Fraction(v)) if exact else float
    nu = Fraction(spec.nu) if exact else spec.nu
    yv = [conv(v) for v in spec.y.values]
    zv = [conv(v) for v in spec.z.values]
    xs = _recursion(conv(spec.x0), nu, spec.horizon, lambda m, x: yv[m] * x + zv[m], exact)
    return Trajectory(spec, tuple(float(v) for v in xs), Method.ORACLE)


def _closed_raw(spec: IvpSpec, c: float, method: str) -> tuple[list, list]:
    N = spec.horizon
    table = MittagLefflerTable(spec.nu, 0, c)
    exact = method == "exact"
    e0 = [table.fraction(d, method) for d in range(N + 1)]
    x0 = Fraction(spec.x0)
    K = spec.constant_value("z")
    if K is not None and N > 0:
        table1 = MittagLefflerTable(spec.nu, 1, c)
        e1 = [table1.fraction(d, method) for d in range(N + 1)]
        cols = [[x0 * e0[n], Fraction(K) * e1[n]] for n in range(N + 1)]
    else:
        z = [Fraction(v) for v in spec.z.values[:N]]
        cols = [[x0 * e0[n]] + [e0[n - 1 - r] * z[r] for r in range(n)] for n in range(N + 1)]
    values = [sum(col, Fraction(0)) for col in cols]
    mags = [] if exact else [float(sum(map(abs, col), Fraction(0))) for col in cols]
    return values, mags


def solve_closed_const(spec: IvpSpec, *, method: str = "auto") -> Trajectory:
    """Closed form through the discrete Mittag-Leffler function (``y`` constant).

    ``x[n] = x0 E(n; nu, nu, c, a) + sum_{r<n} E(n; nu, nu, c, sigma(r)) z[r]``;
    when ``z`` is the constant ``K`` the sum collapses to ``K E(n; nu, nu+1, c, a)``.
    """
    c = spec.constant_value("y")
    if c is None:
        raise InputError("solve_closed_const needs a constant coefficient sequence y")
    values, mags = _closed_raw(spec, c, method)
    if method == "auto" and _ill_conditioned(mags, [float(v) for v in values]):
        values, _ = _closed_raw(spec, c, "exact")
    return Trajectory(spec, tuple(float(v) for v in values), Method.CLOSED_FORM)


def ivp_residual(traj: Trajectory, *, exact: bool = False) -> list[float]:
    """``(Delta^nu x)[n] - (y[n] x[n] + z[n])`` for ``n = 0..N-1`` via the composition form."""
    spec = traj.spec
    if spec.horizon == 0:
        return []
    diffs = frac_diff_comp_values(traj.values, spec.nu, exact=exact)
    return [diffs[n] - (spec.y[n] * traj[n] + spec.z[n]) for n in range(spec.horizon)]


def relative_deviation(u: float, v: float) -> float:
    """``|u - v| / max(|u|, |v|)``, with 0 when both are zero."""
    top = max(abs(u), abs(v))
    return 0.0 if top == 0 else abs(u - v) / top


def max_relative_deviation(*trajectories: Sequence[float]) -> list[float]:
    """Per-offset worst pairwise relative deviation among the given value sequences."""
    out = []
    for row in zip(*trajectories):
        out.append(max((relative_deviation(p, q) for i, p in enumerate(row) for q in row[i + 1:]),
                       default=0.0))
    return out
