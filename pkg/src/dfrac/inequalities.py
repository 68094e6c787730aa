"""Numerical checks of the generalized Bernoulli inequality and its supporting results.

For ``t`` at offset ``n`` of ``N_{a+nu-1}`` and ``c >= -nu``:

* positivity: ``E(t, a, nu, nu, c, a) >= 0``;
* generalized Bernoulli: ``c E(t, a, nu, nu+1, c, a) >= c (t-a)^(nu) / Gamma(nu+1)``,
  which at ``nu = 1``, ``a = 0`` reads ``(1+c)^n >= 1 + c n``;
* the slack ``m = c x + c - Delta^nu x`` for ``x = c (t-a)^(nu) / Gamma(nu+1)``
  equals ``c^2 (t+nu-1-a)^(nu) / Gamma(nu+1) >= 0``;
* comparison: ``c1 >= c2 >= -nu`` and ``x0 >= y0 >= 0`` give ``x >= y`` pointwise.

Sign tests use a relative tolerance: a value ``g`` counts as a violation only if
``g < -tolerance * scale``. The scale is ``max(1, |c E|)`` for the Bernoulli
gap and the largest term magnitude for positivity.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._validation import check_offset, check_order, check_real
from .exceptions import HypothesisError
from .fracops import frac_diff_comp_values
from .grid import ArgKind, Family, FracParams, GridSeq, as_values, format_real, make_base_arg
from .mittag import MittagLefflerTable
from .solver import IvpSpec, Trajectory, solve_oracle
from .special import ExactArg, normalized_power

DEFAULT_TOLERANCE = 1e-9


def power_term(nu: float, n: int) -> float:
    """``(t - a)^(nu) / Gamma(nu + 1)`` at offset ``n`` of ``N_{a+nu-1}``; 0 at ``n = 0``."""
    return normalized_power(make_base_arg(ArgKind.SHIFTED_POINT, n), ExactArg(1, 0), nu)


def bernoulli_gap(nu: float, c: float, n: int, *, method: str = "auto") -> float:
    """``c E(t, a, nu, nu+1, c, a) - c (t-a)^(nu) / Gamma(nu+1)`` at offset ``n``.

    >>> bernoulli_gap(1.0, 2.0, 3)   # (1+2)^3 - 1 - 2*3
    20.0
    """
    nu = check_order(nu)
    c = check_real(c, "c")
    n = check_offset(n)
    e1 = MittagLefflerTable(nu, 1, c).value(n, method)
    return c * e1 - c * power_term(nu, n)


def bernoulli_gaps(nu: float, c: float, n_max: int, *, method: str = "auto") -> tuple[list, list]:
    """Gaps and their scales ``max(1, |c E|)`` for ``n = 0..n_max`` (one shared table)."""
    table = MittagLefflerTable(nu, 1, c)
    gaps, scales = [], []
    for n in range(n_max + 1):
        lhs = c * table.value(n, method)
        gaps.append(lhs - c * power_term(nu, n))
        scales.append(max(1.0, abs(lhs)))
    return gaps, scales


def slack_sequence(nu: float, c: float, horizon: int, *, a: float = 0.0,
                   difference: str = "power_rule") -> GridSeq:
    """Slack ``m[n] = c x[n] + c - (Delta^nu x)[n]`` on ``N_{a+nu-1}`` for ``n = 0..horizon``.

    ``difference="power_rule"`` uses ``Delta^nu x = c`` exactly, so
    ``m[n] = c^2 (t+nu-1-a)^(nu)/Gamma(nu+1)``. ``difference="numeric"``
    evaluates the fractional difference of the sampled ``x`` instead.
    """
    nu = check_order(nu)
    c = check_real(c, "c")
    check_offset(horizon, "horizon")
    x = [c * power_term(nu, n) for n in range(horizon + 2)]
    if difference == "power_rule":
        diff = [c] * (horizon + 1)
    elif difference == "numeric":
        diff = frac_diff_comp_values(x, nu)
    else:
        raise ValueError(f"unknown difference mode {difference!r}")
    return GridSeq(Family.SHIFTED, FracParams(a, nu),
                   tuple(c * x[n] + c - diff[n] for n in range(horizon + 1)))


@dataclass(frozen=True)
class ComparisonResult:
    passed: bool
    witness: int | None  # first offset with x[n] < y[n] beyond tolerance
    min_diff: float      # min over n of x[n] - y[n]
    x: Trajectory
    y: Trajectory


def comparison_check(c1: GridSeq | Sequence[float], c2: GridSeq | Sequence[float], x0: float,
                     y0: float, nu: float, horizon: int, *,
                     tolerance: float = 1e-10) -> ComparisonResult:
    """Solve both homogeneous IVPs and test ``x[n] >= y[n]`` for ``n = 0..horizon``.

    Raises :class:`HypothesisError` unless ``c1 >= c2 >= -nu`` on offsets
    ``0..horizon-1`` and ``x0 >= y0 >= 0`` with ``x0 > 0``.
    """
    nu = check_order(nu)
    check_offset(horizon, "horizon")
    c1v, c2v = as_values(c1), as_values(c2)
    count = max(horizon, 1)
    if len(c1v) < horizon or len(c2v) < horizon:
        raise HypothesisError(f"coefficient sequences need {horizon} values")
    for n in range(min(horizon, len(c1v), len(c2v))):
        if not c1v[n] >= c2v[n] >= -nu:
            raise HypothesisError(f"need c1 >= c2 >= -nu, violated at offset {n}: "
                                  f"c1={c1v[n]!r}, c2={c2v[n]!r}, -nu={-nu!r}")
    if not (x0 >= y0 >= 0 and x0 > 0):
        raise HypothesisError(f"need x0 >= y0 >= 0 and x0 > 0, got x0={x0!r}, y0={y0!r}")
    zeros = [0.0] * count
    x = solve_oracle(IvpSpec.build(0.0, nu, x0, list(c1v[:count]) or [0.0], zeros, horizon))
    y = solve_oracle(IvpSpec.build(0.0, nu, y0, list(c2v[:count]) or [0.0], zeros, horizon))
    witness = None
    for n, (xv, yv) in enumerate(zip(x.values, y.values)):
        if xv - yv < -tolerance * max(abs(xv), abs(yv)):
            witness = n
            break
    min_diff = min(xv - yv for xv, yv in zip(x.values, y.values))
    return ComparisonResult(witness is None, witness, min_diff, x, y)


# -- sweeps ---------------------------------------------------------------


def default_c_rule(nu: float) -> list[float]:
    """``c = -nu + 0.1 j`` for ``j = 0..60``."""
    return [-nu + 0.1 * j for j in range(61)]


def exploration_c_rule(nu: float) -> list[float]:
    """Points below the hypothesis bound: ``c = -nu - 0.1 j`` for ``j = 1..10``."""
    return [-nu - 0.1 * j for j in range(1, 11)]


def default_nu_list() -> list[float]:
    return [round(0.05 * k, 10) for k in range(1, 21)]


@dataclass
class SweepReport:
    """Outcome of a sign sweep over ``(nu, c, n)``.

    ``violations`` lists exactly the in-hypothesis points whose value is
    below ``-tolerance * scale``. Exploration points (``c < -nu``) are kept
    apart and never count as violations.
    """

    quantity: str
    axes: dict
    tolerance: float
    min_gap: float | None = None
    argmin: tuple | None = None
    violations: list = field(default_factory=list)
    points_checked: int = 0
    skipped_below_hypothesis: int = 0
    exploration: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "axes": self.axes,
            "tolerance": self.tolerance,
            "points_checked": self.points_checked,
            "min_gap": self.min_gap,
            "argmin": list(self.argmin) if self.argmin else None,
            "violations": [dict(zip(("nu", "c", "n", "gap", "scale"), v)) for v in self.violations],
            "skipped_below_hypothesis": self.skipped_below_hypothesis,
            "exploration": self.exploration,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def violations_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["nu", "c", "n", "gap", "scale"])
        for nu, c, n, gap, scale in self.violations:
            writer.writerow([format_real(nu), format_real(c), n, format_real(gap), format_real(scale)])
        return buf.getvalue()


def _sweep(quantity: str, evaluate: Callable[[float, float, int], tuple[list, list]],
           nu_list: Iterable[float], c_rule, n_max: int, tolerance: float,
           explore: bool) -> SweepReport:
    nu_list = sorted(check_order(v) for v in nu_list)
    check_offset(n_max, "n_max")
    rule = c_rule or default_c_rule
    inside, outside, skipped = [], [], 0
    c_axis = set()
    for nu in nu_list:
        cs = sorted(set(rule(nu)))
        if explore and c_rule is None:
            cs = sorted(set(cs) | set(exploration_c_rule(nu)))
        for c in cs:
            below = c < -nu
            if below and not explore:
                skipped += n_max + 1
                continue
            c_axis.add(c)
            values, scales = evaluate(nu, c, n_max)
            bucket = outside if below else inside
            bucket.extend((nu, c, n, values[n], scales[n]) for n in range(n_max + 1))
    report = SweepReport(quantity, {"nu": nu_list, "c": sorted(c_axis), "n": [0, n_max]},
                         tolerance, points_checked=len(inside), skipped_below_hypothesis=skipped)
    if inside:
        best = min(inside, key=lambda p: (p[3], p[0], p[1], p[2]))
        report.min_gap, report.argmin = best[3], best[:3]
        report.violations = sorted(p for p in inside if p[3] < -tolerance * p[4])
    if explore:
        below = sorted(p for p in outside if p[3] < -tolerance * p[4])
        best = min(outside, key=lambda p: (p[3], p[0], p[1], p[2])) if outside else None
        report.exploration = {
            "points": len(outside),
            "min_gap": best[3] if best else None,
            "argmin": list(best[:3]) if best else None,
            "negative_points": [dict(zip(("nu", "c", "n", "gap", "scale"), p)) for p in below],
        }
    return report


def bernoulli_sweep(nu_list: Iterable[float] | None = None, c_rule=None, n_max: int = 60,
                    tolerance: float = DEFAULT_TOLERANCE, *, explore: bool = False,
                    method: str = "auto") -> SweepReport:
    """Check the generalized Bernoulli inequality on a grid of ``(nu, c, n)``.

    ``c_rule(nu)`` yields the ``c`` values for one order; the default is
    :func:`default_c_rule`. Values below ``-nu`` are skipped unless
    ``explore`` is set, in which case they are evaluated into the exploration
    section of the report.
    """
    nu_list = default_nu_list() if nu_list is None else list(nu_list)
    return _sweep("bernoulli_gap",
                  lambda nu, c, n_max: bernoulli_gaps(nu, c, n_max, method=method),
                  nu_list, c_rule, n_max, tolerance, explore)


def positivity_sweep(nu_list: Iterable[float] | None = None, c_rule=None, n_max: int = 60,
                     tolerance: float = DEFAULT_TOLERANCE, *, explore: bool = False,
                     method: str = "auto") -> SweepReport:
    """Check ``E(t, a, nu, nu, c, a) >= 0`` on a grid, scaled by the largest term."""
    nu_list = default_nu_list() if nu_list is None else list(nu_list)

    def evaluate(nu, c, n_max):
        table = MittagLefflerTable(nu, 0, c)
        return ([table.value(n, method) for n in range(n_max + 1)],
                [table.max_term(n) for n in range(n_max + 1)])

    return _sweep("ml_positivity", evaluate, nu_list, c_rule, n_max, tolerance, explore)


def classical_bernoulli_gap(c: float, n: int) -> float:
    """``(1 + c)^n - 1 - c n`` by direct powering; the ``nu = 1`` reference."""
    return math.fsum([(1.0 + c) ** n, -1.0, -c * n])


def random_admissible_instance(rng, *, max_horizon: int = 30, zero_start_prob: float = 0.25) -> dict:
    """Random inputs satisfying the comparison hypotheses (``y0 = 0`` with the given probability)."""
    nu = 1.0 - rng.random()
    horizon = rng.randint(1, max_horizon)
    c2 = [rng.uniform(-nu, 2.0) for _ in range(horizon)]
    c1 = [v + rng.uniform(0.0, 2.0) for v in c2]
    y0 = 0.0 if rng.random() < zero_start_prob else rng.uniform(0.0, 5.0)
    x0 = y0 + rng.uniform(0.0, 5.0)
    if x0 == 0:
        x0 = 1.0
    return {"nu": nu, "horizon": horizon, "c1": c1, "c2": c2, "x0": x0, "y0": y0}
