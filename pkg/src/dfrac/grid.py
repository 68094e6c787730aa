"""Time scales N_a and N_{a+nu-1}, sequences on them, and exact argument builders.

Sequences are indexed by non-negative integer offsets. The real base point
``a`` and the order ``nu`` never enter index arithmetic; they only matter when
a point is reported back to the user via :meth:`GridSeq.point`.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._validation import check_offset, check_order, check_real
from .exceptions import InputError
from .special import ExactArg


class Family(str, enum.Enum):
    INTEGER = "integer"  # points a, a+1, a+2, ...
    SHIFTED = "shifted"  # points a+nu-1, a+nu, a+nu+1, ...


@dataclass(frozen=True)
class FracParams:
    a: float = 0.0
    nu: float = 0.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", check_real(self.a, "a"))
        object.__setattr__(self, "nu", check_order(self.nu))


@dataclass(frozen=True)
class GridSeq:
    """Finite sequence ``values[0..N]`` on an integer or shifted grid."""

    family: Family
    params: FracParams
    values: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        vals = tuple(check_real(v, "sequence value") for v in self.values)
        if not vals:
            raise InputError("a GridSeq needs at least one value")
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, value: float, horizon: int, params: FracParams,
                 family: Family = Family.SHIFTED) -> "GridSeq":
        return cls(family, params, (float(value),) * (horizon + 1))

    @classmethod
    def from_function(cls, fn: Callable[[int], float], horizon: int, params: FracParams,
                      family: Family = Family.SHIFTED) -> "GridSeq":
        """Sample ``fn(offset)`` for offsets ``0..horizon``."""
        return cls(family, params, tuple(fn(n) for n in range(horizon + 1)))

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def point(self, n: int) -> float:
        check_offset(n)
        if self.family is Family.INTEGER:
            return self.params.a + n
        return self.params.a + self.params.nu - 1 + n

    def with_values(self, values: Iterable[float]) -> "GridSeq":
        return GridSeq(self.family, self.params, tuple(values))

    # -- serialization -------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["offset", "value"])
        for n, v in enumerate(self.values):
            writer.writerow([n, format_real(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, params: FracParams,
                 family: Family = Family.INTEGER) -> "GridSeq":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["offset", "value"]:
            raise InputError("GridSeq CSV must start with the header 'offset,value'")
        values = {}
        for row in rows[1:]:
            if not row:
                continue
            if len(row) != 2:
                raise InputError(f"malformed GridSeq CSV row: {row!r}")
            try:
                values[int(row[0])] = float(row[1])
            except ValueError as exc:
                raise InputError(f"malformed GridSeq CSV row: {row!r}") from exc
        if sorted(values) != list(range(len(values))):
            raise InputError("GridSeq CSV offsets must be exactly 0..N")
        return cls(family, params, tuple(values[n] for n in range(len(values))))

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family.value,
            "a": self.params.a,
            "nu": self.params.nu,
            "values": list(self.values),
        })

    @classmethod
    def from_json(cls, text: str) -> "GridSeq":
        try:
            obj = json.loads(text)
            return cls(Family(obj["family"]), FracParams(obj["a"], obj["nu"]), tuple(obj["values"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed GridSeq JSON: {exc}") from exc


def format_real(v: float) -> str:
    """Fixed 17-significant-digit rendering used by every CSV writer."""
    return format(float(v), ".17g")


def as_values(f: GridSeq | Sequence[float]) -> tuple:
    if isinstance(f, GridSeq):
        return f.values
    return tuple(float(v) for v in f)


class ArgKind(enum.Enum):
    SUM_KERNEL = "sum_kernel"        # t - sigma(s) for the fractional sum, (n, m)
    ML_BASE = "ml_base"              # t - lambda + j(nu-1) with d = n - shift, (j, d)
    ML_EXPONENT = "ml_exponent"      # j*nu + beta - 1 with beta = nu + b, (j, b)
    DIRECT_KERNEL = "direct_kernel"  # t - sigma(k) for the direct difference form, (n, m)
    SHIFTED_POINT = "shifted_point"  # t - a for t at offset n of N_{a+nu-1}, (n,)


def make_base_arg(kind: ArgKind, *indices: int) -> ExactArg:
    """Assemble the exact ``p*nu + q`` argument for a grid quantity.

    >>> make_base_arg(ArgKind.SUM_KERNEL, 3, 2)
    ExactArg(nu_coeff=1, int_const=-1)
    >>> make_base_arg(ArgKind.ML_EXPONENT, 2, 0)
    ExactArg(nu_coeff=3, int_const=-1)
    """
    kind = ArgKind(kind)
    if kind is ArgKind.SUM_KERNEL:
        n, m = indices
        return ExactArg(1, n - m - 2)
    if kind is ArgKind.ML_BASE:
        j, d = indices
        return ExactArg(j + 1, d - j - 1)
    if kind is ArgKind.ML_EXPONENT:
        j, b = indices
        return ExactArg(j + 1, b - 1)
    if kind is ArgKind.DIRECT_KERNEL:
        n, m = indices
        return ExactArg(-1, n - m)
    (n,) = indices
    return ExactArg(1, n - 1)
