"""Trapezoidal fuzzy numbers and the scalar algebra built on them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import AlphaOutOfRange, MalformedQuadruple, NegativeOperand

DEFAULT_EPS_RANK = 1e-9
DEFAULT_DECIMALS = 4


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, slots=True)
class TrapezoidalFuzzyNumber:
    """A fuzzy quantity ``[a, b, c, d]``.

    Membership rises linearly on ``[a, b]``, is 1 on the core ``[b, c]`` and
    falls linearly on ``[c, d]``. Instances are immutable.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        values = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in values):
            raise MalformedQuadruple(f"non-finite parameter in {list(values)}")
        if not (self.a <= self.b <= self.c <= self.d):
            raise MalformedQuadruple(f"expected a <= b <= c <= d, got {list(values)}")

    @classmethod
    def crisp(cls, value: float) -> TrapezoidalFuzzyNumber:
        v = float(value)
        return cls(v, v, v, v)

    @classmethod
    def of(cls, value: Union[float, Sequence[float], TrapezoidalFuzzyNumber]) -> TrapezoidalFuzzyNumber:
        """Coerce a number, a 4-sequence or an existing instance."""
        if isinstance(value, TrapezoidalFuzzyNumber):
            return value
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return cls.crisp(value)
        try:
            items = [float(v) for v in value]
        except (TypeError, ValueError) as exc:
            raise MalformedQuadruple(f"cannot read {value!r} as a fuzzy number") from exc
        if len(items) != 4:
            raise MalformedQuadruple(f"expected 4 parameters, got {len(items)}")
        return cls(*items)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_crisp(self) -> bool:
        return self.a == self.b == self.c == self.d

    def __iter__(self):
        return iter(self.as_tuple())

    def __add__(self, other: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
        if not isinstance(other, TrapezoidalFuzzyNumber):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
        if not isinstance(other, TrapezoidalFuzzyNumber):
            return NotImplemented
        return sub(self, other)

    def __mul__(self, other: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
        if not isinstance(other, TrapezoidalFuzzyNumber):
            return NotImplemented
        return mul_nonneg(self, other)

    def __str__(self) -> str:
        return format_tfn(self)


TFN = TrapezoidalFuzzyNumber
ZERO = TrapezoidalFuzzyNumber(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True, slots=True)
class AlphaInterval:
    lo: float
    hi: float
    alpha: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def contains(self, other: AlphaInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


def membership(x: float, t: TrapezoidalFuzzyNumber) -> float:
    """Degree to which ``x`` belongs to ``t``.

    A vertical ramp (``a == b`` or ``c == d``) is treated as a step, so the
    core endpoints always have membership 1.
    """
    if t.b <= x <= t.c:
        return 1.0
    if t.a < x < t.b:
        return (x - t.a) / (t.b - t.a)
    if t.c < x < t.d:
        return (t.d - x) / (t.d - t.c)
    return 0.0


def add(x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
    return TrapezoidalFuzzyNumber(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d)


def sub(x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
    """Interval subtraction; the spreads of both operands add up."""
    return TrapezoidalFuzzyNumber(x.a - y.d, x.b - y.c, x.c - y.b, x.d - y.a)


def mul_nonneg(x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber) -> TrapezoidalFuzzyNumber:
    """Component-wise product, exact at alpha 0 and 1 for nonnegative supports."""
    if x.a < 0 or y.a < 0:
        raise NegativeOperand(f"support below zero in {format_tfn(x)} * {format_tfn(y)}")
    return TrapezoidalFuzzyNumber(x.a * y.a, x.b * y.b, x.c * y.c, x.d * y.d)


def fuzzy_sum(values: Iterable[TrapezoidalFuzzyNumber]) -> TrapezoidalFuzzyNumber:
    total = ZERO
    for v in values:
        total = add(total, v)
    return total


def alpha_cut(t: TrapezoidalFuzzyNumber, alpha: float) -> AlphaInterval:
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    # clamp to the core so rounding cannot push the ends past b or c
    lo = min(t.a + alpha * (t.b - t.a), t.b)
    hi = max(t.d - alpha * (t.d - t.c), t.c)
    return AlphaInterval(lo, hi, alpha)


def defuzzify(t: TrapezoidalFuzzyNumber) -> float:
    """Mean of the four parameters; linear over add and sub."""
    return (t.a + t.b + t.c + t.d) / 4.0


def rank_less(
    x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber, eps: float = DEFAULT_EPS_RANK
) -> Ordering:
    """Order two fuzzy numbers by their defuzzified values.

    Values closer than ``eps`` compare ``EQUAL``.
    """
    diff = defuzzify(x) - defuzzify(y)
    if diff < -eps:
        return Ordering.LESS
    if diff > eps:
        return Ordering.GREATER
    return Ordering.EQUAL


def fuzzy_min(
    x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber, eps: float = DEFAULT_EPS_RANK
) -> TrapezoidalFuzzyNumber:
    """Return whichever operand ranks lower; ``x`` on a tie."""
    return y if rank_less(y, x, eps) is Ordering.LESS else x


def fuzzy_max(
    x: TrapezoidalFuzzyNumber, y: TrapezoidalFuzzyNumber, eps: float = DEFAULT_EPS_RANK
) -> TrapezoidalFuzzyNumber:
    return y if rank_less(y, x, eps) is Ordering.GREATER else x


def is_fuzzy_zero(t: TrapezoidalFuzzyNumber, tol: float = DEFAULT_EPS_RANK) -> bool:
    """True when ``t`` defuzzifies to zero and its support straddles zero.

    The support test carries the same tolerance so float drift on crisp
    values (``0.1 + 0.2 - 0.3``) still counts as zero.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return abs(defuzzify(t)) <= tol and t.a <= tol and t.d >= -tol


def _fmt(value: float, decimals: int) -> str:
    text = f"{value:.{decimals}f}"
    # avoid "-0.0000"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def format_number(value: float, decimals: int = DEFAULT_DECIMALS) -> str:
    return _fmt(value, decimals)


def format_tfn(t: TrapezoidalFuzzyNumber, decimals: int = DEFAULT_DECIMALS) -> str:
    return "[" + ", ".join(_fmt(v, decimals) for v in t.as_tuple()) + "]"
