"""Alpha-cut analysis of the total transportation cost.

Each basic cell contributes the product of two linear alpha-cut bounds, so
the total cost cut is a pair of quadratics in alpha. Inverting them gives
the membership function of the cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeOperand, NoRootInUnitInterval
from .fuzzy import AlphaInterval, TrapezoidalFuzzyNumber, format_tfn
from .problem import FuzzyTransportationProblem
from .vam import BasicFeasibleSolution, is_placeholder

Coefficients = tuple[float, float, float]  # p, q, r of p*a**2 + q*a + r

_FLAT = 1e-12
_ROOT_SLACK = 1e-9


def _poly(coef: Coefficients, alpha: float) -> float:
    p, q, r = coef
    return (p * alpha + q) * alpha + r


@dataclass(frozen=True)
class QuadraticPair:
    lower: Coefficients
    upper: Coefficients

    def lower_at(self, alpha: float) -> float:
        return _poly(self.lower, alpha)

    def upper_at(self, alpha: float) -> float:
        return _poly(self.upper, alpha)

    def at(self, alpha: float) -> AlphaInterval:
        return AlphaInterval(self.lower_at(alpha), self.upper_at(alpha), alpha)

    def __add__(self, other: QuadraticPair) -> QuadraticPair:
        if not isinstance(other, QuadraticPair):
            return NotImplemented
        return QuadraticPair(
            tuple(x + y for x, y in zip(self.lower, other.lower)),  # type: ignore[arg-type]
            tuple(x + y for x, y in zip(self.upper, other.upper)),  # type: ignore[arg-type]
        )


ZERO_PAIR = QuadraticPair((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


@dataclass(frozen=True)
class CostMembershipFunction:
    quad: QuadraticPair
    support: tuple[float, float]
    core: tuple[float, float]

    @classmethod
    def from_quadratic(cls, quad: QuadraticPair) -> CostMembershipFunction:
        return cls(quad, (quad.lower_at(0.0), quad.upper_at(0.0)), (quad.lower_at(1.0), quad.upper_at(1.0)))


def alpha_product(c: TrapezoidalFuzzyNumber, x: TrapezoidalFuzzyNumber) -> QuadraticPair:
    """Expand the product of the alpha-cuts of two nonnegative fuzzy numbers."""
    if c.a < 0 or x.a < 0:
        raise NegativeOperand(f"support below zero in {format_tfn(c)} * {format_tfn(x)}")
    # left cuts rise: (slope*alpha + base)
    cl, xl = c.b - c.a, x.b - x.a
    lower = (cl * xl, cl * x.a + c.a * xl, c.a * x.a)
    # right cuts fall: (base - slope*alpha)
    cr, xr = c.d - c.c, x.d - x.c
    upper = (cr * xr, -(cr * x.d + c.d * xr), c.d * x.d)
    return QuadraticPair(lower, upper)


def cell_products(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem
) -> dict[tuple[int, int], QuadraticPair]:
    return {
        cell: alpha_product(p.cost(cell), bfs.allocation(cell))
        for cell in sorted(bfs.basis)
        if not is_placeholder(bfs.allocation(cell), p)
    }


def total_cost_alpha(bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem) -> QuadraticPair:
    total = ZERO_PAIR
    for pair in cell_products(bfs, p).values():
        total = total + pair
    return total


def _root_in_unit(coef: Coefficients, target: float) -> float:
    """Alpha in [0, 1] where the quadratic equals ``target``."""
    p, q, r = coef
    c = r - target
    if abs(p) < _FLAT:
        if abs(q) < _FLAT:
            raise NoRootInUnitInterval(f"constant {r} never equals {target}")
        roots = [-c / q]
    else:
        disc = q * q - 4.0 * p * c
        if disc < 0:
            if disc > -1e-9 * q * q:
                disc = 0.0
            else:
                raise NoRootInUnitInterval(f"no real root for {coef} = {target}")
        # cancellation-free pair of roots
        h = -0.5 * (q + math.copysign(math.sqrt(disc), q))
        roots = [h / p]
        if h != 0.0:
            roots.append(c / h)
    for alpha in roots:
        if -_ROOT_SLACK <= alpha <= 1.0 + _ROOT_SLACK:
            return min(1.0, max(0.0, alpha))
    raise NoRootInUnitInterval(f"roots {roots} of {coef} = {target} lie outside [0, 1]")


def cost_membership(x: float, f: CostMembershipFunction) -> float:
    lo, hi = f.support
    core_lo, core_hi = f.core
    if core_lo <= x <= core_hi:
        return 1.0
    if x < lo or x > hi:
        return 0.0
    # a flat branch has support == core, so it never gets here
    if x < core_lo:
        return _root_in_unit(f.quad.lower, x)
    return _root_in_unit(f.quad.upper, x)


def sample_curve(f: CostMembershipFunction, count: int) -> list[tuple[float, float]]:
    """``count`` evenly spaced ``(x, membership)`` points across the support."""
    if count < 2:
        raise ValueError("need at least two samples")
    lo, hi = f.support
    step = (hi - lo) / (count - 1)
    xs = [lo + k * step for k in range(count - 1)] + [hi]
    return [(x, cost_membership(x, f)) for x in xs]
