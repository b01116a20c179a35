"""Problem container, validation and balancing."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    MalformedQuadruple,
    NegativeCost,
    NonPositiveSupplyOrDemand,
)
from .fuzzy import (
    DEFAULT_EPS_RANK,
    TFN,
    ZERO,
    TrapezoidalFuzzyNumber,
    defuzzify,
    fuzzy_sum,
    is_fuzzy_zero,
    sub,
)

Cell = tuple[int, int]


@dataclass(frozen=True)
class ToleranceConfig:
    eps_rank: float = DEFAULT_EPS_RANK
    fuzzy_zero_anchor: TrapezoidalFuzzyNumber = TFN(-0.05, 0.0, 0.0, 0.05)
    balance_tol: float = 1e-6
    max_modi_iterations: int = 1000

    def __post_init__(self) -> None:
        if self.eps_rank < 0:
            raise ValueError("eps_rank must be >= 0")
        if self.balance_tol < 0:
            raise ValueError("balance_tol must be >= 0")
        if self.max_modi_iterations < 1:
            raise ValueError("max_modi_iterations must be >= 1")
        if not is_fuzzy_zero(self.fuzzy_zero_anchor, max(self.eps_rank, 1e-12)):
            raise ValueError(f"fuzzy_zero_anchor {self.fuzzy_zero_anchor} is not a fuzzy zero")


@dataclass(frozen=True)
class FuzzyTransportationProblem:
    """Costs per unit, supplies and demands, all as trapezoidal fuzzy numbers.

    ``dummy`` records a line appended by :func:`balance` as ``("row", i)`` or
    ``("col", j)``.
    """

    costs: tuple[tuple[TrapezoidalFuzzyNumber, ...], ...]
    supplies: tuple[TrapezoidalFuzzyNumber, ...]
    demands: tuple[TrapezoidalFuzzyNumber, ...]
    config: ToleranceConfig = field(default_factory=ToleranceConfig)
    dummy: Optional[tuple[str, int]] = None

    @classmethod
    def from_data(
        cls,
        costs: Sequence[Sequence[object]],
        supplies: Sequence[object],
        demands: Sequence[object],
        config: Optional[ToleranceConfig] = None,
    ) -> FuzzyTransportationProblem:
        """Build from nested lists; bare numbers are crisp shorthand."""

        def coerce(value: object, where: str) -> TrapezoidalFuzzyNumber:
            try:
                return TFN.of(value)  # type: ignore[arg-type]
            except MalformedQuadruple as exc:
                raise MalformedQuadruple(f"{where}: {exc}") from None

        cost_rows = tuple(
            tuple(coerce(v, f"costs[{i}][{j}]") for j, v in enumerate(row))
            for i, row in enumerate(costs)
        )
        return cls(
            costs=cost_rows,
            supplies=tuple(coerce(v, f"supplies[{i}]") for i, v in enumerate(supplies)),
            demands=tuple(coerce(v, f"demands[{j}]") for j, v in enumerate(demands)),
            config=config or ToleranceConfig(),
        )

    @property
    def m(self) -> int:
        return len(self.supplies)

    @property
    def n(self) -> int:
        return len(self.demands)

    def cost(self, cell: Cell) -> TrapezoidalFuzzyNumber:
        return self.costs[cell[0]][cell[1]]


@dataclass(frozen=True)
class BalanceReport:
    total_supply: TrapezoidalFuzzyNumber
    total_demand: TrapezoidalFuzzyNumber
    difference: TrapezoidalFuzzyNumber
    balanced: bool

    @property
    def shortfall(self) -> float:
        """Defuzzified supply minus demand."""
        return defuzzify(self.difference)


def validate(p: FuzzyTransportationProblem) -> None:
    """Raise the first violated invariant, naming the offending index."""
    m, n = p.m, p.n
    if m < 1 or n < 1:
        raise DimensionMismatch(f"need at least one origin and one destination, got {m}x{n}")
    if len(p.costs) != m:
        raise DimensionMismatch(f"costs has {len(p.costs)} rows but there are {m} supplies")
    for i, row in enumerate(p.costs):
        if len(row) != n:
            raise DimensionMismatch(f"costs[{i}] has {len(row)} entries but there are {n} demands")

    def check(value: object, where: str) -> TrapezoidalFuzzyNumber:
        if not isinstance(value, TrapezoidalFuzzyNumber):
            raise MalformedQuadruple(f"{where}: not a trapezoidal fuzzy number: {value!r}")
        return value

    for i, row in enumerate(p.costs):
        for j, c in enumerate(row):
            if check(c, f"costs[{i}][{j}]").a < 0:
                raise NegativeCost(f"costs[{i}][{j}] = {c} has negative support")
    for i, s in enumerate(p.supplies):
        if defuzzify(check(s, f"supplies[{i}]")) <= 0:
            raise NonPositiveSupplyOrDemand(f"supplies[{i}] = {s} is not positive")
    for j, d in enumerate(p.demands):
        if defuzzify(check(d, f"demands[{j}]")) <= 0:
            raise NonPositiveSupplyOrDemand(f"demands[{j}] = {d} is not positive")


def check_balance(p: FuzzyTransportationProblem) -> BalanceReport:
    total_supply = fuzzy_sum(p.supplies)
    total_demand = fuzzy_sum(p.demands)
    difference = sub(total_supply, total_demand)
    return BalanceReport(
        total_supply,
        total_demand,
        difference,
        is_fuzzy_zero(difference, p.config.balance_tol),
    )


def balance(p: FuzzyTransportationProblem) -> FuzzyTransportationProblem:
    """Append a zero-cost dummy origin or destination when unbalanced.

    The dummy quantity is the crisp defuzzified shortfall.
    """
    report = check_balance(p)
    if report.balanced:
        return p
    gap = report.shortfall
    if gap > 0:
        costs = tuple(row + (ZERO,) for row in p.costs)
        return replace(
            p, costs=costs, demands=p.demands + (TFN.crisp(gap),), dummy=("col", p.n)
        )
    costs = p.costs + (tuple(ZERO for _ in range(p.n)),)
    return replace(
        p, costs=costs, supplies=p.supplies + (TFN.crisp(-gap),), dummy=("row", p.m)
    )


def random_problem(
    m: int,
    n: int,
    rng: random.Random,
    *,
    max_quantity: int = 20,
    max_cost: int = 30,
    spread: float = 0.0,
    config: Optional[ToleranceConfig] = None,
) -> FuzzyTransportationProblem:
    """Random balanced instance with integer cores.

    With ``spread > 0`` costs get random (possibly skewed) spreads and the
    quantities symmetric ones, which keeps the totals balanced.
    """
    supplies = [rng.randint(1, max_quantity) for _ in range(m)]
    demands = [rng.randint(1, max_quantity) for _ in range(n)]
    # shift surplus onto random lines until the crisp totals agree
    while sum(supplies) != sum(demands):
        if sum(supplies) < sum(demands):
            supplies[rng.randrange(m)] += 1
        else:
            demands[rng.randrange(n)] += 1
    costs = [[rng.randint(0, max_cost) for _ in range(n)] for _ in range(m)]

    def quantity(v: int) -> TrapezoidalFuzzyNumber:
        if spread == 0:
            return TFN.crisp(v)
        outer = rng.uniform(0, spread)
        inner = rng.uniform(0, outer)
        return TFN(v - outer, v - inner, v + inner, v + outer)

    def price(v: int) -> TrapezoidalFuzzyNumber:
        if spread == 0:
            return TFN.crisp(v)
        left = min(v, rng.uniform(0, spread))
        core = rng.uniform(0, spread)
        return TFN(v - left, v, v + core, v + core + rng.uniform(0, spread))

    return FuzzyTransportationProblem(
        costs=tuple(tuple(price(c) for c in row) for row in costs),
        supplies=tuple(quantity(s) for s in supplies),
        demands=tuple(quantity(d) for d in demands),
        config=config or ToleranceConfig(),
    )
