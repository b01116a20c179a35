"""Fuzzy modified distribution method.

Potentials are propagated over the basis tree, unoccupied cells are priced,
and a stepping-stone pivot is applied until no net evaluation is negative.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegenerateBasis, DisconnectedBasis, IterationOverflow, NoLoopFound
from .fuzzy import Ordering, TrapezoidalFuzzyNumber, add, defuzzify, rank_less, sub
from .problem import (
    BalanceReport,
    Cell,
    FuzzyTransportationProblem,
    balance,
    check_balance,
    validate,
)
from .vam import BasicFeasibleSolution, Line, VamTrace, solve_initial, total_cost


@dataclass(frozen=True)
class Potentials:
    u: tuple[TrapezoidalFuzzyNumber, ...]
    v: tuple[TrapezoidalFuzzyNumber, ...]
    anchor: Line


@dataclass(frozen=True)
class NetEvaluations:
    delta: dict[Cell, TrapezoidalFuzzyNumber]


class VerdictKind(enum.Enum):
    OPTIMAL_UNIQUE = "optimal (unique)"
    OPTIMAL_ALTERNATE = "optimal (alternate exists)"
    IMPROVABLE = "improvable"


@dataclass(frozen=True)
class OptimalityVerdict:
    kind: VerdictKind
    entering_cell: Optional[Cell] = None
    alternate_cells: tuple[Cell, ...] = ()


@dataclass(frozen=True)
class SteppingStoneLoop:
    """Closed path starting at the entering cell; even positions get ``+``."""

    cells: tuple[Cell, ...]

    @property
    def entering(self) -> Cell:
        return self.cells[0]

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if k % 2 == 0 else -1 for k in range(len(self.cells)))


@dataclass(frozen=True)
class ModiIteration:
    solution: BasicFeasibleSolution  # the solution this test looked at
    potentials: Potentials
    net_evaluations: NetEvaluations
    verdict: OptimalityVerdict
    loop: Optional[SteppingStoneLoop] = None
    theta: Optional[TrapezoidalFuzzyNumber] = None
    leaving: Optional[Cell] = None


@dataclass
class ModiReport:
    problem: FuzzyTransportationProblem  # the balanced problem actually solved
    balance: BalanceReport
    initial: BasicFeasibleSolution
    vam_trace: VamTrace
    iterations: list[ModiIteration] = field(default_factory=list)
    total_cost: Optional[TrapezoidalFuzzyNumber] = None

    @property
    def final(self) -> ModiIteration:
        return self.iterations[-1]

    @property
    def verdict(self) -> OptimalityVerdict:
        return self.final.verdict

    @property
    def improvements(self) -> int:
        return sum(1 for it in self.iterations if it.loop is not None)


def default_anchor(bfs: BasicFeasibleSolution) -> Line:
    """Line holding the most basis cells; rows first, then lowest index."""
    row_counts = [0] * bfs.m
    col_counts = [0] * bfs.n
    for i, j in bfs.basis:
        row_counts[i] += 1
        col_counts[j] += 1
    best: Line = ("row", 0)
    best_count = -1
    for i, count in enumerate(row_counts):
        if count > best_count:
            best, best_count = ("row", i), count
    for j, count in enumerate(col_counts):
        if count > best_count:
            best, best_count = ("col", j), count
    return best


def compute_potentials(
    bfs: BasicFeasibleSolution,
    p: FuzzyTransportationProblem,
    anchor: Optional[Line] = None,
) -> Potentials:
    """Solve ``u_i (+) v_j = C_ij`` on the basis, one line pinned to fuzzy zero.

    ``anchor`` overrides the default choice of pinned line.
    """
    m, n = bfs.m, bfs.n
    if len(bfs.basis) < m + n - 1:
        raise DegenerateBasis(f"basis has {len(bfs.basis)} cells, need {m + n - 1}")
    anchor = anchor or default_anchor(bfs)
    by_row: dict[int, list[int]] = {i: [] for i in range(m)}
    by_col: dict[int, list[int]] = {j: [] for j in range(n)}
    for i, j in sorted(bfs.basis):
        by_row[i].append(j)
        by_col[j].append(i)

    u: list[Optional[TrapezoidalFuzzyNumber]] = [None] * m
    v: list[Optional[TrapezoidalFuzzyNumber]] = [None] * n
    kind, k = anchor
    if kind == "row":
        u[k] = p.config.fuzzy_zero_anchor
    else:
        v[k] = p.config.fuzzy_zero_anchor
    queue = deque([anchor])
    while queue:
        kind, k = queue.popleft()
        if kind == "row":
            for j in by_row[k]:
                if v[j] is None:
                    v[j] = sub(p.costs[k][j], u[k])
                    queue.append(("col", j))
        else:
            for i in by_col[k]:
                if u[i] is None:
                    u[i] = sub(p.costs[i][k], v[k])
                    queue.append(("row", i))
    if any(x is None for x in u) or any(x is None for x in v):
        raise DisconnectedBasis("basis cells do not connect every row and column")
    return Potentials(tuple(u), tuple(v), anchor)  # type: ignore[arg-type]


def net_evaluations(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem, pot: Potentials
) -> NetEvaluations:
    delta = {
        (i, j): sub(p.costs[i][j], add(pot.u[i], pot.v[j]))
        for i in range(bfs.m)
        for j in range(bfs.n)
        if (i, j) not in bfs.basis
    }
    return NetEvaluations(delta)


def classify(ne: NetEvaluations, tol: float) -> OptimalityVerdict:
    """Sign of each net evaluation is the sign of its defuzzified value."""
    negative = [(defuzzify(d), cell) for cell, d in sorted(ne.delta.items()) if defuzzify(d) < -tol]
    if negative:
        entering = min(negative)[1]
        return OptimalityVerdict(VerdictKind.IMPROVABLE, entering_cell=entering)
    zeros = tuple(cell for cell, d in sorted(ne.delta.items()) if abs(defuzzify(d)) <= tol)
    if zeros:
        return OptimalityVerdict(VerdictKind.OPTIMAL_ALTERNATE, alternate_cells=zeros)
    return OptimalityVerdict(VerdictKind.OPTIMAL_UNIQUE)


def find_loop(bfs: BasicFeasibleSolution, entering: Cell) -> SteppingStoneLoop:
    """The unique closed path from ``entering`` through basis cells.

    The basis is a spanning tree on row and column nodes, so the loop is the
    entering cell plus the tree path from its column back to its row.
    """
    if entering in bfs.basis:
        raise NoLoopFound(f"{entering} is already basic")
    m = bfs.m
    adjacency: dict[int, list[tuple[int, Cell]]] = {}
    for i, j in sorted(bfs.basis):
        adjacency.setdefault(i, []).append((m + j, (i, j)))
        adjacency.setdefault(m + j, []).append((i, (i, j)))
    start, goal = m + entering[1], entering[0]
    via: dict[int, tuple[int, Cell]] = {start: (start, entering)}
    queue = deque([start])
    while queue and goal not in via:
        node = queue.popleft()
        for nxt, cell in adjacency.get(node, []):
            if nxt not in via:
                via[nxt] = (node, cell)
                queue.append(nxt)
    if goal not in via:
        raise NoLoopFound(f"no closed path from {entering} through the basis")
    path: list[Cell] = []
    node = goal
    while node != start:
        node, cell = via[node]
        path.append(cell)
    # path runs row-goal -> column-start; reverse so the first hop shares the column
    return SteppingStoneLoop((entering, *reversed(path)))


def leaving_cell(bfs: BasicFeasibleSolution, loop: SteppingStoneLoop, eps: float = 1e-9) -> Cell:
    """Smallest allocation on a ``-`` position; ties go to the lowest cell index."""
    donors = sorted(loop.cells[1::2])
    leaving = donors[0]
    for cell in donors[1:]:
        if rank_less(bfs.allocation(cell), bfs.allocation(leaving), eps) is Ordering.LESS:
            leaving = cell
    return leaving


def improve(
    bfs: BasicFeasibleSolution, loop: SteppingStoneLoop, eps: float = 1e-9
) -> BasicFeasibleSolution:
    """Shift theta around the loop and swap the entering cell into the basis."""
    leaving = leaving_cell(bfs, loop, eps)
    theta = bfs.allocation(leaving)
    allocations = dict(bfs.allocations)
    for cell, sign in zip(loop.cells, loop.signs):
        if sign > 0:
            current = allocations.get(cell)
            allocations[cell] = theta if current is None else add(current, theta)
        else:
            allocations[cell] = sub(bfs.allocation(cell), theta)
    del allocations[leaving]
    basis = (bfs.basis - {leaving}) | {loop.entering}
    return BasicFeasibleSolution(allocations, frozenset(basis), bfs.m, bfs.n)


def evaluate(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem, anchor: Optional[Line] = None
) -> tuple[Potentials, NetEvaluations, OptimalityVerdict]:
    """One optimality test: potentials, net evaluations and verdict."""
    pot = compute_potentials(bfs, p, anchor)
    ne = net_evaluations(bfs, p, pot)
    return pot, ne, classify(ne, p.config.eps_rank)


def optimize(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem
) -> tuple[BasicFeasibleSolution, list[ModiIteration]]:
    """Pivot from ``bfs`` until no net evaluation is negative."""
    iterations: list[ModiIteration] = []
    while True:
        pot, ne, verdict = evaluate(bfs, p)
        if verdict.kind is not VerdictKind.IMPROVABLE:
            iterations.append(ModiIteration(bfs, pot, ne, verdict))
            return bfs, iterations
        if len(iterations) >= p.config.max_modi_iterations:
            raise IterationOverflow(
                f"no optimum after {p.config.max_modi_iterations} pivots; cycling suspected"
            )
        loop = find_loop(bfs, verdict.entering_cell)
        leaving = leaving_cell(bfs, loop, p.config.eps_rank)
        iterations.append(ModiIteration(bfs, pot, ne, verdict, loop, bfs.allocation(leaving), leaving))
        bfs = improve(bfs, loop, p.config.eps_rank)


def solve_optimal(p: FuzzyTransportationProblem) -> tuple[BasicFeasibleSolution, ModiReport]:
    """Balance, run FVAM, then pivot to fuzzy optimality."""
    validate(p)
    report_balance = check_balance(p)
    balanced = balance(p)
    initial, trace = solve_initial(balanced)
    bfs, iterations = optimize(initial, balanced)
    report = ModiReport(
        problem=balanced,
        balance=report_balance,
        initial=initial,
        vam_trace=trace,
        iterations=iterations,
        total_cost=total_cost(bfs, balanced),
    )
    return bfs, report
