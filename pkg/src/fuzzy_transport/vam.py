"""Fuzzy Vogel approximation: an initial basic feasible solution.

The working tableau shrinks by one line per allocation. Each step records
the penalties it saw so the run can be replayed as a sequence of tableaus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import EmptyTableau, ExhaustedLine, IterationOverflow, UnbalancedProblem
from .fuzzy import (
    Ordering,
    TrapezoidalFuzzyNumber,
    ZERO,
    add,
    defuzzify,
    is_fuzzy_zero,
    mul_nonneg,
    rank_less,
    sub,
)
from .problem import Cell, FuzzyTransportationProblem, check_balance, validate

Line = tuple[str, int]  # ("row", i) or ("col", j)


@dataclass(frozen=True)
class BasicFeasibleSolution:
    """Occupied cells and their fuzzy shipments.

    ``basis`` may hold cells whose allocation is a fuzzy zero; those keep the
    basis at ``m + n - 1`` cells on degenerate problems.
    """

    allocations: dict[Cell, TrapezoidalFuzzyNumber]
    basis: frozenset[Cell]
    m: int
    n: int

    def __post_init__(self) -> None:
        missing = set(self.allocations) - self.basis
        if missing:
            raise ValueError(f"allocated cells outside the basis: {sorted(missing)}")
        if len(self.basis) > self.m + self.n - 1:
            raise ValueError(f"basis has {len(self.basis)} cells, more than m + n - 1")

    def allocation(self, cell: Cell) -> TrapezoidalFuzzyNumber:
        return self.allocations.get(cell, ZERO)

    def row_total(self, i: int) -> TrapezoidalFuzzyNumber:
        total = ZERO
        for (r, c), x in sorted(self.allocations.items()):
            if r == i:
                total = add(total, x)
        return total

    def col_total(self, j: int) -> TrapezoidalFuzzyNumber:
        total = ZERO
        for (r, c), x in sorted(self.allocations.items()):
            if c == j:
                total = add(total, x)
        return total


@dataclass(frozen=True)
class VamStep:
    rows: tuple[int, ...]  # surviving rows when the step began
    cols: tuple[int, ...]
    row_penalties: dict[int, TrapezoidalFuzzyNumber]
    col_penalties: dict[int, TrapezoidalFuzzyNumber]
    supplies: dict[int, TrapezoidalFuzzyNumber]  # residuals when the step began
    demands: dict[int, TrapezoidalFuzzyNumber]
    line: Optional[Line]
    cell: Cell
    quantity: TrapezoidalFuzzyNumber
    exhausted: tuple[Line, ...]
    exhausted_residual: TrapezoidalFuzzyNumber
    residual: Optional[TrapezoidalFuzzyNumber]  # surviving side, None when both close

    @property
    def supply(self) -> TrapezoidalFuzzyNumber:
        return self.supplies[self.cell[0]]

    @property
    def demand(self) -> TrapezoidalFuzzyNumber:
        return self.demands[self.cell[1]]


@dataclass
class VamTrace:
    steps: list[VamStep] = field(default_factory=list)
    op_count: int = 0


@dataclass(frozen=True)
class ComplexityEstimate:
    m: int
    n: int
    t_row_variant: float
    t_col_variant: float


class Tableau:
    """Mutable working state for one FVAM run."""

    def __init__(self, p: FuzzyTransportationProblem):
        self.costs = p.costs
        self.supply = list(p.supplies)
        self.demand = list(p.demands)
        self.rows = list(range(p.m))
        self.cols = list(range(p.n))
        self.eps = p.config.eps_rank
        self.allocations: dict[Cell, TrapezoidalFuzzyNumber] = {}
        self.ops = 0

    def line_cells(self, line: Line) -> list[Cell]:
        kind, k = line
        if kind == "row":
            return [(k, j) for j in self.cols]
        return [(i, k) for i in self.rows]

    def cost(self, cell: Cell) -> TrapezoidalFuzzyNumber:
        return self.costs[cell[0]][cell[1]]

    def least_cell(self, line: Line) -> Cell:
        best = None
        for cell in self.line_cells(line):
            self.ops += 1
            if best is None or rank_less(self.cost(cell), self.cost(best), self.eps) is Ordering.LESS:
                best = cell
        if best is None:
            raise EmptyTableau(f"{line[0]} {line[1]} has no surviving cells")
        return best


def _line_penalty(tab: Tableau, line: Line) -> TrapezoidalFuzzyNumber:
    smallest: Optional[TrapezoidalFuzzyNumber] = None
    second: Optional[TrapezoidalFuzzyNumber] = None
    for cell in tab.line_cells(line):
        tab.ops += 1
        c = tab.cost(cell)
        if smallest is None or rank_less(c, smallest, tab.eps) is Ordering.LESS:
            second, smallest = smallest, c
        elif second is None or rank_less(c, second, tab.eps) is Ordering.LESS:
            second = c
    if smallest is None:
        raise EmptyTableau(f"{line[0]} {line[1]} has no surviving cells")
    if second is None:
        # a lone cell carries its own cost as penalty
        return smallest
    return sub(second, smallest)


def penalties(
    tab: Tableau,
) -> tuple[dict[int, TrapezoidalFuzzyNumber], dict[int, TrapezoidalFuzzyNumber]]:
    if not tab.rows or not tab.cols:
        raise EmptyTableau("no surviving rows or columns")
    row_pen = {i: _line_penalty(tab, ("row", i)) for i in tab.rows}
    col_pen = {j: _line_penalty(tab, ("col", j)) for j in tab.cols}
    return row_pen, col_pen


def select_pivot(
    tab: Tableau,
    row_pen: dict[int, TrapezoidalFuzzyNumber],
    col_pen: dict[int, TrapezoidalFuzzyNumber],
) -> tuple[Line, Cell]:
    """Line with the largest penalty, then its cheapest cell.

    Equal penalties go to the line whose cheapest cell costs less, then to
    rows over columns, then to the lower index.
    """
    candidates = [(("row", i), pen) for i, pen in sorted(row_pen.items())]
    candidates += [(("col", j), pen) for j, pen in sorted(col_pen.items())]
    if not candidates:
        raise EmptyTableau("no penalties to choose from")
    least: dict[Line, Cell] = {}

    def cheapest(line: Line) -> Cell:
        if line not in least:
            least[line] = tab.least_cell(line)
        return least[line]

    best_line, best_pen = candidates[0]
    for line, pen in candidates[1:]:
        tab.ops += 1
        order = rank_less(pen, best_pen, tab.eps)
        if order is Ordering.GREATER:
            best_line, best_pen = line, pen
        elif order is Ordering.EQUAL:
            if rank_less(tab.cost(cheapest(line)), tab.cost(cheapest(best_line)), tab.eps) is Ordering.LESS:
                best_line, best_pen = line, pen
    return best_line, cheapest(best_line)


def allocate(
    tab: Tableau,
    cell: Cell,
    *,
    line: Optional[Line] = None,
    row_pen: Optional[dict[int, TrapezoidalFuzzyNumber]] = None,
    col_pen: Optional[dict[int, TrapezoidalFuzzyNumber]] = None,
) -> VamStep:
    """Ship the smaller of residual supply and demand through ``cell``.

    The exhausted line is deleted and the other side's residual is reduced.
    On a tie the column goes and the row keeps a fuzzy-zero residual, unless
    the column is the last one standing (then the row goes) or the cell is
    the last one (both go).
    """
    i, j = cell
    if i not in tab.rows:
        raise ExhaustedLine(f"row {i} is already exhausted")
    if j not in tab.cols:
        raise ExhaustedLine(f"column {j} is already exhausted")
    rows_before, cols_before = tuple(tab.rows), tuple(tab.cols)
    supplies = {r: tab.supply[r] for r in rows_before}
    demands = {c: tab.demand[c] for c in cols_before}
    s, d = tab.supply[i], tab.demand[j]
    tab.ops += 1
    order = rank_less(s, d, tab.eps)
    if order is Ordering.LESS:
        drop_row, drop_col = True, False
    elif order is Ordering.GREATER:
        drop_row, drop_col = False, True
    elif len(tab.rows) == 1 and len(tab.cols) == 1:
        drop_row, drop_col = True, True
    elif len(tab.cols) == 1:
        drop_row, drop_col = True, False
    else:
        drop_row, drop_col = False, True

    quantity = d if order is Ordering.GREATER else s
    tab.allocations[cell] = quantity
    new_s, new_d = sub(s, quantity), sub(d, quantity)
    tab.supply[i], tab.demand[j] = new_s, new_d

    exhausted: list[Line] = []
    if drop_row:
        tab.rows.remove(i)
        exhausted.append(("row", i))
    if drop_col:
        tab.cols.remove(j)
        exhausted.append(("col", j))
    if drop_row and drop_col:
        exhausted_residual, residual = sub(new_s, new_d), None
    elif drop_row:
        exhausted_residual, residual = new_s, new_d
    else:
        exhausted_residual, residual = new_d, new_s
    return VamStep(
        rows=rows_before,
        cols=cols_before,
        row_penalties=dict(row_pen or {}),
        col_penalties=dict(col_pen or {}),
        supplies=supplies,
        demands=demands,
        line=line,
        cell=cell,
        quantity=quantity,
        exhausted=tuple(exhausted),
        exhausted_residual=exhausted_residual,
        residual=residual,
    )


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


def is_loop_free(cells, m: int) -> bool:
    """True when the cells, as row-column edges, form a forest."""
    cells = list(cells)
    n_nodes = m + 1 + max((j for _, j in cells), default=0)
    uf = _UnionFind(n_nodes)
    return all(uf.union(i, m + j) for i, j in cells)


def patch_degenerate(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem
) -> BasicFeasibleSolution:
    """Top the basis up to ``m + n - 1`` cells with fuzzy-zero allocations.

    Cheapest unoccupied cells that do not close a loop are taken first.
    """
    target = p.m + p.n - 1
    if len(bfs.basis) >= target:
        return bfs
    uf = _UnionFind(p.m + p.n)
    for i, j in bfs.basis:
        uf.union(i, p.m + j)
    allocations = dict(bfs.allocations)
    basis = set(bfs.basis)
    free = [(i, j) for i in range(p.m) for j in range(p.n) if (i, j) not in basis]
    free.sort(key=lambda cell: (defuzzify(p.cost(cell)), cell))
    for i, j in free:
        if len(basis) == target:
            break
        if uf.union(i, p.m + j):
            basis.add((i, j))
            allocations[(i, j)] = p.config.fuzzy_zero_anchor
    return BasicFeasibleSolution(allocations, frozenset(basis), p.m, p.n)


def solve_initial(p: FuzzyTransportationProblem) -> tuple[BasicFeasibleSolution, VamTrace]:
    validate(p)
    if not check_balance(p).balanced:
        raise UnbalancedProblem("problem is unbalanced; call balance() first")
    tab = Tableau(p)
    trace = VamTrace()
    limit = p.m + p.n
    while tab.rows and tab.cols:
        if len(trace.steps) >= limit:
            raise IterationOverflow(f"FVAM did not finish within {limit} allocations")
        row_pen, col_pen = penalties(tab)
        line, cell = select_pivot(tab, row_pen, col_pen)
        trace.steps.append(allocate(tab, cell, line=line, row_pen=row_pen, col_pen=col_pen))
    trace.op_count = tab.ops
    bfs = BasicFeasibleSolution(dict(tab.allocations), frozenset(tab.allocations), p.m, p.n)
    return patch_degenerate(bfs, p), trace


def is_placeholder(x: TrapezoidalFuzzyNumber, p: FuzzyTransportationProblem) -> bool:
    """A fuzzy-zero basic allocation that ships nothing."""
    return is_fuzzy_zero(x, p.config.eps_rank)


def total_cost(bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem) -> TrapezoidalFuzzyNumber:
    total = ZERO
    for cell in sorted(bfs.basis):
        x = bfs.allocation(cell)
        if is_placeholder(x, p):
            continue
        total = add(total, mul_nonneg(p.cost(cell), x))
    return total


def complexity_estimate(m: int, n: int) -> ComplexityEstimate:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    row = (n + 1) * m + (m / (m + n)) * n * (m + n - 1)
    col = (m + 1) * n + (n / (m + n)) * m * (m + n - 1)
    return ComplexityEstimate(m, n, row, col)
