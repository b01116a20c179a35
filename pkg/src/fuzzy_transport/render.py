"""Plain-text rendering of tableaus, traces and reports."""

from __future__ import annotations

from typing import Optional, Sequence

from .cost import QuadraticPair
from .fuzzy import TrapezoidalFuzzyNumber, format_number, format_tfn
from .modi import NetEvaluations, Potentials
from .problem import BalanceReport, FuzzyTransportationProblem
from .vam import BasicFeasibleSolution, VamStep

Block = list[str]


def _grid(rows: Sequence[Sequence[Block]]) -> str:
    """Lay out multi-line cells in aligned columns."""
    ncols = max(len(r) for r in rows)
    widths = [0] * ncols
    for row in rows:
        for k, block in enumerate(row):
            widths[k] = max([widths[k], *(len(s) for s in block)])
    out = []
    for row in rows:
        height = max((len(b) for b in row), default=1)
        for h in range(height):
            parts = []
            for k in range(ncols):
                block = row[k] if k < len(row) else []
                parts.append((block[h] if h < len(block) else "").ljust(widths[k]))
            out.append("  ".join(parts).rstrip())
    return "\n".join(out)


def origin_label(p: FuzzyTransportationProblem, i: int) -> str:
    return f"O{i + 1}" + ("*" if p.dummy == ("row", i) else "")


def destination_label(p: FuzzyTransportationProblem, j: int) -> str:
    return f"D{j + 1}" + ("*" if p.dummy == ("col", j) else "")


def render_balance(report: BalanceReport, decimals: int) -> str:
    lines = [
        f"total_supply: {format_tfn(report.total_supply, decimals)}",
        f"total_demand: {format_tfn(report.total_demand, decimals)}",
        f"balanced: {'true' if report.balanced else 'false'}, "
        f"difference {format_tfn(report.difference, decimals)}",
    ]
    if not report.balanced:
        gap = report.shortfall
        side = "dummy destination" if gap > 0 else "dummy origin"
        lines.append(f"shortfall: {format_number(abs(gap), decimals)} ({side} needed)")
    return "\n".join(lines)


def render_vam_step(step: VamStep, p: FuzzyTransportationProblem, number: int, decimals: int) -> str:
    fmt = lambda t: format_tfn(t, decimals)  # noqa: E731
    header: list[Block] = [[""]] + [[destination_label(p, j)] for j in step.cols]
    header += [["Supply"], ["Row Penalty"]]
    rows: list[list[Block]] = [header]
    for i in step.rows:
        row: list[Block] = [[origin_label(p, i)]]
        for j in step.cols:
            block = [fmt(p.costs[i][j])]
            if (i, j) == step.cell:
                block.append(f"({fmt(step.quantity)})")
            row.append(block)
        row.append([fmt(step.supplies[i])])
        row.append([fmt(step.row_penalties[i])] if i in step.row_penalties else [])
        rows.append(row)
    rows.append([["Demand"]] + [[fmt(step.demands[j])] for j in step.cols])
    rows.append([["Col Penalty"]] + [[fmt(step.col_penalties[j])] if j in step.col_penalties else [] for j in step.cols])

    i, j = step.cell
    title = f"Allocation {number}: cell ({i + 1}, {j + 1})"
    if step.line is not None:
        kind, k = step.line
        label = origin_label(p, k) if kind == "row" else destination_label(p, k)
        title += f", max penalty on {label}"
    gone = ", ".join(origin_label(p, k) if kind == "row" else destination_label(p, k) for kind, k in step.exhausted)
    notes = [f"ship {fmt(step.quantity)}; exhausted {gone} with residual {fmt(step.exhausted_residual)}"]
    if step.residual is not None:
        survivor = "supply" if step.exhausted[0][0] == "col" else "demand"
        notes.append(f"{survivor} reduced to {fmt(step.residual)}")
    return "\n".join([title, _grid(rows), *notes])


def render_allocations(
    bfs: BasicFeasibleSolution, p: FuzzyTransportationProblem, decimals: int
) -> str:
    rows: list[list[Block]] = [[["cell"], ["cost"], ["allocation"]]]
    for i, j in sorted(bfs.basis):
        rows.append(
            [
                [f"({i + 1}, {j + 1})"],
                [format_tfn(p.costs[i][j], decimals)],
                [format_tfn(bfs.allocation((i, j)), decimals)],
            ]
        )
    return _grid(rows)


def render_optimality(
    bfs: BasicFeasibleSolution,
    p: FuzzyTransportationProblem,
    pot: Potentials,
    ne: NetEvaluations,
    decimals: int,
) -> str:
    """Cost, then the allocation (basic) or u+v and net evaluation (empty)."""
    fmt = lambda t: format_tfn(t, decimals)  # noqa: E731
    rows: list[list[Block]] = [[[""]] + [[destination_label(p, j)] for j in range(p.n)] + [["U_i"]]]
    for i in range(p.m):
        row: list[Block] = [[origin_label(p, i)]]
        for j in range(p.n):
            block = [fmt(p.costs[i][j])]
            if (i, j) in bfs.basis:
                block.append(f"({fmt(bfs.allocation((i, j)))})")
            else:
                block.append(fmt(pot.u[i] + pot.v[j]))
                block.append(fmt(ne.delta[(i, j)]))
            row.append(block)
        row.append([fmt(pot.u[i])])
        rows.append(row)
    rows.append([["V_j"]] + [[fmt(v)] for v in pot.v])
    return _grid(rows)


def render_quadratic(quad: QuadraticPair, decimals: int) -> str:
    def poly(coef) -> str:
        p, q, r = coef
        sign = "-" if q < 0 else "+"
        return (
            f"{format_number(p, decimals)}a^2 {sign} {format_number(abs(q), decimals)}a"
            f" + {format_number(r, decimals)}"
        )

    return f"lower: {poly(quad.lower)}\nupper: {poly(quad.upper)}"


def render_cost(total: Optional[TrapezoidalFuzzyNumber], decimals: int) -> str:
    return "total cost: " + ("n/a" if total is None else format_tfn(total, decimals))
