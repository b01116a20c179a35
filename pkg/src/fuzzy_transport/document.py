"""JSON problem documents in, JSON solve reports out.

Quadruples travel as 4-element arrays. Reports keep full float precision
and number cells from 1, matching the O_i / D_j labels of the text output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .cost import QuadraticPair
from .errors import ParseError
from .fuzzy import DEFAULT_DECIMALS, TFN, TrapezoidalFuzzyNumber
from .modi import ModiIteration, ModiReport, OptimalityVerdict
from .problem import BalanceReport, Cell, FuzzyTransportationProblem, ToleranceConfig
from .vam import BasicFeasibleSolution, Line, VamTrace

_CONFIG_KEYS = {"fuzzy_zero", "balance_tol", "max_iterations", "decimals", "eps_rank"}


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _quantity(value: Any, where: str) -> Any:
    if isinstance(value, list):
        if len(value) != 4:
            raise ParseError(f"{where}: expected 4 numbers, got {len(value)}")
        return [_number(v, f"{where}[{k}]") for k, v in enumerate(value)]
    return _number(value, where)


def _array(value: Any, where: str) -> list:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a non-empty array")
    return value


def parse_document(data: Any) -> tuple[FuzzyTransportationProblem, int]:
    """Turn a decoded document into a problem and the requested decimals."""
    if not isinstance(data, dict):
        raise ParseError("document: expected a JSON object")
    for key in ("costs", "supplies", "demands"):
        if key not in data:
            raise ParseError(f"{key}: missing")
    unknown = set(data) - {"costs", "supplies", "demands", "config"}
    if unknown:
        raise ParseError(f"document: unknown keys {sorted(unknown)}")

    costs = [
        [_quantity(v, f"costs[{i}][{j}]") for j, v in enumerate(_array(row, f"costs[{i}]"))]
        for i, row in enumerate(_array(data["costs"], "costs"))
    ]
    supplies = [_quantity(v, f"supplies[{i}]") for i, v in enumerate(_array(data["supplies"], "supplies"))]
    demands = [_quantity(v, f"demands[{j}]") for j, v in enumerate(_array(data["demands"], "demands"))]

    raw = data.get("config") or {}
    if not isinstance(raw, dict):
        raise ParseError("config: expected an object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ParseError(f"config: unknown keys {sorted(unknown)}")
    options: dict[str, Any] = {}
    if "fuzzy_zero" in raw:
        options["fuzzy_zero_anchor"] = TFN.of(_quantity(raw["fuzzy_zero"], "config.fuzzy_zero"))
    if "balance_tol" in raw:
        options["balance_tol"] = _number(raw["balance_tol"], "config.balance_tol")
    if "eps_rank" in raw:
        options["eps_rank"] = _number(raw["eps_rank"], "config.eps_rank")
    if "max_iterations" in raw:
        value = raw["max_iterations"]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError("config.max_iterations: expected an integer")
        options["max_modi_iterations"] = value
    decimals = raw.get("decimals", DEFAULT_DECIMALS)
    if isinstance(decimals, bool) or not isinstance(decimals, int) or decimals < 0:
        raise ParseError("config.decimals: expected a nonnegative integer")
    try:
        config = ToleranceConfig(**options)
    except ValueError as exc:
        raise ParseError(f"config: {exc}") from None
    return FuzzyTransportationProblem.from_data(costs, supplies, demands, config), decimals


def load_problem(path: str | Path) -> tuple[FuzzyTransportationProblem, int]:
    """Read a problem document. ``OSError`` propagates for the caller to map."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(data)


def example_path() -> Path:
    """Bundled 3x4 worked example."""
    return Path(__file__).with_name("data") / "example_3x4.json"


# -- report serialisation ---------------------------------------------------


def quad(t: Optional[TrapezoidalFuzzyNumber]) -> Optional[list[float]]:
    return None if t is None else list(t.as_tuple())


def _cell(cell: Optional[Cell]) -> Optional[list[int]]:
    return None if cell is None else [cell[0] + 1, cell[1] + 1]


def _line(line: Optional[Line]) -> Optional[dict[str, Any]]:
    return None if line is None else {"kind": line[0], "index": line[1] + 1}


def _allocations(bfs: BasicFeasibleSolution) -> list[dict[str, Any]]:
    return [{"cell": _cell(c), "quantity": quad(bfs.allocation(c))} for c in sorted(bfs.basis)]


def _verdict(v: Optional[OptimalityVerdict]) -> Optional[dict[str, Any]]:
    if v is None:
        return None
    return {
        "kind": v.kind.value,
        "entering_cell": _cell(v.entering_cell),
        "alternate_cells": [_cell(c) for c in v.alternate_cells],
    }


def _balance(b: BalanceReport) -> dict[str, Any]:
    return {
        "total_supply": quad(b.total_supply),
        "total_demand": quad(b.total_demand),
        "difference": quad(b.difference),
        "balanced": b.balanced,
    }


def _trace(trace: VamTrace) -> dict[str, Any]:
    steps = []
    for s in trace.steps:
        steps.append(
            {
                "line": _line(s.line),
                "cell": _cell(s.cell),
                "quantity": quad(s.quantity),
                "row_penalties": [{"row": i + 1, "penalty": quad(t)} for i, t in sorted(s.row_penalties.items())],
                "col_penalties": [{"col": j + 1, "penalty": quad(t)} for j, t in sorted(s.col_penalties.items())],
                "exhausted": [_line(x) for x in s.exhausted],
                "exhausted_residual": quad(s.exhausted_residual),
                "residual": quad(s.residual),
            }
        )
    return {"op_count": trace.op_count, "steps": steps}


def _iteration(it: ModiIteration) -> dict[str, Any]:
    pot = it.potentials
    return {
        "potentials": {
            "u": [quad(x) for x in pot.u],
            "v": [quad(x) for x in pot.v],
            "anchor": _line(pot.anchor),
        },
        "net_evaluations": [
            {"cell": _cell(c), "delta": quad(d)} for c, d in sorted(it.net_evaluations.delta.items())
        ],
        "verdict": _verdict(it.verdict),
        "loop": None if it.loop is None else [_cell(c) for c in it.loop.cells],
        "theta": quad(it.theta),
        "leaving": _cell(it.leaving),
    }


def build_report(
    report: ModiReport,
    final: BasicFeasibleSolution,
    total: TrapezoidalFuzzyNumber,
    cost_alpha: QuadraticPair,
    *,
    initial_only: bool = False,
) -> dict[str, Any]:
    p = report.problem
    return {
        "problem": {
            "m": p.m,
            "n": p.n,
            "dummy": None if p.dummy is None else {"kind": p.dummy[0], "index": p.dummy[1] + 1},
        },
        "balance": _balance(report.balance),
        "vam_trace": _trace(report.vam_trace),
        "iterations": [] if initial_only else [_iteration(it) for it in report.iterations],
        "allocations": _allocations(final),
        "total_cost": quad(total),
        "cost_alpha": {"lower": list(cost_alpha.lower), "upper": list(cost_alpha.upper)},
        "verdict": None if initial_only else _verdict(report.verdict),
    }


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2)
