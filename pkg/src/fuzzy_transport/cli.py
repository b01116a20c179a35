"""Command-line interface: ``check``, ``solve``, ``membership``, ``complexity``.

Exit codes: 0 success, 2 parse or validation error, 3 solver error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Optional, Sequence

from . import document, render
from .cost import CostMembershipFunction, cost_membership, sample_curve, total_cost_alpha
from .errors import SolverError, ValidationError
from .fuzzy import format_number, format_tfn
from .modi import ModiReport, optimize
from .problem import FuzzyTransportationProblem, balance, check_balance, random_problem, validate
from .vam import BasicFeasibleSolution, complexity_estimate, solve_initial, total_cost

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def solve_pipeline(
    problem: FuzzyTransportationProblem, initial_only: bool = False
) -> tuple[BasicFeasibleSolution, ModiReport]:
    validate(problem)
    balanced = balance(problem)
    initial, trace = solve_initial(balanced)
    report = ModiReport(problem=balanced, balance=check_balance(problem), initial=initial, vam_trace=trace)
    final = initial
    if not initial_only:
        final, report.iterations = optimize(initial, balanced)
    report.total_cost = total_cost(final, balanced)
    return final, report


def _load(args: argparse.Namespace) -> tuple[FuzzyTransportationProblem, int]:
    problem, decimals = document.load_problem(args.path)
    if getattr(args, "decimals", None) is not None:
        decimals = args.decimals
    return problem, decimals


def cmd_check(args: argparse.Namespace) -> int:
    problem, decimals = _load(args)
    validate(problem)
    print(f"problem: {problem.m} origins x {problem.n} destinations")
    print(render.render_balance(check_balance(problem), decimals))
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    problem, decimals = _load(args)
    final, report = solve_pipeline(problem, args.initial_only)
    p = report.problem
    quad = total_cost_alpha(final, p)
    if args.json:
        print(document.dumps(document.build_report(report, final, report.total_cost, quad, initial_only=args.initial_only)))
        return EXIT_OK

    out = [f"problem: {problem.m} origins x {problem.n} destinations", render.render_balance(report.balance, decimals)]
    if p.dummy is not None:
        kind, k = p.dummy
        label = render.origin_label(p, k) if kind == "row" else render.destination_label(p, k)
        out.append(f"added zero-cost dummy {'origin' if kind == 'row' else 'destination'} {label}")
    if args.trace:
        for number, step in enumerate(report.vam_trace.steps, start=1):
            out += ["", render.render_vam_step(step, p, number, decimals)]
    out += [
        "",
        f"initial solution (FVAM, {report.vam_trace.op_count} operations):",
        render.render_allocations(report.initial, p, decimals),
        render.render_cost(total_cost(report.initial, p), decimals),
    ]
    if not args.initial_only:
        for number, it in enumerate(report.iterations, start=1):
            if args.trace:
                out += ["", f"optimality test {number}:", render.render_optimality(
                    it.solution, p, it.potentials, it.net_evaluations, decimals)]
            if it.loop is not None:
                e, l = it.loop.entering, it.leaving
                out.append(
                    f"pivot {number}: entering ({e[0] + 1}, {e[1] + 1}), leaving ({l[0] + 1}, {l[1] + 1}),"
                    f" theta {format_tfn(it.theta, decimals)}"
                )
        final_it = report.final
        out += [
            "",
            "final tableau:",
            render.render_optimality(final, p, final_it.potentials, final_it.net_evaluations, decimals),
            "",
            "final allocations:",
            render.render_allocations(final, p, decimals),
        ]
    out += [render.render_cost(report.total_cost, decimals), "cost alpha-cut:", render.render_quadratic(quad, decimals)]
    out.append("verdict: " + ("not tested (initial solution only)" if args.initial_only else report.verdict.kind.value))
    print("\n".join(out))
    return EXIT_OK


def cmd_membership(args: argparse.Namespace) -> int:
    problem, decimals = _load(args)
    final, report = solve_pipeline(problem, args.initial_only)
    f = CostMembershipFunction.from_quadratic(total_cost_alpha(final, report.problem))
    if args.at is not None:
        print(format_number(cost_membership(args.at, f), decimals))
    else:
        for x, mu in sample_curve(f, args.samples):
            print(f"{format_number(x, decimals)}\t{format_number(mu, decimals)}")
    return EXIT_OK


def _int_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or a comma list, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return values


def cmd_complexity(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    rows = [["m", "n", "t_row", "t_col", "op_count", "op_count/(mn(m+n))"]]
    for m in args.m_range:
        for n in args.n_range:
            est = complexity_estimate(m, n)
            ops = 0
            for _ in range(args.trials):
                _, trace = solve_initial(random_problem(m, n, rng))
                ops = max(ops, trace.op_count)
            rows.append(
                [
                    str(m),
                    str(n),
                    format_number(est.t_row_variant, 4),
                    format_number(est.t_col_variant, 4),
                    str(ops),
                    format_number(ops / (m * n * (m + n)), 4),
                ]
            )
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        print("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzy-transport",
        description="Transportation problems with trapezoidal fuzzy costs, supplies and demands.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="validate a problem and report its balance")
    check.add_argument("path")
    check.add_argument("--decimals", type=int)
    check.set_defaults(func=cmd_check)

    solve = sub.add_parser("solve", help="FVAM initial solution refined by FMODIM")
    solve.add_argument("path")
    solve.add_argument("--initial-only", action="store_true", help="stop after FVAM")
    solve.add_argument("--trace", action="store_true", help="print every intermediate tableau")
    solve.add_argument("--json", action="store_true", help="emit the machine-readable report")
    solve.add_argument("--decimals", type=int)
    solve.set_defaults(func=cmd_solve)

    member = sub.add_parser("membership", help="membership function of the total cost")
    member.add_argument("path")
    query = member.add_mutually_exclusive_group(required=True)
    query.add_argument("--at", type=float, help="membership of one cost value")
    query.add_argument("--samples", type=int, help="emit this many (x, mu) rows across the support")
    member.add_argument("--initial-only", action="store_true", help="use the FVAM solution")
    member.add_argument("--decimals", type=int)
    member.set_defaults(func=cmd_membership)

    comp = sub.add_parser("complexity", help="analytic T(m, n) next to measured FVAM operation counts")
    comp.add_argument("--m-range", type=_int_range, default=_int_range("2:6"))
    comp.add_argument("--n-range", type=_int_range, default=_int_range("2:6"))
    comp.add_argument("--trials", type=int, default=5)
    comp.add_argument("--seed", type=int, default=0)
    comp.set_defaults(func=cmd_complexity)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SolverError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
