"""Fuzzy transportation problems on trapezoidal numbers.

Vogel-style initial solutions, MODI optimisation and alpha-cut cost
membership, with a small command line front end.
"""

from .cost import CostMembershipFunction, QuadraticPair, cost_membership, total_cost_alpha
from .document import load_problem, parse_document
from .errors import FuzzyTransportError, SolverError, ValidationError
from .fuzzy import TFN, TrapezoidalFuzzyNumber, add, alpha_cut, defuzzify, mul_nonneg, sub
from .modi import ModiReport, OptimalityVerdict, VerdictKind, solve_optimal
from .problem import FuzzyTransportationProblem, ToleranceConfig, check_balance
from .vam import BasicFeasibleSolution, solve_initial, total_cost

__all__ = [
    "BasicFeasibleSolution",
    "CostMembershipFunction",
    "FuzzyTransportError",
    "FuzzyTransportationProblem",
    "ModiReport",
    "OptimalityVerdict",
    "QuadraticPair",
    "SolverError",
    "TFN",
    "ToleranceConfig",
    "TrapezoidalFuzzyNumber",
    "ValidationError",
    "VerdictKind",
    "add",
    "alpha_cut",
    "check_balance",
    "cost_membership",
    "defuzzify",
    "load_problem",
    "mul_nonneg",
    "parse_document",
    "solve_initial",
    "solve_optimal",
    "sub",
    "total_cost",
    "total_cost_alpha",
]
