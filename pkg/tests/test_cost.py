import random

import numpy as np
import pytest
from scipy.optimize import brentq

from fuzzy_transport.cost import (
    CostMembershipFunction,
    QuadraticPair,
    alpha_product,
    cell_products,
    cost_membership,
    sample_curve,
    total_cost_alpha,
)
from fuzzy_transport.errors import NegativeOperand, NoRootInUnitInterval
from fuzzy_transport.fuzzy import TFN, alpha_cut, mul_nonneg
from fuzzy_transport.problem import FuzzyTransportationProblem, random_problem
from fuzzy_transport.vam import solve_initial, total_cost
from helpers import close

ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)


def polymul_oracle(c, x):
    """Lower and upper products of the alpha-cut lines, expanded by numpy."""
    lower = np.polymul([c.b - c.a, c.a], [x.b - x.a, x.a])
    upper = np.polymul([c.c - c.d, c.d], [x.c - x.d, x.d])
    pad = lambda v: (0.0,) * (3 - len(v)) + tuple(v)  # noqa: E731
    return pad(lower), pad(upper)


@pytest.mark.parametrize(
    "c, x, lower, upper",
    [
        (TFN(12.95, 13, 13, 13.05), TFN(29.90, 30, 30, 30.10), (0.005, 2.79, 387.205), (0.005, -2.81, 392.805)),
        (TFN(14.95, 15, 15, 15.05), TFN(249.95, 250, 250, 250.05), (0.0025, 13.245, 3736.7525), (0.0025, -13.255, 3763.2525)),
        (TFN(10.95, 11, 11, 11.05), TFN(279.95, 280, 280, 280.05), (0.0025, 14.545, 3065.4525), (0.0025, -14.555, 3094.5525)),
        (TFN(18.95, 19, 19, 19.05), TFN(219.90, 220, 220, 220.10), (0.005, 12.89, 4167.105), (0.005, -12.91, 4192.905)),
        (TFN(10.95, 11, 11, 11.05), TFN(179.95, 180, 180, 180.05), (0.0025, 9.545, 1970.4525), (0.0025, -9.555, 1989.5525)),
        # D1 supply of O2 carries both stacked spreads
        (TFN(19.95, 20, 20, 20.05), TFN(49.90, 50, 50, 50.10), (0.005, 4.49, 995.505), (0.005, -4.51, 1004.505)),
        (TFN.crisp(3), TFN.crisp(7), (0, 0, 21), (0, 0, 21)),
    ],
)
def test_alpha_product(c, x, lower, upper):
    pair = alpha_product(c, x)
    assert close(pair.lower, lower) and close(pair.upper, upper)
    lo_ref, up_ref = polymul_oracle(c, x)
    assert close(pair.lower, lo_ref) and close(pair.upper, up_ref)


def test_alpha_product_rejects_negative_support():
    with pytest.raises(NegativeOperand):
        alpha_product(TFN(1, 1, 1, 1), TFN(-0.05, 0, 0, 0.05))


def test_alpha_product_matches_cuts_everywhere():
    rng = random.Random(4)
    for _ in range(500):
        c = TFN(*sorted(rng.uniform(0, 50) for _ in range(4)))
        x = TFN(*sorted(rng.uniform(0, 500) for _ in range(4)))
        pair = alpha_product(c, x)
        for alpha in ALPHAS:
            cc, cx = alpha_cut(c, alpha), alpha_cut(x, alpha)
            cut = pair.at(alpha)
            assert cut.lo == pytest.approx(cc.lo * cx.lo, rel=1e-12)
            assert cut.hi == pytest.approx(cc.hi * cx.hi, rel=1e-12)


def test_example_cost_quadratic(example):
    bfs, _ = solve_initial(example)
    quad = total_cost_alpha(bfs, example)
    assert close(quad.lower, (0.0225, 57.505, 14322.4725), 1e-9)
    assert close(quad.upper, (0.0225, -57.595, 14437.5725), 1e-9)
    assert quad.lower_at(1) == pytest.approx(14380, abs=1e-9)
    assert quad.upper_at(1) == pytest.approx(14380, abs=1e-9)


def test_endpoints_tie_back_to_total_cost(example):
    rng = random.Random(6)
    cases = [example] + [random_problem(rng.randint(1, 6), rng.randint(1, 6), rng, spread=0.05) for _ in range(100)]
    for p in cases:
        bfs, _ = solve_initial(p)
        quad, total = total_cost_alpha(bfs, p), total_cost(bfs, p)
        assert close((quad.lower_at(0), quad.lower_at(1), quad.upper_at(1), quad.upper_at(0)), total, 1e-6)
        for cell, pair in cell_products(bfs, p).items():
            prod = mul_nonneg(p.cost(cell), bfs.allocation(cell))
            assert close((pair.lower_at(0), pair.lower_at(1), pair.upper_at(1), pair.upper_at(0)), prod, 1e-9)
        for alpha in ALPHAS:
            assert quad.lower_at(alpha) <= quad.upper_at(alpha) + 1e-9


def test_crisp_single_cell():
    p = FuzzyTransportationProblem.from_data([[3]], [7], [7])
    bfs, _ = solve_initial(p)
    quad = total_cost_alpha(bfs, p)
    assert quad.lower == (0, 0, 21) and quad.upper == (0, 0, 21)


PUBLISHED = QuadraticPair((0.02, 56.51, 14323.47), (0.02, -53.78, 14436.57))


def test_membership_on_published_quadratic():
    f = CostMembershipFunction.from_quadratic(PUBLISHED)
    assert cost_membership(14380, f) == 1.0
    assert cost_membership(14323.47, f) == pytest.approx(0.0, abs=1e-9)
    ref = brentq(lambda a: 0.02 * a * a - 53.78 * a + 36.57, 0, 1)
    assert cost_membership(14400, f) == pytest.approx(ref, abs=1e-9)
    assert abs(ref - 0.6801) < 1e-4
    assert cost_membership(14000, f) == 0.0 and cost_membership(15000, f) == 0.0


def test_membership_round_trip(example):
    rng = random.Random(8)
    cases = [example] + [random_problem(rng.randint(1, 6), rng.randint(1, 6), rng, spread=0.05) for _ in range(100)]
    for p in cases:
        bfs, _ = solve_initial(p)
        f = CostMembershipFunction.from_quadratic(total_cost_alpha(bfs, p))
        for alpha in ALPHAS:
            for x in (f.quad.lower_at(alpha), f.quad.upper_at(alpha)):
                assert cost_membership(x, f) == pytest.approx(alpha, abs=1e-6)


def test_membership_monotone(example):
    bfs, _ = solve_initial(example)
    f = CostMembershipFunction.from_quadratic(total_cost_alpha(bfs, example))
    left = [cost_membership(x, f) for x in np.linspace(f.support[0], f.core[0], 200)]
    right = [cost_membership(x, f) for x in np.linspace(f.core[1], f.support[1], 200)]
    assert all(a <= b + 1e-12 for a, b in zip(left, left[1:]))
    assert all(a >= b - 1e-12 for a, b in zip(right, right[1:]))


def test_linear_branches():
    f = CostMembershipFunction.from_quadratic(QuadraticPair((0, 10, 100), (0, -20, 130)))
    assert cost_membership(105, f) == pytest.approx(0.5)
    assert cost_membership(120, f) == pytest.approx(0.5)
    crisp = CostMembershipFunction.from_quadratic(QuadraticPair((0, 0, 21), (0, 0, 21)))
    assert cost_membership(21, crisp) == 1.0
    assert cost_membership(20.9, crisp) == 0.0


def test_corrupted_coefficients_have_no_root():
    # lower branch never reaches the middle of its own support inside [0, 1]
    broken = CostMembershipFunction(QuadraticPair((0, 0, 10), (0, -1, 20)), (0.0, 20.0), (10.0, 19.0))
    with pytest.raises(NoRootInUnitInterval):
        cost_membership(5.0, broken)


def test_sample_curve(example):
    bfs, _ = solve_initial(example)
    f = CostMembershipFunction.from_quadratic(total_cost_alpha(bfs, example))
    points = sample_curve(f, 11)
    assert len(points) == 11
    assert points[0][0] == f.support[0] and points[-1][0] == f.support[1]
    assert all(0.0 <= mu <= 1.0 for _, mu in points)
    mus = [mu for _, mu in points]
    peak = mus.index(max(mus))
    assert all(a <= b for a, b in zip(mus[:peak], mus[1 : peak + 1]))
    assert all(a >= b for a, b in zip(mus[peak:], mus[peak + 1 :]))
    with pytest.raises(ValueError):
        sample_curve(f, 1)
