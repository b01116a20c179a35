import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzy_transport.errors import AlphaOutOfRange, MalformedQuadruple, NegativeOperand
from fuzzy_transport.fuzzy import (
    TFN,
    ZERO,
    AlphaInterval,
    Ordering,
    add,
    alpha_cut,
    defuzzify,
    format_tfn,
    fuzzy_max,
    fuzzy_min,
    is_fuzzy_zero,
    membership,
    mul_nonneg,
    rank_less,
    sub,
)
from helpers import close


def tfns(lo=-1000.0, hi=1000.0):
    value = st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    return st.lists(value, min_size=4, max_size=4).map(lambda v: TFN(*sorted(v)))


alphas = st.floats(0.0, 1.0)


# -- construction ---------------------------------------------------------------


def test_rejects_unordered_and_nonfinite():
    with pytest.raises(MalformedQuadruple):
        TFN(5, 3, 3, 5)
    with pytest.raises(MalformedQuadruple):
        TFN(0, 1, 2, math.inf)
    with pytest.raises(MalformedQuadruple):
        TFN.of([1, 2, 3])


def test_of_accepts_bare_numbers_and_sequences():
    assert TFN.of(7) == TFN(7, 7, 7, 7)
    assert TFN.of([1, 2, 3, 4]) == TFN(1, 2, 3, 4)
    t = TFN(1, 2, 3, 4)
    assert TFN.of(t) is t


# -- membership -------------------------------------------------------------------


@pytest.mark.parametrize(
    "x, expected",
    [(40, 1.0), (15, 0.5), (78, 0.5), (96, 0.0), (10, 0.0), (20, 1.0), (60, 1.0), (-3, 0.0)],
)
def test_membership_trapezoid(x, expected):
    assert membership(x, TFN(10, 20, 60, 96)) == pytest.approx(expected)


def test_membership_step_when_ramp_collapses():
    t = TFN(5, 5, 8, 8)
    assert membership(5, t) == 1.0
    assert membership(8, t) == 1.0
    assert membership(4.999, t) == 0.0


@given(tfns(), st.floats(-2000, 2000), st.floats(-2000, 2000))
def test_membership_monotone_on_each_side(t, x, y):
    lo, hi = sorted((x, y))
    if hi <= t.b:
        assert membership(lo, t) <= membership(hi, t)
    if lo >= t.c:
        assert membership(lo, t) >= membership(hi, t)
    if t.b <= x <= t.c:
        assert membership(x, t) == 1.0


# -- arithmetic -------------------------------------------------------------------


def test_add_examples():
    assert close(add(TFN(-0.05, 0, 0, 0.05), TFN(3.80, 4, 4, 4.20)), (3.75, 4, 4, 4.25))
    assert add(TFN(1, 2, 3, 4), TFN(5, 6, 7, 8)) == TFN(6, 8, 10, 12)
    a = TFN(1.5, 2, 3, 9)
    assert add(a, ZERO) == a


def test_sub_widens():
    assert close(sub(TFN(279.95, 280, 280, 280.05), TFN(249.95, 250, 250, 250.05)), (29.90, 30, 30, 30.10))
    assert close(sub(TFN(14.95, 15, 15, 15.05), TFN(12.95, 13, 13, 13.05)), (1.90, 2, 2, 2.10))
    a = TFN(1.5, 2, 3, 9)
    assert sub(a, ZERO) == a


def test_mul_nonneg_examples():
    assert close(mul_nonneg(TFN(12.95, 13, 13, 13.05), TFN(29.90, 30, 30, 30.10)), (387.205, 390, 390, 392.805))
    assert close(
        mul_nonneg(TFN(10.95, 11, 11, 11.05), TFN(279.95, 280, 280, 280.05)),
        (3065.4525, 3080, 3080, 3094.5525),
    )
    a = TFN(1.5, 2, 3, 9)
    assert mul_nonneg(a, TFN.crisp(1)) == a


def test_mul_nonneg_rejects_negative_support():
    with pytest.raises(NegativeOperand):
        mul_nonneg(TFN(-0.05, 0, 0, 0.05), TFN(1, 1, 1, 1))


def test_operators_delegate():
    x, y = TFN(1, 2, 3, 4), TFN(2, 2, 5, 6)
    assert x + y == add(x, y)
    assert x - y == sub(x, y)
    assert x * y == mul_nonneg(x, y)


@given(tfns(), tfns())
def test_closure_add_sub(x, y):
    # construction re-validates ordering; reaching here means closure held
    add(x, y)
    sub(x, y)


@given(tfns(0, 1000), tfns(0, 1000))
def test_closure_mul(x, y):
    mul_nonneg(x, y)


@given(tfns(), tfns(), tfns())
def test_add_commutative_associative(x, y, z):
    assert add(x, y) == add(y, x)
    assert close(add(add(x, y), z), add(x, add(y, z)), 1e-9)


@given(tfns(), tfns(), alphas)
def test_add_sub_match_interval_arithmetic(x, y, alpha):
    cx, cy = alpha_cut(x, alpha), alpha_cut(y, alpha)
    s = alpha_cut(add(x, y), alpha)
    d = alpha_cut(sub(x, y), alpha)
    assert close((s.lo, s.hi), (cx.lo + cy.lo, cx.hi + cy.hi), 1e-9)
    assert close((d.lo, d.hi), (cx.lo - cy.hi, cx.hi - cy.lo), 1e-9)


@given(tfns(0, 1000), tfns(0, 1000), st.sampled_from([0.0, 1.0]))
def test_mul_matches_interval_product_at_ends(x, y, alpha):
    cx, cy = alpha_cut(x, alpha), alpha_cut(y, alpha)
    pr = alpha_cut(mul_nonneg(x, y), alpha)
    assert close((pr.lo, pr.hi), (cx.lo * cy.lo, cx.hi * cy.hi), 1e-6)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_crisp_embedding(u, v):
    cu, cv = TFN.crisp(u), TFN.crisp(v)
    assert add(cu, cv) == TFN.crisp(u + v)
    assert sub(cu, cv) == TFN.crisp(u - v)
    assert defuzzify(cu) == u
    if u >= 0 and v >= 0:
        assert mul_nonneg(cu, cv) == TFN.crisp(u * v)


@given(tfns(), tfns())
def test_defuzzify_linear(x, y):
    assert math.isclose(defuzzify(add(x, y)), defuzzify(x) + defuzzify(y), abs_tol=1e-9)
    assert math.isclose(defuzzify(sub(x, y)), defuzzify(x) - defuzzify(y), abs_tol=1e-9)


@given(tfns(0, 1000), tfns(0, 1000))
def test_mul_core_endpoints(x, y):
    pr = mul_nonneg(x, y)
    assert (pr.b, pr.c) == (x.b * y.b, x.c * y.c)


# -- alpha cuts -------------------------------------------------------------------


def test_alpha_cut_examples():
    c = alpha_cut(TFN(12.95, 13, 13, 13.05), 0)
    assert (c.lo, c.hi) == (12.95, 13.05)
    c = alpha_cut(TFN(12.95, 13, 13, 13.05), 1)
    assert (c.lo, c.hi) == (13, 13)
    c = alpha_cut(TFN(29.90, 30, 30, 30.10), 0.5)
    assert close((c.lo, c.hi), (29.95, 30.05))


@pytest.mark.parametrize("alpha", [-0.01, 1.01, math.nan])
def test_alpha_out_of_range(alpha):
    with pytest.raises(AlphaOutOfRange):
        alpha_cut(TFN(1, 2, 3, 4), alpha)


@given(tfns(), alphas, alphas)
def test_alpha_cuts_nest(t, a1, a2):
    lo, hi = sorted((a1, a2))
    assert alpha_cut(t, lo).contains(alpha_cut(t, hi))


def test_alpha_interval_rejects_inverted():
    with pytest.raises(ValueError):
        AlphaInterval(2.0, 1.0, 0.5)


# -- ranking ----------------------------------------------------------------------


def test_defuzzify_examples():
    assert defuzzify(TFN(12.95, 13, 13, 13.05)) == pytest.approx(13.0)
    assert defuzzify(TFN(10, 20, 60, 96)) == 46.5
    assert defuzzify(TFN.crisp(3.25)) == 3.25


def test_rank_examples():
    d2 = [TFN(14.95, 15, 15, 15.05), TFN(21.95, 22, 22, 22.05), TFN(24.95, 25, 25, 25.05)]
    least = d2[0]
    for t in d2[1:]:
        least = fuzzy_min(least, t)
    assert least is d2[0]
    a = TFN(1, 2, 3, 4)
    assert rank_less(a, a) is Ordering.EQUAL
    assert rank_less(TFN(-0.2, 0, 0, 0.2), TFN(3.7, 4, 4, 4.3)) is Ordering.LESS
    assert rank_less(TFN(3.7, 4, 4, 4.3), TFN(-0.2, 0, 0, 0.2)) is Ordering.GREATER


def test_min_max_return_an_operand():
    x, y = TFN(1, 2, 2, 3), TFN(0, 2, 2, 4)  # same mean
    assert fuzzy_min(x, y) is x and fuzzy_max(x, y) is x
    z = TFN(5, 5, 5, 5)
    assert fuzzy_min(x, z) is x and fuzzy_max(x, z) is z


@given(tfns(), tfns())
def test_rank_antisymmetric(x, y):
    flipped = {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS, Ordering.EQUAL: Ordering.EQUAL}
    assert rank_less(y, x) is flipped[rank_less(x, y)]


@pytest.mark.parametrize(
    "t, expected",
    [
        (TFN(-0.05, 0, 0, 0.05), True),
        (TFN(-0.35, 0, 0, 0.35), True),
        (TFN(1.9, 2, 2, 2.1), False),
        (TFN(0.1, 0.2, 0.3, 0.4), False),
        (TFN(-5, -1, 1, 5), True),
        (TFN.crisp(0.1 + 0.2 - 0.3), True),
    ],
)
def test_is_fuzzy_zero(t, expected):
    assert is_fuzzy_zero(t, 1e-9) is expected


def test_format_tfn():
    assert format_tfn(TFN(-0.35, 0, 0, 0.35)) == "[-0.3500, 0.0000, 0.0000, 0.3500]"
    assert format_tfn(TFN(-1e-12, -1e-12, 0, 0), 2) == "[0.00, 0.00, 0.00, 0.00]"
    assert str(TFN(1, 2, 3, 4)) == "[1.0000, 2.0000, 3.0000, 4.0000]"


@settings(max_examples=50)
@given(tfns())
def test_frozen(t):
    with pytest.raises(AttributeError):
        t.a = 0.0  # type: ignore[misc]
