import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mbox.criteria import (ThresholdRegime, enforcer_gcd_condition, estimate_bounds,
                           exp_bounds, gcd_avoider_witness, isolation_estimate_chain,
                           isolation_hypothesis, last_player, n_largest_box, n_mono_avoider,
                           n_mono_enforcer, n_strict, potential_criterion, threshold)
from mbox.engine import Bias, Player


@pytest.mark.parametrize("p, q, b1, want", [(1, 1, 2, 2), (1, 2, 2, None), (2, 2, 4, 4)])
def test_gcd_witness(p, q, b1, want):
    assert gcd_avoider_witness(p, q, b1) == want


@pytest.mark.parametrize("p, q, k, want", [(1, 2, 2, True), (1, 1, 2, False), (2, 2, 2, True)])
def test_enforcer_condition(p, q, k, want):
    assert enforcer_gcd_condition(p, q, k) is want


@settings(max_examples=300)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 12))
def test_witness_and_condition_are_complementary(p, q, k):
    assert (gcd_avoider_witness(p, q, k) is None) == enforcer_gcd_condition(p, q, k)


@pytest.mark.parametrize("count, avoider_last, want", [(15, False, True), (16, False, False), (7, True, True),
                                                       (8, True, False)])
def test_potential_criterion_examples(count, avoider_last, want):
    assert potential_criterion([4] * count, 1, avoider_last) is want


@settings(max_examples=200)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=8), st.integers(1, 3), st.booleans(), st.data())
def test_potential_criterion_survives_box_removal(sizes, p, last, data):
    if potential_criterion(sizes, p, last):
        drop = data.draw(st.integers(0, len(sizes) - 1))
        assert potential_criterion(sizes[:drop] + sizes[drop + 1:], p, last)


def test_last_player():
    # 4 elements, (1,1), Avoider first: A E A E
    assert last_player(4, Bias(1, 1), Player.AVOIDER) is Player.ENFORCER
    assert last_player(5, Bias(2, 2), Player.ENFORCER) is Player.ENFORCER
    assert last_player(3, Bias(1, 2), Player.AVOIDER) is Player.ENFORCER
    assert last_player(4, Bias(1, 2), Player.AVOIDER) is Player.AVOIDER


@pytest.mark.parametrize("args, want", [((1, 1, 1), 2), ((1, 2, 2), 64), ((2, 3, 1), 4), ((2, 1, 2), 2 * 4)])
def test_n_strict(args, want):
    assert n_strict(*args) == want


def test_n_strict_cap():
    with pytest.raises(OverflowError):
        n_strict(1, 2, 30, cap=10**6)
    assert n_strict(1, 2, 30) == 8 ** 30


@pytest.mark.parametrize("args, want", [((1, 2, 2), 2), ((1, 3, 3), 4), ((1, 4, 3), 7), ((1, 5, 3), 10)])
def test_n_mono_avoider(args, want):
    assert n_mono_avoider(*args) == want


def test_n_mono_avoider_statement_bound_differs_at_p_plus_one():
    assert n_mono_avoider(1, 2, 2) == 2
    assert n_mono_avoider(1, 2, 2, general=True) == 1


@pytest.mark.parametrize("args", [(2, 5, 2), (1, 2, 3)])
def test_n_mono_avoider_rejects(args):
    with pytest.raises(ValueError):
        n_mono_avoider(*args)


@pytest.mark.parametrize("args, want", [((1, 2, 1), 3), ((1, 2, 2), 4), ((1, 2, 3), 8), ((2, 1, 4), 6)])
def test_n_mono_enforcer(args, want):
    assert n_mono_enforcer(*args) == want


def test_threshold_dispatch():
    assert threshold(ThresholdRegime.STRICT_ENFORCER, 1, 2, 2) == 64
    assert threshold(ThresholdRegime.MONOTONE_AVOIDER, 1, 3, 3) == 4
    assert threshold(ThresholdRegime.MONOTONE_ENFORCER, 1, 2, 3) == 8


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(1), Fraction(5, 2), Fraction(8)])
def test_exp_bounds_bracket_math_exp(x):
    lo, hi = exp_bounds(x)
    assert lo <= hi and hi - lo <= Fraction(1, 10**9) * max(1, hi)
    assert float(lo) <= math.exp(x) * (1 + 1e-12) and math.exp(x) <= float(hi) * (1 + 1e-12)


def test_estimate_examples():
    assert tuple(estimate_bounds(1, 2, 3)) == (8, 27, True)
    assert tuple(estimate_bounds(1, 1, 1)) == (2, 2, True)
    chk = estimate_bounds(2, 1, 4)
    assert chk.recursion_value == 6 and chk.holds
    assert chk.bound_value == pytest.approx(1 + math.e ** 2)
    with pytest.raises(ValueError):
        estimate_bounds(2, 2, 2)


@pytest.mark.parametrize("q, k", [(q, k) for q in range(1, 6) for k in range(1, 9)])
def test_estimate_p_one(q, k):
    assert estimate_bounds(1, q, k).holds


def test_largest_box_bound_is_the_smallest_integer_above_the_estimate():
    for p in range(1, 6):
        for k in range(1, 9):
            n = n_largest_box(p, k)
            assert n > 1 + math.exp((k - 1) / p) >= n - 1


def test_isolation_gate():
    assert isolation_hypothesis(20, 2, 2)
    assert isolation_estimate_chain(20, 2, 2)
    assert not isolation_hypothesis(8, 3, 1)
