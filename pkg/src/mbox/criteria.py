"""Closed-form winning criteria and box-count thresholds.

All thresholds are exact integers.  Python integers never wrap, so the
"overflow" concern of fixed-width arithmetic does not arise; callers that
need a ceiling can pass ``cap`` and get an `OverflowError` above it.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .engine import Bias, Player, Rules


class ThresholdRegime(enum.Enum):
    STRICT_ENFORCER = "strict-enforcer"
    MONOTONE_AVOIDER = "monotone-avoider"
    MONOTONE_ENFORCER = "monotone-enforcer"


def _positive(**kw):
    for name, v in kw.items():
        if v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v}")


def _capped(value: int, cap: int | None) -> int:
    if cap is not None and value > cap:
        raise OverflowError(f"threshold {value} exceeds cap {cap}")
    return value


def gcd_avoider_witness(p: int, q: int, b1: int) -> int | None:
    """Largest k <= b1 with gcd(p+q, k) > p, or None."""
    for k in range(b1, 0, -1):
        if math.gcd(p + q, k) > p:
            return k
    return None


def enforcer_gcd_condition(p: int, q: int, k: int) -> bool:
    return all(math.gcd(p + q, l) <= p for l in range(1, k + 1))


def potential_sum(sizes: Iterable[int], p: int) -> Fraction:
    ratio = Fraction(p, p + 1)
    return sum((ratio ** s for s in sizes), Fraction(0))


def potential_criterion(sizes: Iterable[int], p: int, avoider_last: bool) -> bool:
    """Potential-function sufficient condition for an Avoider win (any q)."""
    total = potential_sum(sizes, p)
    bound = Fraction(p, p + 1) ** p if avoider_last else Fraction(1)
    return total < bound


def last_player(total: int, bias: Bias, first: Player) -> Player:
    """Who makes the final move of a strict game with `total` elements,
    assuming it runs to completion."""
    player = first
    while True:
        total -= bias.of(player)
        if total <= 0:
            return player
        player = player.other


def avoider_moves_last(total: int, bias: Bias, rules: Rules, first: Player) -> bool:
    """Conservative last-player flag for the potential criterion.

    Monotone games have no predetermined last mover, so the stronger
    Avoider-last condition is the only one that is always valid.
    """
    if rules is Rules.MONOTONE:
        return True
    return last_player(total, bias, first) is Player.AVOIDER


def n_strict(p: int, q: int, k: int, cap: int | None = None) -> int:
    _positive(p=p, q=q, k=k)
    if k <= p:
        value = (q + 1) * (-(-q // p) + 3) ** (k - 1)
    else:
        value = (2 * (p + q + 1)) ** k
    return _capped(value, cap)


def _mono_avoider_exact(p: int, q: int, k: int, general: bool) -> Fraction:
    if k == p + 1 and not general:
        return Fraction(q)
    return (q - p) * (Fraction(q, k * p) + 1) ** (k - p - 1)


def n_mono_avoider(p: int, q: int, k: int, general: bool = False) -> int:
    """Largest box count for which the monotone Avoider strategy is guaranteed.

    ``general=True`` gives the simpler closed form valid for every k >= p+1,
    which is one smaller than the piecewise value at k = p+1.  Non-integer
    values are floored.
    """
    _positive(p=p, q=q, k=k)
    if k <= p:
        raise ValueError(f"needs k > p (k <= p is the trivial case), got p={p}, k={k}")
    if q < k * p:
        raise ValueError(f"needs q >= k*p, got q={q}, k*p={k * p}")
    return math.floor(_mono_avoider_exact(p, q, k, general))


def n_mono_enforcer(p: int, q: int, k: int, cap: int | None = None) -> int:
    _positive(p=p, q=q, k=k)
    return _capped(_n_mono_enforcer(p, q, k), cap)


@lru_cache(maxsize=None)
def _n_mono_enforcer(p: int, q: int, k: int) -> int:
    if k <= p:
        return q + 1
    if k == p + 1:
        return q + 1 + -(-q // k)
    return -(-_n_mono_enforcer(p, q, k - 1) // p) * (p + -(-q // k))


def threshold(regime: ThresholdRegime, p: int, q: int, k: int) -> int:
    if regime is ThresholdRegime.STRICT_ENFORCER:
        return n_strict(p, q, k)
    if regime is ThresholdRegime.MONOTONE_AVOIDER:
        return n_mono_avoider(p, q, k)
    return n_mono_enforcer(p, q, k)


# -- certified exponentials ----------------------------------------------------

def exp_bounds(x: Fraction, tol: Fraction = Fraction(1, 10**9)) -> tuple[Fraction, Fraction]:
    """Rational lo <= e**x <= hi with hi - lo <= tol, for 0 <= x."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("only non-negative exponents are supported")
    # e**x = (e**(x/2**s))**2**s keeps the series argument below 1.
    s = 0
    while x / 2**s > Fraction(1, 2):
        s += 1
    y = x / 2**s
    terms = 1
    while True:
        term, lo = Fraction(1), Fraction(1)
        for i in range(1, terms + 1):
            term = term * y / i
            lo += term
        # remainder of the series is below term * y / (terms + 1) / (1 - y)
        rem = term * y / (terms + 1) / (1 - y)
        lo_x, hi_x = lo ** (2**s), (lo + rem) ** (2**s)
        if hi_x - lo_x <= tol:
            return lo_x, hi_x
        terms += 1


class EstimateCheck(NamedTuple):
    recursion_value: int
    bound_value: float
    holds: bool


def estimate_bounds(p: int, q: int, k: int) -> EstimateCheck:
    """Compare the monotone Enforcer threshold with its closed-form estimate.

    p == 1 uses (1+q)**k; otherwise q == 1 and the bound is 1 + e**(k/p),
    decided with certified rational bounds on the exponential.
    """
    _positive(p=p, q=q, k=k)
    n = n_mono_enforcer(p, q, k)
    if p == 1:
        bound = (1 + q) ** k
        return EstimateCheck(n, float(bound), n <= bound)
    if q != 1:
        raise ValueError(f"estimates exist only for p == 1 or q == 1, got ({p}, {q})")
    return EstimateCheck(n, 1 + math.exp(k / p), _below_one_plus_exp(n, Fraction(k, p)))


def _below_one_plus_exp(n: int, x: Fraction) -> bool:
    tol = Fraction(1, 10**9)
    while True:
        lo, hi = exp_bounds(x, tol)
        if n <= 1 + lo:
            return True
        if n > 1 + hi:
            return False
        tol /= 1000


def n_largest_box(p: int, k: int) -> int:
    """Smallest n > 1 + e**((k-1)/p): enough boxes for the largest-box
    Enforcer when q = 1 and the average box size is at most k."""
    _positive(p=p, k=k)
    x = Fraction(k - 1, p)
    n = 2
    while not (n > 1 + exp_bounds(x)[1]):
        n += 1
    return n


def isolation_hypothesis(n: int, d: int, q: int) -> bool:
    """Degree/bias condition under which Avoider can isolate a vertex in the
    monotone (1, q) game on a graph with n vertices and maximum degree d."""
    if not d < Fraction(n, 2) - 1:
        return False
    if d == 0:
        return True
    return q * math.log(n / (2 * d + 2)) >= d


def isolation_estimate_chain(n: int, d: int, q: int) -> bool:
    """N(q,1,d) <= 1 + e**((d-1)/q) <= 2 e**(d/q) <= n/(d+1)."""
    a = 1 + math.exp((d - 1) / q)
    b = 2 * math.exp(d / q)
    return n_mono_enforcer(q, 1, d) <= a <= b <= n / (d + 1)
