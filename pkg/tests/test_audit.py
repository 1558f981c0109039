import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from mbox.audit import avoider_moves, phi_violations, random_player, scan_strategy_s
from mbox.engine import (Bias, Move, Player, Rules, Verdict, apply_move, is_legal, new_game,
                         play_match)
from mbox.strict_strategies import STRATEGY_S


def test_scan_walks_every_avoider_line():
    small = scan_strategy_s(new_game([2, 2], Bias(1, 2), Rules.STRICT, Player.ENFORCER))
    large = scan_strategy_s(new_game([3, 3, 3, 3], Bias(1, 2), Rules.STRICT, Player.ENFORCER))
    assert small.ok and large.ok and large.nodes > small.nodes > 0


def test_avoider_moves_skip_losing_moves_unless_asked():
    pos = new_game([1, 2], Bias(1, 1), Rules.STRICT, Player.AVOIDER)
    assert [str(m) for m in avoider_moves(pos)] == ["1:1"]
    assert len(avoider_moves(pos, allow_losing=True)) == 2


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=5), st.integers(1, 3), st.integers(1, 3),
       st.sampled_from(list(Rules)), st.integers(0, 10**6))
def test_random_player_is_legal(sizes, p, q, rules, seed):
    rng = random.Random(seed)
    pos = new_game(sizes, Bias(p, q), rules, Player.AVOIDER)
    a, e = random_player(rng), random_player(rng)
    verdict = play_match(pos, a, e)
    assert verdict.forfeited_by is None


def test_phi_flags_a_round_that_does_not_shrink_the_mean():
    # Enforcer takes the smallest box instead of the largest: the mean grows
    start = new_game([1, 5, 5], Bias(1, 1), Rules.MONOTONE, Player.ENFORCER)
    mid = apply_move(start, Move.of({0: 1}))
    end = apply_move(mid, Move.of({0: 1}))
    verdict = Verdict(Player.AVOIDER, None, ((Player.ENFORCER, Move.of({0: 1})),
                                             (Player.AVOIDER, Move.of({0: 1}))), positions=(start, mid, end))
    bad = phi_violations(verdict, 1)
    assert bad and bad[0][1] == Fraction(9, 2)


def test_strategy_s_is_always_legal():
    pos = new_game([3, 3, 3], Bias(2, 3), Rules.STRICT, Player.ENFORCER)
    assert is_legal(pos, STRATEGY_S.move(pos, None)[0])
