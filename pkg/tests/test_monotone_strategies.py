import random

import pytest
from hypothesis import given, settings, strategies as st

from mbox.audit import phi_violations, random_monotone_avoider
from mbox.engine import (Bias, BoxState, Forfeit, Move, Player, Position, Rules, apply_move,
                         new_game, play_match)
from mbox.monotone_strategies import (LARGEST_BOX, MONO_ENFORCER, AvoiderMonoMemory, init_mono_avoider,
                                      largest_box_enforcer_move, mono_avoider_move,
                                      mono_enforcer_move)
from mbox.solver import Solver


def pos_of(pairs, p=1, q=1, to_move=Player.AVOIDER):
    boxes = tuple(BoxState(r, t == "s", i) for i, (r, t) in enumerate(pairs))
    return Position(boxes, Bias(p, q), Rules.MONOTONE, to_move)


def sizes_after(pos, mv):
    return apply_move(pos, mv).sizes


def test_avoider_clause_one_leaves_one_element_per_box():
    pos = pos_of([(2, "d"), (3, "d")], p=1, q=2)
    mv, _ = mono_avoider_move(pos, AvoiderMonoMemory(2, first_move_done=True))
    assert mv.total == 3 and sizes_after(pos, mv) == [1, 1]


def test_avoider_clause_two_takes_from_p_maximal_boxes():
    pos = pos_of([(3, "d")] * 4, p=2, q=2)
    mv, _ = mono_avoider_move(pos, AvoiderMonoMemory(3, first_move_done=True))
    assert mv == Move.of({0: 1, 1: 1}) and sizes_after(pos, mv) == [2, 2, 3, 3]


def test_avoider_clause_three_spreads_over_further_boxes():
    pos = pos_of([(2, "d"), (2, "d"), (3, "d")], p=2, q=2)
    mv, _ = mono_avoider_move(pos, AvoiderMonoMemory(3, first_move_done=True))
    assert mv == Move.of({0: 1, 1: 1, 2: 1})


def test_avoider_prefix_sweeps_safe_elements_and_trims():
    pos = pos_of([(2, "s"), (4, "d"), (5, "d"), (6, "d")], p=1, q=3)
    mem = init_mono_avoider(new_game([4, 5, 6], Bias(1, 3), Rules.MONOTONE, Player.AVOIDER))
    assert mem.target_k == 4
    mv, mem = mono_avoider_move(pos, mem)
    claims = mv.as_dict()
    assert claims[0] == 2                       # every safe element
    assert sizes_after(pos, mv) == [1, 1, 1]    # trimmed to 4, then clause (i)
    assert mem.first_move_done


def test_avoider_equalizes_after_enforcer_takes_a_small_box():
    # sizes after the last move were (3, 3, 4); Enforcer removed a 3, so the
    # 4 is trimmed to 3 as if Enforcer had taken it instead; clause (ii)
    # then takes one element from a maximal box
    pos = pos_of([(3, "d"), (4, "d")], p=1, q=1)
    mem = AvoiderMonoMemory(4, True, (3, 3, 4))
    mv, mem = mono_avoider_move(pos, mem)
    assert mv == Move.of({0: 1, 1: 1}) and sizes_after(pos, mv) == [2, 3]
    assert mem.last_sizes == (2, 3)


def test_avoider_out_of_turn_forfeits():
    with pytest.raises(Forfeit):
        mono_avoider_move(pos_of([(3, "d")], to_move=Player.ENFORCER), AvoiderMonoMemory(3))


def test_enforcer_examples():
    pos = pos_of([(2, "d")] * 4, p=1, q=2, to_move=Player.ENFORCER)
    assert sizes_after(pos, mono_enforcer_move(pos)) == [2, 2, 2]
    pos = pos_of([(1, "d"), (5, "d"), (5, "d")], p=2, q=3, to_move=Player.ENFORCER)
    assert mono_enforcer_move(pos) == Move.of({1: 5, 2: 5})
    pos = pos_of([(2, "d"), (2, "d"), (3, "d")], p=1, q=4, to_move=Player.ENFORCER)
    assert mono_enforcer_move(pos) == Move.of({0: 2, 2: 3})


def test_enforcer_clause_one_falls_through_when_too_small():
    pos = pos_of([(1, "d"), (1, "d")], p=1, q=3, to_move=Player.ENFORCER)
    mv = mono_enforcer_move(pos)
    assert mv.total == 2


@st.composite
def monotone_positions(draw):
    pairs = draw(st.lists(st.tuples(st.integers(1, 6), st.sampled_from("ds")), min_size=1, max_size=6))
    return pos_of(pairs, draw(st.integers(1, 3)), draw(st.integers(1, 4)), Player.ENFORCER)


@settings(max_examples=300, deadline=None)
@given(monotone_positions())
def test_enforcer_moves_are_legal_and_full_sized(pos):
    mv = mono_enforcer_move(pos)
    after = apply_move(pos, mv)
    assert mv.total >= min(pos.bias.q, pos.total_remaining)
    assert not after.avoider_lost


@pytest.mark.parametrize("pairs, want", [
    ([(2, "d"), (4, "d")], Move.of({1: 4})),
    ([(5, "d")], Move.of({0: 5})),
    ([(3, "d"), (3, "d")], Move.of({0: 3})),
])
def test_largest_box_examples(pairs, want):
    assert largest_box_enforcer_move(pos_of(pairs, p=2, q=1, to_move=Player.ENFORCER)) == want


def test_largest_box_needs_q_one():
    with pytest.raises(Forfeit):
        largest_box_enforcer_move(pos_of([(2, "d")], q=2, to_move=Player.ENFORCER))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=12), st.integers(1, 3), st.integers(0, 2**32))
def test_phi_recurrence_on_random_matches(sizes, p, seed):
    pos = new_game(sizes, Bias(p, 1), Rules.MONOTONE, Player.ENFORCER)
    verdict = play_match(pos, random_monotone_avoider(random.Random(seed)), LARGEST_BOX, keep_positions=True)
    assert phi_violations(verdict, p) == []


def test_mono_enforcer_agrees_with_search_on_four_pairs():
    solver = Solver()
    pos = new_game([2, 2, 2, 2], Bias(1, 2), Rules.MONOTONE, Player.AVOIDER)
    assert solver.solve(pos).winner is Player.ENFORCER
    assert solver.best_response(pos, Player.ENFORCER, MONO_ENFORCER).winner is Player.ENFORCER
