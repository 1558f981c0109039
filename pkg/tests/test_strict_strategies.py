import itertools

import pytest

from mbox.criteria import gcd_avoider_witness
from mbox.engine import (Bias, BoxState, Forfeit, Move, Player, Position, Rules, apply_move,
                         new_game, play_match, stateless)
from mbox.strict_strategies import (TWO_STAGE_AVOIDER, AvoiderStrictMemory, Stage,
                                    init_strict_avoider, strategy_s_steps, strict_avoider_move,
                                    strict_enforcer_move)


def pos_of(pairs, p=1, q=1, to_move=Player.AVOIDER):
    boxes = tuple(BoxState(r, t == "s", i) for i, (r, t) in enumerate(pairs))
    return Position(boxes, Bias(p, q), Rules.STRICT, to_move)


def pairs(pos):
    return [(b.remaining, "s" if b.safe else "d") for b in pos.boxes]


def test_first_move_on_two_boxes_enters_stage_two():
    pos = new_game([2, 2], Bias(1, 1), Rules.STRICT, Player.AVOIDER)
    mem = init_strict_avoider(pos)
    assert mem == AvoiderStrictMemory(2, Stage.ONE)
    mv, mem = strict_avoider_move(pos, mem)
    assert mem.stage is Stage.TWO
    assert pairs(apply_move(pos, mv)) == [(1, "d"), (2, "d")]


def test_stage_one_shrinks_oversized_boxes():
    pos = pos_of([(2, "d"), (3, "d")])
    mv, mem = strict_avoider_move(pos, AvoiderStrictMemory(2))
    assert mv == Move.of({1: 1}) and mem.stage is Stage.ONE


def test_stage_two_prefers_safe_elements():
    pos = pos_of([(1, "s"), (2, "d")])
    mv, _ = strict_avoider_move(pos, AvoiderStrictMemory(2, Stage.TWO))
    assert mv == Move.of({0: 1})


def test_stage_two_tops_up_from_one_dangerous_box():
    pos = pos_of([(1, "s"), (3, "d"), (3, "d")], p=3)
    mv, _ = strict_avoider_move(pos, AvoiderStrictMemory(3, Stage.TWO))
    assert mv == Move.of({0: 1, 1: 2})


def test_avoider_forfeits_without_a_witness():
    pos = new_game([2, 2], Bias(1, 2), Rules.STRICT, Player.AVOIDER)
    with pytest.raises(Forfeit):
        strict_avoider_move(pos, init_strict_avoider(pos))


def test_strategy_s_examples():
    after = apply_move(pos_of([(2, "d"), (3, "d")], to_move=Player.ENFORCER),
                       strict_enforcer_move(pos_of([(2, "d"), (3, "d")], to_move=Player.ENFORCER)))
    assert pairs(after) == [(2, "d"), (2, "s")]
    pos = pos_of([(1, "s"), (3, "d")], q=2, to_move=Player.ENFORCER)
    assert pairs(apply_move(pos, strict_enforcer_move(pos))) == [(2, "s")]
    pos = pos_of([(2, "s"), (3, "s")], q=2, to_move=Player.ENFORCER)
    assert strict_enforcer_move(pos).total == 2


def test_strategy_s_truncated_steps():
    pos = pos_of([(3, "d"), (3, "d")], q=3, to_move=Player.ENFORCER)
    assert strategy_s_steps(pos, 0).total == 0
    assert strategy_s_steps(pos, 2) == Move.of({0: 2})


def enforcer_moves(pos):
    live = [i for i, b in enumerate(pos.boxes) if b.remaining]
    need = pos.required_claims()
    for counts in itertools.product(*(range(pos.boxes[i].remaining + 1) for i in live)):
        if sum(counts) == need:
            yield Move.of({i: c for i, c in zip(live, counts) if c})


def walk_uniform(n, k, p, q):
    """Every line of play with the two-stage Avoider moving second.

    Yields (position, move) for each Avoider move and asserts that no line
    ends in an Avoider loss.
    """
    start = new_game([k] * n, Bias(p, q), Rules.STRICT, Player.ENFORCER)
    mem0 = init_strict_avoider(start)
    stack, seen = [(start, mem0)], set()
    while stack:
        pos, mem = stack.pop()
        key = (tuple(pairs(pos)), pos.to_move, mem)
        if key in seen:
            continue
        seen.add(key)
        assert not pos.avoider_lost, f"Avoider lost at {pos}"
        if pos.is_over:
            continue
        if pos.to_move is Player.ENFORCER:
            stack.extend((apply_move(pos, mv), mem) for mv in enforcer_moves(pos))
        else:
            mv, nxt = strict_avoider_move(pos, mem)
            yield pos, mv
            stack.append((apply_move(pos, mv), nxt))


UNIFORM = [(n, k, p, q) for p, q in itertools.product((1, 2, 3), repeat=2) for k in range(1, 5)
           for n in range(1, 4) if gcd_avoider_witness(p, q, k) == k]


@pytest.mark.parametrize("n, k, p, q", UNIFORM)
def test_dangerous_claims_only_after_the_safe_elements_run_out(n, k, p, q):
    for pos, mv in walk_uniform(n, k, p, q):
        dangerous = {i: c for i, c in mv.claims if pos.boxes[i].dangerous}
        if not dangerous:
            continue
        s = sum(c for i, c in mv.claims if pos.boxes[i].safe)
        assert s == pos.safe_elements
        assert s + sum(dangerous.values()) == pos.required_claims()
        assert len(dangerous) == 1


def smallest_box_enforcer(pos):
    i = min(range(len(pos.boxes)), key=lambda i: pos.boxes[i].remaining)
    return Move.of({i: 1})


def test_two_stage_avoider_beats_a_scripted_enforcer():
    pos = new_game([2, 2, 2, 2], Bias(1, 1), Rules.STRICT, Player.ENFORCER)
    verdict = play_match(pos, TWO_STAGE_AVOIDER, stateless("smallest", smallest_box_enforcer))
    assert verdict.winner is Player.AVOIDER and verdict.forfeited_by is None
