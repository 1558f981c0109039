"""Strategies for the monotone rules, where a move claims at least p (or q)
elements.  Oversized moves are always legal, so the reductions the Avoider
strategy needs (sweeping safe elements, trimming boxes) are simply prepended
to the core claims of the same move.
"""

from __future__ import annotations

from dataclasses import dataclass

from .criteria import n_mono_enforcer
from .engine import Forfeit, Move, Player, Position, Rules, Strategy, stateless
from .strict_strategies import _Board


@dataclass(frozen=True)
class AvoiderMonoMemory:
    target_k: int
    first_move_done: bool = False
    last_sizes: tuple[int, ...] | None = None


def init_mono_avoider(pos: Position) -> AvoiderMonoMemory:
    return AvoiderMonoMemory(min(b.remaining for b in pos.boxes if b.remaining > 0))


def mono_avoider_move(pos: Position, mem: AvoiderMonoMemory) -> tuple[Move, AvoiderMonoMemory]:
    """Avoider's strategy for k > p, q >= kp and few enough boxes of size >= k.

    Prefix steps: (a) claim every safe element; (b) on the first move, trim
    every box down to k; (c) afterwards, trim the surviving boxes so their
    sizes equal what they would be had Enforcer removed only the largest
    boxes.  Then the core: with at most q dangerous boxes left, leave one
    element in each; otherwise take one element from p boxes of maximal
    size, or from all r < p maximal boxes followed by the p largest boxes.
    """
    if pos.rules is not Rules.MONOTONE or pos.to_move is not Player.AVOIDER:
        raise Forfeit("monotone Avoider strategy called out of turn")
    p, q, k = pos.bias.p, pos.bias.q, mem.target_k
    board = _Board(pos)

    for i in board.safe():
        board.claim(i, board.rem[i])

    if not mem.first_move_done:
        for i in board.dangerous():
            if board.rem[i] > k:
                board.claim(i, board.rem[i] - k)
    elif mem.last_sizes is not None:
        _equalize(board, mem.last_sizes)

    dangerous = board.dangerous()
    if len(dangerous) <= q:
        for i in dangerous:
            if board.rem[i] > 1:
                board.claim(i, board.rem[i] - 1)
    else:
        top = max(board.rem[i] for i in dangerous)
        maximal = [i for i in dangerous if board.rem[i] == top]
        if len(maximal) >= p:
            for i in maximal[:p]:
                board.claim(i)
        else:
            for i in maximal:
                board.claim(i)
            ranked = sorted(dangerous, key=lambda i: (-board.rem[i], i))[:p]
            for i in ranked:
                if board.rem[i] <= 1:
                    raise Forfeit("core step would empty a dangerous box")
                board.claim(i)

    mv = board.move()
    if mv.total < pos.required_claims():
        raise Forfeit(f"strategy claims {mv.total} < {pos.required_claims()} elements")
    sizes = tuple(sorted(board.rem[i] for i in board.dangerous()))
    return mv, AvoiderMonoMemory(k, True, sizes)


def _equalize(board: _Board, last_sizes: tuple[int, ...]):
    current = sorted(board.dangerous(), key=lambda i: (board.rem[i], i))
    removed = len(last_sizes) - len(current)
    if removed < 0:
        raise Forfeit("more dangerous boxes than after the previous move")
    target = sorted(last_sizes)[:len(current)]
    for i, want in zip(current, target):
        extra = board.rem[i] - want
        if extra < 0:
            raise Forfeit("dangerous box grew since the previous move")
        if extra:
            board.claim(i, extra)


def mono_enforcer_move(pos: Position) -> Move:
    """Enforcer's three-clause monotone strategy.

    (i) if the smallest dangerous box has at most p elements and at least q
    elements lie elsewhere, claim everything else; (ii) for the least l with
    at least N(l) dangerous boxes whose N(l) smallest average at most l,
    claim every other dangerous box, then go on to (iii); (iii) fully claim
    the fewest largest boxes holding at least q elements.
    """
    if pos.rules is not Rules.MONOTONE or pos.to_move is not Player.ENFORCER:
        raise Forfeit("monotone Enforcer strategy called out of turn")
    p, q = pos.bias.p, pos.bias.q
    board = _Board(pos)
    for i in board.safe():
        board.claim(i, board.rem[i], enforcer=True)
    swept = sum(board.claims.values())

    dangerous = sorted(board.dangerous(), key=lambda i: (board.rem[i], i))
    if dangerous and board.rem[dangerous[0]] <= p:
        outside = sum(board.rem[i] for i in dangerous[1:])
        if outside + swept >= q:
            for i in dangerous[1:]:
                board.claim(i, board.rem[i], enforcer=True)
            return board.move()

    if dangerous:
        count = len(dangerous)
        for l in range(1, max(board.rem[i] for i in dangerous) + 1):
            need = n_mono_enforcer(p, q, l)
            if need > count:
                break
            if sum(board.rem[i] for i in dangerous[:need]) <= l * need:
                for i in dangerous[need:]:
                    board.claim(i, board.rem[i], enforcer=True)
                dangerous = dangerous[:need]
                break

    got = 0
    for i in sorted(dangerous, key=lambda i: (-board.rem[i], i)):
        if got >= q:
            break
        got += board.rem[i]
        board.claim(i, board.rem[i], enforcer=True)
    return board.move()


def largest_box_enforcer_move(pos: Position) -> Move:
    """Fully claim one largest dangerous box (q = 1 only)."""
    if pos.bias.q != 1:
        raise Forfeit("the largest-box strategy is defined for q = 1")
    dangerous = pos.dangerous_indices()
    if not dangerous:
        i = pos.safe_indices()[0]
        return Move.of([(i, 1)])
    top = max(pos.boxes[i].remaining for i in dangerous)
    i = next(i for i in dangerous if pos.boxes[i].remaining == top)
    return Move.of([(i, pos.boxes[i].remaining)])


MONO_AVOIDER = Strategy("mono-avoider", mono_avoider_move, init_mono_avoider)
MONO_ENFORCER = stateless("mono-enforcer", mono_enforcer_move)
LARGEST_BOX = stateless("largest-box", largest_box_enforcer_move)
