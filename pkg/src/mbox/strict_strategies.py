"""Constructive strategies for the strict rules.

Both strategies build their move one step (one element) at a time.  Where the
underlying argument allows an arbitrary choice, the lowest current box index
among the eligible boxes is taken.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .criteria import gcd_avoider_witness
from .engine import Forfeit, Move, Player, Position, Rules, Strategy, stateless


class Stage(enum.Enum):
    ONE = 1
    TWO = 2


@dataclass(frozen=True)
class AvoiderStrictMemory:
    witness_k: int | None
    stage: Stage = Stage.ONE


def init_strict_avoider(pos: Position) -> AvoiderStrictMemory:
    b1 = min((b.remaining for b in pos.boxes if b.remaining > 0), default=0)
    return AvoiderStrictMemory(gcd_avoider_witness(pos.bias.p, pos.bias.q, b1) if b1 else None)


class _Board:
    """Mutable scratch copy of the boxes used while assembling one move."""

    def __init__(self, pos: Position):
        self.rem = [b.remaining for b in pos.boxes]
        self.touched = [b.touched_by_enforcer for b in pos.boxes]
        self.claims: dict[int, int] = {}

    def claim(self, i: int, count: int = 1, enforcer: bool = False):
        self.rem[i] -= count
        self.claims[i] = self.claims.get(i, 0) + count
        if enforcer:
            self.touched[i] = True

    def safe(self) -> list[int]:
        return [i for i, r in enumerate(self.rem) if r > 0 and self.touched[i]]

    def dangerous(self) -> list[int]:
        return [i for i, r in enumerate(self.rem) if r > 0 and not self.touched[i]]

    @property
    def safe_elements(self) -> int:
        return sum(self.rem[i] for i in self.safe())

    def move(self) -> Move:
        return Move.of(sorted(self.claims.items()))


def strict_avoider_move(pos: Position, mem: AvoiderStrictMemory) -> tuple[Move, AvoiderStrictMemory]:
    """Avoider's two-stage strategy for boxes of size >= k with gcd(p+q, k) > p.

    Stage one: each step shrinks a dangerous box larger than k, else takes a
    safe element.  When neither exists mid-move, the rest of the move goes
    into one dangerous box of size exactly k and the second stage begins:
    p safe elements if there are enough, otherwise all safe elements plus the
    shortfall from one dangerous box.
    """
    if pos.rules is not Rules.STRICT or pos.to_move is not Player.AVOIDER:
        raise Forfeit("strict Avoider strategy called out of turn")
    k = mem.witness_k
    if k is None:
        raise Forfeit("no k <= b1 with gcd(p+q, k) > p")
    board = _Board(pos)
    steps = pos.required_claims()
    if mem.stage is Stage.TWO:
        return _second_stage_move(board, steps), mem

    for step in range(steps):
        big = [i for i in board.dangerous() if board.rem[i] > k]
        if big:
            board.claim(big[0])
            continue
        safe = board.safe()
        if safe:
            board.claim(safe[0])
            continue
        r = steps - step
        exact = [i for i in board.dangerous() if board.rem[i] == k]
        if not exact or r >= k:
            raise Forfeit(f"stage two needs a dangerous box of size {k} with room for {r} claims")
        board.claim(exact[0], r)
        mem = replace(mem, stage=Stage.TWO)
        break
    return board.move(), mem


def _second_stage_move(board: _Board, steps: int) -> Move:
    for i in board.safe():
        take = min(board.rem[i], steps - sum(board.claims.values()))
        if take:
            board.claim(i, take)
    short = steps - sum(board.claims.values())
    if short:
        dangerous = board.dangerous()
        if not dangerous:
            raise Forfeit("no dangerous box to complete the move")
        roomy = [i for i in dangerous if board.rem[i] > short]
        board.claim((roomy or dangerous)[0], short)
    return board.move()


def strategy_s_steps(pos: Position, steps: int) -> Move:
    """The first `steps` steps of Enforcer's strategy S: a safe element if one
    exists, else one element of a currently largest box."""
    board = _Board(pos)
    for _ in range(min(steps, pos.total_remaining)):
        safe = board.safe()
        if safe:
            board.claim(safe[0], enforcer=True)
            continue
        largest = max(board.rem)
        board.claim(board.rem.index(largest), enforcer=True)
    return board.move()


def strict_enforcer_move(pos: Position) -> Move:
    return strategy_s_steps(pos, pos.required_claims())


TWO_STAGE_AVOIDER = Strategy("two-stage", strict_avoider_move, init_strict_avoider)
STRATEGY_S = stateless("strategy-s", strict_enforcer_move)
