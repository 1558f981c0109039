"""Structural checks on strategy play: exhaustive scans and transcript audits."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Move, Player, Position, Rules, Strategy, Verdict, apply_move
from .solver import _bounds, _class_moves, _concrete_move, state_of
from .strict_strategies import strategy_s_steps


@dataclass
class ScanReport:
    nodes: int = 0
    safe_box_violations: list = field(default_factory=list)
    run_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.safe_box_violations and not self.run_violations


def _nonempty_safe_boxes(pos: Position) -> int:
    return sum(1 for b in pos.boxes if b.safe)


def _is_safe_move(pos: Position, mv: Move) -> bool:
    return all(pos.boxes[i].touched_by_enforcer for i, _ in mv.claims)


def avoider_moves(pos: Position, allow_losing: bool = False) -> list[Move]:
    """All Avoider moves up to box symmetry, as concrete moves on `pos`."""
    state = state_of(pos)
    lo, hi = _bounds(state, pos.bias, pos.rules, True)
    return [_concrete_move(pos, classes, parts)
            for classes, parts in _class_moves(state, True, lo, hi, allow_losing)]


def scan_strategy_s(pos: Position) -> ScanReport:
    """Walk every Avoider line against strategy S (strict rules).

    Checks that at most one safe box is nonempty after every Enforcer step,
    and that while the largest box has size l at the start of each round
    (a round opens with Enforcer's move) and gcd(p+q, l) <= p, Avoider never
    strings together l safe moves.
    """
    report = ScanReport()
    p, q = pos.bias.p, pos.bias.q
    seen = set()

    def visit(pos: Position, run: int, ell: int):
        key = (state_of(pos), pos.to_move, run, ell)
        if pos.is_over or key in seen:
            return
        seen.add(key)
        report.nodes += 1
        if pos.to_move is Player.ENFORCER:
            top = max(b.remaining for b in pos.boxes)
            if top != ell:
                run, ell = 0, top
            for j in range(1, pos.required_claims() + 1):
                partial = apply_move(pos, strategy_s_steps(pos, j), check=False)
                if _nonempty_safe_boxes(partial) > 1:
                    report.safe_box_violations.append(str(pos))
                    return
            visit(apply_move(pos, strategy_s_steps(pos, pos.required_claims())), run, ell)
            return
        for mv in avoider_moves(pos):
            nrun = run + 1 if _is_safe_move(pos, mv) else 0
            if nrun >= ell and math.gcd(p + q, ell) <= p:
                report.run_violations.append((str(pos), str(mv), nrun))
                continue
            visit(apply_move(pos, mv), nrun, ell)

    start_ell = max(b.remaining for b in pos.boxes)
    visit(pos, 0, start_ell)
    return report


# -- average-size recurrence for the largest-box Enforcer ---------------------

def phi_violations(verdict: Verdict, p: int) -> list[tuple[int, Fraction, Fraction]]:
    """Check phi(i+1) <= phi(i) - p/(n-i) on a recorded monotone match.

    A round is an Enforcer move followed by an Avoider move; phi(i) is the
    mean dangerous-box size before round i and n the initial box count.
    Rounds after which no dangerous box survives (or Avoider lost) are skipped.
    """
    positions = verdict.positions
    starts = [j for j, pos in enumerate(positions[:-1]) if pos.to_move is Player.ENFORCER]
    n = len(positions[0].dangerous_indices())
    out = []
    for i, j in enumerate(starts, 1):
        if j + 2 >= len(positions):
            break
        before, after = positions[j], positions[j + 2]
        if after.avoider_lost or not after.dangerous_indices():
            continue
        phi_i = _mean_dangerous(before)
        phi_next = _mean_dangerous(after)
        if n - i <= 0:
            continue
        bound = phi_i - Fraction(p, n - i)
        if phi_next > bound:
            out.append((i, phi_next, bound))
    return out


def _mean_dangerous(pos: Position) -> Fraction:
    sizes = [pos.boxes[i].remaining for i in pos.dangerous_indices()]
    return Fraction(sum(sizes), len(sizes))


def random_player(rng: random.Random, extra: int = 3, name: str = "random") -> Strategy:
    """A seeded random legal player for either side and either rule set.

    Under monotone rules a move claims a random total between the minimum and
    `extra` more.  Elements are drawn one at a time from random boxes; the
    Avoider never empties a dangerous box while another choice exists.
    """

    def move(pos: Position, mem):
        need = pos.required_claims()
        bonus = rng.randint(0, extra) if pos.rules is Rules.MONOTONE else 0
        total = min(pos.total_remaining, need + bonus)
        careful = pos.to_move is Player.AVOIDER
        rem = [b.remaining for b in pos.boxes]
        claims: dict[int, int] = {}
        for step in range(total):
            ok = [i for i, r in enumerate(rem)
                  if r > 1 or (r and (pos.boxes[i].touched_by_enforcer or not careful))]
            if not ok:
                if step >= need:
                    break
                ok = [i for i, r in enumerate(rem) if r]
            i = rng.choice(ok)
            rem[i] -= 1
            claims[i] = claims.get(i, 0) + 1
        return Move.of(sorted(claims.items())), mem

    return Strategy(name, move)


def random_monotone_avoider(rng: random.Random) -> Strategy:
    """Random legal Avoider used against the largest-box Enforcer."""
    return random_player(rng, 3, "random-avoider")
