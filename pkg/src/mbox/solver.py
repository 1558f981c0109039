"""Exact memoized search for box games.

Internally a position is a sorted tuple of box codes ``2 * remaining + touched``
(empty boxes dropped), which is its canonical form under box relabeling.  Moves
are enumerated per equivalence class of boxes, so symmetric branches collapse.

The memo tables are plain dicts keyed by canonical states.  Entries are exact
and never change once written, so concurrent writers racing on the same key
are harmless.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby
from pathlib import Path
from typing import Any, Iterator

from .engine import (Bias, BoxState, Forfeit, IllegalMove, Move, Player, Position,
                     Rules, Strategy, apply_move, new_game)

DEFAULT_NODE_BUDGET = 10**8
CACHE_HEADER = "mboxcache v1"

State = tuple  # sorted tuple of box codes


class NodeBudgetExceeded(RuntimeError):
    pass


class Unsolved(RuntimeError):
    """A threshold scan hit an undecided position; ``scanned`` holds the
    ``(n, winner)`` pairs decided before that."""

    def __init__(self, message: str, scanned: list[tuple[int, Player]]):
        super().__init__(message)
        self.scanned = scanned


def node_budget_from_env() -> int:
    raw = os.environ.get("MBOX_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


@dataclass(frozen=True, order=True)
class CanonicalKey:
    rules: str
    p: int
    q: int
    to_move: str
    boxes: tuple[tuple[int, bool], ...]

    def serialize(self) -> str:
        boxes = ",".join(f"{r}{'s' if t else 'd'}" for r, t in self.boxes)
        return f"{self.rules};{self.p};{self.q};{self.to_move};{boxes}"

    @classmethod
    def parse(cls, text: str) -> "CanonicalKey":
        rules, p, q, to_move, boxes = text.split(";")
        pairs = tuple((int(b[:-1]), b[-1] == "s") for b in boxes.split(",") if b)
        Rules.parse(rules)
        if to_move not in ("A", "E"):
            raise ValueError(f"bad player letter {to_move!r}")
        return cls(rules, int(p), int(q), to_move, pairs)


@dataclass(frozen=True)
class SolveResult:
    winner: Player | None
    optimal_move: Move | None
    node_count: int

    @property
    def solved(self) -> bool:
        return self.winner is not None


def state_of(pos: Position) -> State:
    return tuple(sorted(2 * b.remaining + b.touched_by_enforcer
                        for b in pos.boxes if b.remaining > 0))


def canonicalize(pos: Position) -> CanonicalKey:
    boxes = tuple((c >> 1, bool(c & 1)) for c in state_of(pos))
    return CanonicalKey(pos.rules.value, pos.bias.p, pos.bias.q, pos.to_move.letter, boxes)


def position_of(state: State, bias: Bias, rules: Rules, to_move: Player) -> Position:
    boxes = tuple(BoxState(c >> 1, bool(c & 1), i) for i, c in enumerate(state))
    return Position(boxes, bias, rules, to_move)


@lru_cache(maxsize=None)
def _partitions(total: int, parts: int, cap: int) -> tuple[tuple[int, ...], ...]:
    """Non-increasing tuples of at most `parts` values in 1..cap summing to `total`,
    most concentrated first."""
    if total == 0:
        return ((),)
    if parts == 0:
        return ()
    out = []
    for first in range(min(total, cap), 0, -1):
        if first * parts < total:
            break
        out.extend((first,) + rest for rest in _partitions(total - first, parts - 1, first))
    return tuple(out)


def _classes(state: State) -> list[tuple[int, int]]:
    """(code, count) groups ordered safe-first, then by size descending."""
    groups = [(c, len(list(g))) for c, g in groupby(state)]
    groups.sort(key=lambda g: (-(g[0] & 1), -g[0]))
    return groups


def _class_moves(state: State, avoider: bool, lo: int, hi: int,
                 allow_losing: bool = False) -> Iterator[tuple[list, tuple]]:
    """Yield ``(classes, per-class partitions)`` for every move claiming between
    lo and hi elements.  Avoider moves that empty a dangerous box are skipped
    unless `allow_losing`."""
    classes = _classes(state)
    caps = []
    for code, count in classes:
        r, t = code >> 1, code & 1
        caps.append(r - 1 if avoider and not t and not allow_losing else r)
    suffix = [0] * (len(classes) + 1)
    for i in range(len(classes) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i] * classes[i][1]
    ascending = avoider and hi > lo

    def rec(i, need, room, acc):
        if i == len(classes):
            yield acc
            return
        count, cap = classes[i][1], caps[i]
        top = min(room, cap * count)
        bottom = max(0, need - suffix[i + 1])
        xs = range(bottom, top + 1) if ascending else range(top, bottom - 1, -1)
        for x in xs:
            for part in _partitions(x, count, cap):
                yield from rec(i + 1, need - x, room - x, acc + (part,))

    if suffix[0] < lo:
        return
    for parts in rec(0, lo, hi, ()):
        yield classes, parts


def _child(classes, parts, avoider: bool) -> State:
    codes = []
    for (code, count), part in zip(classes, parts):
        r, t = code >> 1, code & 1
        for a in part:
            nr = r - a
            nt = t if avoider else 1
            if nr > 0:
                codes.append(2 * nr + nt)
            elif not nt:
                codes.append(nt)  # Avoider emptied a dangerous box
        codes.extend([code] * (count - len(part)))
    codes.sort()
    return tuple(codes)


def _bounds(state: State, bias: Bias, rules: Rules, avoider: bool) -> tuple[int, int]:
    total = sum(c >> 1 for c in state)
    need = min(bias.p if avoider else bias.q, total)
    return need, (need if rules is Rules.STRICT else total)


def _concrete_move(pos: Position, classes, parts) -> Move:
    by_code: dict[int, list[int]] = {}
    for i, b in enumerate(pos.boxes):
        if b.remaining > 0:
            by_code.setdefault(2 * b.remaining + b.touched_by_enforcer, []).append(i)
    claims = []
    for (code, _), part in zip(classes, parts):
        claims.extend(zip(by_code[code], part))
    return Move.of(sorted(claims))


class Solver:
    """Memoized exact solver; one instance can serve many biases and rule sets."""

    def __init__(self, node_budget: int | None = None):
        self.node_budget = node_budget_from_env() if node_budget is None else node_budget
        self._tables: dict[tuple, dict] = {}
        self._br_tables: dict[tuple, dict] = {}
        self.nodes = 0
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)

    # -- plain solve ------------------------------------------------------

    def _table(self, bias: Bias, rules: Rules) -> dict:
        return self._tables.setdefault((rules, bias.p, bias.q), {})

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise NodeBudgetExceeded(f"node budget {self.node_budget} exhausted")

    def _avoider_wins(self, state: State, avoider: bool, bias: Bias, rules: Rules,
                      memo: dict) -> bool:
        key = (state, avoider)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not state or not any(not c & 1 for c in state):
            return True  # empty board, or only safe boxes: Avoider cannot lose
        if state[0] == 0:
            return False
        self._tick()
        lo, hi = _bounds(state, bias, rules, avoider)
        seen = set()
        result = not avoider
        for classes, parts in _class_moves(state, avoider, lo, hi):
            child = _child(classes, parts, avoider)
            if child in seen:
                continue
            seen.add(child)
            if self._avoider_wins(child, not avoider, bias, rules, memo) is avoider:
                result = avoider
                break
        memo[key] = result
        return result

    def winner(self, pos: Position) -> Player:
        """Winner under optimal play; raises `NodeBudgetExceeded`."""
        if pos.avoider_lost:
            return Player.ENFORCER
        memo = self._table(pos.bias, pos.rules)
        win = self._avoider_wins(state_of(pos), pos.to_move is Player.AVOIDER,
                                 pos.bias, pos.rules, memo)
        return Player.AVOIDER if win else Player.ENFORCER

    def solve(self, pos: Position) -> SolveResult:
        start = self.nodes
        try:
            winner = self.winner(pos)
            move = None if pos.is_over else self._best_move(pos, winner)
        except NodeBudgetExceeded:
            return SolveResult(None, None, self.nodes - start)
        return SolveResult(winner, move, self.nodes - start)

    def _best_move(self, pos: Position, winner: Player) -> Move:
        avoider = pos.to_move is Player.AVOIDER
        state = state_of(pos)
        memo = self._table(pos.bias, pos.rules)
        lo, hi = _bounds(state, pos.bias, pos.rules, avoider)
        fallback = None
        for classes, parts in _class_moves(state, avoider, lo, hi, allow_losing=True):
            child = _child(classes, parts, avoider)
            move = _concrete_move(pos, classes, parts)
            fallback = fallback or move
            if child and child[0] == 0:
                continue
            child_win = self._avoider_wins(child, not avoider, pos.bias, pos.rules, memo)
            if child_win is (winner is Player.AVOIDER):
                return move
        return fallback

    # -- best response against a fixed strategy ---------------------------

    def best_response(self, pos: Position, side: Player, strategy: Strategy) -> SolveResult:
        """Outcome when `side` follows `strategy` and the other side plays
        optimally against it.  A forfeit or illegal move loses for `side`."""
        start = self.nodes
        if pos.is_over:
            return SolveResult(pos.winner, None, 0)
        memo = self._br_tables.setdefault(
            (pos.rules, pos.bias.p, pos.bias.q, side, strategy.name), {})
        mem = strategy.init(pos)
        try:
            win = self._br(state_of(pos), pos.to_move is Player.AVOIDER, mem,
                           pos.bias, pos.rules, side, strategy, memo)
            winner = Player.AVOIDER if win else Player.ENFORCER
            move = self._br_move(pos, side, strategy, mem, memo)
        except NodeBudgetExceeded:
            return SolveResult(None, None, self.nodes - start)
        return SolveResult(winner, move, self.nodes - start)

    def _fixed_step(self, state, avoider, mem, bias, rules, strategy):
        """Returns (child_state, new_mem) or None if the fixed side forfeits."""
        pos = position_of(state, bias, rules, Player.AVOIDER if avoider else Player.ENFORCER)
        try:
            mv, mem2 = strategy.move(pos, mem)
            nxt = apply_move(pos, mv)
        except (Forfeit, IllegalMove):
            return None
        if nxt.avoider_lost:
            return (0,), mem2
        return state_of(nxt), mem2

    def _br(self, state, avoider, mem, bias, rules, side, strategy, memo) -> bool:
        key = (state, avoider, mem)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not state:
            return True
        if state[0] == 0:
            return False
        fixed_avoider = side is Player.AVOIDER
        if not fixed_avoider and not any(not c & 1 for c in state):
            return True
        self._tick()
        if avoider is fixed_avoider:
            step = self._fixed_step(state, avoider, mem, bias, rules, strategy)
            if step is None:
                result = not fixed_avoider
            else:
                result = self._br(step[0], not avoider, step[1], bias, rules, side, strategy, memo)
        else:
            lo, hi = _bounds(state, bias, rules, avoider)
            result = not avoider
            seen = set()
            for classes, parts in _class_moves(state, avoider, lo, hi):
                child = _child(classes, parts, avoider)
                if child in seen:
                    continue
                seen.add(child)
                if self._br(child, not avoider, mem, bias, rules, side, strategy, memo) is avoider:
                    result = avoider
                    break
        memo[key] = result
        return result

    def _br_move(self, pos, side, strategy, mem, memo) -> Move | None:
        if pos.to_move is side:
            try:
                return strategy.move(pos, mem)[0]
            except Forfeit:
                return None
        avoider = pos.to_move is Player.AVOIDER
        state = state_of(pos)
        lo, hi = _bounds(state, pos.bias, pos.rules, avoider)
        fallback = None
        for classes, parts in _class_moves(state, avoider, lo, hi, allow_losing=True):
            child = _child(classes, parts, avoider)
            move = _concrete_move(pos, classes, parts)
            fallback = fallback or move
            if child and child[0] == 0:
                continue
            if self._br(child, not avoider, mem, pos.bias, pos.rules, side, strategy, memo) is avoider:
                return move
        return fallback

    # -- threshold scans -----------------------------------------------------

    def minimal_enforcer_n(self, p: int, q: int, k: int, rules: Rules, first: Player,
                           limit: int = 20) -> int | None:
        """Smallest n for which mBox(n x k) is an Enforcer win, or None up to `limit`."""
        scanned = []
        for n in range(1, limit + 1):
            res = self.solve(new_game([k] * n, Bias(p, q), rules, first))
            if not res.solved:
                raise Unsolved(f"n={n} exceeded the node budget", scanned)
            scanned.append((n, res.winner))
            if res.winner is Player.ENFORCER:
                return n
        return None

    # -- persistence ---------------------------------------------------------

    def entries(self) -> Iterator[tuple[CanonicalKey, Player]]:
        for (rules, p, q), memo in sorted(self._tables.items(), key=lambda kv: (kv[0][0].value,) + kv[0][1:]):
            for (state, avoider), win in sorted(memo.items()):
                if state and state[0] == 0:
                    continue
                boxes = tuple((c >> 1, bool(c & 1)) for c in state)
                key = CanonicalKey(rules.value, p, q, "A" if avoider else "E", boxes)
                yield key, Player.AVOIDER if win else Player.ENFORCER

    def save(self, path: str | Path) -> int:
        lines = [CACHE_HEADER]
        lines.extend(f"{key.serialize()} {winner.letter}" for key, winner in self.entries())
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        return len(lines) - 1

    def load(self, path: str | Path) -> int:
        text = Path(path).read_text(encoding="utf-8").splitlines()
        if not text or text[0].strip() != CACHE_HEADER:
            found = text[0].strip() if text else "<empty>"
            raise ValueError(f"cache version mismatch: expected {CACHE_HEADER!r}, got {found!r}")
        count = 0
        for lineno, line in enumerate(text[1:], 2):
            if not line.strip():
                continue
            try:
                raw_key, letter = line.rsplit(" ", 1)
                key = CanonicalKey.parse(raw_key)
                win = {"A": True, "E": False}[letter]
            except (ValueError, KeyError):
                raise ValueError(f"line {lineno}: malformed cache record {line!r}") from None
            state = tuple(sorted(2 * r + t for r, t in key.boxes))
            memo = self._tables.setdefault((Rules(key.rules), key.p, key.q), {})
            memo[(state, key.to_move == "A")] = win
            count += 1
        return count


_default: Solver | None = None


def default_solver() -> Solver:
    global _default
    if _default is None:
        _default = Solver()
    return _default


def solve(pos: Position, solver: Solver | None = None) -> SolveResult:
    return (solver or default_solver()).solve(pos)


def best_response(pos: Position, fixed: tuple[Player, Strategy],
                  solver: Solver | None = None) -> SolveResult:
    side, strategy = fixed
    return (solver or default_solver()).best_response(pos, side, strategy)


def minimal_enforcer_n(p: int, q: int, k: int, rules: Rules, first: Player,
                       limit: int = 20, solver: Solver | None = None) -> int | None:
    return (solver or default_solver()).minimal_enforcer_n(p, q, k, rules, first, limit)
