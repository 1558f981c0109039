"""Referee for strict and monotone (p, q) Avoider-Enforcer games on disjoint boxes.

Positions are immutable values.  Boxes are kept sorted ascending by the number
of unclaimed elements (stable on ties), and boxes that Enforcer has emptied are
dropped at the end of every move.  A box emptied entirely by Avoider stays on
the board as the loss witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, Mapping


class Player(enum.Enum):
    AVOIDER = "avoider"
    ENFORCER = "enforcer"

    @property
    def other(self) -> "Player":
        return Player.ENFORCER if self is Player.AVOIDER else Player.AVOIDER

    @property
    def letter(self) -> str:
        return self.value[0].upper()

    @classmethod
    def parse(cls, text: str) -> "Player":
        text = text.strip().lower()
        for player in cls:
            if text in (player.value, player.value[0]):
                return player
        raise ValueError(f"unknown player {text!r}")

    def __str__(self) -> str:
        return self.value.capitalize()


class Rules(enum.Enum):
    STRICT = "strict"
    MONOTONE = "monotone"

    @classmethod
    def parse(cls, text: str) -> "Rules":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown rule set {text!r}") from None


class IllegalMove(ValueError):
    """A move that violates the rules of the current position."""


class Forfeit(Exception):
    """Raised by a strategy that cannot follow its own prescription."""


@dataclass(frozen=True)
class Bias:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"bias must be positive, got ({self.p}, {self.q})")

    def of(self, player: Player) -> int:
        return self.p if player is Player.AVOIDER else self.q


@dataclass(frozen=True)
class BoxState:
    remaining: int
    touched_by_enforcer: bool = False
    label: int = 0

    @property
    def dangerous(self) -> bool:
        return self.remaining > 0 and not self.touched_by_enforcer

    @property
    def safe(self) -> bool:
        return self.remaining > 0 and self.touched_by_enforcer


@dataclass(frozen=True)
class Move:
    claims: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, claims: Mapping[int, int] | Iterable[tuple[int, int]]) -> "Move":
        items = claims.items() if isinstance(claims, Mapping) else claims
        return cls(tuple((int(i), int(c)) for i, c in items if c))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.claims)

    def as_dict(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, c in self.claims:
            out[i] = out.get(i, 0) + c
        return out

    def __str__(self) -> str:
        return " ".join(f"{i}:{c}" for i, c in self.claims) or "-"


@dataclass(frozen=True)
class Position:
    boxes: tuple[BoxState, ...]
    bias: Bias
    rules: Rules
    to_move: Player
    avoider_lost: bool = False
    losing_box: int | None = None

    @property
    def total_remaining(self) -> int:
        return sum(b.remaining for b in self.boxes)

    @property
    def sizes(self) -> list[int]:
        return [b.remaining for b in self.boxes]

    @property
    def safe_elements(self) -> int:
        return sum(b.remaining for b in self.boxes if b.touched_by_enforcer)

    def dangerous_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.boxes) if b.dangerous]

    def safe_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.boxes) if b.safe]

    @property
    def is_over(self) -> bool:
        return self.avoider_lost or self.total_remaining == 0

    @property
    def winner(self) -> Player | None:
        if self.avoider_lost:
            return Player.ENFORCER
        if self.total_remaining == 0:
            return Player.AVOIDER
        return None

    def required_claims(self) -> int:
        """Minimum number of elements the player to move must claim."""
        return min(self.bias.of(self.to_move), self.total_remaining)

    def __str__(self) -> str:
        boxes = ",".join(f"{b.remaining}{'s' if b.touched_by_enforcer else 'd'}" for b in self.boxes)
        return f"[{boxes}] {self.rules.value} p={self.bias.p} q={self.bias.q} {self.to_move.value} to move"


def _sorted_boxes(boxes: Iterable[BoxState]) -> tuple[BoxState, ...]:
    return tuple(sorted(boxes, key=lambda b: b.remaining))


def new_game(sizes: Iterable[int], bias: Bias, rules: Rules, first: Player) -> Position:
    sizes = list(sizes)
    if not sizes:
        raise ValueError("a game needs at least one box")
    if any(s < 1 for s in sizes):
        raise ValueError(f"box sizes must be positive, got {sizes}")
    boxes = [BoxState(s, False, i) for i, s in enumerate(sizes)]
    return Position(_sorted_boxes(boxes), bias, rules, first)


def validate_move(pos: Position, mv: Move) -> None:
    """Raise `IllegalMove` unless `mv` is legal for the player to move."""
    if pos.is_over:
        raise IllegalMove("the game is already over")
    seen = set()
    for i, c in mv.claims:
        if not 0 <= i < len(pos.boxes):
            raise IllegalMove(f"no box with index {i}")
        if i in seen:
            raise IllegalMove(f"box {i} listed twice")
        seen.add(i)
        if c < 1:
            raise IllegalMove(f"claim count must be positive, got {c} for box {i}")
        if pos.boxes[i].remaining == 0:
            raise IllegalMove(f"box {i} has no unclaimed elements")
        if c > pos.boxes[i].remaining:
            raise IllegalMove(f"box {i} has {pos.boxes[i].remaining} elements, claimed {c}")
    need = pos.required_claims()
    total = mv.total
    if pos.rules is Rules.STRICT and total != need:
        raise IllegalMove(f"strict rules require exactly {need} elements, got {total}")
    if pos.rules is Rules.MONOTONE and total < need:
        raise IllegalMove(f"monotone rules require at least {need} elements, got {total}")


def is_legal(pos: Position, mv: Move) -> bool:
    try:
        validate_move(pos, mv)
    except IllegalMove:
        return False
    return True


def apply_move(pos: Position, mv: Move, check: bool = True) -> Position:
    """Return the position after `mv`.

    With ``check=False`` the total is not validated, which lets callers model
    truncated moves (e.g. Enforcer claiming only t < q elements once).
    Per-box bounds are always enforced.
    """
    if check:
        validate_move(pos, mv)
    claims = mv.as_dict()
    enforcer = pos.to_move is Player.ENFORCER
    boxes = []
    lost, losing = pos.avoider_lost, pos.losing_box
    for i, b in enumerate(pos.boxes):
        c = claims.pop(i, 0)
        if c > b.remaining:
            raise IllegalMove(f"box {i} has {b.remaining} elements, claimed {c}")
        if c == 0:
            boxes.append(b)
            continue
        nb = BoxState(b.remaining - c, b.touched_by_enforcer or enforcer, b.label)
        if nb.remaining == 0 and not nb.touched_by_enforcer and not lost:
            lost, losing = True, nb.label
        if nb.remaining > 0 or not nb.touched_by_enforcer:
            boxes.append(nb)
    if claims:
        raise IllegalMove(f"no boxes with indices {sorted(claims)}")
    return replace(pos, boxes=_sorted_boxes(boxes), to_move=pos.to_move.other,
                   avoider_lost=lost, losing_box=losing)


# -- match orchestration -----------------------------------------------------

MoveFn = Callable[[Position, Any], "tuple[Move, Any]"]


@dataclass(frozen=True)
class Strategy:
    """A deterministic strategy: ``move(pos, memory) -> (Move, memory)``.

    ``init`` builds the memory from the position at which the strategy takes
    over.  Memory must be hashable so the solver can fold it into search keys.
    """

    name: str
    move: MoveFn
    init: Callable[[Position], Any] = field(default=lambda pos: None)


def stateless(name: str, fn: Callable[[Position], Move]) -> Strategy:
    return Strategy(name, lambda pos, mem: (fn(pos), mem))


@dataclass(frozen=True)
class Verdict:
    winner: Player
    losing_box: int | None
    transcript: tuple[tuple[Player, Move], ...]
    forfeited_by: Player | None = None
    positions: tuple[Position, ...] = ()


def play_match(pos: Position, avoider: Strategy, enforcer: Strategy,
               keep_positions: bool = False) -> Verdict:
    """Play both strategies against each other until the game is decided.

    A strategy that raises `Forfeit` or returns an illegal move loses.
    ``keep_positions`` records the position before every move plus the final
    one in `Verdict.positions`.
    """
    strategies = {Player.AVOIDER: avoider, Player.ENFORCER: enforcer}
    memory = {pl: s.init(pos) for pl, s in strategies.items()}
    transcript = []
    seen = [pos] if keep_positions else None
    while not pos.is_over:
        player = pos.to_move
        try:
            mv, memory[player] = strategies[player].move(pos, memory[player])
            nxt = apply_move(pos, mv)
        except (Forfeit, IllegalMove):
            return Verdict(player.other, None, tuple(transcript), player,
                           tuple(seen) if seen else ())
        transcript.append((player, mv))
        pos = nxt
        if seen is not None:
            seen.append(pos)
    return Verdict(pos.winner, pos.losing_box, tuple(transcript), None,
                   tuple(seen) if seen else ())


# -- text format -------------------------------------------------------------

_GAME_KEYS = ("rules", "p", "q", "first", "boxes")


def parse_game(text: str) -> Position:
    """Parse the line-oriented ``key=value`` game description."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        if key not in _GAME_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value.strip()
    missing = [k for k in _GAME_KEYS if k not in values]
    if missing:
        raise ValueError(f"missing keys: {', '.join(missing)}")
    try:
        sizes = [int(s) for s in values["boxes"].split(",") if s.strip()]
        bias = Bias(int(values["p"]), int(values["q"]))
    except ValueError as exc:
        raise ValueError(f"malformed game description: {exc}") from None
    return new_game(sizes, bias, Rules.parse(values["rules"]), Player.parse(values["first"]))


def format_game(pos: Position) -> str:
    sizes = ",".join(str(b.remaining) for b in pos.boxes)
    return (f"rules={pos.rules.value}\np={pos.bias.p}\nq={pos.bias.q}\n"
            f"first={pos.to_move.value}\nboxes={sizes}\n")
