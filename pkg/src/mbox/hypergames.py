"""Games on general hypergraphs that reduce to box games.

* Enforcer on a hypergraph with a matching: exhaust the elements outside the
  matching, then play the box strategy on the matching edges.
* H-game boards: one target per copy of H in G, found by exact backtracking.
* Vertex isolation: Avoider plays the box-game Enforcer, with bias (q, 1), on
  the stars of an independent set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .engine import (Bias, BoxState, Forfeit, IllegalMove, Move, Player, Position,
                     Rules, _sorted_boxes)
from .monotone_strategies import mono_enforcer_move
from .strict_strategies import strategy_s_steps


# -- boards ------------------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    ground_size: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.ground_size < 1:
            raise ValueError("ground set must be non-empty")
        edges = tuple(frozenset(e) for e in self.edges)
        for e in edges:
            if not e:
                raise ValueError("hyperedges must be non-empty")
            if min(e) < 0 or max(e) >= self.ground_size:
                raise ValueError(f"edge {sorted(e)} has ids outside 0..{self.ground_size - 1}")
        object.__setattr__(self, "edges", edges)


@dataclass(frozen=True)
class GraphSpec:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(norm))

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def star(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]


def complete_graph(n: int) -> GraphSpec:
    return GraphSpec(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> GraphSpec:
    return GraphSpec(n, tuple((i, (i + 1) % n) for i in range(n)))


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "m" or len(lines[0]) != 2:
        raise ValueError("hypergraph file must start with 'm <ground_size>'")
    return Hypergraph(int(lines[0][1]), tuple(frozenset(int(x) for x in ln) for ln in lines[1:]))


def format_hypergraph(h: Hypergraph) -> str:
    body = "".join(" ".join(map(str, sorted(e))) + "\n" for e in h.edges)
    return f"m {h.ground_size}\n{body}"


def parse_graph(text: str) -> GraphSpec:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "n" or len(lines[0]) != 2:
        raise ValueError("graph file must start with 'n <vertices>'")
    edges = []
    for ln in lines[1:]:
        if len(ln) != 2:
            raise ValueError(f"expected 'u v', got {' '.join(ln)!r}")
        edges.append((int(ln[0]), int(ln[1])))
    return GraphSpec(int(lines[0][1]), tuple(edges))


def format_graph(g: GraphSpec) -> str:
    return f"n {g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


# -- matchings ---------------------------------------------------------------

def is_matching(h: Hypergraph, idx: Sequence[int]) -> bool:
    seen: set[int] = set()
    for i in idx:
        if seen & h.edges[i]:
            return False
        seen |= h.edges[i]
    return True


def find_matching(h: Hypergraph, max_size: int, want: int,
                  exhaustive_limit: int = 40) -> tuple[int, ...] | None:
    """At least `want` pairwise disjoint edges of size <= max_size, as edge
    indices.  Greedy smallest-edge-first, then exhaustive backtracking when
    greedy falls short and at most `exhaustive_limit` edges qualify."""
    cands = sorted((i for i, e in enumerate(h.edges) if len(e) <= max_size),
                   key=lambda i: (len(h.edges[i]), sorted(h.edges[i])))
    used: set[int] = set()
    greedy = []
    for i in cands:
        if not used & h.edges[i]:
            greedy.append(i)
            used |= h.edges[i]
    if len(greedy) >= want:
        return tuple(sorted(greedy))
    if len(cands) > exhaustive_limit:
        return None

    def extend(start: int, chosen: list[int], used: frozenset):
        if len(chosen) >= want:
            return list(chosen)
        if len(chosen) + len(cands) - start < want:
            return None
        for j in range(start, len(cands)):
            e = h.edges[cands[j]]
            if not used & e:
                chosen.append(cands[j])
                found = extend(j + 1, chosen, used | e)
                if found:
                    return found
                chosen.pop()
        return None

    found = extend(0, [], frozenset())
    return tuple(sorted(found)) if found else None


# -- claiming games on an arbitrary ground set -------------------------------

@dataclass(frozen=True)
class ClaimPosition:
    """Claimed elements of a (p, q) game on ground set 0..ground_size-1."""

    ground_size: int
    bias: Bias
    rules: Rules
    to_move: Player
    avoider: frozenset[int] = frozenset()
    enforcer: frozenset[int] = frozenset()

    @property
    def unclaimed(self) -> list[int]:
        taken = self.avoider | self.enforcer
        return [x for x in range(self.ground_size) if x not in taken]

    def required_claims(self) -> int:
        return min(self.bias.of(self.to_move), self.ground_size - len(self.avoider) - len(self.enforcer))

    def apply(self, claim: Iterable[int]) -> "ClaimPosition":
        claim = frozenset(claim)
        taken = self.avoider | self.enforcer
        if claim & taken or any(not 0 <= x < self.ground_size for x in claim):
            raise IllegalMove(f"elements {sorted(claim)} are not all unclaimed")
        need = self.required_claims()
        if self.rules is Rules.STRICT and len(claim) != need:
            raise IllegalMove(f"strict rules require exactly {need} elements, got {len(claim)}")
        if len(claim) < need:
            raise IllegalMove(f"monotone rules require at least {need} elements, got {len(claim)}")
        if self.to_move is Player.AVOIDER:
            return replace(self, avoider=self.avoider | claim, to_move=Player.ENFORCER)
        return replace(self, enforcer=self.enforcer | claim, to_move=Player.AVOIDER)


def hyper_game(h: Hypergraph, bias: Bias, rules: Rules, first: Player) -> ClaimPosition:
    return ClaimPosition(h.ground_size, bias, rules, first)


def hyper_avoider_lost(h: Hypergraph, pos: ClaimPosition) -> bool:
    return any(e <= pos.avoider for e in h.edges)


def matching_box_view(pos: ClaimPosition, h: Hypergraph, matching: Sequence[int],
                      to_move: Player = Player.ENFORCER) -> Position:
    """The box game formed by the matching edges (label = edge index)."""
    boxes = []
    for i in matching:
        e = h.edges[i]
        left = len(e - pos.avoider - pos.enforcer)
        if left:
            boxes.append(BoxState(left, bool(e & pos.enforcer), i))
    return Position(_sorted_boxes(boxes), pos.bias, pos.rules, to_move)


def _elements_for(box_move: Move, view: Position, h: Hypergraph, pos: ClaimPosition) -> list[int]:
    taken = pos.avoider | pos.enforcer
    out = []
    for i, count in box_move.claims:
        edge = h.edges[view.boxes[i].label]
        out.extend(sorted(edge - taken)[:count])
    return out


def matching_enforcer_move(pos: ClaimPosition, h: Hypergraph, matching: Sequence[int]) -> frozenset[int]:
    """Enforcer: elements outside the matching first, then the box strategy.

    Strict: q off-matching elements per move; leftover steps once they run out
    go to strategy S on the matching boxes.  Monotone: all off-matching
    elements in one move, topped up by fully claiming the largest matching
    boxes until the move reaches q, then the monotone box strategy.
    """
    if pos.to_move is not Player.ENFORCER:
        raise Forfeit("matching strategy called out of turn")
    if not matching or not is_matching(h, matching):
        raise Forfeit("matching strategy needs a non-empty matching")
    inside = frozenset().union(*(h.edges[i] for i in matching))
    taken = pos.avoider | pos.enforcer
    off = [x for x in range(pos.ground_size) if x not in taken and x not in inside]
    need = pos.required_claims()
    view = matching_box_view(pos, h, matching)

    if pos.rules is Rules.STRICT:
        if len(off) >= need:
            return frozenset(off[:need])
        claim = off + _elements_for(strategy_s_steps(view, need - len(off)), view, h, pos)
    elif off:
        claim = list(off)
        for i in sorted(view.dangerous_indices(), key=lambda i: (-view.boxes[i].remaining, i)):
            if len(claim) >= need:
                break
            claim += _elements_for(Move.of([(i, view.boxes[i].remaining)]), view, h, pos)
    elif view.boxes:
        claim = _elements_for(mono_enforcer_move(view), view, h, pos)
    else:
        claim = []
    if len(claim) < need:
        rest = [x for x in pos.unclaimed if x not in claim]
        claim += rest[:need - len(claim)]
    return frozenset(claim)


def play_hyper_match(h: Hypergraph, pos: ClaimPosition,
                     avoider: Callable[[ClaimPosition], Iterable[int]],
                     enforcer: Callable[[ClaimPosition], Iterable[int]]) -> Player:
    """Winner of a hypergraph game between two move functions; an illegal
    move or `Forfeit` loses."""
    players = {Player.AVOIDER: avoider, Player.ENFORCER: enforcer}
    while pos.unclaimed:
        mover = pos.to_move
        try:
            pos = pos.apply(players[mover](pos))
        except (Forfeit, IllegalMove):
            return mover.other
        if hyper_avoider_lost(h, pos):
            return Player.ENFORCER
    return Player.AVOIDER


def _subsets(items: list[int], lo: int, hi: int):
    for size in range(lo, hi + 1):
        yield from itertools.combinations(items, size)


def hyper_enforcer_wins_all(h: Hypergraph, pos: ClaimPosition,
                            enforcer: Callable[[ClaimPosition], Iterable[int]]) -> bool:
    """True iff the fixed Enforcer beats every Avoider move sequence."""
    memo: dict = {}

    def wins(pos: ClaimPosition) -> bool:
        if hyper_avoider_lost(h, pos):
            return True
        free = pos.unclaimed
        if not free:
            return False
        key = (pos.avoider, pos.enforcer, pos.to_move)
        if key in memo:
            return memo[key]
        if pos.to_move is Player.ENFORCER:
            try:
                result = wins(pos.apply(enforcer(pos)))
            except (Forfeit, IllegalMove):
                result = False
        else:
            need = pos.required_claims()
            hi = need if pos.rules is Rules.STRICT else len(free)
            result = all(wins(pos.apply(c)) for c in _subsets(free, need, hi))
        memo[key] = result
        return result

    return wins(pos)


# -- H-games -----------------------------------------------------------------

def h_game_board(g: GraphSpec, h: GraphSpec) -> Hypergraph:
    """Targets are the edge sets (as ids into g.edges) of all copies of h in g."""
    edge_id = {e: i for i, e in enumerate(g.edges)}
    hadj = h.adjacency
    # place high-degree, well-connected vertices first to prune early
    order: list[int] = []
    rest = set(range(h.n))
    while rest:
        v = max(rest, key=lambda v: (sum(u in order for u in hadj[v]), len(hadj[v]), -v))
        order.append(v)
        rest.remove(v)
    gadj = g.adjacency
    copies: set[frozenset[int]] = set()
    image = [-1] * h.n

    def place(depth: int, used: set[int]):
        if depth == len(order):
            copies.add(frozenset(edge_id[(min(image[a], image[b]), max(image[a], image[b]))]
                                 for a, b in h.edges))
            return
        v = order[depth]
        for x in range(g.n):
            if x in used:
                continue
            if all(x in gadj[image[u]] for u in hadj[v] if image[u] >= 0):
                image[v] = x
                used.add(x)
                place(depth + 1, used)
                used.discard(x)
                image[v] = -1

    if h.edges and g.edges:
        place(0, set())
    edges = tuple(sorted(copies, key=sorted))
    return Hypergraph(max(len(g.edges), 1), edges)


# -- vertex isolation ---------------------------------------------------------

def greedy_independent_set(g: GraphSpec) -> list[int]:
    alive = set(range(g.n))
    out = []
    for v in range(g.n):
        if v in alive:
            out.append(v)
            alive -= g.adjacency[v] | {v}
    return out


@dataclass(frozen=True)
class IsolationGame:
    """Monotone (1, q) game on E(G); Avoider aims to end with a vertex that has
    none of his edges.  `independent` is fixed when the game is set up."""

    graph: GraphSpec
    independent: tuple[int, ...] = field(default=())

    @classmethod
    def on(cls, g: GraphSpec) -> "IsolationGame":
        return cls(g, tuple(greedy_independent_set(g)))

    def start(self, q: int, first: Player) -> ClaimPosition:
        return ClaimPosition(len(self.graph.edges), Bias(1, q), Rules.MONOTONE, first)

    def isolated(self, pos: ClaimPosition) -> list[int]:
        """Vertices with no Avoider edge and no unclaimed edge."""
        out = []
        for v in range(self.graph.n):
            star = self.graph.star(v)
            if all(e in pos.enforcer for e in star):
                out.append(v)
        return out

    def star_box_view(self, pos: ClaimPosition) -> Position:
        """Stars over the independent set as boxes of the (q, 1) box game in
        which the real Avoider is the box Enforcer (label = vertex)."""
        boxes = []
        for v in self.independent:
            star = self.graph.star(v)
            left = sum(1 for e in star if e not in pos.avoider and e not in pos.enforcer)
            if left:
                boxes.append(BoxState(left, any(e in pos.avoider for e in star), v))
        return Position(_sorted_boxes(boxes), Bias(pos.bias.q, 1), Rules.MONOTONE, Player.ENFORCER)


def isolate_vertex_avoider_move(game: IsolationGame, pos: ClaimPosition) -> frozenset[int]:
    """Avoider's role-swap strategy: first claim every edge missing the
    independent set S, then play the monotone box Enforcer on the S-stars."""
    if pos.to_move is not Player.AVOIDER or pos.rules is not Rules.MONOTONE or pos.bias.p != 1:
        raise Forfeit("isolation strategy needs Avoider to move in a monotone (1, q) game")
    free = pos.unclaimed
    need = pos.required_claims()
    if not free:
        raise Forfeit("no edges left")
    g, S = game.graph, set(game.independent)
    if any(not g.adjacency[v] for v in S) or any(
            all(e in pos.enforcer for e in g.star(v)) for v in S):
        return frozenset(free[:need])
    outside = [e for e in free if not (set(g.edges[e]) & S)]
    if outside:
        return frozenset(outside)
    view = game.star_box_view(pos)
    if not view.boxes:
        return frozenset(free[:need])
    claim = []
    taken = pos.avoider | pos.enforcer
    for i, count in mono_enforcer_move(view).claims:
        star = [e for e in g.star(view.boxes[i].label) if e not in taken]
        claim.extend(star[:count])
    if len(claim) < need:
        claim += [e for e in free if e not in claim][:need - len(claim)]
    return frozenset(claim)


def isolation_avoider_wins_all(game: IsolationGame, pos: ClaimPosition,
                               avoider: Callable[[ClaimPosition], Iterable[int]] | None = None) -> bool:
    """True iff the fixed Avoider isolates a vertex against every Enforcer
    move sequence.  Defaults to the role-swap strategy."""
    if avoider is None:
        avoider = lambda pos: isolate_vertex_avoider_move(game, pos)
    memo: dict = {}

    def wins(pos: ClaimPosition) -> bool:
        free = pos.unclaimed
        if not free:
            return bool(game.isolated(pos))
        key = (pos.avoider, pos.enforcer, pos.to_move)
        if key in memo:
            return memo[key]
        if pos.to_move is Player.AVOIDER:
            try:
                result = wins(pos.apply(avoider(pos)))
            except (Forfeit, IllegalMove):
                result = False
        else:
            need = pos.required_claims()
            result = all(wins(pos.apply(c)) for c in _subsets(free, need, len(free)))
        memo[key] = result
        return result

    return wins(pos)


def play_isolation_match(game: IsolationGame, pos: ClaimPosition,
                         enforcer: Callable[[ClaimPosition], Iterable[int]],
                         avoider: Callable[[ClaimPosition], Iterable[int]] | None = None):
    """Play to the end.  Returns ``(isolated_vertices, forfeited_by)``."""
    if avoider is None:
        avoider = lambda pos: isolate_vertex_avoider_move(game, pos)
    players = {Player.AVOIDER: avoider, Player.ENFORCER: enforcer}
    while pos.unclaimed:
        mover = pos.to_move
        try:
            pos = pos.apply(players[mover](pos))
        except (Forfeit, IllegalMove):
            return [], mover
    return game.isolated(pos), None
