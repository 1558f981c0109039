"""Box games as tools on general boards.

1. H-games: the targets are the copies of H inside G.
2. A matching of disjoint targets lets Enforcer play the box strategy.
3. Swapping roles, Avoider can isolate a vertex of a sparse graph.
"""

import math

from mbox import Bias, Player, Rules
from mbox.criteria import isolation_hypothesis
from mbox.hypergames import (GraphSpec, Hypergraph, IsolationGame, complete_graph, find_matching,
                             h_game_board, hyper_enforcer_wins_all, hyper_game,
                             matching_enforcer_move, play_isolation_match)

triangle = GraphSpec(3, ((0, 1), (1, 2), (0, 2)))
for n in (4, 5, 6):
    board = h_game_board(complete_graph(n), triangle)
    m = find_matching(board, 3, 2)
    print(f"K{n}: {len(board.edges)} triangles, two edge-disjoint ones: {m is not None}")

# Three disjoint pairs plus two targets that overlap them and a stray element.
h = Hypergraph(9, (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5}),
                   frozenset({0, 6}), frozenset({1, 6, 7})))
matching = find_matching(h, 2, 3)
for first in Player:
    pos = hyper_game(h, Bias(2, 1), Rules.STRICT, first)
    wins = hyper_enforcer_wins_all(h, pos, lambda ps: matching_enforcer_move(ps, h, matching))
    print(f"matching Enforcer, {first} first, beats every Avoider: {wins}")

# A 3-regular graph on 24 vertices: the cycle plus its long diagonals.
n, d = 24, 3
g = GraphSpec(n, tuple(sorted({(min(v, (v + s) % n), max(v, (v + s) % n))
                                for v in range(n) for s in (1, 12)})))
q = math.ceil(d / math.log(n / (2 * d + 2)))
print(f"\nn={n}, d={g.max_degree}, q={q}, hypothesis holds: {isolation_hypothesis(n, g.max_degree, q)}")
game = IsolationGame.on(g)


def greedy_enforcer(pos):
    return pos.unclaimed[:pos.required_claims()]


for first in Player:
    isolated, forfeit = play_isolation_match(game, game.start(q, first), greedy_enforcer)
    print(f"{first} first: isolated vertices {isolated}, forfeit {forfeit}")
