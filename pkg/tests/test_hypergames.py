import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mbox.acceptance import brute_force_copies, random_isolation_graphs, scripted_enforcers
from mbox.engine import Bias, Player, Rules
from mbox.hypergames import (ClaimPosition, GraphSpec, Hypergraph, IsolationGame, complete_graph,
                             cycle_graph, find_matching, format_graph, format_hypergraph,
                             greedy_independent_set, h_game_board, hyper_enforcer_wins_all,
                             hyper_game, is_matching, isolation_avoider_wins_all,
                             matching_box_view, matching_enforcer_move, parse_graph,
                             parse_hypergraph, play_isolation_match)
from mbox.strict_strategies import strict_enforcer_move

TRIANGLE = GraphSpec(3, ((0, 1), (1, 2), (0, 2)))


def hyper(m, *edges):
    return Hypergraph(m, tuple(frozenset(e) for e in edges))


def test_find_matching_examples():
    h = hyper(6, {1, 2}, {2, 3}, {4, 5})
    m = find_matching(h, 2, 2)
    assert m is not None and {h.edges[i] for i in m} == {frozenset({1, 2}), frozenset({4, 5})}
    assert find_matching(hyper(4, {1, 2}, {2, 3}), 2, 2) is None


def test_k4_triangles_have_no_two_disjoint():
    board = h_game_board(complete_graph(4), TRIANGLE)
    assert find_matching(board, 3, 2) is None
    assert find_matching(board, 3, 1) is not None


def test_find_matching_needs_backtracking_when_greedy_fails():
    # greedy takes {1, 2} first and blocks both larger edges
    h = hyper(6, {1, 2}, {0, 1, 3}, {2, 4, 5})
    assert find_matching(h, 3, 2) is not None


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sets(st.integers(0, 7), min_size=1, max_size=3), min_size=1, max_size=7),
       st.integers(1, 3), st.integers(1, 3))
def test_find_matching_is_disjoint_and_complete(edges, cap, want):
    h = Hypergraph(8, tuple(frozenset(e) for e in edges))
    m = find_matching(h, cap, want)
    exists = any(is_matching(h, c) and all(len(h.edges[i]) <= cap for i in c)
                 for c in itertools.combinations(range(len(edges)), want))
    assert (m is not None) == exists
    if m is not None:
        assert is_matching(h, m) and len(m) >= want and all(len(h.edges[i]) <= cap for i in m)


@pytest.mark.parametrize("g, count", [(complete_graph(4), 4), (cycle_graph(5), 0), (complete_graph(5), 10)])
def test_triangle_boards(g, count):
    board = h_game_board(g, TRIANGLE)
    assert len(board.edges) == count and all(len(e) == 3 for e in board.edges)


@pytest.mark.parametrize("index", range(1, 60, 7))
def test_h_game_board_matches_brute_force(index):
    G = nx.graph_atlas(index)
    g = GraphSpec(G.number_of_nodes(), tuple(G.edges()))
    for h in (TRIANGLE, GraphSpec(3, ((0, 1), (1, 2))), GraphSpec(4, ((0, 1), (1, 2), (2, 3), (0, 3)))):
        board = h_game_board(g, h)
        want = {frozenset(g.edges.index(e) for e in c) for c in brute_force_copies(g, h)}
        assert set(board.edges) == want


def test_networkx_agrees_on_triangle_counts():
    for index in range(1, 209, 11):
        G = nx.graph_atlas(index)
        g = GraphSpec(G.number_of_nodes(), tuple(G.edges()))
        assert len(h_game_board(g, TRIANGLE).edges) == sum(nx.triangles(G).values()) // 3


@pytest.mark.parametrize("g, want", [
    (GraphSpec(3, ((0, 1), (1, 2))), [0, 2]),
    (complete_graph(4), [0]),
    (GraphSpec(5, ()), [0, 1, 2, 3, 4]),
])
def test_greedy_independent_set(g, want):
    assert greedy_independent_set(g) == want


@settings(max_examples=100)
@given(st.integers(1, 9), st.data())
def test_independent_set_size_bound(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = GraphSpec(n, tuple(edges))
    s = greedy_independent_set(g)
    assert all(v not in g.adjacency[u] for u, v in itertools.combinations(s, 2))
    assert len(s) * (g.max_degree + 1) >= n


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 5),)])
def test_graph_validation(edges):
    with pytest.raises(ValueError):
        GraphSpec(3, edges)


def test_file_formats_round_trip():
    h = hyper(5, {0, 1}, {2, 3, 4})
    assert parse_hypergraph(format_hypergraph(h)) == h
    g = cycle_graph(4)
    assert parse_graph(format_graph(g)) == g
    with pytest.raises(ValueError):
        parse_graph("m 3\n")
    with pytest.raises(ValueError):
        parse_hypergraph("m 2\n0 5\n")


# -- matching reduction --------------------------------------------------------

def test_strict_matching_move_claims_off_matching_first():
    h = hyper(7, {0, 1}, {2, 3})
    pos = hyper_game(h, Bias(1, 2), Rules.STRICT, Player.ENFORCER)
    assert matching_enforcer_move(pos, h, (0, 1)) == frozenset({4, 5})


def test_leftover_steps_go_to_strategy_s():
    h = hyper(6, {0, 1}, {2, 3, 4})
    pos = ClaimPosition(6, Bias(1, 2), Rules.STRICT, Player.ENFORCER)
    claim = matching_enforcer_move(pos, h, (0, 1))
    assert 5 in claim and len(claim) == 2 and len(claim & {2, 3, 4}) == 1


def test_no_off_matching_elements_means_strategy_s():
    h = hyper(5, {0, 1}, {2, 3, 4})
    pos = ClaimPosition(5, Bias(1, 2), Rules.STRICT, Player.ENFORCER)
    view = matching_box_view(pos, h, (0, 1))
    want = strict_enforcer_move(view)
    claim = matching_enforcer_move(pos, h, (0, 1))
    assert sorted(len(claim & h.edges[view.boxes[i].label]) for i, _ in want.claims) == sorted(
        c for _, c in want.claims)


def test_monotone_matching_move_tops_up_with_whole_boxes():
    h = hyper(6, {0, 1}, {2, 3, 4})
    pos = ClaimPosition(6, Bias(1, 3), Rules.MONOTONE, Player.ENFORCER)
    claim = matching_enforcer_move(pos, h, (0, 1))
    assert claim == frozenset({5, 2, 3, 4})


def test_matching_enforcer_wins_exhaustively_on_a_small_board():
    # (p, q, k) = (1, 1, 1) needs two singleton boxes whoever starts
    h = hyper(5, {0}, {1}, {0, 2}, {2, 3, 4})
    for first in Player:
        pos = hyper_game(h, Bias(1, 1), Rules.STRICT, first)
        assert hyper_enforcer_wins_all(h, pos, lambda ps: matching_enforcer_move(ps, h, (0, 1)))


# -- vertex isolation ------------------------------------------------------------

def test_stars_over_an_independent_set_partition_their_edges():
    g = cycle_graph(8)
    game = IsolationGame.on(g)
    covered = [e for v in game.independent for e in g.star(v)]
    assert len(covered) == len(set(covered))
    assert set(covered) == {i for i, e in enumerate(g.edges) if set(e) & set(game.independent)}


def test_isolation_on_the_perfect_matching_every_line():
    game = IsolationGame.on(GraphSpec(8, ((0, 1), (2, 3), (4, 5), (6, 7))))
    for first in Player:
        assert isolation_avoider_wins_all(game, game.start(1, first))


@pytest.mark.parametrize("seed", [1, 2])
def test_isolation_matches_end_with_an_isolated_s_vertex(seed):
    for idx, (g, q) in enumerate(random_isolation_graphs(4, seed)):
        game = IsolationGame.on(g)
        for enforcer in scripted_enforcers(g, seed * 100 + idx).values():
            for first in Player:
                isolated, forfeit = play_isolation_match(game, game.start(q, first), enforcer)
                assert forfeit is Player.AVOIDER or set(isolated) & set(game.independent)


def test_random_enforcer_helper_is_seeded():
    g, _ = random_isolation_graphs(1, 3)[0]
    a = scripted_enforcers(g, 5)["random"]
    b = scripted_enforcers(g, 5)["random"]
    pos = IsolationGame.on(g).start(2, Player.ENFORCER)
    assert a(pos) == b(pos)
