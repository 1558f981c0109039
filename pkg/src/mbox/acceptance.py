"""Acceptance suite: one function per criterion, each returning a `Check`.

Used by ``tests/test_acceptance.py`` and by ``mbox verify``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from .audit import phi_violations, random_monotone_avoider, scan_strategy_s
from .criteria import (avoider_moves_last, enforcer_gcd_condition, estimate_bounds,
                       gcd_avoider_witness, isolation_hypothesis, n_mono_enforcer,
                       n_strict, potential_criterion)
from .engine import Bias, Player, Rules, apply_move, new_game, play_match
from .hypergames import (GraphSpec, Hypergraph, IsolationGame, find_matching,
                         h_game_board, hyper_enforcer_wins_all, hyper_game,
                         isolation_avoider_wins_all, matching_enforcer_move,
                         play_isolation_match)
from .monotone_strategies import LARGEST_BOX, MONO_AVOIDER, MONO_ENFORCER
from .solver import Solver
from .strict_strategies import STRATEGY_S, TWO_STAGE_AVOIDER, strategy_s_steps


@dataclass
class Check:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({self.seconds:.2f}s): {self.detail}"


def grid(max_n: int = 4, max_size: int = 5):
    """Sorted size vectors with 1..max_n boxes of sizes 1..max_size."""
    for n in range(1, max_n + 1):
        yield from itertools.combinations_with_replacement(range(1, max_size + 1), n)


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    start = time.perf_counter()
    passed, detail = fn()
    return Check(number, title, passed, detail, time.perf_counter() - start)


def c01_two_box_example() -> Check:
    def run():
        solver = Solver()
        want = {(1, 1): Player.AVOIDER, (1, 2): Player.ENFORCER, (2, 2): Player.AVOIDER}
        got = {pq: solver.solve(new_game([2, 2], Bias(*pq), Rules.STRICT, Player.AVOIDER)).winner
               for pq in want}
        return got == want, ", ".join(f"{pq}->{w}" for pq, w in got.items())
    check = _timed(1, "two boxes of size two", run)
    if check.seconds >= 1.0:
        check.passed, check.detail = False, check.detail + " (too slow)"
    return check


def c02_avoider_strict_grid(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        count, bad = 0, []
        for p, q in itertools.product((1, 2, 3), repeat=2):
            for sizes in grid():
                if gcd_avoider_witness(p, q, sizes[0]) is None:
                    continue
                for first in Player:
                    pos = new_game(sizes, Bias(p, q), Rules.STRICT, first)
                    count += 1
                    if s.solve(pos).winner is not Player.AVOIDER:
                        bad.append(("solve", p, q, sizes, first.value))
                    if s.best_response(pos, Player.AVOIDER, TWO_STAGE_AVOIDER).winner is not Player.AVOIDER:
                        bad.append(("strategy", p, q, sizes, first.value))
        return not bad, f"{count} instances, {len(bad)} failures {bad[:3]}"
    check = _timed(2, "gcd witness => Avoider wins (solver + strategy)", run)
    if check.seconds >= 600:
        check.passed = False
    return check


def c03_dichotomy(solver: Solver | None = None, limit: int = 20) -> Check:
    def run():
        s = solver or Solver()
        bad, notes = [], []
        for p, q, k in itertools.product((1, 2), (1, 2), (1, 2, 3)):
            for first in Player:
                if enforcer_gcd_condition(p, q, k):
                    n = s.minimal_enforcer_n(p, q, k, Rules.STRICT, first, limit)
                    if n is None or n > n_strict(p, q, k):
                        bad.append(("no threshold", p, q, k, first.value, n))
                        continue
                    pos = new_game([k] * n, Bias(p, q), Rules.STRICT, first)
                    if s.best_response(pos, Player.ENFORCER, STRATEGY_S).winner is not Player.ENFORCER:
                        bad.append(("S loses", p, q, k, first.value, n))
                    notes.append(f"{p}{q}{k}{first.letter}:{n}")
                else:
                    for n in range(1, limit + 1):
                        pos = new_game([k] * n, Bias(p, q), Rules.STRICT, first)
                        if s.solve(pos).winner is not Player.AVOIDER:
                            bad.append(("Avoider loses", p, q, k, first.value, n))
        return not bad, f"minimal n {' '.join(notes)}; failures {bad[:3]}"
    return _timed(3, "gcd dichotomy at solver scale", run)


T_ROBUST_TUPLE = (2, 1, 2)


def c04_t_robustness(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        p, q, k = T_ROBUST_TUPLE
        n = max(s.minimal_enforcer_n(p, q, k, Rules.STRICT, first) for first in Player)
        pos = new_game([k] * n, Bias(p, q), Rules.STRICT, Player.ENFORCER)
        results = []
        for t in range(q + 1):
            after = apply_move(pos, strategy_s_steps(pos, t), check=False)
            results.append(s.best_response(after, Player.ENFORCER, STRATEGY_S).winner)
        ok = all(w is Player.ENFORCER for w in results)
        return ok, f"(p,q,k)={T_ROBUST_TUPLE}, n={n}, t=0..{q}: {[w.letter for w in results]}"
    return _timed(4, "strategy S survives a truncated first move", run)


def c05_monotone_avoider(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        count, bad = 0, []
        for p, q, k, max_n in ((1, 2, 2, 2), (1, 3, 3, 4)):
            for n in range(1, max_n + 1):
                for sizes in itertools.combinations_with_replacement(range(k, k + 4), n):
                    for first in Player:
                        pos = new_game(sizes, Bias(p, q), Rules.MONOTONE, first)
                        count += 1
                        if s.best_response(pos, Player.AVOIDER, MONO_AVOIDER).winner is not Player.AVOIDER:
                            bad.append((p, q, sizes, first.value))
        return not bad, f"{count} instances, {len(bad)} failures {bad[:3]}"
    return _timed(5, "monotone Avoider strategy wins below its threshold", run)


MONO_ENFORCER_CASES = (
    (1, 2, (2, 2, 2, 2)),
    (1, 2, (1, 2, 2, 3)),
    (1, 2, (1, 1, 3, 3)),
    (1, 2, (2, 2, 2, 2, 5, 6)),
    (1, 1, (1, 2, 3, 3, 5)),
)


def c06_monotone_enforcer(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        bad = []
        for p, q, sizes in MONO_ENFORCER_CASES:
            for first in Player:
                pos = new_game(sizes, Bias(p, q), Rules.MONOTONE, first)
                if s.best_response(pos, Player.ENFORCER, MONO_ENFORCER).winner is not Player.ENFORCER:
                    bad.append((p, q, sizes, first.value))
        return not bad, f"{2 * len(MONO_ENFORCER_CASES)} instances, failures {bad}"
    return _timed(6, "monotone Enforcer strategy wins above its threshold", run)


def c07_estimates() -> Check:
    def run():
        bad = []
        for a, k in itertools.product(range(1, 6), range(1, 9)):
            chk = estimate_bounds(1, a, k)
            if not chk.holds:
                bad.append(("p=1", a, k, chk.recursion_value, chk.bound_value))
            chk = estimate_bounds(a, 1, k)
            if not chk.holds:
                bad.append(("q=1", a, k, chk.recursion_value, round(chk.bound_value, 3)))
        return not bad, f"{len(bad)} violations {bad}"
    check = _timed(7, "estimates N(1,q,k) <= (1+q)^k and N(p,1,k) <= 1+e^(k/p)", run)
    if check.seconds >= 1.0:
        check.passed = False
    return check


def c08_phi_recurrence(seed: int = 0) -> Check:
    def run():
        rng = random.Random(seed)
        violations, rounds = 0, 0
        for _ in range(100):
            n = rng.randint(1, 12)
            sizes = [rng.randint(1, 6) for _ in range(n)]
            p = rng.randint(1, 3)
            pos = new_game(sizes, Bias(p, 1), Rules.MONOTONE, Player.ENFORCER)
            verdict = play_match(pos, random_monotone_avoider(rng), LARGEST_BOX, keep_positions=True)
            violations += len(phi_violations(verdict, p))
            rounds += sum(1 for pl, _ in verdict.transcript if pl is Player.ENFORCER)
        return violations == 0, f"100 matches, {rounds} rounds, {violations} violations"
    return _timed(8, "average-size recurrence under the largest-box Enforcer", run)


def c09_strategy_s_structure(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        positions = [new_game(sizes, Bias(p, q), Rules.STRICT, first)
                     for p, q in itertools.product((1, 2, 3), repeat=2)
                     for sizes in grid() for first in Player]
        for p, q, k in itertools.product((1, 2), (1, 2), (1, 2, 3)):
            if enforcer_gcd_condition(p, q, k):
                for first in Player:
                    n = s.minimal_enforcer_n(p, q, k, Rules.STRICT, first)
                    positions.append(new_game([k] * n, Bias(p, q), Rules.STRICT, first))
        nodes, bad = 0, []
        for pos in positions:
            report = scan_strategy_s(pos)
            nodes += report.nodes
            if not report.ok:
                bad.append(str(pos))
        return not bad, f"{len(positions)} games, {nodes} nodes scanned, {len(bad)} violations {bad[:2]}"
    return _timed(9, "strategy S keeps one safe box and limits safe runs", run)


def c10_potential(solver: Solver | None = None) -> Check:
    def run():
        s = solver or Solver()
        count, bad = 0, []
        for rules in Rules:
            for p, q in itertools.product((1, 2, 3), repeat=2):
                for sizes in grid():
                    for first in Player:
                        last = avoider_moves_last(sum(sizes), Bias(p, q), rules, first)
                        if not potential_criterion(sizes, p, last):
                            continue
                        count += 1
                        pos = new_game(sizes, Bias(p, q), rules, first)
                        if s.solve(pos).winner is not Player.AVOIDER:
                            bad.append((rules.value, p, q, sizes, first.value))
        return not bad, f"{count} instances meet the criterion, {len(bad)} violations {bad[:3]}"
    return _timed(10, "potential criterion => solver says Avoider", run)


H_PATTERNS = {
    "P3": GraphSpec(3, ((0, 1), (1, 2))),
    "triangle": GraphSpec(3, ((0, 1), (1, 2), (0, 2))),
    "K1,3": GraphSpec(4, ((0, 1), (0, 2), (0, 3))),
    "P4": GraphSpec(4, ((0, 1), (1, 2), (2, 3))),
    "C4": GraphSpec(4, ((0, 1), (1, 2), (2, 3), (0, 3))),
}


def brute_force_copies(g: GraphSpec, h: GraphSpec) -> set[frozenset]:
    """Edge sets of copies of h in g via every injective vertex map."""
    gedges = set(g.edges)
    out = set()
    for image in itertools.permutations(range(g.n), h.n):
        mapped = [(min(image[a], image[b]), max(image[a], image[b])) for a, b in h.edges]
        if all(e in gedges for e in mapped):
            out.add(frozenset(mapped))
    return out


def small_graphs(max_n: int = 6) -> list[GraphSpec]:
    import networkx as nx

    graphs = []
    for G in nx.graph_atlas_g():
        if 1 <= G.number_of_nodes() <= max_n:
            graphs.append(GraphSpec(G.number_of_nodes(), tuple(G.edges())))
    return graphs


def random_isolation_graphs(count: int, seed: int) -> list[tuple[GraphSpec, int]]:
    """Seeded random graphs with no isolated vertex that satisfy the degree
    and bias hypothesis, paired with the smallest admissible q."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, d = rng.randint(12, 24), rng.choice((1, 2, 3))
        deg, edges = [0] * n, set()
        for _ in range(4 * n * d):
            u, v = rng.sample(range(n), 2)
            e = (min(u, v), max(u, v))
            if deg[u] < d and deg[v] < d and e not in edges:
                edges.add(e)
                deg[u] += 1
                deg[v] += 1
        if 0 in deg:
            continue
        g = GraphSpec(n, tuple(sorted(edges)))
        dmax = g.max_degree
        if not (dmax < n / 2 - 1 and n > 2 * dmax + 2):
            continue
        q = math.ceil(dmax / math.log(n / (2 * dmax + 2)))
        if isolation_hypothesis(n, dmax, q):
            out.append((g, q))
    return out


def scripted_enforcers(g: GraphSpec, seed: int):
    """Random and star-spreading Enforcers for the isolation game."""
    rng = random.Random(seed)

    def random_enforcer(pos):
        free = pos.unclaimed
        return rng.sample(free, min(len(free), pos.required_claims() + rng.randint(0, 2)))

    def spreading_enforcer(pos):
        free = set(pos.unclaimed)

        def slack(e):
            return min(sum(1 for f in g.star(v) if f in free) for v in g.edges[e])
        return sorted(free, key=lambda e: (-slack(e), e))[:pos.required_claims()]

    return {"random": random_enforcer, "spreading": spreading_enforcer}


MATCHING_TUPLE = (2, 1, 2)


def matching_instance(size: int, k: int, off: int) -> Hypergraph:
    """`size` disjoint k-edges, `off` extra elements, and two edges that
    overlap the matching."""
    base = size * k
    edges = [frozenset(range(i * k, (i + 1) * k)) for i in range(size)]
    edges.append(frozenset({0, base}))
    if off >= 2:
        edges.append(frozenset({1, base, base + 1}))
    return Hypergraph(base + off, tuple(edges))


def c11_applications(solver: Solver | None = None, seed: int = 0) -> Check:
    def run():
        s = solver or Solver()
        bad = []
        graphs = small_graphs()
        for name, h in H_PATTERNS.items():
            for g in graphs:
                board = h_game_board(g, h)
                if set(board.edges) != {frozenset(g.edges.index(e) for e in c)
                                        for c in brute_force_copies(g, h)}:
                    bad.append(("h-game", name, g.edges))

        tiny = IsolationGame.on(GraphSpec(8, ((0, 1), (2, 3), (4, 5), (6, 7))))
        for first in Player:
            if not isolation_avoider_wins_all(tiny, tiny.start(1, first)):
                bad.append(("isolate tiny", first.value))
        iso_games = 0
        for idx, (g, q) in enumerate(random_isolation_graphs(20, seed)):
            game = IsolationGame.on(g)
            for name, enforcer in scripted_enforcers(g, seed + idx).items():
                for first in Player:
                    iso, forfeit = play_isolation_match(game, game.start(q, first), enforcer)
                    iso_games += 1
                    if forfeit is not None or not set(iso) & set(game.independent):
                        bad.append(("isolate", idx, name, first.value))

        p, q, k = MATCHING_TUPLE
        size = max(s.minimal_enforcer_n(p, q, k, Rules.STRICT, first) for first in Player)
        for off in (1, 2, 3):
            h = matching_instance(size, k, off)
            m = find_matching(h, k, size)
            for first in Player:
                pos = hyper_game(h, Bias(p, q), Rules.STRICT, first)
                if m is None or not hyper_enforcer_wins_all(
                        h, pos, lambda ps, h=h, m=m: matching_enforcer_move(ps, h, m)):
                    bad.append(("matching", off, first.value))
        detail = (f"{len(graphs)} graphs x {len(H_PATTERNS)} patterns, "
                  f"{iso_games} isolation matches, matching size {size}; failures {bad[:3]}")
        return not bad, detail
    return _timed(11, "H-game boards, vertex isolation, matching reduction", run)


ALL_CHECKS = (c01_two_box_example, c02_avoider_strict_grid, c03_dichotomy, c04_t_robustness,
              c05_monotone_avoider, c06_monotone_enforcer, c07_estimates, c08_phi_recurrence,
              c09_strategy_s_structure, c10_potential, c11_applications)


def run_all(echo: Callable[[str], None] | None = print) -> list[Check]:
    solver = Solver()
    results = []
    for fn in ALL_CHECKS:
        try:
            check = fn(solver) if "solver" in fn.__code__.co_varnames else fn()
        except Exception as exc:  # report, keep going
            check = Check(int(fn.__name__[1:3]), fn.__name__, False, f"error: {exc!r}")
        results.append(check)
        if echo:
            echo(check.line())
    return results
