"""Command-line interface: ``mbox solve|play|sweep|criteria|verify|cache``.

Exit status is 0 on success, 2 when the solver runs out of budget, and 1 on
any other error (malformed input, unknown strategy, failed verification).
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Sequence

from . import criteria as cr
from .audit import random_player
from .engine import (Bias, Forfeit, Player, Position, Rules, Strategy, apply_move,
                     new_game, parse_game, play_match, stateless)
from .hypergames import (IsolationGame, find_matching, hyper_game, isolate_vertex_avoider_move,
                         matching_enforcer_move, parse_graph, parse_hypergraph,
                         play_hyper_match, play_isolation_match)
from .monotone_strategies import LARGEST_BOX, MONO_AVOIDER, MONO_ENFORCER
from .solver import Solver, Unsolved, node_budget_from_env
from .strict_strategies import STRATEGY_S, TWO_STAGE_AVOIDER

EXIT_OK, EXIT_ERROR, EXIT_UNSOLVED = 0, 1, 2

BOX_STRATEGIES = ("thm12", "two-stage", "strategy-s", "mono-avoider", "mono-enforcer",
                  "largest-box", "optimal", "matching-enforcer", "random")
GRAPH_STRATEGIES = ("isolate-vertex", "random")
HYPER_STRATEGIES = ("matching-enforcer", "random")


class CliError(Exception):
    pass


class Budget(Exception):
    pass


# -- strategies by name --------------------------------------------------------

def optimal_strategy(solver: Solver) -> Strategy:
    def move(pos: Position):
        res = solver.solve(pos)
        if not res.solved:
            raise Budget(f"node budget exhausted at {pos}")
        return res.optimal_move
    return stateless("optimal", move)


def box_strategy(name: str, side: Player, rules: Rules, solver: Solver, seed: int) -> Strategy:
    if name == "random":
        return random_player(random.Random(seed))
    if name == "optimal":
        return optimal_strategy(solver)
    if name == "matching-enforcer":
        # every box is a matching edge and nothing lies off the matching
        name = "strategy-s" if rules is Rules.STRICT else "mono-enforcer"
    table = {"thm12": (Player.AVOIDER, TWO_STAGE_AVOIDER),
             "two-stage": (Player.AVOIDER, TWO_STAGE_AVOIDER),
             "strategy-s": (Player.ENFORCER, STRATEGY_S),
             "mono-avoider": (Player.AVOIDER, MONO_AVOIDER),
             "mono-enforcer": (Player.ENFORCER, MONO_ENFORCER),
             "largest-box": (Player.ENFORCER, LARGEST_BOX)}
    if name not in table:
        raise CliError(f"unknown strategy {name!r} for a box game; choose from {', '.join(BOX_STRATEGIES)}")
    owner, strategy = table[name]
    if owner is not side:
        raise CliError(f"{name} is a strategy for {owner}, not {side}")
    return strategy


def _random_claimer(seed: int, extra: int = 2):
    rng = random.Random(seed)

    def move(pos):
        free = pos.unclaimed
        need = pos.required_claims()
        bonus = rng.randint(0, extra) if pos.rules is Rules.MONOTONE else 0
        return rng.sample(free, min(len(free), need + bonus))
    return move


# -- subcommands ---------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _solver(args) -> Solver:
    solver = Solver(args.budget if args.budget is not None else node_budget_from_env())
    if getattr(args, "cache", None) and Path(args.cache).exists():
        solver.load(args.cache)
    return solver


def cmd_solve(args, out) -> int:
    pos = parse_game(_read(args.gamefile))
    solver = _solver(args)
    res = solver.solve(pos)
    if not res.solved:
        print("Unsolved", file=out)
        return EXIT_UNSOLVED
    print(res.winner, file=out)
    line = pos
    while not line.is_over:
        step = solver.solve(line)
        print(f"  {line.to_move}: {step.optimal_move}    [{line}]", file=out)
        line = apply_move(line, step.optimal_move)
    if args.cache:
        solver.save(args.cache)
    return EXIT_OK


def cmd_play(args, out) -> int:
    text = _read(args.gamefile)
    head = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if head == "n":
        return _play_isolation(parse_graph(text), args, out)
    if head == "m":
        return _play_hyper(parse_hypergraph(text), args, out)
    pos = parse_game(text)
    solver = _solver(args)
    avoider = box_strategy(args.avoider, Player.AVOIDER, pos.rules, solver, args.seed)
    enforcer = box_strategy(args.enforcer, Player.ENFORCER, pos.rules, solver, args.seed + 1)
    try:
        verdict = play_match(pos, avoider, enforcer)
    except Budget as exc:
        print(f"Unsolved: {exc}", file=out)
        return EXIT_UNSOLVED
    for player, mv in verdict.transcript:
        print(f"  {player}: {mv}", file=out)
    note = f" ({verdict.forfeited_by} forfeited)" if verdict.forfeited_by else ""
    print(f"{verdict.winner}{note}", file=out)
    return EXIT_OK


def _play_isolation(g, args, out) -> int:
    if args.avoider != "isolate-vertex" or args.enforcer != "random":
        raise CliError("graph files support --avoider isolate-vertex --enforcer random")
    game = IsolationGame.on(g)
    pos = game.start(args.q, Player.parse(args.first))
    isolated, forfeit = play_isolation_match(game, pos, _random_claimer(args.seed))
    if forfeit is not None:
        print(f"{forfeit} forfeited", file=out)
    print(f"isolated vertices: {' '.join(map(str, isolated)) or 'none'}", file=out)
    print("Avoider" if isolated and forfeit is None else "Enforcer", file=out)
    return EXIT_OK


def _play_hyper(h, args, out) -> int:
    if args.enforcer not in HYPER_STRATEGIES or args.avoider != "random":
        raise CliError("hypergraph files support --avoider random --enforcer matching-enforcer|random")
    pos = hyper_game(h, Bias(args.p, args.q), Rules.parse(args.rules), Player.parse(args.first))
    if args.enforcer == "random":
        enforcer = _random_claimer(args.seed + 1)
    else:
        k = args.k or max(len(e) for e in h.edges)
        matching = find_matching(h, k, args.matching_size or 1)
        if matching is None:
            raise CliError(f"no matching of {args.matching_size} edges of size <= {k}")
        enforcer = lambda ps: matching_enforcer_move(ps, h, matching)
    print(play_hyper_match(h, pos, _random_claimer(args.seed), enforcer), file=out)
    return EXIT_OK


def criteria_report(pos: Position) -> list[tuple[str, str]]:
    """(criterion, verdict) pairs for a starting position."""
    p, q = pos.bias.p, pos.bias.q
    sizes = sorted(pos.sizes)
    n, total = len(sizes), sum(sizes)
    guaranteed = {Player.AVOIDER: "Avoider-win-guaranteed", Player.ENFORCER: "Enforcer-win-guaranteed"}
    out = []

    last = cr.avoider_moves_last(total, pos.bias, pos.rules, pos.to_move)
    value = cr.potential_sum(sizes, p)
    verdict = guaranteed[Player.AVOIDER] if cr.potential_criterion(sizes, p, last) else "inconclusive"
    who = "avoider" if last else "enforcer"
    out.append(("potential criterion", f"{verdict} (sum {value}, {who} last)"))

    if pos.rules is Rules.STRICT:
        k = cr.gcd_avoider_witness(p, q, sizes[0])
        out.append(("gcd witness", f"{guaranteed[Player.AVOIDER]} (k={k})" if k else "no witness"))
        hit = None
        for k in range(1, sizes[-1] + 1):
            if not cr.enforcer_gcd_condition(p, q, k):
                continue
            try:
                need = cr.n_strict(p, q, k, cap=n)
            except OverflowError:
                continue
            if sizes[need - 1] <= k:
                hit = (k, need)
                break
        out.append(("strict threshold", f"{guaranteed[Player.ENFORCER]} (k={hit[0]}, N={hit[1]})"
                    if hit else "inconclusive"))
    else:
        hit = None
        for k in range(p + 1, sizes[0] + 1):
            if q >= k * p and n <= cr.n_mono_avoider(p, q, k):
                hit = k
                break
        out.append(("monotone avoider threshold",
                    f"{guaranteed[Player.AVOIDER]} (k={hit})" if hit else "inconclusive"))
        hit = None
        for k in range(1, sizes[-1] + 1):
            need = cr.n_mono_enforcer(p, q, k)
            if need <= n and sum(sizes[:need]) <= k * need:
                hit = (k, need)
                break
        out.append(("monotone enforcer threshold", f"{guaranteed[Player.ENFORCER]} (k={hit[0]}, N={hit[1]})"
                    if hit else "inconclusive"))
    return out


def cmd_criteria(args, out) -> int:
    pos = parse_game(_read(args.gamefile))
    for name, verdict in criteria_report(pos):
        print(f"{name} = {verdict}", file=out)
    return EXIT_OK


@dataclass(frozen=True, order=True)
class SweepRow:
    p: int
    q: int
    k: int
    n: int
    rules: str
    first: str
    winner: str
    source: str


def sweep_rows(ps, qs, ks, ns, rules, firsts, source: str, solver: Solver) -> list[SweepRow]:
    rows = []
    for p in ps:
        for q in qs:
            for k in ks:
                for n in ns:
                    for rule in rules:
                        for first in firsts:
                            pos = new_game([k] * n, Bias(p, q), rule, first)
                            winner = _sweep_winner(pos, source, solver)
                            rows.append(SweepRow(p, q, k, n, rule.value, first.value,
                                                 str(winner) if winner else "Unsolved", source))
    return sorted(rows)


def _sweep_winner(pos: Position, source: str, solver: Solver) -> Player | None:
    if source == "solver":
        return solver.solve(pos).winner
    if source == "criterion":
        for _, verdict in criteria_report(pos):
            if "guaranteed" in verdict:
                return Player.AVOIDER if verdict.startswith("Avoider") else Player.ENFORCER
        return None
    side, strategy = _favoured_strategy(pos)
    return solver.best_response(pos, side, strategy).winner


def _favoured_strategy(pos: Position) -> tuple[Player, Strategy]:
    p, q, k = pos.bias.p, pos.bias.q, min(pos.sizes)
    if pos.rules is Rules.STRICT:
        if cr.gcd_avoider_witness(p, q, k):
            return Player.AVOIDER, TWO_STAGE_AVOIDER
        return Player.ENFORCER, STRATEGY_S
    if k > p and q >= k * p and len(pos.sizes) <= cr.n_mono_avoider(p, q, k):
        return Player.AVOIDER, MONO_AVOIDER
    return Player.ENFORCER, MONO_ENFORCER


def format_rows(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(SweepRow)])
    writer.writerows(astuple(r) for r in rows)
    return buf.getvalue()


def int_range(text: str) -> list[int]:
    """``3`` -> [3]; ``1..4`` -> [1, 2, 3, 4]; ``1,3`` -> [1, 3]."""
    values = []
    try:
        for part in text.split(","):
            lo, sep, hi = part.partition("..")
            values.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} must hold positive integers")
    return sorted(set(values))


def cmd_sweep(args, out) -> int:
    rules = list(Rules) if args.rules == "both" else [Rules.parse(args.rules)]
    firsts = list(Player) if args.first == "both" else [Player.parse(args.first)]
    solver = _solver(args)
    rows = sweep_rows(args.p, args.q, args.k, args.n, rules, firsts, args.source, solver)
    if args.cache:
        solver.save(args.cache)
    text = format_rows(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{len(rows)} rows -> {args.out}", file=out)
    else:
        out.write(text)
    # an undecided closed-form row is an answer, not an exhausted budget
    searched = args.source != "criterion"
    return EXIT_UNSOLVED if searched and any(r.winner == "Unsolved" for r in rows) else EXIT_OK


def cmd_verify(args, out) -> int:
    from .acceptance import run_all

    results = run_all(echo=lambda line: print(line, file=out, flush=True))
    failed = [c.number for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria pass"
          + (f"; failing: {failed}" if failed else ""), file=out)
    return EXIT_ERROR if failed else EXIT_OK


def cmd_cache(args, out) -> int:
    solver = Solver(args.budget if args.budget is not None else node_budget_from_env())
    if args.action == "load":
        count = solver.load(args.file)
        print(f"{count} entries in {args.file}", file=out)
        return EXIT_OK
    if Path(args.file).exists():
        solver.load(args.file)
    unsolved = False
    for game in args.games:
        unsolved |= not solver.solve(parse_game(_read(game))).solved
    count = solver.save(args.file)
    print(f"{count} entries -> {args.file}", file=out)
    return EXIT_UNSOLVED if unsolved else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mbox", description="Misère box games: solve, play, sweep.")
    parser.add_argument("--budget", type=int, default=None,
                        help="solver node budget (default: $MBOX_NODE_BUDGET or 10^8)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="winner and an optimal line")
    sp.add_argument("gamefile")
    sp.add_argument("--cache", help="solver cache file to read and update")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("play", help="run a match between named strategies")
    sp.add_argument("gamefile", help="game, graph (n ...) or hypergraph (m ...) file")
    sp.add_argument("--avoider", required=True)
    sp.add_argument("--enforcer", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cache")
    for flag, default in (("--p", 1), ("--q", 1)):
        sp.add_argument(flag, type=int, default=default, help="bias for graph/hypergraph files")
    sp.add_argument("--rules", default="strict", help="rules for hypergraph files")
    sp.add_argument("--first", default="avoider", help="first player for graph/hypergraph files")
    sp.add_argument("--k", type=int, default=None, help="matching edge size bound")
    sp.add_argument("--matching-size", type=int, default=None)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("sweep", help="uniform-box parameter grid to CSV")
    for flag in ("--p", "--q", "--k", "--n"):
        sp.add_argument(flag, type=int_range, required=True, help="e.g. 2, 1..4 or 1,3")
    sp.add_argument("--rules", default="strict", choices=("strict", "monotone", "both"))
    sp.add_argument("--first", default="both", choices=("avoider", "enforcer", "both"))
    sp.add_argument("--source", default="solver", choices=("solver", "strategy", "criterion"))
    sp.add_argument("--out")
    sp.add_argument("--cache")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("criteria", help="closed-form criteria verdicts")
    sp.add_argument("gamefile")
    sp.set_defaults(func=cmd_criteria)

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cache", help="inspect or build a solver cache")
    sp.add_argument("action", choices=("load", "save"))
    sp.add_argument("file")
    sp.add_argument("games", nargs="*", help="game files to solve before saving")
    sp.set_defaults(func=cmd_cache)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except Unsolved as exc:
        print(f"Unsolved: {exc}", file=out)
        return EXIT_UNSOLVED
    except (CliError, ValueError, Forfeit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
