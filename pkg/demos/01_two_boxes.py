"""Two boxes of size two: who wins depends on the bias.

With (p, q) = (1, 1) and (2, 2) Avoider survives; with (1, 2) Enforcer
forces him to fill a box.  The solver prints an optimal line for each.
"""

from mbox import Bias, Player, Rules, Solver, apply_move, new_game

solver = Solver()
for p, q in [(1, 1), (1, 2), (2, 2)]:
    pos = new_game([2, 2], Bias(p, q), Rules.STRICT, Player.AVOIDER)
    res = solver.solve(pos)
    print(f"(p,q)=({p},{q}): {res.winner} wins  [{res.node_count} positions searched]")
    while not pos.is_over:
        mv = solver.solve(pos).optimal_move
        print(f"    {pos.to_move!s:8} claims {mv}   on {pos.sizes}")
        pos = apply_move(pos, mv)

# The same boards under monotone rules, where a player may claim more.
for p, q in [(1, 1), (1, 2), (2, 2)]:
    pos = new_game([2, 2], Bias(p, q), Rules.MONOTONE, Player.AVOIDER)
    print(f"monotone (p,q)=({p},{q}): {solver.solve(pos).winner}")
