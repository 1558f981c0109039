"""Uniform boxes under strict rules: the gcd condition decides everything.

If some k <= b1 has gcd(p+q, k) > p, Avoider wins however many boxes
there are.  Otherwise Enforcer wins once there are enough boxes.  The
closed-form N is a safe bound; the solver finds the true minimum.
"""

import itertools

from mbox import (STRATEGY_S, Bias, Player, Rules, Solver, enforcer_gcd_condition,
                  gcd_avoider_witness, n_strict, new_game)

solver = Solver()
print(" p q k | witness | minimal n (A first, E first) | formula N")
for p, q, k in itertools.product((1, 2), (1, 2), (1, 2, 3)):
    witness = gcd_avoider_witness(p, q, k)
    if enforcer_gcd_condition(p, q, k):
        mins = [solver.minimal_enforcer_n(p, q, k, Rules.STRICT, first) for first in Player]
        print(f" {p} {q} {k} |    -    | {mins[0]:>5} {mins[1]:>5}                | {n_strict(p, q, k)}")
    else:
        print(f" {p} {q} {k} |    {witness}    | none up to 20                | -")

# Pairs with (p, q) = (1, 2) and Enforcer first.  The winner is not
# monotone in n: four boxes are an Avoider win although three and five are
# not.  The minimal n is therefore only the start of the Enforcer region
# once n passes the formula bound.

for n in range(1, 7):
    pos = new_game([2] * n, Bias(1, 2), Rules.STRICT, Player.ENFORCER)
    optimal = solver.solve(pos).winner
    fixed = solver.best_response(pos, Player.ENFORCER, STRATEGY_S).winner
    print(f"(1,2) boxes of 2, n={n}: optimal {optimal!s:8} strategy S -> {fixed}")
