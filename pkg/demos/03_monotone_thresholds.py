"""Monotone rules: thresholds, the two strategies, and the e^(k/p) estimate."""

import random

from mbox import (Bias, LARGEST_BOX, MONO_AVOIDER, MONO_ENFORCER, Player, Rules, Solver,
                  estimate_bounds, n_largest_box, n_mono_avoider, n_mono_enforcer, new_game,
                  play_match)
from mbox.audit import phi_violations, random_monotone_avoider

solver = Solver()

print("Avoider threshold N(p,q,k), k > p and q >= kp:")
for p, q, k in [(1, 2, 2), (1, 3, 3), (1, 4, 3), (1, 6, 4)]:
    print(f"  N({p},{q},{k}) = {n_mono_avoider(p, q, k)}")

pos = new_game([3, 3, 4, 5], Bias(1, 3), Rules.MONOTONE, Player.ENFORCER)
print("mono-avoider against a best-responding Enforcer on [3,3,4,5]:",
      solver.best_response(pos, Player.AVOIDER, MONO_AVOIDER).winner)

print("\nEnforcer threshold recursion for (p,q) = (1,2):",
      [n_mono_enforcer(1, 2, k) for k in range(1, 7)])
pos = new_game([1, 2, 2, 3], Bias(1, 2), Rules.MONOTONE, Player.AVOIDER)
print("mono-enforcer against a best-responding Avoider on [1,2,2,3]:",
      solver.best_response(pos, Player.ENFORCER, MONO_ENFORCER).winner)

# For q = 1 the recursion is compared with 1 + e^(k/p).  The bound holds
# for small k but the recursion overtakes it for p >= 3 and k >= 7; the
# largest-box count below is what the averaging argument actually gives.
print("\n p  k  recursion  1+e^(k/p)  holds  largest-box n")
for p in (2, 3, 4):
    for k in (4, 7, 8):
        chk = estimate_bounds(p, 1, k)
        print(f" {p}  {k}  {chk.recursion_value:9d}  {chk.bound_value:9.3f}  {chk.holds!s:5}  "
              f"{n_largest_box(p, k)}")

rng = random.Random(0)
bad = 0
for _ in range(50):
    sizes = [rng.randint(1, 6) for _ in range(rng.randint(1, 12))]
    pos = new_game(sizes, Bias(2, 1), Rules.MONOTONE, Player.ENFORCER)
    verdict = play_match(pos, random_monotone_avoider(rng), LARGEST_BOX, keep_positions=True)
    bad += len(phi_violations(verdict, 2))
print(f"\naverage-size recurrence violations in 50 random matches: {bad}")
