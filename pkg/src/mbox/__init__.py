"""Misère box games: rules engine, strategies, thresholds and an exact solver."""

from .criteria import (ThresholdRegime, enforcer_gcd_condition, estimate_bounds,
                       gcd_avoider_witness, n_largest_box, n_mono_avoider, n_mono_enforcer,
                       n_strict, potential_criterion, threshold)
from .engine import (Bias, BoxState, Forfeit, IllegalMove, Move, Player, Position, Rules,
                     Strategy, Verdict, apply_move, format_game, is_legal, new_game,
                     parse_game, play_match, stateless, validate_move)
from .monotone_strategies import (LARGEST_BOX, MONO_AVOIDER, MONO_ENFORCER,
                                  largest_box_enforcer_move, mono_avoider_move,
                                  mono_enforcer_move)
from .solver import (CanonicalKey, SolveResult, Solver, Unsolved, best_response,
                     canonicalize, minimal_enforcer_n, solve)
from .strict_strategies import (STRATEGY_S, TWO_STAGE_AVOIDER, strategy_s_steps,
                                strict_avoider_move, strict_enforcer_move)

__version__ = "0.1.0"
