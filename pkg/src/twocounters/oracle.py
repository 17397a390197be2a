"""Brute-force reference solver for small games."""
from __future__ import annotations

import numpy as np

from . import kernels
from .game import NO_CHOICE, ParityGame, Player, Solution

MAX_STRATEGIES = 10**6


class TooLarge(ValueError):
    pass


def strategy_count(game: ParityGame, player) -> int:
    degrees = np.diff(game.succ_ptr)[game.owner == int(player)]
    return int(np.prod(degrees.astype(object))) if len(degrees) else 1


def oracle_solve(game: ParityGame, limit: int = MAX_STRATEGIES) -> Solution:
    """Solve by trying every positional strategy of both players.

    Even wins ``v`` iff some Even strategy leaves Odd no reachable cycle
    with an odd maximum from ``v``. Odd's strategy is found the same way
    with the roles swapped and only serves as a witness.
    """
    for p in Player:
        if strategy_count(game, p) > limit:
            raise TooLarge(f"{p} has more than {limit} positional strategies")
    args = (game.succ_ptr, game.succ, game.owner, game.priority)
    even_wins, even_best = kernels.best_positional(*args, 0)
    odd_wins, odd_best = kernels.best_positional(*args, 1)
    if np.any(even_wins == odd_wins):
        raise AssertionError("winning regions of the oracle overlap or leave a gap")
    winner = np.where(even_wins, 0, 1).astype(np.int8)
    strategy = np.where(winner == 0, even_best, odd_best)
    strategy = np.where(game.owner == winner, strategy, NO_CHOICE).astype(np.int64)
    return Solution(winner, strategy)
