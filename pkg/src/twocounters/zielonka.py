"""Zielonka's recursive algorithm with call counting and distraction tracing."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .game import ParityGame, Player, Solution, solution_from_sets


@dataclass(frozen=True)
class DistractionEvent:
    """Vertices of priority ``priority`` that the opponent attracted away.

    ``player`` is the opponent who profits from the distraction; for the Two
    Counters game this is the player whose counter the vertices belong to.
    """

    priority: int
    player: Player
    vertices: tuple

    def trace_line(self, roles=None) -> str:
        bit = "-"
        if roles is not None and self.vertices:
            bit = str(roles[self.vertices[0]].bit)
        return f"distraction p={self.priority} player={self.player} bit={bit} n={len(self.vertices)}"


@dataclass
class ZlkStats:
    recursive_calls: int = 0
    distraction_events: list = field(default_factory=list)

    @property
    def value(self) -> int:
        return self.recursive_calls


def solve_zielonka(game: ParityGame, trace: bool = False):
    """Solve ``game``; returns ``(Solution, ZlkStats)``.

    ``recursive_calls`` counts invocations on nonempty subgames. With
    ``trace`` the stats also list one event per invocation whose opponent
    attractor reaches beyond the opponent's winning region.
    """
    winner, strat, calls, ev_prio, ev_ptr, ev_verts = kernels.zielonka(
        game.succ_ptr, game.succ, game.pred_ptr, game.pred, game.owner, game.priority, bool(trace)
    )
    events = []
    for i in range(len(ev_prio)):
        p = int(ev_prio[i])
        verts = tuple(int(v) for v in ev_verts[ev_ptr[i]:ev_ptr[i + 1]])
        events.append(DistractionEvent(p, Player(p & 1).opponent, verts))
    solution = solution_from_sets(game, winner == 0, strat)
    return solution, ZlkStats(int(calls), events)
