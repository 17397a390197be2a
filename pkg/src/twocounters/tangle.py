"""Tangle learning (TL) and its alternating variant (ATL)."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .attractors import TangleStore, as_mask, make_tangle, tangle_attract
from .game import NO_CHOICE, ParityGame, Player, solution_from_sets


class Mode(Enum):
    TL = "tl"
    ATL = "atl"


class NoProgress(RuntimeError):
    """An iteration neither learned a tangle nor found a dominion."""


@dataclass(frozen=True)
class TangleEvent:
    player: Player
    top_priority: int
    size: int
    dominion: bool
    top_vertex: int

    def trace_line(self) -> str:
        tail = " dominion" if self.dominion else ""
        return f"new tangle player={self.player} pr={self.top_priority} size={self.size}{tail}"


@dataclass
class TlStats:
    open_tangles: int = 0
    dominions: int = 0
    tangle_log: list = field(default_factory=list)

    @property
    def value(self) -> int:
        return self.open_tangles


def tl_search(game: ParityGame, domain, store: TangleStore) -> list:
    """Closed regions of the top-down decomposition of ``domain``, as tangles."""
    ptr, verts, strat = kernels.tangle_search(
        game.succ_ptr, game.succ, game.pred_ptr, game.pred, game.owner, game.priority,
        as_mask(game, domain), *store.arrays())
    found = []
    for i in range(len(ptr) - 1):
        found.append(make_tangle(game, verts[ptr[i]:ptr[i + 1]], strat))
    return found


def _top_vertex(game: ParityGame, tangle) -> int:
    vs = tangle.vertices
    return int(vs[np.argmax(game.priority[vs])])


def solve_tl(game: ParityGame, mode: Mode = Mode.TL, log: bool = False):
    """Solve ``game`` by tangle learning; returns ``(Solution, TlStats)``.

    In ATL mode only one player's new open tangles are kept per iteration,
    starting with the player of the highest priority and switching whenever
    that player has nothing new.
    """
    mode = Mode(mode)
    stats = TlStats()
    store = TangleStore(game)
    domain = game.full_set()
    won_even = game.empty_set()
    strategy = np.full(game.n, NO_CHOICE, dtype=np.int64)
    current = game.max_priority & 1

    while domain.any():
        found = tl_search(game, domain, store)
        dominions, fresh = [], []
        for t in found:
            if len(t.escapes_within(domain)) == 0:
                dominions.append(t)
            elif t not in store:
                fresh.append(t)
        if mode is Mode.ATL and fresh:
            mine = [t for t in fresh if (t.top_priority & 1) == current]
            if not mine:
                current ^= 1
                mine = [t for t in fresh if (t.top_priority & 1) == current]
            fresh = mine
        learned = 0
        for t in fresh:
            if store.add(t):
                learned += 1
                stats.open_tangles += 1
                if log:
                    stats.tangle_log.append(
                        TangleEvent(t.player, t.top_priority, t.size, False, _top_vertex(game, t)))
        solved = 0
        for t in dominions:
            if not domain[t.vertices].all():
                continue  # swallowed by an earlier dominion of this round
            alpha = int(t.player)
            dmask, dstrat = tangle_attract(game, domain, alpha, t.vertices, store)
            # tangle vertices keep their witness, the rest use attractor choices
            dstrat[t.vertices] = np.where(t.witness != NO_CHOICE, t.witness, dstrat[t.vertices])
            mine = dmask & (game.owner == alpha)
            strategy[mine] = dstrat[mine]
            if alpha == 0:
                won_even |= dmask
            domain &= ~dmask
            store.remove_touching(dmask)
            stats.dominions += 1
            solved += 1
            if log:
                stats.tangle_log.append(
                    TangleEvent(t.player, t.top_priority, t.size, True, _top_vertex(game, t)))
        if not learned and not solved:
            raise NoProgress("tangle search found nothing new")
    return solution_from_sets(game, won_even, strategy), stats
