"""Priority promotion with the PP, PP+, RR, DP and RRDP policies.

The region map ``r`` holds a region priority per vertex (``-1`` when the
vertex is in no region). The current subgame at cursor ``p`` is every vertex
of the domain whose region is not above ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .game import NO_CHOICE, ParityGame, Player, Solution

UNASSIGNED = -1


class Policy(Enum):
    PP = "pp"
    PPPLUS = "pp+"
    RR = "rr"
    DP = "dp"
    RRDP = "rrdp"

    @property
    def restores(self) -> bool:
        return self in (Policy.RR, Policy.RRDP)

    @property
    def delays(self) -> bool:
        return self in (Policy.DP, Policy.RRDP)

    @property
    def keeps_own(self) -> bool:
        return self is not Policy.PP


class NonTermination(RuntimeError):
    pass


@dataclass(frozen=True)
class Promotion:
    source: int
    target: int
    delayed: bool = False
    recovered: bool = False

    def trace_line(self) -> str:
        line = f"promotion from={self.source} to={self.target}"
        if self.delayed:
            line += " delayed"
        if self.recovered:
            line += " recovered"
        return line


@dataclass
class PpStats:
    promotions: int = 0
    delayed: int = 0
    restorations: int = 0
    dominions: int = 0
    promotion_log: list = field(default_factory=list)

    @property
    def value(self) -> int:
        return self.promotions


class _Search:
    """State of one dominion search over ``domain``."""

    def __init__(self, game: ParityGame, domain, policy: Policy, stats: PpStats, log: bool):
        self.g = game
        self.domain = domain
        self.policy = policy
        self.stats = stats
        self.log = log
        self.r = np.full(game.n, UNASSIGNED, dtype=np.int64)
        self.strat = np.full(game.n, NO_CHOICE, dtype=np.int64)
        self.top = int(game.priority[domain].max())
        self.pending = set()   # regions to re-check before reuse (RR)
        self.origin = {}       # region -> priority it was last promoted from
        self.merged = set()    # regions produced by a promotion (DP)
        self.delayed = []      # (region, source, target) waiting for commit (DP)

    def _record(self, promo: Promotion):
        if self.log:
            self.stats.promotion_log.append(promo)

    def _reset(self, mask):
        for q in np.unique(self.r[mask]).tolist():
            self.merged.discard(q)
            self.pending.discard(q)
            self.origin.pop(q, None)
        self.r[mask] = UNASSIGNED

    def _lower(self, q, opponent_only, alpha):
        lower = (self.r >= 0) & (self.r < q)
        if opponent_only:
            lower &= (self.r & 1) != alpha
        return lower

    def _promote(self, zmask, source, q, alpha, delayed=False):
        r = self.r
        r[zmask] = q
        if self.policy.restores:
            for p2 in np.unique(r[self._lower(q, True, alpha)]).tolist():
                self.pending.add(p2)
        else:
            self._reset(self._lower(q, self.policy.keeps_own, alpha))
        self.origin[q] = source
        self.stats.promotions += 1
        if delayed:
            self.stats.delayed += 1
        self._record(Promotion(source, q, delayed))

    def _restore_or_reset(self, p):
        """Lazy region check: keep region ``p`` if its strategy still stays inside."""
        self.pending.discard(p)
        region = (self.r == p) & self.domain
        if not region.any():
            return
        if self._intact(region, p, strict=False):
            self.stats.restorations += 1
            if p in self.origin:
                self._record(Promotion(self.origin[p], p, recovered=True))
        else:
            self._reset(region)

    def _intact(self, region, q, strict) -> bool:
        """Whether the recorded strategy of region ``q`` still holds.

        Strictly, every choice must stay in the region. Otherwise a region
        only breaks when a choice now leads into a higher region of the
        opponent.
        """
        own = np.flatnonzero(region & (self.g.owner == (q & 1)))
        s = self.strat[own]
        if strict:
            return bool(np.all(s >= 0)) and bool(np.all(self.r[s] == q))
        rs = self.r[s[s >= 0]]
        return not np.any((rs > q) & ((rs & 1) != (q & 1)))

    def _should_delay(self, q, alpha) -> bool:
        if q == self.top:
            return False
        for f in self.merged:
            if f < q and (f & 1) != alpha and np.any(self.r == f):
                return True
        return False

    def _commit_delayed(self):
        # player of the highest merged region once all delayed promotions applied
        shadow = set(self.merged)
        for _, _, q in self.delayed:
            shadow.add(q)
        winner = max(shadow) & 1
        chosen = [d for d in self.delayed if (d[2] & 1) == winner] or list(self.delayed)
        self.delayed = []
        for zmask, source, q in chosen:
            self._promote(zmask, source, q, q & 1, delayed=True)
        self.merged.clear()
        return max(q for _, _, q in chosen)

    def run(self):
        g, r = self.g, self.r
        p = self._next_level(self.domain)
        while True:
            alpha = p & 1
            if p in self.pending:
                self._restore_or_reset(p)
            sub = self.domain & (r <= p)
            targets = np.flatnonzero(sub & ((r == p) | (g.priority == p)))
            if not len(targets):
                # a reset region can leave its level without vertices
                if not sub.any():
                    if self.delayed:
                        p = self._commit_delayed()
                        continue
                    raise NonTermination("the lowest region is open")
                p = self._next_level(sub)
                continue
            zmask = np.zeros(g.n, dtype=bool)
            fresh = np.full(g.n, NO_CHOICE, dtype=np.int64)
            kernels.attract(g.succ_ptr, g.succ, g.pred_ptr, g.pred, g.owner, sub, alpha,
                            targets, zmask, fresh)
            self._merge_strategy(zmask, fresh, alpha, p)

            inside = zmask[g.succ]
            has_inside = np.logical_or.reduceat(inside, g.succ_ptr[:-1])
            mine = zmask & (g.owner == alpha)
            opened = bool(np.any(mine & ~has_inside))
            src_theirs = np.repeat(zmask & (g.owner != alpha), np.diff(g.succ_ptr))
            esc = np.unique(g.succ[src_theirs & ~inside])
            esc = esc[self.domain[esc]]

            if opened or np.any(sub[esc]):
                r[zmask] = p
                rest = sub & ~zmask
                if not rest.any():
                    if self.delayed:
                        p = self._commit_delayed()
                        continue
                    raise NonTermination("the lowest region is open")
                p = self._next_level(rest)
            elif len(esc):
                q = int(r[esc].min())
                if self.policy.delays and self._should_delay(q, alpha):
                    self.delayed.append((zmask.copy(), p, q))
                    r[zmask] = p
                    rest = sub & ~zmask
                    if not rest.any():
                        p = self._commit_delayed()
                        continue
                    p = self._next_level(rest)
                    continue
                self.delayed = []
                self._promote(zmask, p, q, alpha)
                self.merged.add(q)
                p = q
            else:
                return self._maximize(zmask, alpha)

    def remove(self, dominion) -> bool:
        """Drop a solved dominion; returns False once nothing is left."""
        self.domain = self.domain & ~dominion
        self.delayed = []
        self.merged.clear()
        if not self.domain.any():
            return False
        self.top = int(self.g.priority[self.domain].max())
        if self.policy is Policy.PP:
            self._reset(self.r >= 0)
            return True
        self._reset(dominion | ~self.domain)
        for q in np.unique(self.r[self.r >= 0]).tolist():
            region = self.r == q
            if not self._intact(region, q, strict=True):
                self._reset(region)
        return True

    def _next_level(self, rest):
        r = self.r[rest]
        return int(np.max(np.where(r >= 0, r, self.g.priority[rest])))

    def _merge_strategy(self, zmask, fresh, alpha, p):
        """Keep recorded choices that stay inside the region, take the attractor's otherwise."""
        ids = np.flatnonzero(zmask & (self.g.owner == alpha))
        old = self.strat[ids]
        keep = (self.r[ids] == p) & (old >= 0)
        keep[keep] = zmask[old[keep]]
        todo = ids[~keep]
        self.strat[todo] = fresh[todo]

    def _maximize(self, zmask, alpha):
        g, strat = self.g, self.strat
        full = np.zeros(g.n, dtype=bool)
        fresh = np.full(g.n, NO_CHOICE, dtype=np.int64)
        kernels.attract(g.succ_ptr, g.succ, g.pred_ptr, g.pred, g.owner, self.domain, alpha,
                        np.flatnonzero(zmask), full, fresh)
        result = np.full(g.n, NO_CHOICE, dtype=np.int64)
        mine = full & (g.owner == alpha)
        result[mine] = fresh[mine]
        old = mine & zmask
        ids = np.flatnonzero(old)
        ok = strat[ids] >= 0
        ok[ok] = zmask[strat[ids][ok]]
        result[ids[ok]] = strat[ids[ok]]
        self.stats.dominions += 1
        return Player(alpha), full, result


def search_dominion(game: ParityGame, domain, policy: Policy, stats: PpStats | None = None,
                    log: bool = False):
    """Find one dominion inside ``domain``; returns ``(player, mask, strategy)``."""
    stats = stats if stats is not None else PpStats()
    return _Search(game, np.asarray(domain, dtype=bool), Policy(policy), stats, log).run()


def solve_pp(game: ParityGame, policy=Policy.PP, log: bool = False):
    """Solve ``game`` by repeated dominion search; returns ``(Solution, PpStats)``.

    Plain PP starts every search from scratch. The other policies carry the
    regions that survive the removal of a dominion into the next search.
    """
    policy = Policy(policy)
    stats = PpStats()
    winner = np.full(game.n, -1, dtype=np.int8)
    strategy = np.full(game.n, NO_CHOICE, dtype=np.int64)
    search = _Search(game, np.ones(game.n, dtype=bool), policy, stats, log)
    while True:
        player, dom, strat = search.run()
        winner[dom] = int(player)
        strategy[dom] = strat[dom]
        if not search.remove(dom):
            break
    return Solution(winner, strategy), stats
