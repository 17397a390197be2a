"""Independent checks of solutions and of cycle conditions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .game import NO_CHOICE, ParityGame, Player, Solution


class ShapeMismatch(ValueError):
    pass


class Violation(Enum):
    NOT_PARTITION = "NotPartition"
    STRATEGY_DOMAIN = "StrategyDomain"
    STRATEGY_EDGE = "StrategyEdge"
    REGION_NOT_CLOSED = "RegionNotClosed"
    LOSING_CYCLE = "LosingCycle"


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {kind for kind, _ in self.violations}

    def add(self, kind: Violation, vertices):
        self.violations.append((kind, sorted(int(v) for v in vertices)))

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(f"{k.value} {vs[:10]}" for k, vs in self.violations)


def losing_cycle(game: ParityGame, mask, choice, player):
    """Find a cycle inside ``mask`` whose top priority has the wrong parity.

    Vertices with ``choice >= 0`` follow only that edge. Components are peeled:
    a nontrivial SCC whose top priority belongs to ``player`` loses its
    top-priority vertices and is searched again. Returns the vertex set of an
    offending component, or ``None`` when ``player`` wins every cycle.
    """
    player = int(player)
    work = [np.asarray(mask, dtype=bool).copy()]
    choice = np.asarray(choice, dtype=np.int64)
    while work:
        m = work.pop()
        if not m.any():
            continue
        comp = kernels.scc_labels(game.succ_ptr, game.succ, m, choice)
        ids = np.unique(comp[m])
        for c in ids.tolist():
            cm = comp == c
            size = int(cm.sum())
            if size == 1:
                v = int(np.flatnonzero(cm)[0])
                succ = game.successors(v)
                if choice[v] >= 0:
                    succ = succ[succ == choice[v]]
                if v not in succ.tolist():
                    continue
            top = int(game.priority[cm].max())
            if (top & 1) != player:
                return set(np.flatnonzero(cm).tolist())
            rest = cm & (game.priority != top)
            if rest.any():
                work.append(rest)
    return None


def verify_solution(game: ParityGame, solution: Solution) -> VerificationReport:
    winner = np.asarray(solution.winner)
    strategy = np.asarray(solution.strategy)
    if winner.shape != (game.n,) or strategy.shape != (game.n,):
        raise ShapeMismatch(f"solution covers {len(winner)} vertices, game has {game.n}")
    if np.any((strategy != NO_CHOICE) & ((strategy < 0) | (strategy >= game.n))):
        raise ShapeMismatch("strategy refers to unknown vertices")
    report = VerificationReport()

    bad = np.flatnonzero((winner != 0) & (winner != 1))
    if len(bad):
        report.add(Violation.NOT_PARTITION, bad)
        return report

    own = game.owner == winner
    missing = np.flatnonzero(own & (strategy == NO_CHOICE))
    extra = np.flatnonzero(~own & (strategy != NO_CHOICE))
    if len(missing) or len(extra):
        report.add(Violation.STRATEGY_DOMAIN, np.concatenate([missing, extra]))
    wrong = []
    for v in np.flatnonzero(own & (strategy != NO_CHOICE)).tolist():
        s = int(strategy[v])
        if s not in game.successors(v).tolist() or winner[s] != winner[v]:
            wrong.append(v)
    if wrong:
        report.add(Violation.STRATEGY_EDGE, wrong)

    # losers must not be able to leave their opponent's region
    src = np.repeat(np.arange(game.n), np.diff(game.succ_ptr))
    leaks = (winner[src] != winner[game.succ]) & ~own[src]
    if leaks.any():
        report.add(Violation.REGION_NOT_CLOSED, np.unique(src[leaks]))
    if not report.ok:
        return report

    choice = np.where(own, strategy, NO_CHOICE).astype(np.int64)
    for p in (Player.EVEN, Player.ODD):
        region = winner == int(p)
        cyc = losing_cycle(game, region, choice, p)
        if cyc is not None:
            report.add(Violation.LOSING_CYCLE, cyc)
    return report


def format_solution(solution: Solution) -> str:
    lines = []
    for v, (w, s) in enumerate(zip(solution.winner.tolist(), solution.strategy.tolist())):
        lines.append(f"{v} {w}" + (f" {s}" if s != NO_CHOICE else ""))
    return "\n".join(lines) + "\n"


def parse_solution(text: str, n: int | None = None) -> Solution:
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) not in (2, 3) or not all(p.lstrip("-").isdigit() for p in parts):
            raise ValueError(f"line {lineno}: expected '<id> <winner> [<successor>]'")
        v, w = int(parts[0]), int(parts[1])
        rows[v] = (w, int(parts[2]) if len(parts) == 3 else NO_CHOICE)
    size = n if n is not None else (max(rows) + 1 if rows else 0)
    if any(v < 0 or v >= size for v in rows) or len(rows) != size:
        raise ShapeMismatch("solution does not list every vertex exactly once")
    winner = np.array([rows[v][0] for v in range(size)], dtype=np.int8)
    strategy = np.array([rows[v][1] for v in range(size)], dtype=np.int64)
    return Solution(winner, strategy)
