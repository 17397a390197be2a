"""Uniform entry point over every solver variant."""
from __future__ import annotations

from dataclasses import dataclass

from .game import ParityGame, Solution
from .priopromo import Policy, solve_pp
from .tangle import Mode, solve_tl
from .zielonka import solve_zielonka

SOLVER_IDS = ("zlk", "pp", "pp+", "rr", "dp", "rrdp", "tl", "atl")

STATISTIC = {
    "zlk": "calls",
    "pp": "promotions",
    "pp+": "promotions",
    "rr": "promotions",
    "dp": "promotions",
    "rrdp": "promotions",
    "tl": "tangles",
    "atl": "tangles",
}


class UnknownSolver(ValueError):
    pass


@dataclass
class SolveResult:
    solver: str
    solution: Solution
    statistic: str
    value: int
    stats: object

    def trace_lines(self, roles=None) -> list:
        """Trace events as text, one per line."""
        st = self.stats
        if self.solver == "zlk":
            return [e.trace_line(roles) for e in st.distraction_events]
        if self.statistic == "promotions":
            return [p.trace_line() for p in st.promotion_log]
        return [e.trace_line() for e in st.tangle_log]


def solve(game: ParityGame, solver: str, trace: bool = False) -> SolveResult:
    solver = solver.lower()
    if solver == "zlk":
        sol, st = solve_zielonka(game, trace=trace)
    elif solver in ("tl", "atl"):
        sol, st = solve_tl(game, Mode(solver), log=trace)
    elif solver in STATISTIC:
        sol, st = solve_pp(game, Policy(solver), log=trace)
    else:
        raise UnknownSolver(f"unknown solver {solver!r}; choose from {', '.join(SOLVER_IDS)}")
    return SolveResult(solver, sol, STATISTIC[solver], st.value, st)
