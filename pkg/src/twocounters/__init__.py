"""Parity game solvers and the Two Counters game family."""
from .game import (
    DanglingEdge,
    DuplicateSuccessor,
    EmptySuccessorList,
    GameError,
    ParityGame,
    Player,
    Solution,
    build_game,
)
from .generator import TcGame, generate_two_counters
from .oracle import TooLarge, oracle_solve
from .pgsolver import parse_pgsolver, read_game, serialize_pgsolver
from .priopromo import Policy, solve_pp
from .solvers import SOLVER_IDS, solve
from .tangle import Mode, solve_tl
from .verify import VerificationReport, verify_solution
from .zielonka import solve_zielonka

__all__ = [
    "DanglingEdge",
    "DuplicateSuccessor",
    "EmptySuccessorList",
    "GameError",
    "Mode",
    "ParityGame",
    "Player",
    "Policy",
    "SOLVER_IDS",
    "Solution",
    "TcGame",
    "TooLarge",
    "VerificationReport",
    "build_game",
    "generate_two_counters",
    "oracle_solve",
    "parse_pgsolver",
    "read_game",
    "serialize_pgsolver",
    "solve",
    "solve_pp",
    "solve_tl",
    "solve_zielonka",
    "verify_solution",
]
