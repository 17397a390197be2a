"""Parity game data model.

A game is stored as flat numpy arrays: ``priority`` and ``owner`` per vertex and
the successor relation in CSR form (``succ_ptr``/``succ``), with the reversed
relation precomputed for backward attractor searches. Vertex sets are boolean
masks over the vertex universe; strategies are int64 arrays where ``-1`` means
"no choice".
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Optional, Sequence

import numpy as np

NO_CHOICE = -1


class Player(IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self)

    @classmethod
    def of_priority(cls, p: int) -> "Player":
        return cls(p & 1)

    def __str__(self) -> str:
        return "Even" if self is Player.EVEN else "Odd"


class GameError(ValueError):
    """Base class for malformed games and game files."""


class EmptySuccessorList(GameError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} has no successors")
        self.vertex = vertex


class DanglingEdge(GameError):
    def __init__(self, u, v):
        super().__init__(f"edge {u} -> {v} leaves the vertex range")
        self.u, self.v = u, v


class DuplicateSuccessor(GameError):
    def __init__(self, u, v):
        super().__init__(f"vertex {u} lists successor {v} twice")
        self.u, self.v = u, v


def _freeze(a):
    a.setflags(write=False)
    return a


class ParityGame:
    """Immutable game graph. Vertex ids are ``0..n-1``."""

    def __init__(self, priority, owner, succ_ptr, succ, labels: Optional[Sequence[Optional[str]]] = None):
        priority = np.array(priority, dtype=np.int64)
        owner = np.array(owner, dtype=np.int8)
        succ_ptr = np.array(succ_ptr, dtype=np.int64)
        succ = np.array(succ, dtype=np.int64)
        n = len(priority)
        if len(owner) != n or len(succ_ptr) != n + 1:
            raise GameError("array lengths do not agree")
        if n and priority.min() < 0:
            raise GameError("priorities must be natural numbers")
        if n and not np.isin(owner, (0, 1)).all():
            raise GameError("owners must be 0 (Even) or 1 (Odd)")
        if succ_ptr[0] != 0 or succ_ptr[-1] != len(succ) or np.any(np.diff(succ_ptr) < 0):
            raise GameError("malformed successor offsets")
        for v in range(n):
            lo, hi = succ_ptr[v], succ_ptr[v + 1]
            if lo == hi:
                raise EmptySuccessorList(v)
            row = succ[lo:hi]
            bad = row[(row < 0) | (row >= n)]
            if len(bad):
                raise DanglingEdge(v, int(bad[0]))
            if len(np.unique(row)) != len(row):
                vals, counts = np.unique(row, return_counts=True)
                raise DuplicateSuccessor(v, int(vals[counts > 1][0]))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GameError("one label per vertex expected")
            if all(lab is None for lab in labels):
                labels = None

        self.priority = _freeze(priority)
        self.owner = _freeze(owner)
        self.succ_ptr = _freeze(succ_ptr)
        self.succ = _freeze(succ)
        self.labels = labels

        # reverse edges, stable so predecessors come out in ascending source id
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(succ_ptr))
        order = np.argsort(succ, kind="stable")
        self.pred = _freeze(src[order])
        self.pred_ptr = _freeze(np.concatenate(([0], np.cumsum(np.bincount(succ, minlength=n)))).astype(np.int64))

    @property
    def n(self) -> int:
        return len(self.priority)

    @property
    def edge_count(self) -> int:
        return len(self.succ)

    @property
    def max_priority(self) -> int:
        return int(self.priority.max()) if self.n else -1

    def successors(self, v: int) -> np.ndarray:
        return self.succ[self.succ_ptr[v]:self.succ_ptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.pred[self.pred_ptr[v]:self.pred_ptr[v + 1]]

    def label(self, v: int) -> Optional[str]:
        return None if self.labels is None else self.labels[v]

    def vertices_of(self, player) -> np.ndarray:
        return self.owner == int(player)

    def empty_set(self) -> np.ndarray:
        return np.zeros(self.n, dtype=bool)

    def full_set(self) -> np.ndarray:
        return np.ones(self.n, dtype=bool)

    def vertex_set(self, members: Iterable[int]) -> np.ndarray:
        mask = self.empty_set()
        mask[list(members)] = True
        return mask

    def __eq__(self, other):
        if not isinstance(other, ParityGame):
            return NotImplemented
        return (
            np.array_equal(self.priority, other.priority)
            and np.array_equal(self.owner, other.owner)
            and np.array_equal(self.succ_ptr, other.succ_ptr)
            and np.array_equal(self.succ, other.succ)
            and self.labels == other.labels
        )

    __hash__ = None

    def __repr__(self):
        return f"ParityGame(n={self.n}, edges={self.edge_count}, d={self.max_priority})"


def build_game(specs) -> ParityGame:
    """Build a game from ``(priority, owner, successors[, label])`` tuples.

    Vertex ``i`` is the ``i``-th spec; ``owner`` may be a :class:`Player` or 0/1.
    """
    specs = list(specs)
    if not specs:
        raise GameError("a game needs at least one vertex")
    priority, owner, ptr, succ, labels = [], [], [0], [], []
    for spec in specs:
        if len(spec) == 3:
            pr, ow, ss = spec
            lab = None
        else:
            pr, ow, ss, lab = spec
        priority.append(int(pr))
        owner.append(int(ow))
        succ.extend(int(s) for s in ss)
        ptr.append(len(succ))
        labels.append(lab)
    return ParityGame(priority, owner, ptr, succ, labels)


def members(mask) -> np.ndarray:
    """Vertex ids of a mask in ascending order."""
    return np.flatnonzero(mask)


def subgame_check(game: ParityGame, mask) -> bool:
    """True iff every vertex of ``mask`` keeps a successor inside ``mask``."""
    mask = np.asarray(mask, dtype=bool)
    inside = mask[game.succ]
    has = np.logical_or.reduceat(inside, game.succ_ptr[:-1]) if game.n else inside
    return bool(np.all(has[mask]))


def empty_strategy(game: ParityGame) -> np.ndarray:
    return np.full(game.n, NO_CHOICE, dtype=np.int64)


def strategy_items(strategy) -> dict:
    """Partial-map view of a strategy array."""
    return {int(v): int(strategy[v]) for v in np.flatnonzero(strategy != NO_CHOICE)}


@dataclass(frozen=True)
class Solution:
    """Winning partition plus positional strategies.

    ``winner[v]`` is 0 (Even) or 1 (Odd); ``strategy[v]`` is the chosen successor
    for every vertex owned by its winner, ``-1`` elsewhere.
    """

    winner: np.ndarray
    strategy: np.ndarray

    @property
    def won_even(self) -> np.ndarray:
        return self.winner == 0

    @property
    def won_odd(self) -> np.ndarray:
        return self.winner == 1

    def won_by(self, player) -> np.ndarray:
        return self.winner == int(player)

    def strategy_of(self, player) -> dict:
        s = np.where(self.winner == int(player), self.strategy, NO_CHOICE)
        return strategy_items(s)

    @property
    def strategy_even(self) -> dict:
        return self.strategy_of(Player.EVEN)

    @property
    def strategy_odd(self) -> dict:
        return self.strategy_of(Player.ODD)

    def same_partition(self, other: "Solution") -> bool:
        return np.array_equal(self.winner, other.winner)


def solution_from_sets(game: ParityGame, won_even, strategy) -> Solution:
    winner = np.where(np.asarray(won_even, dtype=bool), 0, 1).astype(np.int8)
    strat = np.asarray(strategy, dtype=np.int64).copy()
    strat[game.owner != winner] = NO_CHOICE
    return Solution(winner, strat)
