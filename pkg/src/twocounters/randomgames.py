"""Seeded random games for cross-checking the solvers."""
from __future__ import annotations

import numpy as np

from .game import ParityGame


def random_game(rng: np.random.Generator, n: int, max_priority: int = 6, max_degree: int = 3) -> ParityGame:
    """Uniform owners and priorities, 1..``max_degree`` distinct successors each."""
    priority = rng.integers(0, max_priority + 1, size=n)
    owner = rng.integers(0, 2, size=n)
    ptr, succ = [0], []
    for _ in range(n):
        k = int(rng.integers(1, min(max_degree, n) + 1))
        succ.extend(sorted(rng.choice(n, size=k, replace=False).tolist()))
        ptr.append(len(succ))
    return ParityGame(priority, owner, ptr, succ)


def random_corpus(seed: int, count: int, max_vertices: int = 8, **kw):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_vertices + 1))
        yield random_game(rng, n, **kw)
