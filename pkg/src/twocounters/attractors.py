"""Attractor primitives shared by the solvers.

All functions take and return boolean vertex masks and int64 strategy arrays
(``-1`` = no choice); the work happens in :mod:`twocounters.kernels`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .game import NO_CHOICE, ParityGame, Player, empty_strategy

DEBUG = os.environ.get("TWOCOUNTERS_DEBUG", "") not in ("", "0")


class InvalidTangle(ValueError):
    pass


def as_mask(game: ParityGame, vertices) -> np.ndarray:
    a = np.asarray(vertices)
    if a.dtype == bool and a.shape == (game.n,):
        return a
    mask = game.empty_set()
    if a.size:
        mask[a.astype(np.int64).ravel()] = True
    return mask


def attract(game: ParityGame, domain, player, targets):
    """Least set inside ``domain`` from which ``player`` forces a visit to ``targets``.

    Returns ``(mask, strategy)``. Attracted vertices of ``player`` map to the
    successor through which they were attracted; target vertices of ``player``
    map to their first successor inside the result.
    """
    domain = as_mask(game, domain)
    tmask = as_mask(game, targets) & domain
    zmask = game.empty_set()
    strat = empty_strategy(game)
    kernels.attract(game.succ_ptr, game.succ, game.pred_ptr, game.pred, game.owner, domain,
                    int(player), np.flatnonzero(tmask), zmask, strat)
    return zmask, strat


@dataclass(frozen=True, eq=False)
class Tangle:
    """A strongly connected subgame won by ``player`` under ``witness``.

    ``vertices`` is sorted; ``witness`` is aligned with it and holds ``-1`` at
    opponent vertices. ``escapes`` are the outside successors of opponent
    vertices, taken over the whole game.
    """

    vertices: np.ndarray
    witness: np.ndarray
    top_priority: int
    escapes: np.ndarray

    @property
    def player(self) -> Player:
        return Player(self.top_priority & 1)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def key(self) -> bytes:
        return self.vertices.tobytes()

    def witness_map(self) -> dict:
        return {int(v): int(w) for v, w in zip(self.vertices, self.witness) if w != NO_CHOICE}

    def escapes_within(self, domain) -> np.ndarray:
        return self.escapes[domain[self.escapes]]


class _Buffer:
    """Growable int64 array."""

    def __init__(self, fill=0, dtype=np.int64):
        self.data = np.full(16, fill, dtype=dtype)
        self.fill = fill
        self.size = 0

    def extend(self, values):
        values = np.asarray(values)
        need = self.size + len(values)
        if need > len(self.data):
            grown = np.full(max(need, 2 * len(self.data)), self.fill, dtype=self.data.dtype)
            grown[:self.size] = self.data[:self.size]
            self.data = grown
        self.data[self.size:need] = values
        self.size = need

    def view(self):
        return self.data[:self.size]


class TangleStore:
    """Append-only set of tangles with a per-vertex index.

    Besides the :class:`Tangle` objects the store keeps flat buffers for the
    kernels, extended in place as tangles arrive.
    """

    def __init__(self, game: ParityGame):
        self.game = game
        self.tangles: list[Tangle] = []
        self._keys: dict[bytes, int] = {}
        self._by_vertex: dict[int, list[int]] = {}
        self._count = 0
        self._vptr = _Buffer()
        self._vptr.extend([0])
        self._verts = _Buffer()
        self._wit = _Buffer()
        self._eptr = _Buffer()
        self._eptr.extend([0])
        self._escs = _Buffer()
        self._parity = _Buffer()
        self._alive = _Buffer(False, dtype=bool)
        self._ei_ptr = np.zeros((2, game.n + 1), dtype=np.int64)
        self._ei_base = np.empty(0, dtype=np.int64)
        self._clear_overflow()

    def _clear_overflow(self):
        self._ei_head = np.full((2, self.game.n), -1, dtype=np.int64)
        self._ei_next = _Buffer()
        self._ei_tan = _Buffer()

    def _rebuild_index(self):
        # contiguous escape index over live tangles; later additions overflow
        # into linked lists until the next rebuild
        eptr = self._eptr.view()
        counts = np.diff(eptr)
        tan = np.repeat(np.arange(len(counts), dtype=np.int64), counts)
        esc = self._escs.view()
        keep = self._alive.view()[tan]
        tan, esc = tan[keep], esc[keep]
        par = self._parity.view()[tan]
        n = self.game.n
        order = np.lexsort((tan, esc, par))
        key = par[order] * n + esc[order]
        self._ei_base = tan[order]
        ptr = np.zeros(2 * n + 1, dtype=np.int64)
        ptr[1:] = np.cumsum(np.bincount(key, minlength=2 * n))
        self._ei_ptr = np.stack([ptr[:n + 1], ptr[n:]])
        self._clear_overflow()

    def __len__(self):
        return self._count

    def __iter__(self):
        alive = self._alive.view()
        return (t for i, t in enumerate(self.tangles) if alive[i])

    def __contains__(self, tangle: Tangle):
        i = self._keys.get(tangle.key)
        return i is not None and bool(self._alive.data[i])

    def containing(self, v: int) -> list[Tangle]:
        alive = self._alive.view()
        return [self.tangles[i] for i in self._by_vertex.get(v, ()) if alive[i]]

    def add(self, tangle: Tangle) -> bool:
        """Store ``tangle`` unless a live tangle with the same vertices exists."""
        if tangle in self:
            return False
        i = len(self.tangles)
        self.tangles.append(tangle)
        self._keys[tangle.key] = i
        for v in tangle.vertices.tolist():
            self._by_vertex.setdefault(v, []).append(i)
        self._verts.extend(tangle.vertices)
        self._vptr.extend([self._verts.size])
        self._wit.extend(tangle.witness)
        self._escs.extend(tangle.escapes)
        self._eptr.extend([self._escs.size])
        self._parity.extend([tangle.top_priority & 1])
        self._alive.extend([True])
        heads = self._ei_head[tangle.top_priority & 1]
        for w in tangle.escapes.tolist():
            self._ei_next.extend([heads[w]])
            heads[w] = self._ei_tan.size
            self._ei_tan.extend([i])
        self._count += 1
        if self._ei_tan.size > max(256, len(self._ei_base) // 4):
            self._rebuild_index()
        return True

    def remove_touching(self, mask) -> int:
        """Drop every tangle with a vertex in ``mask``; returns how many went."""
        dropped = 0
        alive = self._alive.data
        for v in np.flatnonzero(mask).tolist():
            for i in self._by_vertex.pop(v, ()):
                if alive[i]:
                    alive[i] = False
                    del self._keys[self.tangles[i].key]
                    dropped += 1
        self._count -= dropped
        return dropped

    def arrays(self):
        """Flat view consumed by :func:`kernels.tangle_attract`."""
        return (self._vptr.view(), self._verts.view(), self._wit.view(), self._eptr.view(),
                self._escs.view(), self._parity.view(), self._alive.view(), self._ei_ptr,
                self._ei_base, self._ei_head, self._ei_next.view(), self._ei_tan.view())


def tangle_attract(game: ParityGame, domain, player, targets, store: TangleStore | None):
    """Attractor that also absorbs ``player``'s tangles whose escapes are attracted.

    Only tangles lying inside ``domain`` take part, and escapes leaving
    ``domain`` are ignored, mirroring how ordinary attraction ignores edges
    that leave the subgame.
    """
    if store is None or not len(store):
        return attract(game, domain, player, targets)
    domain = as_mask(game, domain)
    tmask = as_mask(game, targets) & domain
    zmask = game.empty_set()
    strat = empty_strategy(game)
    kernels.tangle_attract(game.succ_ptr, game.succ, game.pred_ptr, game.pred, game.owner, domain,
                           int(player), np.flatnonzero(tmask), zmask, strat, *store.arrays())
    return zmask, strat


def restricted_choice(game: ParityGame, player, strategy) -> np.ndarray:
    """Choice array keeping ``strategy`` only at vertices of ``player``."""
    choice = np.where(game.owner == int(player), strategy, NO_CHOICE)
    return choice.astype(np.int64)


def bottom_sccs(game: ParityGame, region, strategy, player=None) -> list:
    """Bottom SCCs of ``region`` where ``player`` follows ``strategy``.

    ``player`` defaults to the parity of the highest priority in the region.
    Components are returned as masks, ordered by smallest member.
    """
    region = as_mask(game, region)
    if not region.any():
        return []
    if player is None:
        player = int(game.priority[region].max()) & 1
    choice = restricted_choice(game, player, strategy)
    comp = kernels.scc_labels(game.succ_ptr, game.succ, region, choice)
    keep = kernels.bottom_components(game.succ_ptr, game.succ, region, choice, comp)
    result = []
    for c in np.flatnonzero(keep):
        result.append(comp == c)
    result.sort(key=lambda m: int(np.argmax(m)))
    return result


def make_tangle(game: ParityGame, scc, strategy, check: bool | None = None) -> Tangle:
    scc = as_mask(game, scc)
    verts = np.flatnonzero(scc)
    top = int(game.priority[verts].max())
    player = top & 1
    own = game.owner[verts] == player
    witness = np.where(own, np.asarray(strategy)[verts], NO_CHOICE).astype(np.int64)
    opp = verts[~own]
    if len(opp):
        outs = np.concatenate([game.successors(v) for v in opp])
        escapes = np.unique(outs[~scc[outs]])
    else:
        escapes = np.empty(0, dtype=np.int64)
    tangle = Tangle(verts, witness, top, escapes.astype(np.int64))
    if DEBUG if check is None else check:
        check_tangle(game, tangle)
    return tangle


def check_tangle(game: ParityGame, tangle: Tangle) -> None:
    """Raise :class:`InvalidTangle` unless the tangle definition holds."""
    from .verify import losing_cycle

    mask = as_mask(game, tangle.vertices)
    choice = np.full(game.n, NO_CHOICE, dtype=np.int64)
    choice[tangle.vertices] = tangle.witness
    own = tangle.vertices[tangle.witness != NO_CHOICE]
    if np.any(game.owner[tangle.vertices][tangle.witness != NO_CHOICE] != int(tangle.player)):
        raise InvalidTangle("witness covers opponent vertices")
    if np.count_nonzero(game.owner[tangle.vertices] == int(tangle.player)) != len(own):
        raise InvalidTangle("witness misses a vertex of the tangle's player")
    if not mask[choice[own]].all():
        raise InvalidTangle("witness leaves the tangle")
    comp = kernels.scc_labels(game.succ_ptr, game.succ, mask, choice)
    if len(np.unique(comp[mask])) != 1:
        raise InvalidTangle("tangle is not strongly connected")
    bad = losing_cycle(game, mask, choice, tangle.player)
    if bad is not None:
        raise InvalidTangle(f"player {tangle.player} loses a cycle through {sorted(bad)}")
