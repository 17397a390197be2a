"""The N-bit Two Counters game.

Each player owns an N-bit counter; bit 0 is the highest bit. Bit ``b`` of
player P is a gadget with a low vertex ``l``, a tangle vertex ``t``, a high
vertex ``h``, a chain of ``b`` selectors ``s(j)`` with path vertices
``a(j)``/``b(j)`` and a terminal ``z``. Even is the starting player, so Even's
low/high vertices carry the lower priorities and only Odd's ``z`` vertices get
the edge to the opponent's low vertex of the same bit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .game import ParityGame, Player


class InvalidParameter(ValueError):
    pass


class Kind(Enum):
    LOW = "l"
    TANGLE = "t"
    HIGH = "h"
    SELECTOR = "s"
    PATH_OWN = "a"
    PATH_OPP = "b"
    Z = "z"


@dataclass(frozen=True)
class BitRole:
    counter_player: Player
    bit: int
    kind: Kind
    index: Optional[int] = None

    @property
    def token(self) -> str:
        return self.kind.value if self.index is None else f"{self.kind.value}{self.index}"

    @property
    def label(self) -> str:
        return f"{'E' if self.counter_player is Player.EVEN else 'O'}{self.bit}_{self.token}"


@dataclass(frozen=True)
class TcGame:
    game: ParityGame
    roles: tuple
    n_bits: int

    def counter(self, player) -> np.ndarray:
        """Mask of the vertices belonging to ``player``'s counter."""
        player = Player(player)
        return np.array([r.counter_player is player for r in self.roles], dtype=bool)

    def find(self, player, bit, kind, index=None) -> int:
        player = Player(player)
        for v, r in enumerate(self.roles):
            if r.counter_player is player and r.bit == bit and r.kind is kind and r.index == index:
                return v
        raise KeyError((player, bit, kind, index))

    def roles_text(self) -> str:
        return "".join(
            f"{v} {r.counter_player} {r.bit} {r.token}\n" for v, r in enumerate(self.roles)
        )


def expected_vertex_count(n_bits: int) -> int:
    return 3 * n_bits * n_bits + 5 * n_bits


def expected_edge_count(n_bits: int) -> int:
    return 7 * n_bits * n_bits + 4 * n_bits


def _gadget_roles(player, bit):
    roles = [BitRole(player, bit, Kind.LOW), BitRole(player, bit, Kind.TANGLE)]
    for j in range(bit):
        roles += [
            BitRole(player, bit, Kind.SELECTOR, j),
            BitRole(player, bit, Kind.PATH_OWN, j),
            BitRole(player, bit, Kind.PATH_OPP, j),
        ]
    roles += [BitRole(player, bit, Kind.Z), BitRole(player, bit, Kind.HIGH)]
    return roles


def generate_two_counters(n_bits: int) -> TcGame:
    if n_bits < 1:
        raise InvalidParameter("the counters need at least one bit")
    N = n_bits
    roles = []
    for bit in range(N):
        for player in (Player.EVEN, Player.ODD):
            roles += _gadget_roles(player, bit)
    index = {(r.counter_player, r.bit, r.kind, r.index): v for v, r in enumerate(roles)}

    def vid(player, bit, kind, j=None):
        return index[(player, bit, kind, j)]

    def low(player, bit):
        return vid(player, bit, Kind.LOW)

    def selector(player, bit, j):
        # the chain ends in z
        return vid(player, bit, Kind.Z) if j == bit else vid(player, bit, Kind.SELECTOR, j)

    priority = np.zeros(len(roles), dtype=np.int64)
    owner = np.zeros(len(roles), dtype=np.int8)
    succs = [None] * len(roles)
    for v, r in enumerate(roles):
        P, b = r.counter_player, r.bit
        opp = P.opponent
        t_prio = 2 if P is Player.EVEN else 1
        if r.kind is Kind.LOW:
            pr = 2 * (N - b) + (2 if P is Player.ODD else 1)
            out = [vid(P, b, Kind.TANGLE)]
        elif r.kind is Kind.HIGH:
            pr = 4 * N - 2 * b + (3 if P is Player.ODD else 2)
            out = [low(P, b - 1 if b > 0 else N - 1)]
        elif r.kind is Kind.TANGLE:
            pr = t_prio
            out = [vid(P, b, Kind.HIGH), selector(P, b, 0)]
        elif r.kind is Kind.SELECTOR:
            pr = t_prio - 1
            out = [vid(P, b, Kind.PATH_OWN, r.index), vid(P, b, Kind.PATH_OPP, r.index)]
        elif r.kind is Kind.PATH_OWN:
            pr = t_prio - 1
            out = [selector(P, b, r.index + 1), low(P, r.index)]
        elif r.kind is Kind.PATH_OPP:
            pr = t_prio - 1
            out = [selector(P, b, r.index + 1), low(opp, r.index)]
        else:  # Z
            pr = t_prio - 1
            first = b if P is Player.ODD else b + 1
            out = [vid(P, b, Kind.TANGLE)] + [low(opp, k) for k in range(first, N)]
        if r.kind in (Kind.SELECTOR, Kind.Z):
            owner[v] = int(P)
        else:
            owner[v] = int(opp)
        priority[v] = pr
        succs[v] = out

    ptr = np.zeros(len(roles) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(s) for s in succs])
    flat = np.fromiter((w for s in succs for w in s), dtype=np.int64, count=int(ptr[-1]))
    game = ParityGame(priority, owner, ptr, flat, [r.label for r in roles])
    return TcGame(game, tuple(roles), N)


_LABEL = re.compile(r"^([EO])(\d+)_([lthsabz])(\d+)?$")


def role_of_label(label) -> Optional[BitRole]:
    """Inverse of :attr:`BitRole.label`; ``None`` for foreign labels."""
    m = _LABEL.match(label or "")
    if not m:
        return None
    player = Player.EVEN if m.group(1) == "E" else Player.ODD
    index = None if m.group(4) is None else int(m.group(4))
    return BitRole(player, int(m.group(2)), Kind(m.group(3)), index)


def roles_from_labels(game: ParityGame) -> Optional[tuple]:
    """Bit roles recovered from vertex labels, if every vertex carries one."""
    if game.labels is None:
        return None
    roles = tuple(role_of_label(lab) for lab in game.labels)
    return None if any(r is None for r in roles) else roles
