"""Reading and writing games in PGSolver's text format.

    parity <max-id>;
    <id> <priority> <owner> <succ>[,<succ>]*[ "<label>"];

Owner 0 is Even, 1 is Odd. Ids must be dense; sparse files are rejected
instead of being renumbered.
"""
from __future__ import annotations

import re

from .game import GameError, ParityGame

_HEADER = re.compile(r"^parity\s+(\d+)\s*;$")
_VERTEX = re.compile(
    r'^(\d+)\s+(\d+)\s+([01])\s+(\d+(?:\s*,\s*\d+)*)(?:\s+"((?:[^"\\]|\\.)*)")?\s*;$'
)


class PGSolverSyntaxError(GameError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class MissingVertex(GameError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is never declared")
        self.vertex = vertex


def _unescape(s):
    return re.sub(r"\\(.)", r"\1", s)


def _escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def parse_pgsolver(text: str) -> ParityGame:
    lines = text.split("\n")
    header_seen = False
    max_id = None
    rows = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if not header_seen:
            m = _HEADER.match(line)
            if not m:
                raise PGSolverSyntaxError(lineno, "expected 'parity <max-id>;'")
            max_id = int(m.group(1))
            header_seen = True
            continue
        m = _VERTEX.match(line)
        if not m:
            raise PGSolverSyntaxError(lineno, f"cannot parse vertex line {raw!r}")
        vid = int(m.group(1))
        if vid in rows:
            raise PGSolverSyntaxError(lineno, f"vertex {vid} declared twice")
        if vid > max_id:
            raise PGSolverSyntaxError(lineno, f"vertex {vid} exceeds declared maximum {max_id}")
        succs = [int(s) for s in m.group(4).split(",")]
        label = _unescape(m.group(5)) if m.group(5) is not None else None
        rows[vid] = (int(m.group(2)), int(m.group(3)), succs, label)
    if not header_seen:
        raise PGSolverSyntaxError(1, "missing header")
    for vid in range(max_id + 1):
        if vid not in rows:
            raise MissingVertex(vid)

    priority, owner, ptr, succ, labels = [], [], [0], [], []
    for vid in range(max_id + 1):
        pr, ow, ss, lab = rows[vid]
        priority.append(pr)
        owner.append(ow)
        succ.extend(ss)
        ptr.append(len(succ))
        labels.append(lab)
    return ParityGame(priority, owner, ptr, succ, labels)


def serialize_pgsolver(game: ParityGame) -> str:
    out = [f"parity {game.n - 1};\n"]
    pr, ow = game.priority.tolist(), game.owner.tolist()
    ptr, succ = game.succ_ptr.tolist(), game.succ.tolist()
    for v in range(game.n):
        line = f"{v} {pr[v]} {ow[v]} " + ",".join(map(str, succ[ptr[v]:ptr[v + 1]]))
        lab = game.label(v)
        if lab is not None:
            line += f' "{_escape(lab)}"'
        out.append(line + ";\n")
    return "".join(out)


def read_game(path) -> ParityGame:
    import sys

    if str(path) == "-":
        return parse_pgsolver(sys.stdin.read())
    with open(path) as fh:
        return parse_pgsolver(fh.read())
