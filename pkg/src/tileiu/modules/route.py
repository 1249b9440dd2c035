"""Navigation programs that bring a datapath's last row to a given position.

A route is a prefix, then straight legs separated by up to three turns
(right, left, rise, fall).  For a fixed turn sequence and row width, the
turn displacements are constants and each leg runs along a fixed axis, so
the leg lengths follow from the target by one linear solve per axis.  The
row width depends on the legs through the counter width, so the solve is
repeated until the width it assumes is the width it produces.
"""
from __future__ import annotations

import itertools

from ..datapath.isa import (BUFFER, FALL, LEFT, RIGHT, RISE, DatapathProgram, forward,
                            interpret_pose)
from ..errors import InvalidOperand

TURNS = (RIGHT, LEFT, RISE, FALL)


def leg(n: int) -> list:
    """Instructions advancing exactly n rows."""
    if n <= 0:
        return []
    if n <= 2:
        return [BUFFER] * n
    if n % 2:
        return [forward((n - 1) // 2)]
    return [forward((n - 2) // 2), BUFFER]


def _program(prefix, turns, legs, payload):
    body = list(prefix)
    for i, t in enumerate(turns):
        body += leg(legs[i]) + [t]
    body += leg(legs[len(turns)])
    return DatapathProgram(tuple(body), payload=payload)


def _solve(prefix, turns, target, payload, inputs):
    legs = [0] * (len(turns) + 1)
    for _ in range(40):
        base = _program(prefix, turns, legs, payload)
        # leg directions: the forward axis in force after each turn
        dirs = []
        probe = interpret_pose(DatapathProgram(tuple(prefix), payload=payload), inputs).frame
        dirs.append(probe.forward)
        fr = probe
        for t in turns:
            fr = {"right": fr.turn_right, "left": fr.turn_left, "rise": fr.rise, "fall": fr.fall}[t.kind]()
            dirs.append(fr.forward)
        # displacement with the current legs removed
        pos = interpret_pose(base, inputs).position
        rest = [target[a] - pos[a] + sum(legs[i] * dirs[i][a] for i in range(len(legs))) for a in range(3)]
        new = [0] * len(legs)
        for a in range(3):
            if rest[a] == 0:
                continue
            carrier = next((i for i, d in enumerate(dirs) if d[a] != 0 and d[a] * rest[a] > 0), None)
            if carrier is None:
                return None
            new[carrier] += abs(rest[a])
        if new == legs:
            prog = _program(prefix, turns, legs, payload)
            return prog if interpret_pose(prog, inputs).position == tuple(target) else None
        legs = new
    return None


def plan_route(target, payload: str = "0", prefix=(), inputs=None, max_turns: int = 3) -> DatapathProgram:
    """Shortest-found program whose final row starts at ``target`` (relative to the first row)."""
    target = tuple(target)
    best = None
    for k in range(max_turns + 1):
        for turns in itertools.product(TURNS, repeat=k):
            prog = _solve(tuple(prefix), turns, target, payload, inputs)
            if prog is not None:
                rows = sum(2 * i.operand + 1 if i.kind == "forward" else 1 for i in prog.body)
                if best is None or rows < best[0]:
                    best = (rows, prog)
        if best is not None:
            return best[1]
    raise InvalidOperand(f"no route with at most {max_turns} turns reaches {target}")
