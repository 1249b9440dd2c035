"""Fixed-pattern gadgets: guide rail, latch, circular latch and periodic counter.

All gadgets are laid out in a canonical frame (rows along +x, advancing
along +y, raised plane at +z) and built through the same blueprint as the
datapaths, so they inherit the static determinism check.
"""
from __future__ import annotations

import hashlib

from ..core.tiles import DIR_NAMES, TileType
from ..errors import InvalidOperand
from .builder import Blueprint
from .gadget import GadgetTiles

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
NX, NY, NZ = (-1, 0, 0), (0, -1, 0), (0, 0, -1)


def _gid(prefix: str, *args) -> str:
    return prefix + hashlib.sha1(repr(args).encode()).hexdigest()[:8]


def _bond(bp: Blueprint, a, vec, label, strength, a_input=False, b_input=True):
    """Glue the face of a toward its neighbour at a+vec and the matching face back."""
    b = (a[0] + vec[0], a[1] + vec[1], a[2] + vec[2])
    bp.glue(a, vec, label, strength, a_input, recv=False)
    bp.glue(b, (-vec[0], -vec[1], -vec[2]), label, strength, b_input, recv=True)


def _finish(bp: Blueprint, kind: str, seed, **fields) -> GadgetTiles:
    bp.seed = set(seed)
    tiles, placement, meta = bp.tiles()
    entries = {k: {p: placement[p] for p in v} for k, v in fields.pop("entries", {}).items()}
    extra_tiles = fields.pop("extra_tiles", [])
    info = fields.pop("info", {})
    info["entries"] = entries
    return GadgetTiles(gid=bp.gid, tiles=tiles + extra_tiles, seed={p: placement[p] for p in seed},
                       predicted_pose=None, expected=placement, meta=meta, kind=kind, info=info, **fields)


def _parse_mode(mode):
    if mode == "unlimited":
        return None
    if isinstance(mode, tuple) and len(mode) == 2 and mode[0] == "limited":
        n = mode[1]
    elif isinstance(mode, str) and mode.startswith("limited(") and mode.endswith(")"):
        n = int(mode[8:-1])
    elif isinstance(mode, int):
        n = mode
    else:
        raise InvalidOperand(f"unknown rail mode {mode!r}")
    if n < 1:
        raise InvalidOperand("a limited rail needs at least one row")
    return n


def emit_guide_rail(payload: str, mode="unlimited", gid: str | None = None) -> GadgetTiles:
    """Rail of rows [LB, payload...] advancing along +y through the LB column.

    Each LB attaches by one strength-2 glue; payload cells attach by their
    back glue plus the signal from the west.  Every payload cell exposes its
    bit on its top face.  A limited rail counts its rows in the LB tiles.
    """
    if not payload or any(c not in "01" for c in payload):
        raise InvalidOperand("a guide rail needs a non-empty bit string payload")
    limit = _parse_mode(mode)
    gid = gid or _gid("gr", payload, limit)
    bp = Blueprint(gid)
    w = len(payload) + 1
    rows = limit if limit is not None else 2
    for y in range(rows):
        left = (limit - 1 - y) if limit is not None else "u"
        for x in range(w):
            p = (x, y, 0)
            bp.put(p, "LB" if x == 0 else "row")
            if x == 0:
                if y > 0:
                    bp.glue(p, NY, bp.label("lb", left), 2, True)
                if limit is None or left > 0:
                    nxt = (limit - 2 - y) if limit is not None else "u"
                    bp.glue(p, Y, bp.label("lb", nxt), 2)
            else:
                bit = payload[x - 1]
                if y > 0:
                    bp.glue(p, NY, bp.label("b", bit), 1, True)
                bp.glue(p, Y, bp.label("b", bit), 1)
                bp.glue(p, Z, bp.label("rd", bit), 1)
                bp.glue(p, NX, bp.label("s", x - 1) if y == 0 else bp.label("r", x - 1), 2 if y == 0 else 1,
                        y > 0, recv=True)
            if x < w - 1:
                bp.glue(p, X, bp.label("s", x) if y == 0 else bp.label("r", x), 2 if y == 0 else 1)
    stopper = TileType.make(f"{gid}.stopper")
    g = _finish(bp, "guide-rail", [(x, 0, 0) for x in range(w)], extra_tiles=[stopper],
                info={"payload": payload, "limit": limit, "width": w})
    if limit is None:
        g.expected = {}
    return g


def rail_stopper(gadget: GadgetTiles, distance: int) -> dict:
    """Placement of a blocking tile on the LB column, distance rows ahead of the seed row."""
    return {(0, distance, 0): f"{gadget.gid}.stopper"}


def rail_rows(gadget: GadgetTiles, placements: dict) -> list:
    """Payload read back from the top-face glues, one string per grown row (seed row first)."""
    by_name = {t.name: t for t in gadget.tiles}
    w = gadget.info["width"]
    out = []
    y = 0
    while all((x, y, 0) in placements for x in range(w)):
        bits = []
        for x in range(1, w):
            g = by_name[placements[(x, y, 0)]].glue(4)
            bits.append(g.label.split("/")[-1].split(">")[0])
        out.append("".join(bits))
        y += 1
    return out


_DIRS = {"E": (X, Y), "W": (NX, NY), "N": (Y, NX), "S": (NY, X)}


def _frame(direction: str):
    if direction not in _DIRS:
        raise InvalidOperand(f"latch direction must be one of {sorted(_DIRS)}, got {direction!r}")
    a, b = _DIRS[direction]

    def at(x, y, z=0):
        return (a[0] * x + b[0] * y, a[1] * x + b[1] * y, z)

    def vec(v):
        return at(*v)
    return at, vec


def emit_latch(direction: str = "E", gid: str | None = None) -> GadgetTiles:
    """Latch letting growth pass in the given direction only.

    Layout along the allowed direction: allowed-side source A, pre-latch PL,
    latch LT, a two-way cell O and the prevented-side source Q.  PL grows a
    Gen/Key detour that cooperates with PL into LT.  Reaching LT from the
    prevented side leaves only strength-1 glues toward PL, so PL never forms.
    """
    at, vec = _frame(direction)
    gid = gid or _gid("lt", direction)
    bp = Blueprint(gid)
    cells = {"A": (-1, 0), "PL": (0, 0), "LT": (1, 0), "O": (2, 0), "Q": (3, 0), "Gen": (0, 1), "Key": (1, 1)}
    for role, (x, y) in cells.items():
        bp.put(at(x, y), role)
    P = lambda r: at(*cells[r])
    _bond(bp, P("A"), vec(X), bp.label("a"), 2)
    _bond(bp, P("PL"), vec(X), bp.label("l"), 1)
    _bond(bp, P("PL"), vec(Y), bp.label("g"), 2)
    _bond(bp, P("Gen"), vec(X), bp.label("gk"), 2)
    _bond(bp, P("Key"), vec(NY), bp.label("k"), 1)
    _bond(bp, P("LT"), vec(X), bp.label("o"), 2)
    _bond(bp, P("O"), vec(X), bp.label("q"), 2)
    return _finish(bp, "latch", [P("A")],
                   entries={"allowed": [P("A")], "prevented": [P("Q")], "both": [P("A"), P("Q")]},
                   info={"cells": {r: P(r) for r in cells}, "direction": direction})


def emit_circular_latch(length: int, gid: str | None = None) -> GadgetTiles:
    """Segment X..Z of the given length whose lower plane only grows from X toward Z.

    Cells x=0..length-1 at z=0: entry X, pre-latch PL, latch LT, two-way
    cells, entry Z.  A raised two-way lane at z=1 joins the two ends, so growth
    entering at Z climbs, crosses over the latch, drops onto X and then grows
    the latch in the preferred direction until it meets the original path.
    """
    if length < 4:
        raise InvalidOperand("a circular latch needs at least four cells (entry, pre-latch, latch, exit)")
    gid = gid or _gid("cl", length)
    bp = Blueprint(gid)
    n = length
    roles = {0: "X", 1: "PL", 2: "LT", n - 1: "Z"}
    for x in range(n):
        bp.put((x, 0, 0), roles.get(x, "two-way"))
        bp.put((x, 0, 1), "raised")
    bp.put((1, 1, 0), "Gen")
    bp.put((2, 1, 0), "Key")
    _bond(bp, (0, 0, 0), X, bp.label("xa"), 2)
    _bond(bp, (1, 0, 0), X, bp.label("l"), 1)
    _bond(bp, (1, 0, 0), Y, bp.label("g"), 2)
    _bond(bp, (1, 1, 0), X, bp.label("gk"), 2)
    _bond(bp, (2, 1, 0), NY, bp.label("k"), 1)
    for x in range(2, n - 1):
        _bond(bp, (x, 0, 0), X, bp.label("c", x + 1), 2)
    _bond(bp, (0, 0, 0), Z, bp.label("xu"), 2)
    _bond(bp, (n - 1, 0, 0), Z, bp.label("zu"), 2)
    for x in range(n - 1):
        _bond(bp, (x, 0, 1), X, bp.label("r", x + 1), 2)
    return _finish(bp, "circular-latch", [(0, 0, 0)],
                   entries={"preferred": [(0, 0, 0)], "non-preferred": [(n - 1, 0, 0)],
                            "both": [(0, 0, 0), (n - 1, 0, 0)]},
                   info={"length": n, "pre_latch": (1, 0, 0), "drop": (0, 0, 0)})


def _bits(v: int, k: int) -> str:
    return format(v, f"0{k}b")


def emit_periodic_counter(period, total: int, gid: str | None = None) -> GadgetTiles:
    """Periodic counter(s) under an outer decrementer, one step per pair of rows.

    Row layout [LB, layer counters..., outer counter, RB].  A step is a
    decrement row (head RB, leftward: borrow through the outer counter, then
    through each layer, collecting which layers reached zero) followed by a
    reload row (head LB, rightward: layers that reached zero reload their
    period).  The decrement row's LB exposes zero/<layer> on its west face,
    reporting the lowest layer that reached zero; it halts the gadget when
    the outer counter reaches zero.  Step s is the decrement row at y=2s-1.
    """
    periods = tuple(period) if isinstance(period, (tuple, list)) else (period,)
    if not periods or any(not isinstance(p, int) or p < 1 for p in periods):
        raise InvalidOperand(f"periods must be positive integers, got {period!r}")
    if not isinstance(total, int) or total < max(periods):
        raise InvalidOperand(f"total {total!r} must be at least the period")
    gid = gid or _gid("pc", periods, total)
    bp = Blueprint(gid)
    L = bp.label
    ks = [p.bit_length() for p in periods]
    ko = total.bit_length()
    # cell descriptors: ("L",), ("C", layer, index), ("O", index), ("R",)
    layout = [("L",)]
    for j, k in enumerate(ks):
        layout += [("C", j, b) for b in range(k)]
    layout += [("O", b) for b in range(ko)] + [("R",)]
    w = len(layout)
    values = [list(map(int, _bits(p, k))) for p, k in zip(periods, ks)]
    outer = list(map(int, _bits(total, ko)))

    def cell_code(d, bit=None):
        if d[0] == "C":
            return f"C{d[1]}.{d[2]}.{bit}"
        if d[0] == "O":
            return f"O{d[1]}.{bit}"
        return d[0]

    def row_bits():
        out = [None]
        for j in range(len(ks)):
            out += values[j]
        return out + outer + [None]

    y = 0
    # seed row
    bits = row_bits()
    for i, d in enumerate(layout):
        p = (i, 0, 0)
        bp.put(p, "LB" if i == 0 else "RB" if i == w - 1 else "row")
        c = cell_code(d, bits[i])
        bp.glue(p, Y, *((L("h", "R"), 2) if d[0] == "R" else (L("b", c), 1)))
    signals = []
    step = 0
    while True:
        step += 1
        y += 1
        # decrement row, head RB
        prev = bits
        new = list(prev)
        borrow, zero, flags, ozero = 1, 1, [], None
        sig_in = [None] * w
        sig_out = [None] * w
        sig = ("o", 1, 1)
        for i in range(w - 2, 0, -1):
            d = layout[i]
            sig_in[i] = sig
            b = prev[i]
            nb = b ^ borrow
            borrow = int(borrow and b == 0)
            zero = int(zero and nb == 0)
            new[i] = nb
            first = d[0] == "O" and d[1] == 0 or d[0] == "C" and d[2] == 0
            if first:
                if d[0] == "O":
                    ozero = zero
                else:
                    flags.append(zero)
                borrow, zero = 1, 1
                sig = ("i", ozero, "".join(map(str, flags)), 1, 1)
            else:
                sig = (sig[0], ozero, "".join(map(str, flags)), borrow, zero) if sig[0] == "i" else ("o", borrow, zero)
            sig_out[i] = sig
        sig_in[0] = sig
        flags = flags[::-1]
        lowest = next((j for j, f in enumerate(flags) if f), None)
        if lowest is not None:
            signals.append((step, lowest))
        halt = bool(ozero)
        fl = "".join(map(str, flags))
        for i, d in enumerate(layout):
            p = (i, y, 0)
            bp.put(p, "LB" if i == 0 else "RB" if i == w - 1 else "row")
            pc = cell_code(d, prev[i])
            c = cell_code(d, new[i])
            if d[0] == "R":
                bp.glue(p, NY, L("h", "R"), 2, True)
                bp.glue(p, NX, L("l", "o.1.1"), 1)
                bp.glue(p, Y, L("b", "R"), 1)
                continue
            bp.glue(p, NY, L("b", pc), 1, True)
            bp.glue(p, X, L("l", ".".join(map(str, sig_in[i]))), 1, True)
            if i > 0:
                bp.glue(p, NX, L("l", ".".join(map(str, sig_out[i]))), 1)
                bp.glue(p, Y, L("b", c), 1)
            else:
                if lowest is not None:
                    bp.glue(p, NX, L("zero", lowest), 1)
                    bp.cells[p].role = f"zero{lowest}"
                if halt:
                    bp.glue(p, Y, L("b", f"L{fl}"), 1)
                else:
                    bp.glue(p, Y, L("h", f"L{fl}"), 2)
        if halt:
            break
        # reload row, head LB
        y += 1
        prev = new
        new = list(prev)
        idx = 1
        for j, k in enumerate(ks):
            for b in range(k):
                if flags[j]:
                    new[idx] = values[j][b]
                idx += 1
        for i, d in enumerate(layout):
            p = (i, y, 0)
            bp.put(p, "LB" if i == 0 else "RB" if i == w - 1 else "row")
            if i == 0:
                bp.glue(p, NY, L("h", f"L{fl}"), 2, True)
                bp.glue(p, X, L("r", fl), 1)
                bp.glue(p, Y, L("b", "L"), 1)
                continue
            bp.glue(p, NY, L("b", cell_code(d, prev[i])), 1, True)
            bp.glue(p, NX, L("r", fl), 1, True)
            if d[0] == "R":
                bp.glue(p, Y, L("h", "R"), 2)
            else:
                bp.glue(p, X, L("r", fl), 1)
                bp.glue(p, Y, L("b", cell_code(d, new[i])), 1)
        bits = new
    return _finish(bp, "periodic-counter", [(i, 0, 0) for i in range(w)],
                   info={"periods": periods, "total": total, "signals": signals, "width": w})


def counter_signals(gadget: GadgetTiles, placements: dict) -> list:
    """(step, layer) for every exposed zero signal, read from the grown LB column."""
    by_name = {t.name: t for t in gadget.tiles}
    out = []
    for p, name in placements.items():
        if p[0] != 0:
            continue
        g = by_name[name].glue(3)
        if not g.is_null and "/zero/" in g.label:
            layer = int(g.label.split("/zero/")[1].split(">")[0])
            out.append(((p[1] + 1) // 2, layer))
    return sorted(out)


def counter_steps(placements: dict) -> int:
    """Number of decrement rows grown (the last step reached)."""
    ys = [p[1] for p in placements if p[0] == 0]
    return (max(ys) + 1) // 2 if ys else 0
