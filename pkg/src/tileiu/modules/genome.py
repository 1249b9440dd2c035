"""Genome: the band structure that carries the program around a macrotile.

Three rings sit in the centre planes z = c, x = c and y = c at growing
insets from the faces.  Each ring runs through four sides; its corners and
side midpoints are checkpoints, and every stretch between checkpoints is a
circular latch (entry, pre-latch, latch, two-way cells) in the ring plane.
A single raised lane one cell off the ring plane joins all of a ring's
checkpoints, so growth entering anywhere climbs, circles the ring above the
latches and drops onto every checkpoint, after which each latch fills in its
preferred direction.  Side midpoints facing each other across rings are
joined by two-way connectors, so one ring reached means all three grow.
Corners facing the macrotile faces carry output stubs toward the six
neighbours; a stub only starts when a trigger tile (the differentiation
signal) cooperates with the corner.

Walking one side of one ring in one direction is an orientation: 3 rings x
4 sides x 2 directions = 24, each passing one midpoint (a turn into the
cross-ring connector) and ending on one corner (an intersection).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.tiles import DIR_NAMES, OFFSETS
from ..datapath.builder import Blueprint
from ..datapath.gadget import GadgetTiles
from ..datapath.gadgets import _bond
from ..datapath.isa import vadd, vneg
from ..errors import LayoutMismatch
from .glue_table import gen_glue_table
from .route import plan_route

RINGS = (("Z", 0, 1, 2), ("X", 1, 2, 0), ("Y", 0, 2, 1))   # name, u axis, v axis, normal axis
INIT_ORDER = ("external-communication", "bracket", "adder")
CRITICAL = ("Z", 0, 1)
KINDS = ("prop", "turn", "intersection", "query", "initialize")


def _vec(axis: int, sign: int = 1) -> tuple:
    v = [0, 0, 0]
    v[axis] = sign
    return tuple(v)


def _point(axes, u, v, c):
    _, ua, va, na = axes
    p = [0, 0, 0]
    p[ua], p[va], p[na] = u, v, c
    return tuple(p)


def ring_cells(m: int, axes, inset: int) -> list:
    """Cells of one ring in loop order, starting at its (lo, lo) corner."""
    c, lo, hi = m // 2, inset, m - 1 - inset
    uv = [(u, lo) for u in range(lo, hi)] + [(hi, v) for v in range(lo, hi)]
    uv += [(u, hi) for u in range(hi, lo, -1)] + [(lo, v) for v in range(hi, lo, -1)]
    return [_point(axes, u, v, c) for u, v in uv]


def checkpoints(m: int, axes, inset: int) -> list:
    """Loop indices of the corners and side midpoints, in loop order."""
    c, lo, hi = m // 2, inset, m - 1 - inset
    side = hi - lo
    half = c - lo
    return [k for s in range(4) for k in (s * side, s * side + (half if s < 2 else side - half))]


def connectors(m: int, insets: dict) -> list:
    """Pairs of facing midpoints on different rings."""
    c = m // 2
    rz, rx, ry = insets["Z"], insets["X"], insets["Y"]
    hz, hx, hy = m - 1 - rz, m - 1 - rx, m - 1 - ry
    return [((c, rz, c), (c, rx, c)), ((c, hz, c), (c, hx, c)),
            ((rz, c, c), (ry, c, c)), ((hz, c, c), (hy, c, c)),
            ((c, c, rx), (c, c, ry)), ((c, c, hx), (c, c, hy))]


def stubs(m: int, insets: dict) -> dict:
    """Output stub per direction: (corner, outward vector, ring normal)."""
    c = m // 2
    rz, rx = insets["Z"], insets["X"]
    hz, hx = m - 1 - rz, m - 1 - rx
    zn, xn = (0, 0, 1), (1, 0, 0)
    return {"N": ((hz, hz, c), OFFSETS[0], zn), "E": ((hz, hz, c), OFFSETS[1], zn),
            "S": ((hz, rz, c), OFFSETS[2], zn), "W": ((rz, hz, c), OFFSETS[3], zn),
            "U": ((c, hx, hx), OFFSETS[4], xn), "D": ((c, hx, rx), OFFSETS[5], xn)}


def emit_bands(m: int, insets: dict, gid: str | None = None) -> GadgetTiles:
    gid = gid or f"gn{m}"
    bp = Blueprint(gid)
    band, raised, corners = [], [], {}
    for axes in RINGS:
        name = axes[0]
        cells = ring_cells(m, axes, insets[name])
        n = len(cells)
        cps = checkpoints(m, axes, insets[name])
        up = _vec(axes[3])
        for k, p in enumerate(cells):
            bp.put(p, f"{name}-ring")
            bp.put(vadd(p, up), f"{name}-raised")
        band += cells
        raised += [vadd(p, up) for p in cells]
        c = m // 2
        for s, k0 in enumerate(cps):
            k1 = cps[(s + 1) % len(cps)]
            seg = [cells[(k0 + i) % n] for i in range(((k1 - k0) % n) + 1)]
            X, PL, LT = seg[0], seg[1], seg[2]
            t = tuple(b - a for a, b in zip(X, PL))
            lat = next(a for a in (axes[1], axes[2]) if t[a] == 0)
            inward = _vec(lat, 1 if PL[lat] < c else -1)
            gen, key = vadd(PL, inward), vadd(LT, inward)
            bp.put(gen, f"{name}-gen")
            bp.put(key, f"{name}-key")
            band += [gen, key]
            L = lambda *p: bp.label(name, s, *p)
            _bond(bp, X, t, L("xa"), 2)
            _bond(bp, PL, t, L("l"), 1)
            _bond(bp, PL, inward, L("g"), 2)
            _bond(bp, gen, t, L("gk"), 2)
            _bond(bp, key, vneg(inward), L("k"), 1)
            for i in range(2, len(seg) - 1):
                _bond(bp, seg[i], t, L("c", i), 2)
            _bond(bp, X, up, L("up"), 2, b_input=(s == 0))
        for k in range(n):
            a, b = cells[k], cells[(k + 1) % n]
            if k + 1 == n:
                continue
            _bond(bp, vadd(a, up), tuple(y - x for x, y in zip(a, b)), bp.label(name, "r", k), 2)
        corners.update({(name, i): cells[cps[i]] for i in range(len(cps))})
    for a, b in connectors(m, insets):
        v = tuple((y > x) - (y < x) for x, y in zip(a, b))
        line = [a]
        while line[-1] != b:
            line.append(vadd(line[-1], v))
        for p in line[1:-1]:
            bp.put(p, "connector")
            band.append(p)
        for i in range(len(line) - 1):
            _bond(bp, line[i], v, bp.label("cn", a, i), 2, b_input=i + 1 < len(line) - 1)
    stub_cells, triggers = {}, {}
    for d, (corner, out, normal) in stubs(m, insets).items():
        first = vadd(corner, out)
        cells = [first]
        while all(0 <= q <= m - 1 for q in vadd(cells[-1], out)):
            cells.append(vadd(cells[-1], out))
        trig = vadd(first, vneg(normal))
        for p in cells:
            bp.put(p, f"stub-{d}")
        bp.put(trig, f"trigger-{d}")
        bp.ports.add(trig)
        _bond(bp, corner, out, bp.label("st", d, "c"), 1)
        _bond(bp, trig, normal, bp.label("st", d, "t"), 1)
        for i in range(len(cells) - 1):
            _bond(bp, cells[i], out, bp.label("st", d, i), 2)
        stub_cells[d] = tuple(cells)
        triggers[d] = trig
    tiles, placement, meta = bp.tiles()
    entries = {d: corner for d, (corner, _, _) in stubs(m, insets).items()}
    return GadgetTiles(
        gid=gid, tiles=tiles, seed={entries["N"]: placement[entries["N"]]}, predicted_pose=None,
        expected=placement, meta=meta, kind="genome-bands",
        info={"band_cells": frozenset(band + raised), "entries": entries,
              "stubs": stub_cells, "triggers": {d: (p, placement[p]) for d, p in triggers.items()},
              "m": m, "insets": dict(insets)})


@dataclass
class GenomeSpec:
    g1: tuple          # (ring, side, direction, ((kind, count), ...)) per orientation
    g2: tuple          # GlueEntry values
    g3: tuple          # (module name, DatapathProgram) in callback order
    tile_count: int = 1
    tau: int = 1

    def counts(self) -> dict:
        out = dict.fromkeys(KINDS, 0)
        for *_, runs in self.g1:
            for kind, n in runs:
                out[kind] += n
        return out

    def critical(self) -> tuple:
        return next(o for o in self.g1 if o[:3] == CRITICAL)

    # compact bit encoding for the seeded genome row
    def encode(self) -> str:
        wb = max(1, (self.tile_count - 1).bit_length())
        out = [_b(self.tile_count, 16), _b(self.tau, 8), _b(len(self.g1), 6)]
        for ring, side, direction, runs in self.g1:
            out += [_b("ZXY".index(ring), 2), _b(side, 2), _b(direction < 0, 1), _b(len(runs), 6)]
            out += [_b(KINDS.index(k), 3) + _b(n, 16) for k, n in runs]
        out.append(_b(len(self.g2), 16))
        for e in self.g2:
            out += [_b(e.tile, wb), _b(DIR_NAMES.index(e.direction), 3), _b(e.match, wb), _b(e.strength, 8)]
        out.append(_b(len(self.g3), 4))
        for name, prog in self.g3:
            out += [_b(INIT_ORDER.index(name), 2), _b(len(prog.instructions), 8)]
            for ins in prog.instructions:
                out += [_b(_OPS.index(ins.kind), 4), _b(ins.operand or 0, 16)]
        return "".join(out)

    @staticmethod
    def decode(bits: str) -> dict:
        """Inverse of encode, returning plain tuples."""
        r = _Reader(bits)
        tc, tau, n1 = r(16), r(8), r(6)
        wb = max(1, (tc - 1).bit_length())
        g1 = []
        for _ in range(n1):
            ring, side, neg, nr = "ZXY"[r(2)], r(2), r(1), r(6)
            g1.append((ring, side, -1 if neg else 1, tuple((KINDS[r(3)], r(16)) for _ in range(nr))))
        g2 = tuple((r(wb), DIR_NAMES[r(3)], r(wb), r(8)) for _ in range(r(16)))
        g3 = []
        for _ in range(r(4)):
            name, k = INIT_ORDER[r(2)], r(8)
            g3.append((name, tuple((_OPS[r(4)], r(16)) for _ in range(k))))
        return {"tile_count": tc, "tau": tau, "g1": tuple(g1), "g2": g2, "g3": tuple(g3)}


_OPS = ("buffer", "forward", "left", "right", "rise", "fall", "place", "variable", "stop")


def _b(v, k: int) -> str:
    return format(int(v), f"0{k}b")


class _Reader:
    def __init__(self, bits: str):
        self.bits, self.i = bits, 0

    def __call__(self, k: int) -> int:
        v = int(self.bits[self.i:self.i + k], 2)
        self.i += k
        return v


def _g1(m: int, insets: dict) -> tuple:
    out = []
    c = m // 2
    for name, *_ in RINGS:
        lo, hi = insets[name], m - 1 - insets[name]
        for side in range(4):
            for direction in (1, -1):
                first, second = c - lo, hi - c
                if (side >= 2) != (direction < 0):
                    first, second = second, first
                runs = [("prop", first - 1), ("turn", 1)]
                if (name, side, direction) == CRITICAL:
                    runs += [("query", 6), ("initialize", 1), ("prop", second - 8)]
                else:
                    runs += [("prop", second - 1)]
                runs.append(("intersection", 1))
                out.append((name, side, direction, tuple(runs)))
    return tuple(out)


def _g3(layout) -> tuple:
    a = layout.anchors
    start = a["init"][0]
    targets = {"external-communication": a["ext_start"], "bracket": a["bracket_start"],
               "adder": a["adder_start"]}
    return tuple((name, plan_route(vadd(targets[name], vneg(start)), payload=""))
                 for name in INIT_ORDER)


def genome_spec(system, layout) -> GenomeSpec:
    n = len(system.tiles)
    if layout.tile_count != n or layout.tau != system.temperature:
        raise LayoutMismatch(f"layout computed for |T|={layout.tile_count}, tau={layout.tau}, "
                             f"system has |T|={n}, tau={system.temperature}")
    return GenomeSpec(_g1(layout.m, layout.anchors["rings"]), tuple(gen_glue_table(system.tiles)),
                      _g3(layout), n, system.temperature)


def gen_genome(system, layout) -> tuple:
    return genome_spec(system, layout), emit_bands(layout.m, layout.anchors["rings"])
