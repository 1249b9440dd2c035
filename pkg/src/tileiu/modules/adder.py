"""Adder array: one unit per simulated tile, deciding whether the tile may attach.

A unit holds 63 component adders, one per non-empty subset of the six
directions; component i adds the strength arriving from direction k exactly
when bit k of i is set (directions in N, E, S, W, U, D order).  Each
component is a register of ``width`` cells, least significant bit on the
east end, initialised to -tau in two's complement.  Stage k is one row at
y = k + 1: if the component uses direction k, the LSB cooperates with the
input bus above it (z = 1) and a carry sweeps west; otherwise a strength-2
head copies the row.  After the last stage a non-negative register (sign
bit 0) lets the MSB start a short climb that cooperates with a pre-seeded
backbone to start the success row, a row of one tile type that grows in
both directions along the backbone.  The success row reaching the west end
of the backbone releases the unit's output tile.

Strengths above tau are clamped to tau, which never changes whether a sum
reaches tau and keeps the register width fixed at bit_length(5 tau) + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.tiles import DIR_NAMES, TileType
from ..datapath.gadget import GadgetTiles
from ..errors import InvalidOperand

STAGES = 6
COMPONENTS = 63
UNIT_PITCH = 12
BUS_Y = 1
OKC_Y = STAGES + 1
BACKBONE_Y = STAGES + 2
SUCCESS_Y = STAGES + 3


def register_width(tau: int) -> int:
    return (5 * tau).bit_length() + 1


def component_x(i: int, width: int) -> int:
    """West end (MSB) of component i."""
    return (i - 1) * (width + 1)


def _mk(name, **faces):
    return TileType.make(name, **{d: g for d, g in faces.items() if g is not None})


@dataclass
class AdderSpec:
    tau: int
    width: int
    units: tuple                    # simulated tile ids, one unit each
    components: int = COMPONENTS
    partial_adders: int = STAGES + 1
    layers: tuple = ()              # (row y, description) within a unit
    unit_origin: dict = field(default_factory=dict)   # tile id -> (0, y, 0)

    def subset(self, i: int) -> tuple:
        return tuple(d for k, d in enumerate(DIR_NAMES) if i >> k & 1)


def adder_tiles(tau: int, gid: str, tile_ids=(0,)) -> list:
    """Every tile type the unit family can use, for any bus values."""
    if tau < 1:
        raise InvalidOperand("temperature must be at least 1")
    w = register_width(tau)
    L = lambda *p: "/".join((gid,) + tuple(str(x) for x in p))
    out = []

    def north(k, j, o, mask):
        """(label, strength) leaving a stage-k cell of bit j toward stage k+1."""
        if k == STAGES - 1:
            return (L("ok"), 2) if j == w - 1 and o == 0 else None
        if j == 0:
            return (L("accL", k + 1, o, mask), 1) if mask >> (k + 1) & 1 else (L("hc", k + 1, o, mask), 2)
        return (L("acc", j, o), 1)

    svals = range(1, tau + 1)
    for k in range(STAGES):
        for s in svals:
            out.append(_mk(L("busin", k, s), E=(L("bus", k, s), 2)))
            out.append(_mk(L("bus", k, s), W=(L("bus", k, s), 2), E=(L("bus", k, s), 2),
                           D=(L("in", k, s), 1)))
        for mask in range(1, 64):
            for a in (0, 1):
                if mask >> k & 1:
                    for s in svals:
                        tot = a + (s & 1)
                        out.append(_mk(L("u", k, "L", a, s, mask),
                                       S=(L("accL", k, a, mask), 1), U=(L("in", k, s), 1),
                                       W=(L("ad", k, s, tot >> 1), 1), N=north(k, 0, tot & 1, mask)))
                else:
                    out.append(_mk(L("c", k, "L", a, mask), S=(L("hc", k, a, mask), 2),
                                   W=(L("cp", k), 1), N=north(k, 0, a, mask)))
        for j in range(1, w):
            west = j < w - 1
            for a in (0, 1):
                for s in svals:
                    for c in (0, 1):
                        tot = a + (s >> j & 1) + c
                        out.append(_mk(L("u", k, j, a, s, c),
                                       S=(L("acc", j, a), 1), E=(L("ad", k, s, c), 1),
                                       W=(L("ad", k, s, tot >> 1), 1) if west else None,
                                       N=north(k, j, tot & 1, 0)))
                out.append(_mk(L("c", k, j, a), S=(L("acc", j, a), 1), E=(L("cp", k), 1),
                               W=(L("cp", k), 1) if west else None, N=north(k, j, a, 0)))
    # initial register rows (seeded)
    for mask in range(1, 64):
        for a in (0, 1):
            out.append(_mk(L("init", "L", a, mask), N=north(-1, 0, a, mask)))
    for j in range(1, w):
        for a in (0, 1):
            out.append(_mk(L("init", j, a), N=(L("acc", j, a), 1)))
    # success climb, backbone and success row
    out += [
        _mk(L("okc"), S=(L("ok"), 2), U=(L("okup"), 2)),
        _mk(L("ok1"), D=(L("okup"), 2), N=(L("okn1"), 2)),
        _mk(L("ok2"), S=(L("okn1"), 2), N=(L("okn2"), 2)),
        _mk(L("ok3"), S=(L("okn2"), 2), D=(L("ini"), 1)),
        _mk(L("bb"), W=(L("bbc"), 2), E=(L("bbc"), 2), N=(L("bbn"), 1)),
        _mk(L("bbR"), W=(L("bbc"), 2), N=(L("bbn"), 1)),
        _mk(L("sr"), S=(L("bbn"), 1), W=(L("sg"), 1), E=(L("sg"), 1), U=(L("ini"), 1)),
        _mk(L("stop")),
    ]
    for t in tile_ids:
        out.append(_mk(L("bbend", t), E=(L("bbc"), 2), N=(L("bbo", t), 1)))
        out.append(_mk(L("out", t), S=(L("bbo", t), 1), E=(L("sg"), 1), W=(L("rail", t), 2)))
    return out


def _twos(v: int, w: int) -> list:
    """Bits of v in w-bit two's complement, LSB first."""
    return [(v % (1 << w)) >> j & 1 for j in range(w)]


def unit_extent(tau: int) -> int:
    w = register_width(tau)
    return component_x(COMPONENTS, w) + w - 1


def unit_seed(tau: int, gid: str, tile_id: int, y0: int = 0) -> dict:
    """Seeded part of one unit: initial registers, backbone and bus stoppers."""
    w = register_width(tau)
    L = lambda *p: "/".join((gid,) + tuple(str(x) for x in p))
    seed = {}
    bits = _twos(-tau, w)
    for i in range(1, COMPONENTS + 1):
        x0 = component_x(i, w)
        for j in range(w):
            x = x0 + w - 1 - j
            seed[(x, y0, 0)] = L("init", "L", bits[0], i) if j == 0 else L("init", j, bits[j])
    xe = unit_extent(tau)
    seed[(-1, y0 + BACKBONE_Y, 0)] = L("bbend", tile_id)
    for x in range(0, xe):
        seed[(x, y0 + BACKBONE_Y, 0)] = L("bb")
    seed[(xe, y0 + BACKBONE_Y, 0)] = L("bbR")
    for k in range(STAGES):
        seed[(xe + 1, y0 + BUS_Y + k, 1)] = L("stop")
    return seed


def bus_inputs(tau: int, gid: str, strengths: dict, y0: int = 0) -> dict:
    """Injected bus heads for {direction: strength}, strengths clamped to tau."""
    out = {}
    for d, s in strengths.items():
        k = DIR_NAMES.index(d)
        if s < 1:
            raise InvalidOperand(f"input strength {s} from {d} must be positive")
        out[(-1, y0 + BUS_Y + k, 1)] = f"{gid}/busin/{k}/{min(s, tau)}"
    return out


def output_site(y0: int = 0) -> tuple:
    return (-1, y0 + SUCCESS_Y, 0)


def emit_adder_unit(tau: int, tile_id: int = 0, gid: str | None = None) -> GadgetTiles:
    gid = gid or f"add{tau}"
    tiles = adder_tiles(tau, gid, (tile_id,))
    seed = unit_seed(tau, gid, tile_id)
    return GadgetTiles(gid=gid, tiles=tiles, seed=seed, predicted_pose=None, expected={},
                       kind="adder-unit",
                       info={"tau": tau, "width": register_width(tau), "tile": tile_id,
                             "output": output_site(), "extent": unit_extent(tau)})


def adder_fired(gadget: GadgetTiles, placements: dict, y0: int = 0) -> bool:
    return placements.get(output_site(y0), "").startswith(f"{gadget.gid}/out/")


def gen_adder_array(system, layout) -> tuple:
    """Units for every tile of the system, stacked along +y with a fixed pitch."""
    from ..errors import LayoutMismatch
    n = len(system.tiles)
    if layout.tile_count != n or layout.tau != system.temperature:
        raise LayoutMismatch(f"layout computed for |T|={layout.tile_count}, tau={layout.tau}, "
                             f"system has |T|={n}, tau={system.temperature}")
    tau = system.temperature
    gid = f"add{tau}"
    ids = tuple(range(n))
    tiles = adder_tiles(tau, gid, ids)
    seed, origin = {}, {}
    for u in ids:
        seed.update(unit_seed(tau, gid, u, UNIT_PITCH * u))
        origin[u] = (0, UNIT_PITCH * u, 0)
    w = register_width(tau)
    layers = ((0, "initial register, -tau"),) + tuple(
        (BUS_Y + k, f"stage {DIR_NAMES[k]}") for k in range(STAGES)) + (
        (OKC_Y, "success climb"), (BACKBONE_Y, "backbone"), (SUCCESS_Y, "success row"))
    spec = AdderSpec(tau, w, ids, layers=layers, unit_origin=origin)
    g = GadgetTiles(gid=gid, tiles=tiles, seed=seed, predicted_pose=None, expected={},
                    kind="adder-array", info={"tau": tau, "width": w, "units": ids})
    return spec, g


def array_inputs(spec: AdderSpec, gid: str, table, neighbours: dict) -> dict:
    """Bus heads driven by genome queries: {direction: neighbour tile id} -> placements."""
    per_unit: dict = {}
    for e in table:
        if neighbours.get(e.direction) == e.tile:
            per_unit.setdefault(e.match, {})[e.direction] = e.strength
    out = {}
    for u, strengths in per_unit.items():
        out.update(bus_inputs(spec.tau, gid, strengths, spec.unit_origin[u][1]))
    return out
