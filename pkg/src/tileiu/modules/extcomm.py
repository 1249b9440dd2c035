"""External communication: six variable datapaths carrying the bracket's winner.

Each datapath starts at the macrotile's external-communication anchor, waits
on a variable instruction for the winner's id, then navigates to the query
pose that the neighbour in its direction reserves for input arriving from
the opposite side.  Without a winner the variable stalls one row out, so
nothing leaves the macrotile.
"""
from __future__ import annotations

from ..compiler.layout import neighbour_offset, window_bits
from ..core.tiles import DIR_NAMES, OPPOSITE, VEC_TO_DIR
from ..datapath.gadget import GadgetTiles, assemble_datapath
from ..datapath.isa import VARIABLE, vadd, vneg
from .route import plan_route


def destination(layout, d: str) -> tuple:
    """Neighbour query pose for direction d, relative to the external-communication start."""
    a = layout.anchors
    opp = DIR_NAMES[OPPOSITE[DIR_NAMES.index(d)]]
    return vadd(vadd(neighbour_offset(d, layout.m), a["query"][opp]), vneg(a["ext_start"]))


def ext_program(layout, tile_count: int, d: str):
    bits = window_bits(tile_count)
    return plan_route(destination(layout, d), "0" * bits, prefix=(VARIABLE,), inputs=["0" * bits])


def gen_external_comm(layout, tile_count: int, winner: int | None = None) -> tuple:
    """One gadget per direction (N, E, S, W, U, D order), fed the winner's id when given."""
    bits = window_bits(tile_count)
    inputs = None if winner is None else [format(winner, f"0{bits}b")]
    out = []
    for d in DIR_NAMES:
        g = assemble_datapath(ext_program(layout, tile_count, d), gid=f"ec{d}{bits}", inputs=inputs)
        g.info.update(direction=d, target=destination(layout, d), start=layout.anchors["ext_start"])
        out.append(g)
    return tuple(out)


def delivered_payload(gadget: GadgetTiles, placements: dict, pose) -> str | None:
    """Bits presented on the up faces of the payload cells of the row at ``pose``."""
    by_name = {t.name: t for t in gadget.tiles}
    w, k = gadget.program.width, len(gadget.program.payload)
    fr = pose.frame
    bits = []
    for c in range(w - 1 - k, w - 1):
        name = placements.get(fr.at(pose.position, 0, c))
        if name is None:
            return None
        up = by_name[name].glue(VEC_TO_DIR[fr.up])
        if up.is_null or "/rd/" not in up.label:
            return None
        bits.append(up.label.split("/rd/")[1][0])
    return "".join(bits)
