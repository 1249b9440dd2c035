"""Representation function for compiled systems: read the tile id from the bracket window."""
from __future__ import annotations

from ..errors import LayoutMismatch
from ..simrel.codec import MacrotileCodec
from .seed import ANCHOR_KINDS, structural_tile


def window_tiles() -> dict:
    """{bit tile: bit value} for every tile that may sit in a window cell."""
    out = {}
    for kind in ANCHOR_KINDS:
        if kind[0] == "w":
            out[structural_tile({0: "s" + kind})] = int(kind[-1])
    return out


def gen_codec(system, layout, universal=None) -> MacrotileCodec:
    from .universal import content_name, universal_tileset
    if layout.tile_count != len(system.tiles) or layout.tau != system.temperature:
        raise LayoutMismatch(f"layout computed for |T|={layout.tile_count}, tau={layout.tau}, "
                             f"system has |T|={len(system.tiles)}, tau={system.temperature}")
    universal = universal or universal_tileset()
    ts = universal.tileset()
    bit_of = {ts.id_of(content_name(t)): b for t, b in window_tiles().items()}
    return MacrotileCodec(layout.m, "generated", system.dimension, len(system.tiles),
                          window=tuple(layout.anchors["bracket_end"]), bit_of=bit_of,
                          target_digest=system.digest(), simulator_digest=universal.digest)
