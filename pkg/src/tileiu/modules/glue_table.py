"""Glue lookup table stored in the genome's second section.

An entry (t, d, u, s) says: when the neighbour in direction d holds tile t,
a tile u placed here binds to it with strength s.  Entries are grouped tile
first, then direction, then matching tile, the order in which the genome
lays them out.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..core.tiles import DIR_NAMES, OPPOSITE

DELIMITERS_PER_ENTRY = 4


@dataclass(frozen=True)
class GlueEntry:
    tile: int          # neighbour's tile id
    direction: str     # side of this macrotile the neighbour sits on
    match: int         # candidate tile id for this macrotile
    strength: int
    adder_offset: int  # input bus of the candidate's adder unit: 6 * match + direction index


def _tiles_of(tiles):
    return list(getattr(tiles, "tiles", tiles))


def gen_glue_table(tiles) -> list:
    ts = _tiles_of(tiles)
    out = []
    for t, nb in enumerate(ts):
        for di, d in enumerate(DIR_NAMES):
            theirs = nb.glue(OPPOSITE[di])
            if theirs.is_null or theirs.strength <= 0:
                continue
            for u, cand in enumerate(ts):
                mine = cand.glue(di)
                if mine.is_null or (mine.label, mine.strength) != (theirs.label, theirs.strength):
                    continue
                out.append(GlueEntry(t, d, u, mine.strength, 6 * u + di))
    return out


def entries_for(table, tile: int, direction: str) -> list:
    """The entries a query for neighbour tile ``tile`` at side ``direction`` activates."""
    return [e for e in table if e.tile == tile and e.direction == direction]
