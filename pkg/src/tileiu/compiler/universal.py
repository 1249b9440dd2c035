"""The universal tile set: every generic tile family, merged and content-named.

Families are generated with fixed gadget ids in the "U" namespace, so two
runs produce the same glue labels.  Each tile is then renamed after a hash
of its glue tuple, which makes names independent of generation order and
collapses tiles that several families share.  Families whose tiles depend on
a macrotile's scale (the genome bands) are built per compilation instead.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..core.tiles import TileSet, TileType
from ..datapath import (BUFFER, FALL, LEFT, RIGHT, RISE, VARIABLE, DatapathProgram,
                        assemble_datapath, emit_circular_latch, emit_guide_rail, emit_latch,
                        emit_periodic_counter, forward, place)
from ..errors import TileIUError
from ..modules.adder import adder_tiles
from ..modules.bracket import emit_bracket
from .seed import query_family, seed_family

MAX_TILES = 64      # largest simulated tile set with bracket and adder output tiles in U
MAX_TAU = 16        # largest simulated temperature with an adder family in U
PAYLOAD_WIDTHS = (1, 2, 3)
MAX_COUNTER = 4


@dataclass(frozen=True)
class UniversalTileSet:
    tiles: tuple
    families: tuple     # (family name, tiles contributed before merging)
    digest: str

    def __len__(self) -> int:
        return len(self.tiles)

    def tileset(self) -> TileSet:
        return TileSet(list(self.tiles), 3)


def _signature(t: TileType) -> tuple:
    return tuple((g.label, g.strength) if not g.is_null else None for g in t.glues)


def content_name(t: TileType) -> str:
    return "U." + hashlib.sha256(repr(_signature(t)).encode()).hexdigest()[:16]


def _programs():
    ops = [BUFFER, LEFT, RIGHT, RISE, FALL, VARIABLE, place(0), place(1)]
    ops += [forward(c) for c in range(1, MAX_COUNTER + 1)]
    for w in PAYLOAD_WIDTHS:
        for n in (1, 2):
            for body in itertools.product(ops, repeat=n):
                yield DatapathProgram(body, payload="0" * w)


def _datapath_family():
    out = []
    for prog in _programs():
        inputs = [format(v, f"0{len(prog.payload)}b") for v in range(prog.variables)] or None
        if inputs:
            inputs = [b[-len(prog.payload):] for b in inputs]
        try:
            out += assemble_datapath(prog, gid="U/dp", inputs=inputs).tiles
        except TileIUError:
            continue
    return out


def _gadget_family():
    out = []
    for w in PAYLOAD_WIDTHS:
        out += emit_guide_rail("0" * w, gid=f"U/rail{w}").tiles
    for d in ("N", "E", "S", "W"):
        out += emit_latch(d, gid=f"U/latch{d}").tiles
    out += emit_circular_latch(4, gid="U/clatch").tiles
    out += emit_periodic_counter(2, 4, gid="U/counter").tiles
    return out


def families():
    yield "datapath", _datapath_family()
    yield "gadgets", _gadget_family()
    yield "seed", seed_family()
    yield "query", query_family()
    for tau in range(1, MAX_TAU + 1):
        yield f"adder{tau}", adder_tiles(tau, f"U/add{tau}", range(MAX_TILES))
    for k in range(1, MAX_TILES + 1):
        yield f"bracket{k}", emit_bracket(k, gid=f"U/br{k}")[1].tiles


@lru_cache(maxsize=1)
def universal_tileset() -> UniversalTileSet:
    seen = {}
    counts = []
    for fam, tiles in families():
        counts.append((fam, len(tiles)))
        for t in tiles:
            seen.setdefault(_signature(t), t)
    merged = []
    for sig in sorted(seen, key=repr):
        t = seen[sig]
        merged.append(TileType(content_name(t), t.glues))
    merged.sort(key=lambda t: t.name)
    h = hashlib.sha256()
    for t in merged:
        h.update((t.name + "|" + "|".join(str(g) for g in t.glues) + "\n").encode())
    return UniversalTileSet(tuple(merged), tuple(counts), h.hexdigest())
