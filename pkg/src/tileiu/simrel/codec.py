"""m-block representation functions and their lifting to whole assemblies."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional

from ..core.assembly import Assembly


def window_width(tile_count: int) -> int:
    """Bits needed to name a tile id; a single tile type still gets one bit."""
    return max(1, math.ceil(math.log2(tile_count))) if tile_count > 1 else 1


def block_of(p, m: int, dimension: int):
    x, y, z = p
    return (x // m, y // m if dimension >= 2 else 0, z // m if dimension >= 3 else 0)


def extract_block(assembly: Assembly, m: int, block, dimension: int | None = None) -> dict:
    """Content of the m-block at ``block`` as {local coordinate: tile id}."""
    dims = dimension or assembly.dimension
    bx, by, bz = block
    out = {}
    zs = range(m) if dims >= 3 else (0,)
    ys = range(m) if dims >= 2 else (0,)
    pl = assembly.placements
    for k in zs:
        for j in ys:
            for i in range(m):
                t = pl.get((m * bx + i, m * by + j if dims >= 2 else j, m * bz + k if dims >= 3 else k))
                if t is not None:
                    out[(i, j, k)] = t
    return out


def blocks(assembly: Assembly, m: int, dimension: int | None = None) -> dict:
    """Group placements into non-empty blocks: {block: {local: tile id}}."""
    dims = dimension or assembly.dimension
    out = {}
    for p, t in assembly.placements.items():
        b = block_of(p, m, dims)
        local = (p[0] - m * b[0], p[1] - m * b[1], p[2] - m * b[2])
        out.setdefault(b, {})[local] = t
    return out


@dataclass
class MacrotileCodec:
    """Representation function R from simulator m-blocks to simulated tile ids.

    ``kind="generated"``: ``window`` lists in-block cells, most significant bit
    first; a block decodes to the binary number read through ``bit_of`` when
    every window cell holds a bit tile, and to empty space otherwise.
    ``kind="table"``: ``table`` is a sequence of (pattern, tile id) where a
    pattern is a set of (local cell, simulator tile id) pairs; a block decodes
    to the first pattern it contains.
    """
    m: int
    kind: str
    dimension: int
    target_size: int
    window: tuple = ()
    bit_of: dict = field(default_factory=dict)
    table: tuple = ()
    target_digest: str = ""
    simulator_digest: str = ""

    def __post_init__(self):
        self._index = None

    def _table_index(self):
        if self._index is None:
            idx = {}
            for n, (pattern, tid) in enumerate(self.table):
                first = min(pattern)
                idx.setdefault(first, []).append(n)
            self._index = idx
        return self._index

    def decode_block(self, block: dict) -> Optional[int]:
        if not block:
            return None
        if self.kind == "generated":
            value = 0
            for cell in self.window:
                t = block.get(cell)
                if t is None:
                    return None
                bit = self.bit_of.get(t)
                if bit is None:
                    return None
                value = 2 * value + bit
            return value if value < self.target_size else None
        best = None
        idx = self._table_index()
        for cell, t in block.items():
            for n in idx.get((cell, t), ()):
                pattern, tid = self.table[n]
                if all(block.get(c) == s for c, s in pattern):
                    if best is None or n < best[0]:
                        best = (n, tid)
        return None if best is None else best[1]

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.m}|{self.kind}|{self.dimension}|{self.target_size}|{self.target_digest}".encode())
        h.update(repr(self.window).encode())
        h.update(repr(sorted(self.bit_of.items())).encode())
        h.update(repr([(sorted(p), t) for p, t in self.table]).encode())
        return h.hexdigest()


def decode_star(codec: MacrotileCodec, assembly: Assembly) -> Assembly:
    """Apply R to every non-empty block; blocks outside R's domain map to empty."""
    out = {}
    for b, content in blocks(assembly, codec.m, codec.dimension).items():
        t = codec.decode_block(content)
        if t is not None:
            out[b] = t
    return Assembly(out, codec.dimension)


def identity_codec(tile_count: int, dimension: int) -> MacrotileCodec:
    table = tuple((frozenset({((0, 0, 0), t)}), t) for t in range(tile_count))
    return MacrotileCodec(1, "table", dimension, tile_count, table=table)


def check_codec_validity(codec: MacrotileCodec, samples: int = 1000, rng=None, sim_tiles: int | None = None,
                         cells=None):
    """Sample random (block, superblock) pairs and return monotonicity violations.

    cells restricts the block cells that are filled at random (all m^d cells by
    default, which is only practical for small m); window cells are always used.
    """
    import random
    rng = rng or random.Random(0)
    m, dims = codec.m, codec.dimension
    if cells is None:
        cells = [(i, j, k) for k in (range(m) if dims >= 3 else (0,))
                 for j in (range(m) if dims >= 2 else (0,)) for i in range(m)]
    else:
        cells = sorted(set(cells) | set(codec.window))
    if codec.kind == "generated":
        pool = sorted(codec.bit_of) or [0]
    else:
        pool = sorted({t for p, _ in codec.table for _, t in p}) or [0]
    if sim_tiles:
        pool = sorted(set(pool) | set(range(sim_tiles)))
    bad = []
    for _ in range(samples):
        block = {}
        if codec.kind == "table" and codec.table and rng.random() < 0.5:
            pattern, _ = codec.table[rng.randrange(len(codec.table))]
            block.update(dict(pattern))
        elif codec.kind == "generated" and rng.random() < 0.5:
            for c in codec.window:
                block[c] = rng.choice(pool)
        for c in cells:
            if c not in block and rng.random() < 0.3:
                block[c] = rng.choice(pool)
        sup = dict(block)
        for c in cells:
            if c not in sup and rng.random() < 0.5:
                sup[c] = rng.choice(pool)
        a, b = codec.decode_block(block), codec.decode_block(sup)
        if a is not None and a != b:
            bad.append((block, sup))
    return bad
