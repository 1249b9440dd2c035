"""Sparse assemblies on Z^d.

Coordinates are integer triples; systems of dimension below 3 keep the unused
coordinates at 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .tiles import OFFSETS, OPPOSITE, dims_directions


@dataclass(frozen=True)
class AttachmentEvent:
    __slots__ = ("location", "tile", "step", "strength")
    location: tuple
    tile: int
    step: int
    strength: int


class Assembly:
    """Sparse map from coordinate to tile id, with cached bounding box and bond sums."""

    __slots__ = ("dimension", "placements", "_bbox", "bonds")

    def __init__(self, placements: Mapping | Iterable = (), dimension: int = 3):
        self.dimension = dimension
        self.placements = dict(placements)
        self._bbox = None
        self.bonds = None

    # basic container protocol
    def __len__(self):
        return len(self.placements)

    def __contains__(self, p):
        return p in self.placements

    def __getitem__(self, p):
        return self.placements[p]

    def get(self, p, default=None):
        return self.placements.get(p, default)

    def items(self):
        return self.placements.items()

    def copy(self) -> "Assembly":
        a = Assembly(self.placements, self.dimension)
        a._bbox = self._bbox
        if self.bonds is not None:
            a.bonds = dict(self.bonds)
        return a

    def __eq__(self, other):
        return isinstance(other, Assembly) and self.placements == other.placements

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"Assembly({len(self.placements)} tiles, d={self.dimension})"

    def canonical(self) -> tuple:
        """Sorted placement list; equality of canonical forms is exact assembly equality."""
        return tuple(sorted(self.placements.items()))

    # bounding box
    @property
    def bbox(self):
        if self._bbox is None and self.placements:
            xs, ys, zs = zip(*self.placements)
            self._bbox = ((min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs)))
        return self._bbox

    def place(self, p, tile: int):
        """Unchecked placement used by engines that validate separately."""
        self.placements[p] = tile
        b = self._bbox
        if b is not None:
            lo, hi = b
            if not (lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1] and lo[2] <= p[2] <= hi[2]):
                self._bbox = ((min(lo[0], p[0]), min(lo[1], p[1]), min(lo[2], p[2])),
                              (max(hi[0], p[0]), max(hi[1], p[1]), max(hi[2], p[2])))

    def in_bbox(self, p) -> bool:
        b = self.bbox
        if b is None:
            return False
        lo, hi = b
        return lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1] and lo[2] <= p[2] <= hi[2]

    # connectivity and bonds
    def is_grid_connected(self) -> bool:
        if not self.placements:
            return False
        dirs = dims_directions(self.dimension)
        start = next(iter(self.placements))
        seen = {start}
        todo = deque([start])
        while todo:
            x, y, z = todo.popleft()
            for d in dirs:
                o = OFFSETS[d]
                q = (x + o[0], y + o[1], z + o[2])
                if q in self.placements and q not in seen:
                    seen.add(q)
                    todo.append(q)
        return len(seen) == len(self.placements)

    def binding_edges(self, glues):
        """Yield (p, q, strength) for each bonded adjacent pair; ``glues`` is TileSet.glue_table()."""
        pl = self.placements
        for p, t in pl.items():
            for d in (1, 0, 4):  # E, N, U: each pair once
                o = OFFSETS[d]
                q = (p[0] + o[0], p[1] + o[1], p[2] + o[2])
                u = pl.get(q)
                if u is None:
                    continue
                g = glues[t][d]
                if g is not None and g == glues[u][OPPOSITE[d]]:
                    yield p, q, g[1]

    def recompute_bonds(self, glues) -> dict:
        bonds = {p: 0 for p in self.placements}
        for p, q, s in self.binding_edges(glues):
            bonds[p] += s
            bonds[q] += s
        return bonds

    def ensure_bonds(self, glues):
        if self.bonds is None:
            self.bonds = self.recompute_bonds(glues)
        return self.bonds
