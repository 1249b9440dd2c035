"""Glues, tile types and lattice directions.

Directions are indexed in the canonical order N, E, S, W, U, D.  Every tile
stores six glue slots; slots outside the system's dimension stay null.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import DuplicateLabelStrength, BadDimension

DIR_NAMES = ("N", "E", "S", "W", "U", "D")
N, E, S, W, U, D = range(6)
OFFSETS = ((0, 1, 0), (1, 0, 0), (0, -1, 0), (-1, 0, 0), (0, 0, 1), (0, 0, -1))
OPPOSITE = (S, W, N, E, D, U)
VEC_TO_DIR = {v: i for i, v in enumerate(OFFSETS)}


def dims_directions(dimension: int) -> tuple[int, ...]:
    """Directions that exist in a lattice of the given dimension."""
    if dimension == 3:
        return (N, E, S, W, U, D)
    if dimension == 2:
        return (N, E, S, W)
    if dimension == 1:
        return (E, W)
    raise BadDimension(f"dimension must be 1, 2 or 3, got {dimension}")


def step(p, d: int):
    o = OFFSETS[d]
    return (p[0] + o[0], p[1] + o[1], p[2] + o[2])


@dataclass(frozen=True, order=True)
class Glue:
    label: str
    strength: int

    def __post_init__(self):
        if self.strength < 0:
            raise ValueError("glue strength must be non-negative")

    @property
    def is_null(self) -> bool:
        return self.strength == 0 or self.label == ""

    def __str__(self):
        return "-" if self.is_null else f"{self.label}:{self.strength}"


NULL = Glue("", 0)


def as_glue(g) -> Glue:
    if g is None:
        return NULL
    if isinstance(g, Glue):
        return NULL if g.is_null else g
    label, strength = g
    if not label or strength == 0:
        return NULL
    return Glue(str(label), int(strength))


@dataclass(frozen=True)
class TileType:
    name: str
    glues: tuple  # six Glue objects in N,E,S,W,U,D order

    @staticmethod
    def make(name: str, glues: Sequence = (), **by_dir) -> "TileType":
        """Build a tile from a sequence in N,E,S,W,U,D order and/or keywords N=.., E=.."""
        slots = [NULL] * 6
        for i, g in enumerate(glues):
            slots[i] = as_glue(g)
        for k, g in by_dir.items():
            slots[DIR_NAMES.index(k)] = as_glue(g)
        return TileType(name, tuple(slots))

    def glue(self, d: int) -> Glue:
        return self.glues[d]


class TileSet:
    """Ordered tile types with dense ids and the label-strength consistency check."""

    def __init__(self, tiles: Iterable[TileType], dimension: int = 3, check: bool = True):
        self.tiles = list(tiles)
        self.dimension = dimension
        dirs = dims_directions(dimension)
        self.by_name = {}
        for i, t in enumerate(self.tiles):
            if t.name in self.by_name:
                raise DuplicateLabelStrength(f"duplicate tile name {t.name!r}")
            self.by_name[t.name] = i
        for t in self.tiles:
            for d in range(6):
                if d not in dirs and not t.glues[d].is_null:
                    raise BadDimension(f"tile {t.name} has a {DIR_NAMES[d]} glue in dimension {dimension}")
        if check:
            seen = {}
            for t in self.tiles:
                for g in t.glues:
                    if g.is_null:
                        continue
                    prev = seen.setdefault(g.label, g.strength)
                    if prev != g.strength:
                        raise DuplicateLabelStrength(
                            f"label {g.label!r} used with strengths {prev} and {g.strength}")

    def __len__(self):
        return len(self.tiles)

    def __getitem__(self, i) -> TileType:
        return self.tiles[i]

    def __iter__(self):
        return iter(self.tiles)

    def id_of(self, name: str) -> int:
        return self.by_name[name]

    def glue_table(self):
        """Per tile id, the six (label, strength) pairs, with None for null glues."""
        return [tuple(None if g.is_null else (g.label, g.strength) for g in t.glues) for t in self.tiles]
