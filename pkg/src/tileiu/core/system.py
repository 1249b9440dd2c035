"""Tile assembly systems and their validation."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..errors import (BadDimension, SeedDisconnected, SeedUnstable, UnknownTileInSeed,
                      DuplicateLabelStrength)
from .assembly import Assembly
from .tiles import DIR_NAMES, TileSet, TileType, as_glue, dims_directions

DIFFUSION_MODES = ("none", "planar", "spatial")


@dataclass
class TileSystem:
    tiles: TileSet
    seed: Assembly
    temperature: int
    dimension: int = 3
    diffusion: str = "none"
    name: str = "system"

    def __post_init__(self):
        self._glues = None

    @property
    def glues(self):
        if self._glues is None:
            self._glues = self.tiles.glue_table()
        return self._glues

    def digest(self) -> str:
        """Content hash over tiles, seed, temperature, dimension and diffusion mode."""
        h = hashlib.sha256()
        h.update(f"{self.dimension}|{self.temperature}|{self.diffusion}\n".encode())
        for t in self.tiles:
            h.update((t.name + "|" + "|".join(str(g) for g in t.glues) + "\n").encode())
        for p, tid in sorted(self.seed.items()):
            h.update(f"{p[0]},{p[1]},{p[2]}:{self.tiles[tid].name}\n".encode())
        return h.hexdigest()


def _parse_glue(g):
    if g is None or g == "-" or g == "":
        return None
    if isinstance(g, str):
        label, _, s = g.rpartition(":")
        return (label, int(s))
    if isinstance(g, dict):
        return (g["label"], int(g["strength"]))
    return (g[0], int(g[1]))


def validate_system(raw: dict) -> TileSystem:
    """Build a TileSystem from a parsed description, enforcing every well-formedness rule.

    ``raw`` keys: name, dimension, temperature, diffusion, tiles (list of
    {name, glues: {dir: (label, strength) | "label:strength" | None}}), seed
    (list of (x, y, z, tile_name)).
    """
    from .stability import is_stable

    dimension = int(raw.get("dimension", 3))
    if dimension not in (1, 2, 3):
        raise BadDimension(f"dimension must be 1, 2 or 3, got {dimension}")
    diffusion = raw.get("diffusion", "none") or "none"
    if diffusion not in DIFFUSION_MODES:
        raise BadDimension(f"unknown diffusion mode {diffusion!r}")
    if diffusion == "planar" and dimension > 2:
        raise BadDimension("planar diffusion requires dimension <= 2")
    if diffusion == "spatial" and dimension != 3:
        raise BadDimension("spatial diffusion requires dimension 3")
    tau = int(raw.get("temperature", 2))
    if tau < 1:
        raise BadDimension("temperature must be positive")
    dirs = dims_directions(dimension)
    tiles = []
    for spec in raw.get("tiles", []):
        glues = spec.get("glues", {})
        if isinstance(glues, (list, tuple)):
            names = [DIR_NAMES[d] for d in dirs]
            glues = dict(zip(names, glues))
        by = {}
        for k, g in glues.items():
            if k not in DIR_NAMES:
                raise BadDimension(f"unknown direction {k!r}")
            pg = _parse_glue(g)
            if pg is not None and DIR_NAMES.index(k) not in dirs:
                raise BadDimension(f"tile {spec['name']} uses direction {k} in dimension {dimension}")
            by[k] = pg
        tiles.append(TileType.make(spec["name"], **by))
    tileset = TileSet(tiles, dimension)
    placements = {}
    for entry in raw.get("seed", []):
        x, y, z, name = entry
        if name not in tileset.by_name:
            raise UnknownTileInSeed(f"seed references undefined tile {name!r}")
        p = (int(x), int(y), int(z))
        if dimension < 3 and p[2] != 0 or dimension < 2 and p[1] != 0:
            raise BadDimension(f"seed coordinate {p} outside dimension {dimension}")
        placements[p] = tileset.id_of(name)
    seed = Assembly(placements, dimension)
    if not seed.is_grid_connected():
        raise SeedDisconnected("seed must be non-empty and grid-connected")
    system = TileSystem(tileset, seed, tau, dimension, diffusion, raw.get("name", "system"))
    if not is_stable(seed, tau, system.glues):
        raise SeedUnstable(f"seed is not {tau}-stable")
    seed.ensure_bonds(system.glues)
    return system


def make_system(tiles, seed_placements, temperature, dimension=3, diffusion="none", name="system",
                validate=True) -> TileSystem:
    """Programmatic constructor from TileType objects and {coord: tile name or id}."""
    tileset = tiles if isinstance(tiles, TileSet) else TileSet(tiles, dimension)
    pl = {}
    for p, t in dict(seed_placements).items():
        if isinstance(t, str):
            if t not in tileset.by_name:
                raise UnknownTileInSeed(f"seed references undefined tile {t!r}")
            t = tileset.id_of(t)
        pl[tuple(p)] = t
    seed = Assembly(pl, dimension)
    system = TileSystem(tileset, seed, temperature, dimension, diffusion, name)
    if validate:
        from .stability import is_stable
        if diffusion == "planar" and dimension > 2 or diffusion == "spatial" and dimension != 3:
            raise BadDimension(f"diffusion {diffusion} incompatible with dimension {dimension}")
        if not seed.is_grid_connected():
            raise SeedDisconnected("seed must be non-empty and grid-connected")
        if not is_stable(seed, temperature, system.glues):
            raise SeedUnstable(f"seed is not {temperature}-stable")
    return system
