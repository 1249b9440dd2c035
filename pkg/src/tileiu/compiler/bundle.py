"""Compilation of a simulated system into a universal-set system with its codec."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

from ..core.assembly import Assembly
from ..core.system import TileSystem
from ..simrel.codec import MacrotileCodec
from .codec import gen_codec
from .layout import ScaleLayout, calc_scale
from .seed import gen_seed
from .universal import UniversalTileSet, universal_tileset

SIMULATOR_TAU = 2


@dataclass
class CompiledBundle:
    universal: UniversalTileSet
    seed: Assembly
    codec: MacrotileCodec
    layout: ScaleLayout
    source_digest: str

    @property
    def universal_digest(self) -> str:
        return self.universal.digest

    def simulator(self, name: str = "compiled") -> TileSystem:
        return TileSystem(self.universal.tileset(), self.seed, SIMULATOR_TAU, 3, "none", name)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.universal.digest}|{self.source_digest}|{self.codec.digest()}\n".encode())
        h.update(repr(sorted(self.layout.as_dict().items())).encode())
        for p, t in sorted(self.seed.items()):
            h.update(f"{p}:{self.universal.tiles[t].name}\n".encode())
        return h.hexdigest()


def compile_system(system: TileSystem, universal: UniversalTileSet | None = None) -> CompiledBundle:
    universal = universal or universal_tileset()
    layout = calc_scale(len(system.tiles), system.temperature)
    seed = gen_seed(system, layout, universal)
    codec = gen_codec(system, layout, universal)
    return CompiledBundle(universal, seed, codec, layout, system.digest())


compile = compile_system
