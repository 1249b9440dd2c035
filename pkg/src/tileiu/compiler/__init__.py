"""Compilation of simulated systems: scale layout, universal tile set, seed and codec."""
from .bundle import CompiledBundle, compile_system
from .codec import gen_codec
from .layout import ScaleLayout, calc_scale, layout_for, scale_bound, widths
from .seed import gen_seed, seed_placements
from .universal import UniversalTileSet, content_name, universal_tileset

__all__ = [
    "CompiledBundle", "ScaleLayout", "UniversalTileSet", "calc_scale", "compile_system",
    "content_name", "gen_codec", "gen_seed", "layout_for", "scale_bound", "seed_placements",
    "universal_tileset", "widths",
]
