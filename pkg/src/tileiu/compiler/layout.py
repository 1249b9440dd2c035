"""Scale factor and macrotile layout.

Every width is measured in tiles.  Logarithms are base 2 rounded up, since
every quantity they size is a binary encoding.  The scale m is the least
fixed point of the section-width sum, found by iterating from m = 1; the sum
is monotone in m, so the iteration climbs to the first m whose widths fit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..core.tiles import DIR_NAMES, OFFSETS
from ..errors import InvalidOperand

BOUND_CONSTANT = 1344
ADDER_LAYERS = 19
# ring insets from the macrotile faces, outermost first: the ring in the
# z = c plane, the ring in the x = c plane, the ring in the y = c plane
RING_INSETS = (2, 5, 8)
MIN_M = 64


def clog(x: int) -> int:
    """Ceiling of log2(x) for x >= 1."""
    return (x - 1).bit_length() if x > 1 else 0


def window_bits(tile_count: int) -> int:
    return max(1, clog(tile_count))


@dataclass(frozen=True)
class Widths:
    nav: int
    dp_glue: int
    dp_adder: int
    dp_bracket: int
    dp_ext: int
    blockers: tuple
    g_move: int
    g_glue: int
    g_init: int

    @property
    def total(self) -> int:
        return self.g_move + self.g_glue + self.g_init + 2 * self.dp_ext


def widths(m: int, tile_count: int, tau: int) -> Widths:
    """Section widths for a macrotile of scale m."""
    T = tile_count
    nav = 11 + 3 * clog(m)
    addr = clog(11 + 3 * clog(m * tau))
    dp_glue = max(nav, clog(tau))
    dp_adder = nav + T * (2 + 6 * clog(tau) + addr)
    dp_bracket = nav + T * (24 + 3 * addr)
    dp_ext = max(nav + 25 + 5 * clog(m), clog(T))
    return Widths(
        nav=nav, dp_glue=dp_glue, dp_adder=dp_adder, dp_bracket=dp_bracket, dp_ext=dp_ext,
        blockers=(dp_ext, dp_ext),
        g_move=4 * dp_ext + 40,
        g_glue=6 * T * T * dp_glue + 24 * T * T,
        g_init=ADDER_LAYERS * dp_adder + clog(T) * dp_bracket + 8 * dp_ext,
    )


def scale_bound(tile_count: int, tau: int) -> float:
    """Closed-form ceiling on m, meaningful for tile_count > 1 and tau > 1."""
    return 6 * BOUND_CONSTANT * tile_count ** 2 * math.log2(tile_count * tau)


@dataclass(frozen=True)
class ScaleLayout:
    m: int
    tile_count: int
    tau: int
    widths: Widths
    anchors: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def nav(self) -> int:
        return self.widths.nav

    @property
    def bracket_levels(self) -> int:
        return clog(self.tile_count)

    @property
    def adder_layers(self) -> int:
        return ADDER_LAYERS

    @property
    def glue_entry_bound(self) -> int:
        return 6 * self.tile_count ** 2

    @property
    def window(self) -> tuple:
        return self.anchors["bracket_end"]

    def consistent(self) -> bool:
        return widths(self.m, self.tile_count, self.tau).total <= self.m

    def as_dict(self) -> dict:
        w = self.widths
        return {
            "m": self.m, "tile_count": self.tile_count, "tau": self.tau,
            "nav": w.nav, "dp_glue": w.dp_glue, "dp_adder": w.dp_adder, "dp_bracket": w.dp_bracket,
            "dp_ext": w.dp_ext, "blockers": list(w.blockers), "g_move": w.g_move, "g_glue": w.g_glue,
            "g_init": w.g_init, "bracket_levels": self.bracket_levels, "adder_layers": self.adder_layers,
            "glue_entry_bound": self.glue_entry_bound,
            "anchors": {k: _jsonable(v) for k, v in sorted(self.anchors.items())},
        }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items())}
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def anchors_for(m: int, tile_count: int) -> dict:
    """Fixed in-macrotile positions, all in local coordinates of the block [0, m)^3.

    A trunk runs east along the outermost ring's north edge, four planes below
    the ring.  The six query poses, the two initialisation poses and the
    bracket output window hang one cell south of it, and the seeded genome
    rows hang below its west end, one plane per row.
    """
    if m < MIN_M:
        raise InvalidOperand(f"scale {m} is below the smallest supported macrotile ({MIN_M})")
    c = m // 2
    rz, rx, ry = RING_INSETS
    top = m - 1 - rz
    z0 = c - 4
    x0 = rz + 2
    query = {d: (x0 + 2 * j, top - 1, z0) for j, d in enumerate(DIR_NAMES)}
    init = ((x0 + 12, top - 1, z0), (x0 + 14, top - 1, z0))
    wb = window_bits(tile_count)
    window = tuple((x0 + 16 + i, top - 1, z0) for i in range(wb))
    trunk_end = x0 + 16 + wb
    return {
        "center": c,
        "rings": {"Z": rz, "X": rx, "Y": ry},
        "genome_start": (rz, top, z0 - 1),
        "trunk": ((rz, top, z0), (trunk_end, top, z0)),
        "query": query,
        "init": init,
        "bracket_end": window,
        "ext_start": (x0 + 16, top - 3, z0),
        "bracket_start": (ry + 3, ry + 3, z0),
        "adder_start": (ry + 3, ry + 3, ry + 3),
        "intersections": intersections(m),
    }


def intersections(m: int) -> dict:
    """Ring corner where the genome of the neighbour in each direction meets this one."""
    c = m // 2
    rz, rx, _ = RING_INSETS
    lo_z, hi_z, lo_x, hi_x = rz, m - 1 - rz, rx, m - 1 - rx
    return {
        "N": (hi_z, hi_z, c), "E": (hi_z, hi_z, c),
        "S": (hi_z, lo_z, c), "W": (lo_z, hi_z, c),
        "U": (c, hi_x, hi_x), "D": (c, hi_x, lo_x),
    }


def layout_for(m: int, tile_count: int, tau: int) -> ScaleLayout:
    """Layout pinned at a caller-chosen scale (used for reduced-size runs)."""
    return ScaleLayout(m, tile_count, tau, widths(m, tile_count, tau), anchors_for(m, tile_count))


def calc_scale(tile_count: int, tau: int) -> ScaleLayout:
    if tile_count < 1 or tau < 1:
        raise InvalidOperand("tile count and temperature must be at least 1")
    m = 1
    while True:
        need = max(widths(m, tile_count, tau).total, MIN_M)
        if need <= m:
            break
        m = need
    return layout_for(m, tile_count, tau)


def neighbour_offset(d: str, m: int) -> tuple:
    v = OFFSETS[DIR_NAMES.index(d)]
    return (v[0] * m, v[1] * m, v[2] * m)
