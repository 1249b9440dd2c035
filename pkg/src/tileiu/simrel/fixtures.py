"""Small simulator/simulated pairs used to exercise the checkers.

``scale2_line`` is a hand-built 2x2 blockification of a three-tile line, with
mutants that break exactly one property each. ``blockify`` turns any small
aTAM system (no diffusion) into a scale-3 simulator: neighbours push a probe
into the empty block, the probes cooperate at the block centre exactly as the
simulated glues would, and the centre tile then emits its glues outward.
"""
from __future__ import annotations

from itertools import combinations

from ..core.system import make_system
from ..core.tiles import DIR_NAMES, OFFSETS, OPPOSITE, TileType, dims_directions
from .codec import MacrotileCodec, identity_codec


def line_system():
    """Simulated line A-B-C at temperature 2; A is the seed."""
    tiles = [
        TileType.make("A", E=("a", 2)),
        TileType.make("B", W=("a", 2), E=("b", 2)),
        TileType.make("C", W=("b", 2)),
    ]
    return make_system(tiles, {(0, 0, 0): "A"}, 2, dimension=2, name="line")


_BITS = {"a0": 0, "a1": 0, "a2": 0, "a3": 0, "b0": 0, "b1": 1, "b2": 1, "b3": 0,
         "c0": 1, "c1": 0, "c2": 0, "c3": 0}


def scale2_line(variant: str = "ok"):
    """Return (simulator, simulated, codec) for the 2x2 line fixture.

    Each block grows as: cell (0,0), then east (1,0), then north (1,1), then
    west (0,1). The bit window is (0,0) then (1,0).

    variant: "ok", "shifted" (window moved up one row), "fuzz" (a three-tile
    arm grows north out of the seed block), "no-c1" (the tile finishing C's
    window is removed).
    """
    T = line_system()

    def block(p, nxt_e=None):
        tl = [
            TileType.make(f"{p}0", E=(f"{p}01", 2)),
            TileType.make(f"{p}1", W=(f"{p}01", 2), N=(f"{p}12", 2)),
            TileType.make(f"{p}2", S=(f"{p}12", 2), W=(f"{p}23", 2)),
            TileType.make(f"{p}3", E=(f"{p}23", 2)),
        ]
        return tl

    a = block("a")
    a[1] = TileType.make("a1", W=("a01", 2), N=("a12", 2), E=("sa", 2))
    if variant == "fuzz":
        a[3] = TileType.make("a3", E=("a23", 2), N=("f1", 2))
    b = block("b")
    b[0] = TileType.make("b0", W=("sa", 2), E=("b01", 2))
    b[1] = TileType.make("b1", W=("b01", 2), N=("b12", 2), E=("sb", 2))
    c = block("c")
    c[0] = TileType.make("c0", W=("sb", 2), E=("c01", 2))
    tiles = a + b + c
    if variant == "no-c1":
        tiles = [t for t in tiles if t.name != "c1"]
    if variant == "fuzz":
        tiles += [TileType.make("f1", S=("f1", 2), N=("f2", 2)),
                  TileType.make("f2", S=("f2", 2), N=("f3", 2)),
                  TileType.make("f3", S=("f3", 2))]
    seed = {(0, 0, 0): "a0", (1, 0, 0): "a1", (1, 1, 0): "a2", (0, 1, 0): "a3"}
    S = make_system(tiles, seed, 2, dimension=2, name=f"scale2-{variant}")
    bit_of = {i: _BITS[t.name] for i, t in enumerate(S.tiles) if t.name in _BITS}
    window = ((0, 1, 0), (1, 1, 0)) if variant == "shifted" else ((0, 0, 0), (1, 0, 0))
    codec = MacrotileCodec(2, "generated", 2, len(T.tiles), window=window, bit_of=bit_of,
                           target_digest=T.digest(), simulator_digest=S.digest())
    return S, T, codec


def identity_fixture(system):
    """The system simulating itself at scale 1."""
    return system, system, identity_codec(len(system.tiles), system.dimension)


def _gname(g):
    return f"{g[0]}:{g[1]}"


def blockify(T):
    """Scale-3 simulator of ``T`` (temperature tau, no diffusion).

    Returns (simulator, codec). Block centre decides the tile; the mid cell on
    each face carries either a probe (pushed in by a finished neighbour) or an
    emitter (pushed out by the finished centre).
    """
    if T.diffusion != "none":
        raise ValueError("blockify only handles systems without diffusion")
    dims = T.dimension
    dirs = dims_directions(dims)
    tau = T.temperature
    glues = T.glues
    centre = (1, 1 if dims >= 2 else 0, 1 if dims >= 3 else 0)

    tiles = []
    decides = {}   # simulator tile name -> simulated id

    def add(tt, decided=None):
        tiles.append(tt)
        if decided is not None:
            decides[tt.name] = decided

    used = set()
    for tid, t in enumerate(T.tiles):
        sides = [d for d in dirs if glues[tid][d] is not None]
        for r in range(1, len(sides) + 1):
            for M in combinations(sides, r):
                total = sum(glues[tid][d][1] for d in M)
                # only minimal binding sets: every side in M must actually be bonded
                if total < tau or any(total - glues[tid][d][1] >= tau for d in M):
                    continue
                by = {}
                for d in dirs:
                    g = glues[tid][d]
                    if g is None:
                        continue
                    if d in M:
                        by[DIR_NAMES[d]] = (f"x{DIR_NAMES[d]}:{_gname(g)}", g[1])
                    else:
                        by[DIR_NAMES[d]] = (f"e{DIR_NAMES[d]}:{_gname(g)}", tau)
                        used.add((d, g))
                name = f"C[{t.name}|{''.join(DIR_NAMES[d] for d in M)}]"
                add(TileType.make(name, **by), tid)
    for p, tid in T.seed.items():
        for d in dirs:
            g = glues[tid][d]
            if g is not None:
                used.add((d, g))
    for d, g in sorted(used):
        D, O = DIR_NAMES[d], DIR_NAMES[OPPOSITE[d]]
        add(TileType.make(f"E[{D}|{_gname(g)}]", **{O: (f"e{D}:{_gname(g)}", tau), D: (f"g{D}:{_gname(g)}", tau)}))
        # probe sitting in the neighbour block on side O, facing back toward this emitter
        add(TileType.make(f"P[{O}|{_gname(g)}]", **{D: (f"x{O}:{_gname(g)}", g[1]),
                                                    O: (f"g{D}:{_gname(g)}", tau)}))

    # seed blocks: unique centre per seed tile, linked to seed neighbours
    placements = {}
    link = {}
    for i, (p, tid) in enumerate(sorted(T.seed.items())):
        by = {}
        for d in dirs:
            q = tuple(p[k] + OFFSETS[d][k] for k in range(3))
            if q in T.seed.placements:
                key = tuple(sorted((p, q)))
                lab = f"sl{i}{DIR_NAMES[d]}"
                by[DIR_NAMES[d]] = (lab, tau)
                link.setdefault(key, {})[p] = (d, lab)
            elif glues[tid][d] is not None:
                by[DIR_NAMES[d]] = (f"e{DIR_NAMES[d]}:{_gname(glues[tid][d])}", tau)
        name = f"seed{i}[{T.tiles[tid].name}]"
        add(TileType.make(name, **by), tid)
        base = tuple(3 * c for c in p)
        placements[tuple(base[k] + centre[k] for k in range(3))] = name
        for d in dirs:
            if DIR_NAMES[d] in by and not by[DIR_NAMES[d]][0].startswith("sl"):
                mid = tuple(base[k] + centre[k] + OFFSETS[d][k] for k in range(3))
                placements[mid] = f"E[{DIR_NAMES[d]}|{_gname(glues[tid][d])}]"
    for n, (key, ends) in enumerate(sorted(link.items())):
        (p, (d, lab_p)), (q, (dq, lab_q)) = sorted(ends.items())
        # two link tiles: one in each block's facing mid cell, bonded to each other
        mid_lab = f"slm{n}"
        for (r, (dd, lab)) in ((p, (d, lab_p)), (q, (dq, lab_q))):
            nm = f"L{n}{DIR_NAMES[dd]}"
            add(TileType.make(nm, **{DIR_NAMES[OPPOSITE[dd]]: (lab, tau), DIR_NAMES[dd]: (mid_lab, tau)}))
            base = tuple(3 * c for c in r)
            placements[tuple(base[k] + centre[k] + OFFSETS[dd][k] for k in range(3))] = nm
    S = make_system(tiles, placements, tau, dimension=dims, name=f"blockify-{T.name}")
    table = tuple((frozenset({(centre, S.tiles.id_of(name))}), tid) for name, tid in decides.items())
    codec = MacrotileCodec(3, "table", dims, len(T.tiles), table=table,
                           target_digest=T.digest(), simulator_digest=S.digest())
    return S, codec


def _sys(tiles, seed, name):
    return make_system([TileType.make(n, **g) for n, g in tiles], seed, 2, dimension=2, name=name)


def case_matrix():
    """Miniature simulated systems for the eight binding situations.

    Keys name the situation; each value is a temperature-2 system in 2D.
    """
    cases = {}
    cases["single/no-other-neighbours"] = _sys(
        [("s0", {"E": ("a", 2)}), ("X", {"W": ("a", 2)})], {(0, 0, 0): "s0"}, "single-alone")
    cases["single/multiple-neighbours-one-type"] = _sys(
        [("s0", {"E": ("a", 2), "N": ("k", 2)}), ("s1", {"S": ("k", 2), "E": ("m", 2)}),
         ("s2", {"W": ("m", 2), "S": ("z", 1)}), ("X", {"W": ("a", 2), "N": ("y", 1)})],
        {(0, 0, 0): "s0", (0, 1, 0): "s1", (1, 1, 0): "s2"}, "single-neighbours")
    cases["single/one-type-several-attachments"] = _sys(
        [("q", {"N": ("c", 2), "E": ("k1", 2), "W": ("k0", 2)}), ("v", {"E": ("k0", 2), "N": ("k5", 2)}),
         ("w", {"S": ("k5", 2)}), ("r", {"W": ("k1", 2), "E": ("k2", 2), "N": ("j", 2)}),
         ("p", {"S": ("j", 2), "E": ("a", 2)}), ("u", {"W": ("k2", 2)}),
         ("X", {"W": ("a", 2), "S": ("c", 2)})],
        {(0, 0, 0): "q", (-1, 0, 0): "v", (-1, 1, 0): "w", (1, 0, 0): "r", (1, 1, 0): "p", (2, 0, 0): "u"},
        "single-attachments")
    cases["single/several-types"] = _sys(
        [("s0", {"E": ("a", 2)}), ("X", {"W": ("a", 2)}), ("Y", {"W": ("a", 2), "E": ("b", 2)}),
         ("Z", {"W": ("b", 2)})],
        {(0, 0, 0): "s0"}, "single-types")
    ushape = [("s0", {"N": ("k", 2), "E": ("q", 1)}), ("s1", {"S": ("k", 2), "E": ("k2", 2)}),
              ("s2", {"W": ("k2", 2), "S": ("p", 1)})]
    useed = {(0, 0, 0): "s0", (0, 1, 0): "s1", (1, 1, 0): "s2"}
    cases["multi/one-type-one-attachment"] = _sys(
        ushape + [("X", {"W": ("q", 1), "N": ("p", 1)})], useed, "multi-one")
    cases["multi/more-neighbours-one-type"] = _sys(
        [("s0", {"N": ("k", 2), "E": ("q", 1)}), ("s1", {"S": ("k", 2), "E": ("k2", 2)}),
         ("s2", {"W": ("k2", 2), "S": ("p", 1), "E": ("k3", 2)}), ("s3", {"W": ("k3", 2), "S": ("k4", 2)}),
         ("s4", {"N": ("k4", 2), "W": ("r", 1)}), ("X", {"W": ("q", 1), "N": ("p", 1), "E": ("r", 1)})],
        {(0, 0, 0): "s0", (0, 1, 0): "s1", (1, 1, 0): "s2", (2, 1, 0): "s3", (2, 0, 0): "s4"},
        "multi-neighbours")
    cases["multi/one-type-several-attachments"] = _sys(
        [("s0", {"N": ("k", 2), "E": ("q", 1)}), ("s1", {"S": ("k", 2), "E": ("k2", 2)}),
         ("s2", {"W": ("k2", 2), "S": ("p", 1), "E": ("k3", 2)}),
         ("s3", {"W": ("k3", 2), "S": ("p", 1), "E": ("k4", 2)}),
         ("s4", {"W": ("k4", 2), "S": ("k5", 2)}), ("s5", {"N": ("k5", 2), "W": ("u", 1)}),
         ("X", {"W": ("q", 1), "N": ("p", 1), "E": ("u", 1)})],
        {(0, 0, 0): "s0", (0, 1, 0): "s1", (1, 1, 0): "s2", (2, 1, 0): "s3", (3, 1, 0): "s4",
         (3, 0, 0): "s5"}, "multi-attachments")
    cases["multi/several-types"] = _sys(
        ushape + [("X", {"W": ("q", 1), "N": ("p", 1)}), ("Y", {"W": ("q", 1), "N": ("p", 1), "S": ("w", 1)})],
        useed, "multi-types")
    return cases
