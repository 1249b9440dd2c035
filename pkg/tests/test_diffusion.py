import random
from itertools import product

from hypothesis import given, settings, strategies as st

from tileiu.core import Assembly, TileType, frontier, make_system, run
from tileiu.core.dynamics import Simulator
from tileiu.diffusion import DiffusionIndex, constrained_regions, has_diffusion_path, restricted_frontier

from oracles import bfs_escapes

RING = [(x, y, 0) for x in range(3) for y in range(3) if (x, y) != (1, 1)]
SHELL = [p for p in product(range(3), repeat=3) if p != (1, 1, 1)]


def test_next_to_single_tile_has_path():
    a = Assembly({(0, 0, 0): 0}, 2)
    assert has_diffusion_path(a, (1, 0, 0))


def test_ring_blocks_centre():
    a = Assembly({p: 0 for p in RING}, 2)
    assert not has_diffusion_path(a, (1, 1, 0))
    assert not bfs_escapes(a.placements, (1, 1, 0), 2)


def test_shell_blocks_centre_until_a_face_tile_is_removed():
    a = Assembly({p: 0 for p in SHELL}, 3)
    assert not has_diffusion_path(a, (1, 1, 1))
    opened = set()
    for p in SHELL:
        b = Assembly({q: 0 for q in SHELL if q != p}, 3)
        got = has_diffusion_path(b, (1, 1, 1))
        assert got == bfs_escapes(b.placements, (1, 1, 1), 3)
        if got:
            opened.add(p)
    # corner and edge tiles leave every face neighbour of the centre occupied
    assert opened == {p for p in SHELL if sum(c != 1 for c in p) == 1}


def ring_system():
    tiles = [TileType.make(f"r{i}", **g) for i, g in enumerate([
        {"E": ("a", 2), "N": ("h", 2)}, {"W": ("a", 2), "E": ("b", 2)}, {"W": ("b", 2), "N": ("c", 2)},
        {"S": ("c", 2), "N": ("d", 2)}, {"S": ("d", 2), "W": ("e", 2)}, {"E": ("e", 2), "W": ("f", 2), "S": ("in", 2)},
        {"E": ("f", 2), "S": ("g", 2)}, {"N": ("g", 2), "S": ("h", 2)}])]
    tiles.append(TileType.make("x", N=("in", 2)))
    cells = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (2, 2, 0), (1, 2, 0), (0, 2, 0), (0, 1, 0)]
    return make_system(tiles, {c: f"r{i}" for i, c in enumerate(cells)}, 2, dimension=2, diffusion="planar")


def test_planar_ring_interior_pair_removed():
    s = ring_system()
    assert ((1, 1, 0), 8) in frontier(s, s.seed)
    assert ((1, 1, 0), 8) not in restricted_frontier(s, s.seed)


def test_restricted_equals_frontier_without_diffusion():
    s = ring_system()
    s.diffusion = "none"
    assert restricted_frontier(s, s.seed) == frontier(s, s.seed)


def columns_and_arms():
    """Two columns whose arms meet above a middle column growing between them."""
    g = 1
    tiles = [
        TileType.make("R0", E=("r0", g), N=("gc", g)), TileType.make("R1", W=("r0", g), E=("r1", g)),
        TileType.make("R2", W=("r1", g), E=("r2", g), N=("pc", g)), TileType.make("R3", W=("r2", g), E=("r3", g)),
        TileType.make("R4", W=("r3", g), N=("yc", g)),
        TileType.make("G", S=("gc", g), N=("gc", g), E=("ga", g)), TileType.make("GA", W=("ga", g), E=("m", g)),
        TileType.make("Y", S=("yc", g), N=("yc", g), W=("ya", g)), TileType.make("YA", E=("ya", g), W=("m2", g)),
        TileType.make("M", W=("m", g), E=("m2", g)), TileType.make("P", S=("pc", g), N=("pc", g)),
    ]
    seed = {(i, 0, 0): f"R{i}" for i in range(5)}
    s = make_system(tiles, seed, 1, dimension=2, diffusion="planar")
    script = [((0, 1, 0), "G"), ((0, 2, 0), "G"), ((0, 3, 0), "G"), ((4, 1, 0), "Y"), ((4, 2, 0), "Y"),
              ((4, 3, 0), "Y"), ((2, 1, 0), "P"), ((1, 3, 0), "GA"), ((3, 3, 0), "YA")]
    return s, script


def test_meeting_arms_seal_middle_column():
    s, script = columns_and_arms()
    pink = s.tiles.id_of("P")
    res = run(s, "scripted", script=script)
    open_pairs = restricted_frontier(s, res.assembly)
    assert ((2, 2, 0), pink) in open_pairs
    res = run(s, "scripted", script=script + [((2, 3, 0), "M")])
    sealed = restricted_frontier(s, res.assembly)
    assert ((2, 2, 0), pink) in frontier(s, res.assembly)
    assert not any(t == pink for _, t in sealed)
    assert not bfs_escapes(res.assembly.placements, (2, 2, 0), 2)


def test_no_voids_no_regions():
    a = Assembly({(0, 0, 0): 0, (1, 0, 0): 0, (1, 1, 0): 0}, 2)
    assert constrained_regions(a) == []


def removal_oracle(placements, region, dims):
    """Tiles whose single removal frees the region or joins the freed cell to it."""
    probe = next(iter(region))
    out = set()
    for p in placements:
        rest = {q for q in placements if q != p}
        if bfs_escapes(rest, probe, dims):
            out.add(p)
            continue
        seen, todo = {probe}, [probe]
        lo = [min(q[k] for q in rest) for k in range(3)]
        hi = [max(q[k] for q in rest) for k in range(3)]
        while todo:
            c = todo.pop()
            for d in ([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)] +
                      ([(0, 0, 1), (0, 0, -1)] if dims == 3 else [])):
                q = (c[0] + d[0], c[1] + d[1], c[2] + d[2])
                if q not in rest and q not in seen and all(lo[k] <= q[k] <= hi[k] for k in range(3)):
                    seen.add(q)
                    todo.append(q)
        if p in seen:
            out.add(p)
    return out


def test_ring_constraining_subassembly():
    a = Assembly({p: 0 for p in RING}, 2)
    [(region, cons)] = constrained_regions(a)
    assert region == {(1, 1, 0)}
    assert cons == removal_oracle(a.placements, region, 2)
    assert cons == {(1, 0, 0), (0, 1, 0), (2, 1, 0), (1, 2, 0)}


def test_shell_constraining_subassembly():
    a = Assembly({p: 0 for p in SHELL}, 3)
    [(region, cons)] = constrained_regions(a)
    assert region == {(1, 1, 1)}
    assert cons == removal_oracle(a.placements, region, 3)
    assert len(cons) == 6


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from([2, 3]))
def test_index_agrees_with_bfs_along_random_growth(seed, dims):
    rng = random.Random(seed)
    a = Assembly({(0, 0, 0): 0}, dims)
    index = DiffusionIndex(a, dims)
    steps = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)] + ([(0, 0, 1), (0, 0, -1)] if dims == 3 else [])
    blocked = set()
    cells = [(0, 0, 0)]
    for _ in range(rng.randint(20, 500)):
        c = rng.choice(cells)
        d = rng.choice(steps)
        q = (c[0] + d[0], c[1] + d[1], c[2] + d[2])
        if q in a.placements:
            continue
        a.place(q, 0)
        index.notify_attach(q)
        cells.append(q)
        if len(cells) % 10:
            continue
        (x0, y0, z0), (x1, y1, z1) = a.bbox
        for _ in range(10):
            p = (rng.randint(x0, x1), rng.randint(y0, y1), rng.randint(z0, z1) if dims == 3 else 0)
            if p in a.placements:
                continue
            got = index.has_path(p)
            assert got == bfs_escapes(a.placements, p, dims)
            if not got:
                blocked.add(p)
        # blocked cells stay blocked
        for p in blocked:
            assert p in a.placements or not index.has_path(p)


def test_simulator_never_attaches_into_sealed_region():
    s, script = columns_and_arms()
    res = run(s, "scripted", script=script + [((2, 3, 0), "M")])
    sim = Simulator(s, res.assembly)
    sim.run_random(200, random.Random(0))
    assert (2, 2, 0) not in sim.assembly.placements
