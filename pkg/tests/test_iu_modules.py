import itertools
import random

import pytest

from tileiu.compiler.layout import layout_for, window_bits
from tileiu.core import TileType, make_system
from tileiu.core.tiles import DIR_NAMES
from tileiu.datapath import grow_isolated, interpret_pose
from tileiu.datapath.isa import vadd
from tileiu.errors import InvalidOperand, LayoutMismatch
from tileiu.modules import (GenomeSpec, adder_fired, array_inputs, bracket_inputs, bracket_outputs,
                            bus_inputs, delivered_payload, emit_adder_unit, emit_bands, emit_bracket,
                            entries_for, gen_adder_array, gen_bracket, gen_external_comm, gen_genome,
                            gen_glue_table, plan_route)
from tileiu.modules.adder import BACKBONE_Y, COMPONENTS, SUCCESS_Y, output_site
from tileiu.modules.genome import CRITICAL, INIT_ORDER

from oracles import oracle_glue_matches

INSETS = {"Z": 2, "X": 5, "Y": 8}


def as_tuples(table):
    return {(e.tile, DIR_NAMES.index(e.direction), e.match, e.strength) for e in table}


def random_tiles(rng, n, labels=("a", "b", "c"), dims=6):
    strength = {lab: rng.choice([1, 2]) for lab in labels}
    tiles = []
    for i in range(n):
        faces = {}
        for d in DIR_NAMES[:dims]:
            if rng.random() < 0.6:
                lab = rng.choice(labels)
                faces[d] = (lab, strength[lab])
        tiles.append(TileType.make(f"t{i}", **faces))
    return tiles


def all_glue_system(tau=2):
    t = TileType.make("x", **{d: ("g", tau) for d in DIR_NAMES})
    return make_system([t], {(0, 0, 0): "x"}, tau)


# glue table

def test_no_matching_glues_gives_empty_table():
    tiles = [TileType.make("a", E=("p", 1)), TileType.make("b", E=("q", 2))]
    assert gen_glue_table(tiles) == []


def test_single_self_matching_tile_has_six_entries():
    table = gen_glue_table(all_glue_system().tiles)
    assert len(table) == 6
    assert {e.direction for e in table} == set(DIR_NAMES)
    assert {e.strength for e in table} == {2}


def test_two_tiles_on_east_west_axis():
    tiles = [TileType.make("a", E=("x", 1)), TileType.make("b", W=("x", 1))]
    table = gen_glue_table(tiles)
    assert as_tuples(table) == oracle_glue_matches(tiles)
    assert len(table) == 2
    assert {(e.tile, e.direction, e.match) for e in table} == {(0, "W", 1), (1, "E", 0)}


@pytest.mark.parametrize("seed", range(25))
def test_glue_table_matches_brute_force(seed):
    tiles = random_tiles(random.Random(seed), 4)
    table = gen_glue_table(tiles)
    assert as_tuples(table) == oracle_glue_matches(tiles)
    assert len(table) <= 6 * len(tiles) ** 2
    for e in table:
        assert e.adder_offset == 6 * e.match + DIR_NAMES.index(e.direction)


@pytest.mark.parametrize("seed", range(10))
def test_query_activates_exactly_its_entries(seed):
    tiles = random_tiles(random.Random(100 + seed), 4)
    table = gen_glue_table(tiles)
    oracle = oracle_glue_matches(tiles)
    for t in range(4):
        for k, d in enumerate(DIR_NAMES):
            got = {(e.match, e.strength) for e in entries_for(table, t, d)}
            assert got == {(u, s) for (tt, dd, u, s) in oracle if tt == t and dd == k}


# adder

def grow_unit(tau, strengths, seed=0):
    g = emit_adder_unit(tau)
    r = grow_isolated(g, extra=bus_inputs(tau, g.gid, strengths), seed=seed, max_steps=400_000)
    return g, r


def test_adder_single_strong_input_fires():
    g, r = grow_unit(2, {"N": 2})
    assert adder_fired(g, r.placements)


def test_adder_single_weak_input_does_not_fire():
    g, r = grow_unit(2, {"N": 1})
    assert not adder_fired(g, r.placements)


@pytest.mark.parametrize("tau", [2, 3, 4])
def test_adder_exhaustive_subsets(tau):
    rng = random.Random(tau)
    g = emit_adder_unit(tau)
    for mask in range(1, COMPONENTS + 1):
        q = {d: rng.randint(1, tau) for k, d in enumerate(DIR_NAMES) if mask >> k & 1}
        r = grow_isolated(g, extra=bus_inputs(tau, g.gid, q), seed=mask, max_steps=400_000)
        assert adder_fired(g, r.placements) == (sum(q.values()) >= tau), q


def test_adder_strength_above_tau_is_clamped():
    g, r = grow_unit(2, {"E": 5})
    assert adder_fired(g, r.placements)
    with pytest.raises(InvalidOperand):
        bus_inputs(2, g.gid, {"E": 0})


def success_rows(placements):
    return {p: n for p, n in placements.items() if p[1] in (BACKBONE_Y, SUCCESS_Y) and p[2] == 0}


def test_success_row_is_schedule_and_input_independent():
    # several components succeed (every subset containing N, plus others) in varying orders
    rows = set()
    for q in ({"N": 2}, {"N": 2, "E": 2}, {"S": 1, "W": 1, "U": 2}):
        for seed in range(4):
            g, r = grow_unit(2, q, seed)
            rows.add(frozenset(success_rows(r.placements).items()))
    assert len(rows) == 1


def test_adder_array_units_follow_glue_table():
    tiles = [TileType.make("a", E=("x", 1), N=("y", 2)), TileType.make("b", W=("x", 1), S=("y", 2))]
    system = make_system(tiles, {(0, 0, 0): "a"}, 2)
    spec, g = gen_adder_array(system, layout_for(64, 2, 2))
    table = gen_glue_table(system.tiles)
    cases = {
        (("W", 0),): {1: False},                # a on the west offers strength 1 to b
        (("S", 0),): {1: True},                 # a on the south offers strength 2 to b
        (("W", 0), ("E", 1)): {0: False, 1: False},   # each candidate sees one strength-1 bond
        (("S", 0), ("N", 1)): {0: True, 1: True},
        (("W", 0), ("S", 0)): {0: False, 1: True},
    }
    for nbrs, want in cases.items():
        extra = array_inputs(spec, g.gid, table, dict(nbrs))
        r = grow_isolated(g, extra=extra, max_steps=1_000_000)
        for unit, fired in want.items():
            assert r.placements.get(output_site(spec.unit_origin[unit][1]), "").startswith(
                f"{g.gid}/out/") == fired


def test_adder_array_is_schedule_independent():
    tiles = [TileType.make("a", E=("x", 1), N=("y", 2)), TileType.make("b", W=("x", 1), S=("y", 2))]
    system = make_system(tiles, {(0, 0, 0): "a"}, 2)
    spec, g = gen_adder_array(system, layout_for(64, 2, 2))
    extra = array_inputs(spec, g.gid, gen_glue_table(system.tiles), {"S": 0, "E": 1, "W": 0})
    sets = {frozenset(grow_isolated(g, extra=extra, seed=s, max_steps=1_000_000).placements.items())
            for s in range(20)}
    assert len(sets) == 1


def test_adder_spec_shape():
    spec, _ = gen_adder_array(all_glue_system(3), layout_for(64, 1, 3))
    assert spec.units == (0,)
    assert spec.components == 63 and spec.partial_adders == 7
    assert spec.subset(5) == ("N", "S")
    assert spec.subset(63) == DIR_NAMES


def test_adder_array_layout_mismatch():
    with pytest.raises(LayoutMismatch):
        gen_adder_array(all_glue_system(2), layout_for(64, 2, 2))


# bracket

def test_bracket_single_input():
    _, g = emit_bracket(1)
    r = grow_isolated(g, extra=bracket_inputs(g, [0]))
    assert bracket_outputs(g, r.placements) == [0]


@pytest.mark.parametrize("k", range(1, 9))
def test_bracket_exactly_one_winner(k):
    spec, g = emit_bracket(8)
    rng = random.Random(k)
    for s in range(50):
        used = rng.sample(range(8), k)
        r = grow_isolated(g, extra=bracket_inputs(g, used), seed=s)
        out = bracket_outputs(g, r.placements)
        assert len(out) == 1 and out[0] in used


def test_bracket_late_input_is_blocked():
    spec, g = emit_bracket(6)
    r = grow_isolated(g, extra=bracket_inputs(g, [1, 4]), seed=3)
    won = bracket_outputs(g, r.placements)
    for late in (0, 2, 3, 5):
        start = {**g.seed, **r.placements, **bracket_inputs(g, [late])}
        r2 = grow_isolated(g, start=start)
        assert bracket_outputs(g, r2.placements) == won
        assert r2.placements[spec.entries[late]] == f"{g.gid}/plug/{late}"


def test_bracket_shape_and_competition_points():
    spec, _ = emit_bracket(5)
    assert spec.levels == 3 and spec.slots == 8
    for a, b in itertools.combinations(range(spec.slots), 2):
        assert len(spec.competition_points(a, b)) == 1


def test_bracket_rejects_empty_and_mismatch():
    with pytest.raises(InvalidOperand):
        emit_bracket(0)
    with pytest.raises(LayoutMismatch):
        gen_bracket(layout_for(64, 3, 2), 4)


# route planning and external communication

@pytest.mark.parametrize("target", [(0, 9, 0), (7, 20, 0), (-12, 15, 3), (5, 30, -6), (0, 40, 0)])
def test_route_reaches_target(target):
    prog = plan_route(target)
    assert interpret_pose(prog).position == target


@pytest.mark.parametrize("winner,tile_count", [(0, 8), (5, 8), (0, 1)])
def test_ext_comm_delivers_winner(winner, tile_count):
    layout = layout_for(64, tile_count, 2)
    bits = format(winner, f"0{window_bits(tile_count)}b")
    for g in gen_external_comm(layout, tile_count, winner=winner):
        r = grow_isolated(g)
        assert r.pose.position == interpret_pose(g.program, g.inputs).position == g.info["target"]
        assert delivered_payload(g, r.placements, r.pose) == bits


def test_ext_comm_without_winner_stays_home():
    layout = layout_for(64, 8, 2)
    for g in gen_external_comm(layout, 8):
        r = grow_isolated(g)
        home = [vadd(g.info["start"], p) for p in r.placements]
        assert all(0 <= c < layout.m for p in home for c in p)
        assert r.pose is None or r.pose.position[1] <= 1


# genome

def test_genome_counts_and_order():
    spec, _ = gen_genome(all_glue_system(), layout_for(64, 1, 2))
    c = spec.counts()
    assert (c["intersection"], c["turn"], c["query"], c["initialize"]) == (24, 24, 6, 1)
    crit = spec.critical()
    assert crit[:3] == CRITICAL
    assert sum(n for k, n in crit[3] if k in ("query", "initialize")) == 7
    others = [o for o in spec.g1 if o[:3] != CRITICAL]
    assert all(k not in ("query", "initialize") for o in others for k, _ in o[3])
    assert tuple(name for name, _ in spec.g3) == INIT_ORDER
    assert len(spec.g2) == 6


def test_genome_initialisation_routes_reach_modules():
    layout = layout_for(64, 1, 2)
    spec, _ = gen_genome(all_glue_system(), layout)
    a = layout.anchors
    targets = dict(zip(INIT_ORDER, (a["ext_start"], a["bracket_start"], a["adder_start"])))
    for name, prog in spec.g3:
        assert vadd(a["init"][0], interpret_pose(prog).position) == targets[name]


@pytest.mark.parametrize("seed", range(5))
def test_genome_encoding_round_trip(seed):
    tiles = random_tiles(random.Random(seed), 3)
    system = make_system(tiles, {(0, 0, 0): "t0"}, 2)
    spec, _ = gen_genome(system, layout_for(64, 3, 2))
    d = GenomeSpec.decode(spec.encode())
    assert d["g1"] == spec.g1
    assert d["g2"] == tuple((e.tile, e.direction, e.match, e.strength) for e in spec.g2)
    assert d["g3"] == tuple((n, tuple((i.kind, i.operand or 0) for i in p.instructions))
                            for n, p in spec.g3)
    assert (d["tile_count"], d["tau"]) == (3, 2)


def test_genome_layout_mismatch():
    with pytest.raises(LayoutMismatch):
        gen_genome(all_glue_system(), layout_for(64, 2, 2))


@pytest.fixture(scope="module")
def bands():
    return emit_bands(40, INSETS)


def test_bands_complete_from_every_entry(bands):
    cells = bands.info["band_cells"]
    want = {p: bands.expected[p] for p in cells}
    for d, p in bands.info["entries"].items():
        r = grow_isolated(bands, start={p: bands.expected[p]})
        assert r.placements == want, d


def test_bands_order_independent(bands):
    want = frozenset((p, bands.expected[p]) for p in bands.info["band_cells"])
    start = {p: bands.expected[p] for p in bands.info["entries"].values()}
    got = {frozenset(grow_isolated(bands, start=start, seed=s).placements.items()) for s in range(10)}
    assert got == {want}


def test_stub_needs_its_trigger(bands):
    e = bands.info["entries"]["U"]
    tp, tn = bands.info["triggers"]["U"]
    r = grow_isolated(bands, start={e: bands.expected[e], tp: tn})
    assert set(bands.info["stubs"]["U"]) <= set(r.placements)
    for d in ("N", "E", "S", "W", "D"):
        assert not set(bands.info["stubs"][d]) & set(r.placements)
