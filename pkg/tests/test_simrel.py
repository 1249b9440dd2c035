import random

import pytest
from hypothesis import given, settings, strategies as st

from tileiu.core import Assembly, TileType, explore_bounded, make_system
from tileiu.simrel import (MacrotileCodec, blocks, check_clean_mapping, check_codec_validity, decode_star,
                           extract_block, identity_codec, verify_follows, verify_models, verify_simulation,
                           window_width)
from tileiu.simrel.fixtures import blockify, case_matrix, identity_fixture, line_system, scale2_line

from oracles import naive_explore


def four_tile_codec(m=2):
    return MacrotileCodec(m, "generated", 2, 4, window=((0, 0, 0), (1, 0, 0)), bit_of={10: 0, 11: 1})


# extract_block

def test_empty_window_is_empty_block():
    assert extract_block(Assembly({(0, 0, 0): 1}, 2), 2, (3, 3, 0)) == {}


def test_full_window_has_m_to_the_d_tiles():
    a = Assembly({(x, y, z): 5 for x in range(3) for y in range(3) for z in range(3)}, 3)
    assert len(extract_block(a, 3, (0, 0, 0))) == 27
    a2 = Assembly({(x, y, 0): 5 for x in range(3) for y in range(3)}, 2)
    assert len(extract_block(a2, 3, (0, 0, 0), 2)) == 9


def test_block_offset_arithmetic():
    a = Assembly({(3, 0, 0): 7}, 3)
    assert extract_block(a, 3, (1, 0, 0)) == {(0, 0, 0): 7}
    assert extract_block(a, 3, (0, 0, 0)) == {}


# decode_star

def test_generated_window_decodes_tile_three():
    a = Assembly({(0, 0, 0): 11, (1, 0, 0): 11, (0, 1, 0): 10}, 2)
    assert decode_star(four_tile_codec(), a).placements == {(0, 0, 0): 3}


def test_missing_window_cell_maps_to_empty():
    a = Assembly({(0, 0, 0): 11, (0, 1, 0): 10, (1, 1, 0): 11}, 2)
    assert decode_star(four_tile_codec(), a).placements == {}


def test_window_width_has_one_bit_minimum():
    assert window_width(1) == 1
    assert window_width(2) == 1
    assert window_width(3) == 2
    assert window_width(64) == 6
    assert window_width(65) == 7


def test_seed_of_fixtures_decodes_to_simulated_seed():
    S, T, codec = scale2_line()
    assert decode_star(codec, S.seed) == T.seed
    for T in case_matrix().values():
        S, codec = blockify(T)
        assert decode_star(codec, S.seed) == T.seed


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_decode_star_equals_per_block_decoding(seed):
    rng = random.Random(seed)
    codec = four_tile_codec(m=rng.choice([2, 3]))
    a = Assembly({(rng.randint(-6, 6), rng.randint(-6, 6), 0): rng.choice([10, 11, 12])
                  for _ in range(rng.randint(1, 60))}, 2)
    whole = decode_star(codec, a).placements
    for b in blocks(a, codec.m):
        assert whole.get(b) == codec.decode_block(extract_block(a, codec.m, b, 2))


def test_generated_codec_validity_by_sampling():
    S, T, codec = scale2_line()
    assert check_codec_validity(codec, samples=1000, sim_tiles=len(S.tiles)) == []
    assert check_codec_validity(four_tile_codec(), samples=1000, sim_tiles=13) == []


def test_table_codec_validity_by_sampling():
    T = case_matrix()["multi/several-types"]
    S, codec = blockify(T)
    assert check_codec_validity(codec, samples=1000, sim_tiles=len(S.tiles)) == []


# clean mapping

def test_exact_cover_is_clean():
    a = Assembly({(0, 0, 0): 11, (1, 0, 0): 10, (2, 0, 0): 10, (3, 0, 0): 11}, 2)
    assert check_clean_mapping(four_tile_codec(), a).violations == []


def test_stray_tile_two_blocks_away_is_isolated_fuzz():
    a = Assembly({(0, 0, 0): 11, (1, 0, 0): 10, (4, 0, 0): 12}, 2)
    rep = check_clean_mapping(four_tile_codec(), a)
    assert rep.violations == [((2, 0, 0), "isolated-fuzz")]


def test_diagonal_stray_is_diagonal_fuzz():
    a = Assembly({(0, 0, 0): 11, (1, 0, 0): 10, (2, 2, 0): 12}, 2)
    rep = check_clean_mapping(four_tile_codec(), a)
    assert rep.violations == [((1, 1, 0), "diagonal-fuzz")]


def test_face_adjacent_partial_block_is_allowed():
    a = Assembly({(0, 0, 0): 11, (1, 0, 0): 10, (2, 0, 0): 12}, 2)
    assert check_clean_mapping(four_tile_codec(), a).clean


# follows / models / simulation

def small_systems():
    line = line_system()
    coop = case_matrix()["multi/one-type-several-attachments"]
    return [line, coop]


@pytest.mark.parametrize("system", small_systems(), ids=lambda s: s.name)
def test_identity_simulation_is_green(system):
    S, T, codec = identity_fixture(system)
    assert verify_follows(S, T, codec, 6).ok
    assert verify_models(S, T, codec, 6).ok
    rep = verify_simulation(S, T, codec, 6)
    assert rep.ok and rep.sections["follows"].ok


def test_scale2_fixture_brute_force_legality():
    # independent check of the fixture: every reachable simulator assembly decodes,
    # block by block, to an assembly the line system can produce
    S, T, codec = scale2_line()
    produced = naive_explore(T, 3)
    names = [t.name for t in S.tiles]
    for key in naive_explore(S, 8):
        out = {}
        for (x, y, z), t in key:
            out.setdefault((x // 2, y // 2), {})[(x % 2, y % 2)] = names[t]
        decoded = set()
        for (bx, by), cells in out.items():
            msb, lsb = cells.get((0, 0)), cells.get((1, 0))
            if msb and lsb:
                bits = {"a0": 0, "a1": 0, "b0": 0, "b1": 1, "c0": 1, "c1": 0}
                decoded.add(((bx, by, 0), 2 * bits[msb] + bits[lsb]))
        assert frozenset(decoded) in produced


def test_scale2_follows_at_depth_eight():
    S, T, codec = scale2_line()
    assert verify_follows(S, T, codec, 8).status == "ok"


def test_shifted_window_breaks_follows():
    S, T, codec = scale2_line("shifted")
    res = verify_follows(S, T, codec, 8)
    assert res.status == "violation"
    before, after = res.witness
    assert len(decode_star(codec, after)) > len(decode_star(codec, before))


def test_scale2_models_at_depth_six():
    S, T, codec = scale2_line()
    assert verify_models(S, T, codec, 6).ok


def test_removed_tile_breaks_models_naming_successor():
    S, T, codec = scale2_line("no-c1")
    res = verify_models(S, T, codec, 8)
    assert res.status == "violation"
    alpha, beta, _ = res.witness
    assert beta.placements == {(0, 0, 0): 0, (1, 0, 0): 1, (2, 0, 0): 2}
    assert alpha.placements == {(0, 0, 0): 0, (1, 0, 0): 1}


def test_scale2_simulation_green_at_depth_six():
    S, T, codec = scale2_line()
    rep = verify_simulation(S, T, codec, 6)
    assert rep.ok
    assert rep.sections["productions"].status == "ok-at-depth"
    full = verify_simulation(S, T, codec, 8)
    assert full.exhausted and all(r.status == "ok" for r in full.sections.values())


def test_fuzz_arm_fails_clean_mapping():
    S, T, codec = scale2_line("fuzz")
    rep = verify_simulation(S, T, codec, 6)
    assert not rep.ok
    fuzz = rep.sections["clean-mapping"]
    assert fuzz.status == "violation"
    _, report = fuzz.witness
    assert report.violations == [((0, 2, 0), "isolated-fuzz")]


@pytest.mark.parametrize("case", sorted(case_matrix()))
def test_case_matrix_fixture_simulates(case):
    T = case_matrix()[case]
    assert explore_bounded(T, 30).exhausted
    S, codec = blockify(T)
    rep = verify_simulation(S, T, codec, 40)
    assert rep.exhausted
    assert all(r.status == "ok" for r in rep.sections.values()), list(rep.lines())


def test_blockify_three_dimensional():
    tiles = [TileType.make("s", U=("a", 1), E=("b", 1), N=("k", 2)), TileType.make("s2", S=("k", 2), U=("c", 2)),
             TileType.make("z", D=("c", 2), S=("d", 1)),
             TileType.make("x", D=("a", 1), N=("d", 1), E=("e", 2)), TileType.make("y", W=("e", 2))]
    T = make_system(tiles, {(0, 0, 0): "s", (0, 1, 0): "s2"}, 2, dimension=3)
    assert len(explore_bounded(T, 10).terminal(T)[0]) == 5
    S, codec = blockify(T)
    rep = verify_simulation(S, T, codec, 40)
    assert rep.exhausted
    assert all(r.status == "ok" for r in rep.sections.values()), list(rep.lines())
