import json
import os
import subprocess
import sys

import pytest

from tileiu.cli import main
from tileiu.compiler import calc_scale, scale_bound
from tileiu.core import TileType, make_system, run
from tileiu.formats import (Snapshot, codec_file, dump_snapshot, dump_system, load_snapshot,
                            parse_snapshot, parse_system, save_codec, save_snapshot, save_system)
from tileiu.simrel.fixtures import identity_fixture, line_system, scale2_line


def ray_system():
    tiles = [TileType.make("A", E=("a", 2)), TileType.make("B", W=("a", 2), E=("a", 2))]
    return make_system(tiles, {(0, 0, 0): "A"}, 2, dimension=2, name="ray")


def ring_system():
    tiles = [TileType.make(f"r{i}", **g) for i, g in enumerate([
        {"E": ("a", 2), "N": ("h", 2)}, {"W": ("a", 2), "E": ("b", 2)}, {"W": ("b", 2), "N": ("c", 2)},
        {"S": ("c", 2), "N": ("d", 2)}, {"S": ("d", 2), "W": ("e", 2)},
        {"E": ("e", 2), "W": ("f", 2), "S": ("in", 2)},
        {"E": ("f", 2), "S": ("g", 2)}, {"N": ("g", 2), "S": ("h", 2)}])]
    tiles.append(TileType.make("x", N=("in", 2)))
    cells = [(0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (2, 2, 0), (1, 2, 0), (0, 2, 0), (0, 1, 0)]
    return make_system(tiles, {c: f"r{i}" for i, c in enumerate(cells)}, 2, dimension=2,
                       diffusion="planar", name="ring")


def write_system(tmp_path, system, name="sys.txt"):
    path = tmp_path / name
    save_system(system, path)
    return str(path)


def simulate(tmp_path, system, *extra):
    out = tmp_path / "run.snapshot"
    assert main(["simulate", "--system", write_system(tmp_path, system), "--out", str(out), *extra]) == 0
    return load_snapshot(out)


# formats

@pytest.mark.parametrize("make", [ray_system, ring_system, line_system])
def test_system_file_round_trip(make):
    s = make()
    back = parse_system(dump_system(s))
    assert back.digest() == s.digest()
    assert dump_system(back) == dump_system(s)


def test_snapshot_round_trip():
    snap = Snapshot("abc", 7, [((0, 0, 0), "A")], [(1, (1, 0, 0), "B"), (2, (2, 0, 0), "B")])
    assert parse_snapshot(dump_snapshot(snap)) == snap


def test_bad_header_is_a_format_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("SOMETHING 1\n")
    assert main(["simulate", "--system", str(p)]) == 1
    assert "error format-error" in capsys.readouterr().err


def test_invalid_system_exits_with_its_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("TILEIU-SYSTEM 1\ndimension 2\ntemperature 2\ntile A E=a:1\ntile B W=a:1\n"
                 "seed 0 0 0 A\nseed 1 0 0 B\n")
    assert main(["simulate", "--system", str(p)]) == 1
    assert "error seed-unstable" in capsys.readouterr().err


def test_usage_error_status(capsys):
    with pytest.raises(SystemExit) as e:
        main(["simulate"])
    assert e.value.code == 64


# simulate

def test_terminal_seed_gives_empty_snapshot(tmp_path):
    t = TileType.make("A", E=("a", 1))
    snap = simulate(tmp_path, make_system([t], {(0, 0, 0): "A"}, 2), "--steps", "50")
    assert snap.events == []


def test_deterministic_line_five_steps(tmp_path):
    snap = simulate(tmp_path, ray_system(), "--steps", "5")
    assert [(s, p, n) for s, p, n in snap.events] == [(k, (k, 0, 0), "B") for k in range(1, 6)]


def test_planar_ring_never_fills_the_centre(tmp_path):
    for seed in range(5):
        snap = simulate(tmp_path, ring_system(), "--steps", "20", "--seed", str(seed))
        assert (1, 1, 0) not in {p for _, p, _ in snap.events}
    snap = simulate(tmp_path, ring_system(), "--steps", "20", "--diffusion-override", "none")
    assert (1, 1, 0) in {p for _, p, _ in snap.events}


def test_snapshot_replays_to_the_run(tmp_path):
    s = line_system()
    snap = simulate(tmp_path, s, "--steps", "10", "--seed", "3")
    res = run(s, "random", 10, 3)
    assert snap.assembly(s.tiles.by_name, s.dimension, s.seed) == res.assembly


# compile and decode

@pytest.fixture(scope="module")
def bundle(tmp_path_factory):
    d = tmp_path_factory.mktemp("bundle")
    t = TileType.make("x", **{k: ("g", 2) for k in "NESWUD"})
    system = make_system([t], {(0, 0, 0): "x"}, 2, name="one")
    sysfile = d / "one.txt"
    save_system(system, sysfile)
    assert main(["compile", "--system", str(sysfile), "--out-dir", str(d / "a")]) == 0
    assert main(["compile", "--system", str(sysfile), "--out-dir", str(d / "b")]) == 0
    return d, system


def test_compile_bundle_contents(bundle):
    d, system = bundle
    stats = json.loads((d / "a" / "stats.json").read_text())
    assert stats["m"] == calc_scale(1, 2).m
    assert stats["m"] < scale_bound(1, 2)
    codec = (d / "a" / "codec.txt").read_text()
    assert sum(1 for ln in codec.splitlines() if ln.startswith("window ")) == 1


def test_recompilation_is_byte_identical(bundle):
    d, _ = bundle
    names = sorted(os.listdir(d / "a"))
    assert names == sorted(os.listdir(d / "b"))
    for n in names:
        if n != "timing.json":
            assert (d / "a" / n).read_bytes() == (d / "b" / n).read_bytes(), n


def test_decode_compiled_seed(bundle, tmp_path):
    d, system = bundle
    out = tmp_path / "decoded.snapshot"
    assert main(["decode", "--snapshot", str(d / "a" / "seed.snapshot"), "--codec", str(d / "a" / "codec.txt"),
                 "--out", str(out)]) == 0
    snap = load_snapshot(out)
    assert snap.base == [((0, 0, 0), "x")]
    assert snap.system_digest == system.digest()


def test_decode_with_foreign_codec(bundle, tmp_path, capsys):
    d, _ = bundle
    snap = load_snapshot(d / "a" / "seed.snapshot")
    snap.system_digest = "0" * 64
    other = tmp_path / "other.snapshot"
    save_snapshot(snap, other)
    status = main(["decode", "--snapshot", str(other), "--codec", str(d / "a" / "codec.txt")])
    assert status == 1
    assert "error codec-mismatch" in capsys.readouterr().err


# verify

def fixture_files(tmp_path, simulator, simulated, codec):
    a = write_system(tmp_path, simulator, "simulator.txt")
    b = write_system(tmp_path, simulated, "simulated.txt")
    c = tmp_path / "codec.txt"
    save_codec(codec_file(codec, simulator.tiles, simulated.tiles), c)
    return ["--simulator", a, "--simulated", b, "--codec", str(c)]


def test_verify_identity_passes(tmp_path, capsys):
    args = fixture_files(tmp_path, *identity_fixture(line_system()))
    assert main(["verify", *args, "--depth", "6"]) == 0
    assert '"ok": true' in capsys.readouterr().out


def test_verify_shifted_codec_fails_with_witness(tmp_path, capsys):
    args = fixture_files(tmp_path, *scale2_line("shifted"))
    report = tmp_path / "report.json"
    assert main(["verify", *args, "--depth", "6", "--report", str(report)]) == 2
    doc = json.loads(report.read_text())
    assert not doc["ok"]
    bad = [s for s in doc["sections"].values() if s["status"] == "violation"]
    assert bad and any(s["witness"] is not None for s in bad)
    assert "error verification-failed" in capsys.readouterr().err


def test_verify_budget_exit_code(tmp_path, capsys):
    args = fixture_files(tmp_path, *scale2_line("ok"))
    assert main(["verify", *args, "--depth", "6", "--budget", "2"]) == 3
    assert "error budget-exceeded" in capsys.readouterr().err


# export

def test_export_three_tiles_sorted(tmp_path):
    snap = Snapshot("-", 0, [((2, 0, 0), "C"), ((0, 1, 0), "A"), ((0, 0, 5), "B")], [])
    p = tmp_path / "s.snapshot"
    save_snapshot(snap, p)
    out = tmp_path / "v.txt"
    assert main(["export", "--snapshot", str(p), "--out", str(out)]) == 0
    assert out.read_text().splitlines() == ["0 0 5 B", "0 1 0 A", "2 0 0 C"]


def test_export_from_system_seed(tmp_path):
    s = ray_system()
    snap = simulate(tmp_path, s, "--steps", "2")
    p = tmp_path / "s2.snapshot"
    save_snapshot(snap, p)
    out = tmp_path / "v.txt"
    assert main(["export", "--snapshot", str(p), "--system", write_system(tmp_path, s, "ray.txt"),
                 "--out", str(out)]) == 0
    assert out.read_text().splitlines() == ["0 0 0 A", "1 0 0 B", "2 0 0 B"]


def test_console_entry_point(tmp_path):
    sysfile = write_system(tmp_path, ray_system())
    res = subprocess.run([sys.executable, "-m", "tileiu.cli", "simulate", "--system", sysfile, "--steps", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert parse_snapshot(res.stdout).events[-1][1] == (3, 0, 0)
