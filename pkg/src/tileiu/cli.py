"""Command line: simulate, compile, verify, decode and export.

Errors print one line ``error <code>: <message>`` on stderr and exit with the
error class's status (1 for most, 2 for a failed verification, 3 for an
exceeded exploration budget, 64 for bad usage).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import CodecMismatch, FormatError, TileIUError, VerificationFailed
from .formats import (Snapshot, codec_file, dump_snapshot, load_codec, load_snapshot, load_system,
                      save_codec, save_snapshot, voxel_lines)

USAGE_STATUS = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error usage: {message}", file=sys.stderr)
        sys.exit(USAGE_STATUS)


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def cmd_simulate(args) -> int:
    from .core.dynamics import run
    system = load_system(args.system)
    res = run(system, args.scheduler, args.steps, args.seed, diffusion=args.diffusion_override,
              track_bonds=False)
    names = system.tiles
    snap = Snapshot(system.digest(), args.seed, [],
                    [(k + 1, ev.location, names[ev.tile].name) for k, ev in enumerate(res.events)])
    _write(args.out, dump_snapshot(snap))
    print(f"{len(res.events)} attachments, terminal={res.terminal}", file=sys.stderr)
    return 0


def cmd_compile(args) -> int:
    from .compiler import compile_system
    system = load_system(args.system)
    start = time.perf_counter()
    bundle = compile_system(system)
    wall = time.perf_counter() - start
    os.makedirs(args.out_dir, exist_ok=True)
    U = bundle.universal
    out = lambda name: os.path.join(args.out_dir, name)
    with open(out("layout.json"), "w") as f:
        json.dump(bundle.layout.as_dict(), f, indent=1, sort_keys=True)
        f.write("\n")
    base = [(p, U.tiles[t].name) for p, t in bundle.seed.items()]
    save_snapshot(Snapshot(U.digest, 0, base, []), out("seed.snapshot"))
    save_codec(codec_file(bundle.codec, U.tiles, system.tiles), out("codec.txt"))
    with open(out("universal.sha256"), "w") as f:
        f.write(U.digest + "\n")
    stats = {"m": bundle.layout.m, "universal_tiles": len(U), "seed_tiles": len(bundle.seed),
             "source_digest": bundle.source_digest, "bundle_digest": bundle.digest()}
    with open(out("stats.json"), "w") as f:
        json.dump(stats, f, indent=1, sort_keys=True)
        f.write("\n")
    with open(out("timing.json"), "w") as f:
        json.dump({"compile_seconds": round(wall, 3)}, f)
        f.write("\n")
    print(json.dumps(dict(stats, compile_seconds=round(wall, 3)), sort_keys=True))
    return 0


def _witness(w):
    if w is None:
        return None
    placements = getattr(w, "placements", None)
    if placements is not None:
        return sorted([list(p), t] for p, t in placements.items())
    return repr(w)


def cmd_verify(args) -> int:
    from .simrel import verify_simulation
    simulator = load_system(args.simulator)
    simulated = load_system(args.simulated)
    cf = load_codec(args.codec)
    if cf.target_digest and cf.target_digest != simulated.digest():
        raise CodecMismatch("codec was built for a different simulated system")
    codec = cf.bind(simulator.tiles.by_name)
    rep = verify_simulation(simulator, simulated, codec, args.depth, budget=args.budget)
    for line in rep.lines():
        print(line)
    doc = {"ok": rep.ok, "depth": args.depth, "explored": rep.explored, "exhausted": rep.exhausted,
           "sections": {k: {"status": r.status, "detail": r.detail, "witness": _witness(r.witness)}
                        for k, r in rep.sections.items()}}
    text = json.dumps(doc, sort_keys=True)
    if args.report:
        _write(args.report, text + "\n")
    else:
        print(text)
    if not rep.ok:
        raise VerificationFailed("simulation check failed: " + ", ".join(
            k for k, r in rep.sections.items() if not r.ok))
    return 0


def _final_placements(snap: Snapshot, system_path) -> dict:
    if snap.base or system_path is None:
        if not snap.base and snap.events:
            raise FormatError("snapshot has no placements; pass --system to supply the seed")
        return snap.final_placements()
    system = load_system(system_path)
    if snap.system_digest not in ("", "-") and snap.system_digest != system.digest():
        raise FormatError("snapshot was recorded for a different system")
    seed = {p: system.tiles[t].name for p, t in system.seed.items()}
    return snap.final_placements(seed)


def _decode(snap: Snapshot, cf, system_path) -> Snapshot:
    from .core.assembly import Assembly
    from .simrel import decode_star
    if cf.simulator_digest and snap.system_digest not in ("", "-") and snap.system_digest != cf.simulator_digest:
        raise CodecMismatch("codec was built for a different simulator than the snapshot")
    final = _final_placements(snap, system_path)
    names = {n: i for i, n in enumerate(sorted(set(final.values()) | set(cf.names())))}
    codec = cf.bind(names)
    decoded = decode_star(codec, Assembly({p: names[n] for p, n in final.items()}, 3))
    label = lambda t: cf.targets.get(t, f"t{t}")
    return Snapshot(cf.target_digest or "-", snap.scheduler_seed,
                    [(p, label(t)) for p, t in decoded.items()], [])


def cmd_decode(args) -> int:
    snap = load_snapshot(args.snapshot)
    _write(args.out, dump_snapshot(_decode(snap, load_codec(args.codec), args.system)))
    return 0


def cmd_export(args) -> int:
    snap = load_snapshot(args.snapshot)
    if args.codec:
        final = _decode(snap, load_codec(args.codec), args.system).final_placements()
    else:
        final = _final_placements(snap, args.system)
    lines = voxel_lines(final)
    _write(args.out, "".join(ln + "\n" for ln in lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tileiu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="run attachment dynamics and write a snapshot")
    s.add_argument("--system", required=True)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--scheduler", choices=("random", "fifo"), default="random")
    s.add_argument("--out", default="-")
    s.add_argument("--diffusion-override", choices=("none", "planar", "spatial"))
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("compile", help="compile a system into a universal-set bundle")
    c.add_argument("--system", required=True)
    c.add_argument("--out-dir", required=True)
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check that one system simulates another up to a depth")
    v.add_argument("--simulator", required=True)
    v.add_argument("--simulated", required=True)
    v.add_argument("--codec", required=True)
    v.add_argument("--depth", type=int, default=4)
    v.add_argument("--budget", type=int, help="assembly budget (default: TILEIU_MEMORY_BUDGET)")
    v.add_argument("--report", help="write the machine-readable report here")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decode", help="map a simulator snapshot to the simulated level")
    d.add_argument("--snapshot", required=True)
    d.add_argument("--codec", required=True)
    d.add_argument("--system", help="simulator system, when the snapshot starts from its seed")
    d.add_argument("--out", default="-")
    d.set_defaults(func=cmd_decode)

    e = sub.add_parser("export", help="write the assembly of a snapshot as a voxel list")
    e.add_argument("--snapshot", required=True)
    e.add_argument("--codec", help="decode before exporting")
    e.add_argument("--system", help="system whose seed the snapshot starts from")
    e.add_argument("--format", choices=("voxel-list",), default="voxel-list")
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TileIUError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status
    except (OSError, KeyError) as exc:
        err = FormatError(str(exc))
        print(f"error {err.code}: {exc}", file=sys.stderr)
        return err.exit_status


if __name__ == "__main__":
    sys.exit(main())
