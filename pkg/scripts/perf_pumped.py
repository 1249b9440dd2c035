"""Time random attachments of a pumped 3D system and sample resident memory.

Prints one JSON object: total attachments, wall seconds for the run and, per
checkpoint, the tiles placed so far and the growth of resident memory since
start.  Resident memory is read from /proc/self/statm (Linux); peak RSS from
getrusage is not used because it survives exec and would report the parent's
peak when run from a large process.
"""
import argparse
import json
import random
import os
import time

from tileiu.core import TileType, make_system
from tileiu.core.dynamics import Simulator


def rss_bytes():
    with open("/proc/self/statm") as f:
        return int(f.read().split()[1]) * os.sysconf("SC_PAGE_SIZE")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=1_000_000)
    ap.add_argument("--checkpoints", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = ("g", 2)
    system = make_system([TileType.make("t", N=g, E=g, S=g, W=g, U=g, D=g)], {(0, 0, 0): "t"}, 2,
                         name="pumped")
    sim = Simulator(system, track_bonds=False)
    rng = random.Random(args.seed)
    base = rss_bytes()
    chunk = args.steps // args.checkpoints
    done, points = 0, []
    start = time.perf_counter()
    for k in range(args.checkpoints):
        n = chunk if k < args.checkpoints - 1 else args.steps - done
        done += len(sim.run_random(n, rng))
        points.append({"tiles": len(sim.assembly), "rss_delta_bytes": rss_bytes() - base})
    wall = time.perf_counter() - start
    print(json.dumps({"attachments": done, "seconds": wall, "checkpoints": points}))


if __name__ == "__main__":
    main()
