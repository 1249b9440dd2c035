"""Gadget container, datapath assembly and the isolated growth harness."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from ..core.assembly import Assembly
from ..core.dynamics import Simulator
from ..core.system import make_system
from ..errors import BoundaryNotCallbackCapable, DidNotTerminate
from .builder import DatapathBuilder
from .isa import CALLBACKS, DatapathProgram, Pose, interpret_pose


@dataclass
class GadgetTiles:
    gid: str
    tiles: list
    seed: dict                     # position -> tile name
    predicted_pose: Pose | None
    expected: dict                 # position -> tile name of the intended terminal assembly
    meta: dict = field(default_factory=dict)
    ports: dict = field(default_factory=dict)   # injected input tiles, position -> name
    program: DatapathProgram | None = None
    inputs: tuple = ()
    callback: str | None = None
    activation: tuple | None = None             # (position, face) of the exposed activation glue
    port_sites: tuple = ()
    kind: str = "datapath"
    info: dict = field(default_factory=dict)

    @property
    def envelope(self):
        """Bounding box of the intended assembly widened by one cell."""
        pts = list(self.expected)
        lo = tuple(min(p[i] for p in pts) - 1 for i in range(3))
        hi = tuple(max(p[i] for p in pts) + 1 for i in range(3))
        return lo, hi

    def system(self, extra=None, with_ports: bool = True, start=None):
        seed = dict(self.seed if start is None else start)
        if with_ports:
            seed.update(self.ports)
        seed.update(extra or {})
        return make_system(self.tiles, seed, 2, dimension=3, name=self.gid, validate=False)

    def dump(self) -> dict:
        """Plain data form: tile list plus seed rows."""
        return {
            "name": self.gid,
            "kind": self.kind,
            "temperature": 2,
            "dimension": 3,
            "tiles": [{"name": t.name,
                       "glues": [None if g.is_null else [g.label, g.strength] for g in t.glues]}
                      for t in self.tiles],
            "seed": [{"at": list(p), "tile": n} for p, n in sorted(self.seed.items())],
            "ports": [{"at": list(p), "tile": n} for p, n in sorted(self.ports.items())],
        }


def _gid(program: DatapathProgram, inputs, callback) -> str:
    text = repr((program, tuple(inputs or ()), callback))
    return "dp" + hashlib.sha1(text.encode()).hexdigest()[:8]


def assemble_datapath(program: DatapathProgram, gid: str | None = None, inputs=None,
                      callback: str | None = None) -> GadgetTiles:
    """Generate the tile types and seed row that grow the program's path at temperature 2.

    inputs lists the payload values delivered at the variable instructions, in
    order.  Each delivered value becomes an injected port tile.
    """
    if callback is not None and CALLBACKS.get(callback) != program.boundary:
        raise BoundaryNotCallbackCapable(
            f"boundary {program.boundary!r} does not support a {callback!r} callback")
    gid = gid or _gid(program, inputs, callback)
    b = DatapathBuilder(program, gid, inputs, callback)
    bp = b.build()
    tiles, placement, meta = bp.tiles()
    pose = interpret_pose(program, inputs, callback)
    return GadgetTiles(
        gid=gid, tiles=tiles,
        seed={p: placement[p] for p in bp.seed},
        predicted_pose=pose,
        expected=placement,
        meta=meta,
        ports={p: placement[p] for p in bp.ports},
        program=program, inputs=tuple(inputs or ()), callback=callback,
        activation=getattr(b, "activation", None),
        port_sites=tuple(b.port_sites),
        info={"blueprint_pose": b.pose, "rows": len(b.rows),
              "row_list": _row_list(b)},
    )


def _row_list(b) -> list:
    """(LB, continuing frame, cells) for each intended row, in growth order."""
    out = []
    for k, r in enumerate(b.rows):
        frame = b.rows[k + 1].frame if k + 1 < len(b.rows) else b.pose.frame
        out.append((r.lb, frame, [r.frame.at(r.lb, 0, i) for i in range(r.width)]))
    return out


def wire_callback(gadget: GadgetTiles, kind: str) -> GadgetTiles:
    """Regenerate a datapath gadget with a return path along its boundary."""
    if kind not in CALLBACKS:
        raise BoundaryNotCallbackCapable(f"unknown callback kind {kind!r}")
    if gadget.program is None or CALLBACKS[kind] != gadget.program.boundary:
        boundary = gadget.program.boundary if gadget.program else gadget.kind
        raise BoundaryNotCallbackCapable(f"boundary {boundary!r} does not support a {kind!r} callback")
    return assemble_datapath(gadget.program, None, gadget.inputs, kind)


@dataclass
class Growth:
    assembly: Assembly
    placements: dict        # position -> tile name
    pose: Pose | None
    steps: int
    order: list             # positions in attachment order


def observed_pose(gadget: GadgetTiles, placements: dict) -> Pose | None:
    """Pose of the last intended row that grew completely with its intended tiles."""
    for lb, frame, cells in reversed(gadget.info.get("row_list", ())):
        if all(placements.get(c) == gadget.expected.get(c) is not None for c in cells):
            return Pose(lb, frame)
    return None


def grow_isolated(gadget: GadgetTiles, bound=None, max_steps: int = 200_000, seed: int = 0,
                  extra=None, with_ports: bool = True, start=None) -> Growth:
    """Grow only this gadget's tiles at temperature 2 from its seed until terminal.

    bound is an optional (lo, hi) box; leaving it counts as not terminating.
    start replaces the gadget's own seed placements (for example to enter a
    latch from one side only) and extra adds placements such as stoppers.
    """
    system = gadget.system(extra, with_ports, start)
    sim = Simulator(system, track_bonds=False, fifo=False)
    rng = random.Random(seed)
    steps = 0
    order = []
    while steps < max_steps:
        events = sim.run_random(min(4096, max_steps - steps), rng)
        if not events:
            break
        steps += len(events)
        order.extend(ev.location for ev in events)
        if bound is not None:
            lo, hi = bound
            for ev in events:
                if any(not lo[i] <= ev.location[i] <= hi[i] for i in range(3)):
                    raise DidNotTerminate(f"growth left the workspace at {ev.location}", steps=steps)
    if not sim.is_terminal():
        raise DidNotTerminate(f"frontier still open after {steps} attachments", steps=steps)
    names = system.tiles
    placements = {p: names[t].name for p, t in sim.assembly.items()}
    return Growth(sim.assembly, placements, observed_pose(gadget, placements), steps, order)
