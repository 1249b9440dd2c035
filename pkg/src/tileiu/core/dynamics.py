"""Attachment dynamics: frontier maintenance, attachment and schedulers."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field

from ..errors import IllegalAttachment
from .assembly import Assembly, AttachmentEvent
from .tiles import OFFSETS, OPPOSITE, dims_directions


def _contributions(glues, dirs):
    """contrib[u][d]: tiles t whose side d binds u's side opposite(d), with the strength."""
    by_side = [dict() for _ in range(6)]
    for t, gs in enumerate(glues):
        for d in dirs:
            g = gs[d]
            if g is not None and g[1] > 0:
                by_side[d].setdefault(g, []).append(t)
    contrib = []
    for u, gs in enumerate(glues):
        row = [None] * 6
        for d in dirs:
            g = gs[OPPOSITE[d]]
            if g is not None and g[1] > 0:
                ts = by_side[d].get(g)
                if ts:
                    row[d] = (g[1], tuple(ts))
        contrib.append(row)
    return contrib


def candidates_at(q, placements, glues, tau, dirs, contrib=None):
    """Tiles attachable at empty ``q`` (matched incident strengths >= tau)."""
    acc = {}
    x, y, z = q
    for d in dirs:
        o = OFFSETS[d]
        u = placements.get((x + o[0], y + o[1], z + o[2]))
        if u is None:
            continue
        if contrib is not None:
            c = contrib[u][d]
            if c is None:
                continue
            s, ts = c
            for t in ts:
                acc[t] = acc.get(t, 0) + s
        else:
            g = glues[u][OPPOSITE[d]]
            if g is None or g[1] <= 0:
                continue
            for t, gs in enumerate(glues):
                if gs[d] == g:
                    acc[t] = acc.get(t, 0) + g[1]
    return [t for t, s in acc.items() if s >= tau]


def bound_strength(q, t, placements, glues, dirs) -> int:
    x, y, z = q
    total = 0
    for d in dirs:
        o = OFFSETS[d]
        u = placements.get((x + o[0], y + o[1], z + o[2]))
        if u is None:
            continue
        g = glues[t][d]
        if g is not None and g[1] > 0 and glues[u][OPPOSITE[d]] == g:
            total += g[1]
    return total


def frontier(system, assembly: Assembly) -> set:
    """All (location, tile) pairs attachable to ``assembly`` (diffusion not applied)."""
    dirs = dims_directions(system.dimension)
    glues = system.glues
    contrib = _contributions(glues, dirs)
    pl = assembly.placements
    empties = set()
    for (x, y, z) in pl:
        for d in dirs:
            o = OFFSETS[d]
            q = (x + o[0], y + o[1], z + o[2])
            if q not in pl:
                empties.add(q)
    out = set()
    for q in empties:
        for t in candidates_at(q, pl, glues, system.temperature, dirs, contrib):
            out.add((q, t))
    return out


def attach(system, assembly: Assembly, event: AttachmentEvent, check: bool = True) -> Assembly:
    """Return a new assembly with the event's tile placed (legality checked when ``check``)."""
    dirs = dims_directions(system.dimension)
    glues = system.glues
    p, t = tuple(event.location), event.tile
    if check:
        if p in assembly.placements:
            raise IllegalAttachment(f"location {p} already occupied")
        s = bound_strength(p, t, assembly.placements, glues, dirs)
        if s < system.temperature:
            raise IllegalAttachment(f"tile {t} binds with strength {s} < {system.temperature} at {p}")
        if system.diffusion != "none":
            from ..diffusion import has_diffusion_path
            if not has_diffusion_path(assembly, p, system.dimension):
                raise IllegalAttachment(f"location {p} is not reachable by diffusion")
    out = assembly.copy()
    out.ensure_bonds(glues)
    out.place(p, t)
    _update_bonds(out, p, t, glues, dirs)
    return out


def _update_bonds(assembly, p, t, glues, dirs):
    bonds = assembly.bonds
    if bonds is None:
        return
    x, y, z = p
    pl = assembly.placements
    total = 0
    for d in dirs:
        o = OFFSETS[d]
        q = (x + o[0], y + o[1], z + o[2])
        u = pl.get(q)
        if u is None:
            continue
        g = glues[t][d]
        if g is not None and g[1] > 0 and glues[u][OPPOSITE[d]] == g:
            total += g[1]
            bonds[q] = bonds.get(q, 0) + g[1]
    bonds[p] = total


class Simulator:
    """Single-writer growth engine with an incrementally maintained frontier.

    Frontier pairs are kept in an indexable list so that the seeded random
    scheduler can draw uniformly in O(1).  Candidates at a location only grow
    as neighbours attach, so pairs are removed only when their location fills
    (or is proven unreachable under a diffusion restriction).
    """

    def __init__(self, system, assembly: Assembly | None = None, diffusion: str | None = None,
                 track_bonds: bool = True, fifo: bool = True):
        self.system = system
        self.tau = system.temperature
        self.dimension = system.dimension
        self.diffusion = system.diffusion if diffusion is None else diffusion
        self.dirs = dims_directions(system.dimension)
        self.glues = system.glues
        self.contrib = _contributions(self.glues, self.dirs)
        self._nb = [(d,) + OFFSETS[d] for d in self.dirs]
        self._use_fifo = fifo
        self.assembly = (assembly if assembly is not None else system.seed).copy()
        self.track_bonds = track_bonds
        if track_bonds:
            self.assembly.ensure_bonds(self.glues)
        else:
            self.assembly.bonds = None
        self.step = 0
        self._cand: dict = {}
        self._pairs: list = []
        self._pidx: dict = {}
        self._fifo: list = []
        self._fifo_counter = 0
        self._index = None
        if self.diffusion != "none":
            from ..diffusion import DiffusionIndex
            self._index = DiffusionIndex(self.assembly, self.dimension)
        pl = self.assembly.placements
        seen = set()
        for (x, y, z) in list(pl):
            for d in self.dirs:
                o = OFFSETS[d]
                q = (x + o[0], y + o[1], z + o[2])
                if q not in pl and q not in seen:
                    seen.add(q)
                    self._refresh(q)

    # frontier bookkeeping
    def _add_pair(self, pair):
        self._pidx[pair] = len(self._pairs)
        self._pairs.append(pair)
        if self._use_fifo:
            heapq.heappush(self._fifo, (self._fifo_counter, pair))
            self._fifo_counter += 1

    def _remove_pair(self, pair):
        i = self._pidx.pop(pair)
        last = self._pairs.pop()
        if i < len(self._pairs):
            self._pairs[i] = last
            self._pidx[last] = i

    def _refresh(self, q):
        pl = self.assembly.placements
        contrib = self.contrib
        acc = {}
        x, y, z = q
        for d, dx, dy, dz in self._nb:
            u = pl.get((x + dx, y + dy, z + dz))
            if u is not None:
                c = contrib[u][d]
                if c is not None:
                    s, ts = c
                    for t in ts:
                        acc[t] = acc.get(t, 0) + s
        if not acc:
            return
        tau = self.tau
        new = [t for t, s in acc.items() if s >= tau]
        if not new:
            return
        old = self._cand.get(q)
        if old is None:
            self._cand[q] = set(new)
            for t in new:
                self._add_pair((q, t))
        else:
            for t in new:
                if t not in old:
                    old.add(t)
                    self._add_pair((q, t))

    def _drop_location(self, q):
        old = self._cand.pop(q, None)
        if old:
            for t in old:
                self._remove_pair((q, t))

    def frontier(self) -> set:
        """Current frontier (diffusion restriction applied when active)."""
        if self._index is None:
            return set(self._pairs)
        out = set()
        for q in list(self._cand):
            if self._index.has_path(q):
                out.update((q, t) for t in self._cand[q])
        return out

    def frontier_size(self) -> int:
        return len(self._pairs)

    def is_terminal(self) -> bool:
        if self._index is None:
            return not self._pairs
        return not self.frontier()

    def _usable(self, pair) -> bool:
        if self._index is None:
            return True
        if self._index.has_path(pair[0]):
            return True
        self._drop_location(pair[0])
        return False

    def place(self, q, t) -> AttachmentEvent:
        """Attach ``t`` at ``q`` (caller guarantees legality) and update the frontier."""
        pl = self.assembly.placements
        strength = bound_strength(q, t, pl, self.glues, self.dirs)
        self._drop_location(q)
        self.assembly.place(q, t)
        if self.track_bonds:
            _update_bonds(self.assembly, q, t, self.glues, self.dirs)
        if self._index is not None:
            self._index.notify_attach(q)
        x, y, z = q
        for _, dx, dy, dz in self._nb:
            r = (x + dx, y + dy, z + dz)
            if r not in pl:
                self._refresh(r)
        ev = AttachmentEvent(q, t, self.step, strength)
        self.step += 1
        return ev

    def attach_checked(self, q, t) -> AttachmentEvent:
        q = tuple(q)
        if q in self.assembly.placements:
            raise IllegalAttachment(f"location {q} already occupied")
        s = bound_strength(q, t, self.assembly.placements, self.glues, self.dirs)
        if s < self.tau:
            raise IllegalAttachment(f"tile {t} binds with strength {s} < {self.tau} at {q}")
        if self._index is not None and not self._index.has_path(q):
            raise IllegalAttachment(f"location {q} is not reachable by diffusion")
        return self.place(q, t)

    # schedulers
    def run_random(self, max_steps: int, rng: random.Random, record: bool = True):
        events = []
        pairs = self._pairs
        for _ in range(max_steps):
            while pairs:
                pair = pairs[rng.randrange(len(pairs))]
                if self._usable(pair):
                    break
            else:
                break
            ev = self.place(*pair)
            if record:
                events.append(ev)
        return events

    def run_fifo(self, max_steps: int, record: bool = True):
        if not self._use_fifo:
            raise ValueError("simulator was built without FIFO order tracking")
        events = []
        heap = self._fifo
        n = 0
        while n < max_steps and heap:
            _, pair = heapq.heappop(heap)
            if pair not in self._pidx or not self._usable(pair):
                continue
            ev = self.place(*pair)
            n += 1
            if record:
                events.append(ev)
        return events

    def run_scripted(self, script, max_steps: int | None = None):
        events = []
        for i, item in enumerate(script):
            if max_steps is not None and i >= max_steps:
                break
            q, t = item[0], item[1]
            if isinstance(t, str):
                t = self.system.tiles.id_of(t)
            events.append(self.attach_checked(q, t))
        return events


@dataclass
class RunResult:
    events: list
    assembly: Assembly
    terminal: bool


def run(system, scheduler: str = "random", max_steps: int = 1000, seed: int = 0, script=None,
        diffusion: str | None = None, record: bool = True, track_bonds: bool = True) -> RunResult:
    """Run attachment dynamics from the system's seed.

    scheduler: "random" (uniform over the current frontier, seeded), "fifo"
    (oldest frontier pair first) or "scripted" (explicit (location, tile) list).
    """
    sim = Simulator(system, diffusion=diffusion, track_bonds=track_bonds, fifo=(scheduler == "fifo"))
    if scheduler == "random":
        events = sim.run_random(max_steps, random.Random(seed), record)
    elif scheduler == "fifo":
        events = sim.run_fifo(max_steps, record)
    elif scheduler == "scripted":
        events = sim.run_scripted(script or [], max_steps)
    else:
        raise ValueError(f"unknown scheduler {scheduler!r}")
    return RunResult(events, sim.assembly, sim.is_terminal())
