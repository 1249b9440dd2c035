"""Bounded exhaustive exploration of producible assemblies."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..errors import BudgetExceeded
from .assembly import Assembly
from .dynamics import frontier

DEFAULT_BUDGET = 200_000


def memory_budget() -> int:
    """Maximum number of assemblies an explorer may hold (env TILEIU_MEMORY_BUDGET)."""
    raw = os.environ.get("TILEIU_MEMORY_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def key_of(assembly: Assembly) -> frozenset:
    return frozenset(assembly.placements.items())


def successors(system, assembly: Assembly):
    """One-step successors as (location, tile, new assembly), diffusion mode applied."""
    if system.diffusion == "none":
        pairs = frontier(system, assembly)
    else:
        from ..diffusion import restricted_frontier
        pairs = restricted_frontier(system, assembly)
    out = []
    for p, t in sorted(pairs):
        b = Assembly(assembly.placements, assembly.dimension)
        b.placements[p] = t
        out.append((p, t, b))
    return out


@dataclass
class Exploration:
    assemblies: dict = field(default_factory=dict)   # key -> Assembly
    depth_of: dict = field(default_factory=dict)     # key -> first depth reached
    edges: list = field(default_factory=list)        # (key_a, key_b, location, tile)
    exhausted: bool = False                          # reachable set closed within depth

    def __len__(self):
        return len(self.assemblies)

    def __iter__(self):
        return iter(self.assemblies.values())

    def __contains__(self, a):
        k = a if isinstance(a, frozenset) else key_of(a)
        return k in self.assemblies

    def terminal(self, system):
        """Members with no successor (only meaningful when ``exhausted``)."""
        return [a for a in self.assemblies.values() if not successors(system, a)]


def explore_bounded(system, depth: int, budget: int | None = None, start: Assembly | None = None,
                    record_edges: bool = False) -> Exploration:
    """All assemblies producible in at most ``depth`` attachments, deduplicated exactly."""
    budget = memory_budget() if budget is None else budget
    seed = start if start is not None else system.seed
    ex = Exploration()
    k0 = key_of(seed)
    ex.assemblies[k0] = Assembly(seed.placements, seed.dimension)
    ex.depth_of[k0] = 0
    layer = [k0]
    grew = True
    for level in range(depth):
        nxt = []
        for k in layer:
            a = ex.assemblies[k]
            for p, t, b in successors(system, a):
                kb = key_of(b)
                if record_edges:
                    ex.edges.append((k, kb, p, t))
                if kb not in ex.assemblies:
                    if len(ex.assemblies) >= budget:
                        raise BudgetExceeded(partial_count=len(ex.assemblies))
                    ex.assemblies[kb] = b
                    ex.depth_of[kb] = level + 1
                    nxt.append(kb)
        layer = nxt
        if not layer:
            grew = False
            break
    if grew and layer:
        # check whether the last layer still has successors
        ex.exhausted = all(not successors(system, ex.assemblies[k]) for k in layer)
    else:
        ex.exhausted = True
    return ex


@dataclass
class DirectedResult:
    directed: bool
    witness: tuple | None = None   # (assembly_a, assembly_b, location)

    def __bool__(self):
        return self.directed


def is_directed_bounded(system, depth: int, budget: int | None = None) -> DirectedResult:
    """Search for two producible assemblies that disagree at a location, up to ``depth``.

    ``directed=True`` only means no conflict was found at this depth.
    """
    budget = memory_budget() if budget is None else budget
    seed = system.seed
    seen = {key_of(seed): seed}
    owner = {p: (t, seed) for p, t in seed.placements.items()}
    layer = [seed]
    for _ in range(depth):
        nxt = []
        for a in layer:
            for p, t, b in successors(system, a):
                prev = owner.get(p)
                if prev is not None and prev[0] != t:
                    return DirectedResult(False, (prev[1], b, p))
                if prev is None:
                    owner[p] = (t, b)
                kb = key_of(b)
                if kb not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(partial_count=len(seen))
                    seen[kb] = b
                    nxt.append(b)
        layer = nxt
        if not layer:
            break
    return DirectedResult(True, None)
