"""Diffusion-restricted attachment (Planar and Spatial variants).

A tile may attach at an empty cell only if an empty face-adjacent path joins
that cell to some cell outside the assembly's minimal bounding box.  Blocked
cells stay blocked under legal attachment, which lets the index keep blocked
regions permanently and only re-flood when a query lands on unknown territory.
"""
from __future__ import annotations

from collections import deque

from .core.assembly import Assembly
from .core.tiles import OFFSETS, dims_directions


class DiffusionIndex:
    """Incremental answer cache for ``has_diffusion_path`` bound to one assembly.

    ``region_labels`` maps blocked empty cells to a region id, ``outside`` holds
    cells last proven to escape the bounding box and ``dirty`` records whether
    that cache must be rebuilt because the assembly changed since.
    """

    def __init__(self, assembly: Assembly, dimension: int | None = None):
        self.owner = assembly
        self.dimension = dimension or assembly.dimension
        self.dirs = [OFFSETS[d] for d in dims_directions(self.dimension)]
        self.region_labels: dict = {}
        self.regions: dict = {}
        self.outside: set = set()
        self.dirty = False
        self._next_region = 0

    def notify_attach(self, p):
        """Record an attachment at ``p`` (the assembly itself is updated by the caller)."""
        self.dirty = True
        rid = self.region_labels.pop(p, None)
        if rid is not None:
            self.regions[rid].discard(p)

    def _flood(self, start):
        """Flood empty cells from ``start`` inside the bbox; returns (escapes, visited)."""
        pl = self.owner.placements
        (x0, y0, z0), (x1, y1, z1) = self.owner.bbox
        seen = {start}
        todo = deque([start])
        dirs = self.dirs
        while todo:
            x, y, z = todo.popleft()
            for dx, dy, dz in dirs:
                q = (x + dx, y + dy, z + dz)
                if q in seen or q in pl:
                    continue
                if not (x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and z0 <= q[2] <= z1):
                    return True, seen
                if q in self.region_labels:
                    # joined a region already proven blocked
                    continue
                seen.add(q)
                todo.append(q)
        return False, seen

    def has_path(self, p) -> bool:
        if p in self.owner.placements:
            return False
        if not self.owner.in_bbox(p):
            return True
        if p in self.region_labels:
            return False
        if self.dirty:
            self.outside.clear()
            self.dirty = False
        elif p in self.outside:
            return True
        escapes, seen = self._flood(p)
        if escapes:
            self.outside.update(seen)
            return True
        rid = self._next_region
        self._next_region += 1
        self.regions[rid] = set(seen)
        for q in seen:
            self.region_labels[q] = rid
        return False


def has_diffusion_path(assembly: Assembly, location, dimension: int | None = None) -> bool:
    """Breadth-first search from ``location`` over empty cells until leaving the bbox."""
    if location in assembly.placements:
        return False
    if not assembly.in_bbox(location):
        return True
    dims = dimension or assembly.dimension
    dirs = [OFFSETS[d] for d in dims_directions(dims)]
    pl = assembly.placements
    (x0, y0, z0), (x1, y1, z1) = assembly.bbox
    seen = {location}
    todo = deque([location])
    while todo:
        x, y, z = todo.popleft()
        for dx, dy, dz in dirs:
            q = (x + dx, y + dy, z + dz)
            if q in seen or q in pl:
                continue
            if not (x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and z0 <= q[2] <= z1):
                return True
            seen.add(q)
            todo.append(q)
    return False


def restricted_frontier(system, assembly: Assembly) -> set:
    """Frontier pairs whose location can be reached by diffusion."""
    from .core.dynamics import frontier
    pairs = frontier(system, assembly)
    if system.diffusion == "none":
        return pairs
    ok = {}
    out = set()
    for p, t in pairs:
        if p not in ok:
            ok[p] = has_diffusion_path(assembly, p, system.dimension)
        if ok[p]:
            out.add((p, t))
    return out


def _blocked_components(assembly: Assembly, dims: int):
    """All maximal empty components inside the bbox that cannot escape it."""
    if not assembly.placements:
        return []
    dirs = [OFFSETS[d] for d in dims_directions(dims)]
    pl = assembly.placements
    (x0, y0, z0), (x1, y1, z1) = assembly.bbox
    zs = range(z0, z1 + 1) if dims == 3 else (0,)
    ys = range(y0, y1 + 1) if dims >= 2 else (0,)
    seen = set()
    out = []
    for z in zs:
        for y in ys:
            for x in range(x0, x1 + 1):
                c = (x, y, z)
                if c in pl or c in seen:
                    continue
                comp = {c}
                seen.add(c)
                todo = deque([c])
                escapes = False
                while todo:
                    a, b, e = todo.popleft()
                    for dx, dy, dz in dirs:
                        q = (a + dx, b + dy, e + dz)
                        if q in pl or q in comp:
                            continue
                        if not (x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and z0 <= q[2] <= z1):
                            escapes = True
                            continue
                        comp.add(q)
                        seen.add(q)
                        todo.append(q)
                if not escapes:
                    out.append(comp)
    return out


def constrained_regions(assembly: Assembly, dimension: int | None = None):
    """Blocked empty components with their constraining subassemblies.

    A tile constrains a region when removing that single tile lets the region
    reach outside the (possibly shrunken) bounding box, or merges the freed
    cell into the region.
    """
    dims = dimension or assembly.dimension
    regions = _blocked_components(assembly, dims)
    result = []
    for region in regions:
        probe = next(iter(region))
        constraining = set()
        for p in list(assembly.placements):
            t = assembly.placements.pop(p)
            saved = assembly._bbox
            assembly._bbox = None
            try:
                if not assembly.placements:
                    constraining.add(p)
                    continue
                opened = has_diffusion_path(assembly, probe, dims)
                if not opened:
                    # does the freed cell join the region?
                    joined = _reaches(assembly, probe, p, dims)
                    opened = joined
                if opened:
                    constraining.add(p)
            finally:
                assembly.placements[p] = t
                assembly._bbox = saved
        result.append((frozenset(region), frozenset(constraining)))
    return result


def _reaches(assembly: Assembly, start, target, dims) -> bool:
    dirs = [OFFSETS[d] for d in dims_directions(dims)]
    pl = assembly.placements
    (x0, y0, z0), (x1, y1, z1) = assembly.bbox
    seen = {start}
    todo = deque([start])
    while todo:
        x, y, z = todo.popleft()
        if (x, y, z) == target:
            return True
        for dx, dy, dz in dirs:
            q = (x + dx, y + dy, z + dz)
            if q in seen or q in pl:
                continue
            if not (x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and z0 <= q[2] <= z1):
                continue
            seen.add(q)
            todo.append(q)
    return False
