"""Seed generation: one seeded macrotile per tile of the simulated seed.

Each seed macrotile is a tree of strength-2 bonds.  A trunk runs east along
the anchor row; the query and initialisation poses hang off it holding
blocking tiles, so neighbour queries can never start there, and the bracket
window hangs off it holding the tile id in bit tiles (the most significant
one of the special bottom type).  Below the trunk's west end the genome rows
spell out the encoded genome, one bit per tile, read from each tile's west
glue.  Macrotiles are joined along a spanning tree of the simulated seed:
east links run from the trunk's east end, north links from the trunk's west
end one column out, up links from the second trunk cell one row north.

Structural tiles name their bonds by axis (sx, sy, sz); anchors bond with a
label naming their role, and genome cells with g0 or g1.  No seed tile keeps
an unbonded glue.
"""
from __future__ import annotations

from collections import deque
from itertools import product

from ..core.assembly import Assembly
from ..core.tiles import DIR_NAMES, OFFSETS, TileType
from ..errors import LayoutMismatch, UnsupportedDimension
from ..modules.genome import genome_spec
from .layout import calc_scale, window_bits

AXIS_LABEL = ("sy", "sx", "sy", "sx", "sz", "sz")
ANCHOR_KINDS = ("q", "i", "w0", "w1", "wb0", "wb1")
MAX_QUERY_BITS = 6


# tile families shared with the universal set

def structural_tile(faces: dict) -> TileType:
    """faces: {direction index: label}; every glue has strength 2."""
    name = "seed/" + ",".join(f"{DIR_NAMES[d]}{faces[d]}" for d in sorted(faces))
    return TileType.make(name, **{DIR_NAMES[d]: (lab, 2) for d, lab in faces.items()})


def seed_family() -> list:
    out = []
    for mask in range(1, 64):
        out.append(structural_tile({d: AXIS_LABEL[d] for d in range(6) if mask >> d & 1}))
    for kind, mask in product(ANCHOR_KINDS, range(32)):
        others = [d for d in range(6) if d != 2]
        faces = {d: AXIS_LABEL[d] for k, d in enumerate(others) if mask >> k & 1}
        faces[2] = "s" + kind
        out.append(structural_tile(faces))
    for kind in ANCHOR_KINDS:
        out.append(structural_tile({0: "s" + kind}))
    for w, e in product("01", repeat=2):
        out.append(TileType.make(f"gen/{w}{e}", W=(f"g{w}", 2), E=(f"g{e}", 2)))
    for w in "01":
        out.append(TileType.make(f"gen/{w}-", W=(f"g{w}", 2)))
    for e, down in product("01", (False, True)):
        faces = {"U": ("sz", 2), "E": (f"g{e}", 2)}
        if down:
            faces["D"] = ("sz", 2)
        out.append(TileType.make(f"gen/h{e}{'d' if down else ''}", **faces))
    return out


def query_family() -> list:
    """Arrival and query-start tiles: a query for neighbour id b from side d starts west of its pose."""
    out = []
    for d in DIR_NAMES:
        for w in range(1, MAX_QUERY_BITS + 1):
            for v in range(1 << w):
                b = format(v, f"0{w}b")
                out.append(TileType.make(f"qarr/{d}/{b}", E=(f"qa/{d}/{b}", 2)))
                out.append(TileType.make(f"qs/{d}/{b}", W=(f"qa/{d}/{b}", 2), N=(f"qn/{d}/{b}", 1)))
    return out


# seed structure

class _Tree:
    def __init__(self):
        self.cells = {}        # position -> {direction index: label}
        self.kind = {}         # position -> "structural", "anchor" or "genome"

    def add(self, p, kind="structural"):
        self.cells.setdefault(p, {})
        self.kind.setdefault(p, kind)

    def bond(self, a, b, label=None):
        v = tuple(y - x for x, y in zip(a, b))
        d = OFFSETS.index(v)
        back = OFFSETS.index(tuple(-x for x in v))
        self.add(a)
        self.add(b)
        lab = label or AXIS_LABEL[d]
        self.cells[a][d] = lab
        self.cells[b][back] = lab

    def path(self, points):
        """Straight segments through the given corners, bonding consecutive cells."""
        cur = points[0]
        self.add(cur)
        for nxt in points[1:]:
            step = tuple((y > x) - (y < x) for x, y in zip(cur, nxt))
            while cur != nxt:
                q = tuple(c + s for c, s in zip(cur, step))
                self.bond(cur, q)
                cur = q


def _shift(p, o):
    return (p[0] + o[0], p[1] + o[1], p[2] + o[2])


def _macrotile(tree: _Tree, layout, origin, tile_id: int, bits: str):
    a = layout.anchors
    (x_w, top, z0), (x_e, _, _) = a["trunk"]
    tree.path([_shift((x_w, top, z0), origin), _shift((x_e, top, z0), origin)])
    wb = window_bits(layout.tile_count)
    id_bits = format(tile_id, f"0{wb}b")
    anchors = [(p, "q") for p in a["query"].values()] + [(p, "i") for p in a["init"]]
    anchors += [(p, ("wb" if k == 0 else "w") + id_bits[k]) for k, p in enumerate(a["bracket_end"])]
    for p, kind in anchors:
        q = _shift(p, origin)
        tree.add(q, "anchor")
        tree.bond(_shift((p[0], top, z0), origin), q, "s" + kind)
    row_len = top - x_w
    rows = [bits[i:i + row_len] for i in range(0, len(bits), row_len)]
    if len(rows) > z0:
        raise LayoutMismatch(f"genome of {len(bits)} bits does not fit below the trunk")
    above = _shift((x_w, top, z0), origin)
    for r, row in enumerate(rows):
        head = _shift(a["genome_start"], (origin[0], origin[1], origin[2] - r))
        tree.add(head, "genome")
        tree.bond(above, head)
        prev = head
        for i, b in enumerate(row):
            cell = _shift(head, (i + 1, 0, 0))
            tree.add(cell, "genome")
            tree.bond(prev, cell, f"g{b}")
            prev = cell
        above = head


def _link(tree: _Tree, layout, lo, hi, axis):
    """Connect the macrotile at origin lo to its neighbour at origin hi = lo + m e_axis."""
    a = layout.anchors
    (x_w, top, z0), (x_e, _, _) = a["trunk"]
    A = (x_w, top, z0)
    if axis == 0:
        tree.path([_shift((x_e, top, z0), lo), _shift(A, hi)])
    elif axis == 1:
        tree.path([_shift(A, lo), _shift(A, hi)])
    else:
        s = (x_w + 1, top, z0)
        n = (x_w + 1, top + 1, z0)
        tree.path([_shift(s, lo), _shift(n, lo), _shift(n, hi), _shift(s, hi)])


def _tree_edges(positions):
    """Breadth-first spanning tree of the adjacency graph, as (lower, upper, axis) pairs."""
    pos = sorted(positions)
    seen, edges = {pos[0]}, []
    todo = deque([pos[0]])
    present = set(pos)
    while todo:
        p = todo.popleft()
        for v in OFFSETS:
            q = _shift(p, v)
            if q in present and q not in seen:
                seen.add(q)
                todo.append(q)
                axis = next(i for i in range(3) if v[i])
                edges.append((p, q, axis) if v[axis] > 0 else (q, p, axis))
    return edges


def seed_placements(system, layout=None) -> dict:
    """{position: seed tile} of the compiled seed, before renaming into the universal set."""
    if system.dimension not in (2, 3):
        raise UnsupportedDimension(f"cannot compile a {system.dimension}-dimensional system")
    layout = layout or calc_scale(len(system.tiles), system.temperature)
    m = layout.m
    bits = genome_spec(system, layout).encode()
    tree = _Tree()
    sigma = system.seed.placements
    for p, tid in sorted(sigma.items()):
        _macrotile(tree, layout, (m * p[0], m * p[1], m * p[2]), tid, bits)
    for lo, hi, axis in _tree_edges(sigma):
        _link(tree, layout, tuple(m * c for c in lo), tuple(m * c for c in hi), axis)
    out = {}
    for p, faces in tree.cells.items():
        if tree.kind[p] == "genome":
            out[p] = _genome_tile(faces)
        else:
            out[p] = structural_tile(faces)
    return out


def _genome_tile(faces: dict) -> TileType:
    w, e = faces.get(3), faces.get(1)
    if 4 in faces:
        down = "d" if 5 in faces else ""
        return TileType.make(f"gen/h{e[1]}{down}", **{"U": ("sz", 2), "E": (e, 2),
                                                     **({"D": ("sz", 2)} if down else {})})
    if e is None:
        return TileType.make(f"gen/{w[1]}-", W=(w, 2))
    return TileType.make(f"gen/{w[1]}{e[1]}", W=(w, 2), E=(e, 2))


def gen_seed(system, layout=None, universal=None) -> Assembly:
    """The compiled seed as an assembly over the universal tile set."""
    from .universal import content_name, universal_tileset
    ts = (universal or universal_tileset()).tileset()
    return Assembly({p: ts.id_of(content_name(t)) for p, t in seed_placements(system, layout).items()}, 3)
