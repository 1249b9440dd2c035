"""Bracket: picks exactly one of the adder units that fired.

Slot i (tile id i) enters at (2i, 0, 0), fed from (2i, -1, 0).  Level l
merges pairs at row 2l: each child rail climbs two cells from its node and
runs sideways to the parent node's column, where the node cell is the single
point of competition for the pair; whichever rail places the node tile first
continues, the other stalls against a face with no matching glue.  Above the
top node a crown tile starts the blocker path in the plane z = 1: it runs
west, south, then east along the slot row dropping a plug onto every slot
entry still empty, then north and back west to sit above the output cell.
Only then can the output tile attach, by cooperation of the crown's payload
glue and the blocker's release glue, so a late input never passes.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..compiler.layout import clog
from ..core.tiles import DIR_NAMES, VEC_TO_DIR, TileType
from ..datapath.gadget import GadgetTiles
from ..errors import InvalidOperand, LayoutMismatch


def node_x(level: int, j: int) -> int:
    return (1 << (level + 1)) * j + (1 << level) - 1


@dataclass
class BracketSpec:
    tile_count: int
    slots: int
    levels: int
    entries: tuple        # slot entry cells
    nodes: tuple          # (level, index, node cell, (turn cell, ...)) per merge
    blocker: tuple        # blocker path cells in order
    output: tuple         # output cell

    def competition_points(self, a: int, b: int) -> list:
        """Merge cells shared by the paths of slots a and b (exactly one when a != b)."""
        return sorted(cell for l, j, cell, _ in self.nodes
                      if a >> l == b >> l == j and a >> (l - 1) != b >> (l - 1))


def _face(a, b) -> str:
    return DIR_NAMES[VEC_TO_DIR[(b[0] - a[0], b[1] - a[1], b[2] - a[2])]]


def _rails(levels: int):
    """Rail steps (from cell, to cell, subtree of the rail) and the merge nodes."""
    links = []       # (from cell, to cell, subtree root (level, index))
    nodes = []
    for l in range(1, levels + 1):
        for j in range(1 << (levels - l)):
            px, py = node_x(l, j), 2 * l
            turns = []
            for child in (2 * j, 2 * j + 1):
                cx, cy = node_x(l - 1, child), 2 * (l - 1)
                path = [(cx, cy, 0), (cx, cy + 1, 0), (cx, cy + 2, 0)]
                step = 1 if cx < px else -1
                path += [(x, py, 0) for x in range(cx + step, px, step)]
                path.append((px, py, 0))
                turns.append(path[2])
                for a, b in zip(path, path[1:]):
                    links.append((a, b, (l - 1, child)))
            nodes.append((l, j, (px, py, 0), tuple(turns)))
    return links, nodes


def emit_bracket(tile_count: int, gid: str | None = None) -> tuple:
    if tile_count < 1:
        raise InvalidOperand("a bracket needs at least one slot")
    levels = clog(tile_count)
    slots = 1 << levels
    gid = gid or f"br{tile_count}"
    L = lambda *p: "/".join((gid,) + tuple(str(x) for x in p))
    pos = lambda c: f"{c[0]}.{c[1]}"
    links, nodes = _rails(levels)
    xt = node_x(levels, 0)
    top = (xt, 2 * levels, 0)
    crown = (xt, 2 * levels + 1, 0)
    out_cell = (xt, 2 * levels + 2, 0)
    links.append((top, crown, (levels, 0)))

    def leaves(l, j):
        return [i for i in range(j << l, (j + 1) << l) if i < tile_count]

    # glue toward b from a, per payload
    faces: dict = {}
    for a, b, (l, j) in links:
        for p in leaves(l, j):
            faces.setdefault((b, p), {})[_face(b, a)] = (L("b", pos(b), p), 2)
            faces.setdefault((a, p), {})[_face(a, b)] = (L("b", pos(b), p), 2)
    tiles = []
    node_cells = {n[2] for n in nodes}
    for (cell, p), fs in sorted(faces.items()):
        if cell in node_cells:
            # one tile per entering side, so the loser finds no matching face
            ins = [d for d in fs if d != "N"]
            for d in ins:
                tiles.append(TileType.make(L("n", pos(cell), d, p), **{d: fs[d], "N": fs["N"]}))
            continue
        if cell == crown:
            fs = dict(fs, U=(L("trig"), 2), N=(L("o", p), 1))
            tiles.append(TileType.make(L("crown", p), **fs))
            continue
        if cell[1] == 0:
            i = cell[0] // 2
            fs = dict(fs, S=(L("in", i, p), 2))
            tiles.append(TileType.make(L("leaf", i, p), **fs))
            continue
        tiles.append(TileType.make(L("r", pos(cell), p), **fs))
    entries = tuple((2 * i, 0, 0) for i in range(slots))
    for i in range(tile_count):
        tiles.append(TileType.make(L("src", i, i), N=(L("in", i, i), 2)))
    for i in range(slots):
        tiles.append(TileType.make(L("plug", i), U=(L("pl", i), 2)))
    # blocker path
    xm = 2 * (slots - 1) + 1
    yt = 2 * levels + 1
    path = [(x, yt, 1) for x in range(xt, -2, -1)]
    path += [(-1, y, 1) for y in range(yt - 1, -1, -1)]
    path += [(x, 0, 1) for x in range(0, xm + 1)]
    path += [(xm, y, 1) for y in range(1, yt + 2)]
    path += [(x, yt + 1, 1) for x in range(xm - 1, xt - 1, -1)]
    assert len(set(path)) == len(path)
    for n, cell in enumerate(path):
        fs = {}
        if n == 0:
            fs["D"] = (L("trig"), 2)
        else:
            fs[_face(cell, path[n - 1])] = (L("bp", n), 2)
        if n + 1 < len(path):
            fs[_face(cell, path[n + 1])] = (L("bp", n + 1), 2)
        else:
            fs["D"] = (L("rel"), 1)
        if cell[1] == 0 and cell[0] >= 0 and cell[0] % 2 == 0 and cell[0] // 2 < slots:
            fs["D"] = (L("pl", cell[0] // 2), 2)
        tiles.append(TileType.make(L("bk", n), **fs))
    for p in range(tile_count):
        tiles.append(TileType.make(L("out", p), S=(L("o", p), 1), U=(L("rel"), 1), N=(L("res", p), 2)))
    spec = BracketSpec(tile_count, slots, levels, entries, tuple(nodes), tuple(path), out_cell)
    g = GadgetTiles(gid=gid, tiles=tiles, seed={}, predicted_pose=None, expected={}, kind="bracket",
                    info={"output": out_cell, "entries": entries, "slots": slots})
    return spec, g


def gen_bracket(layout, tile_count: int) -> tuple:
    if layout is not None and layout.tile_count != tile_count:
        raise LayoutMismatch(f"layout computed for |T|={layout.tile_count}, asked for {tile_count}")
    return emit_bracket(tile_count, gid=f"br{tile_count}")


def bracket_inputs(gadget: GadgetTiles, slots_used) -> dict:
    return {(2 * i, -1, 0): f"{gadget.gid}/src/{i}/{i}" for i in slots_used}


def bracket_outputs(gadget: GadgetTiles, placements: dict) -> list:
    """Payloads of output tiles present (at most one by construction)."""
    pre = f"{gadget.gid}/out/"
    return sorted(int(n[len(pre):]) for p, n in placements.items() if n.startswith(pre))
