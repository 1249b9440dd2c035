"""Tile generation for datapath programs.

The builder grows a blueprint of the intended assembly row by row.  Every
row is a one-dimensional sweep: a head cell attaches through a single
strength-2 glue from the previous row, and the remaining cells attach
cooperatively (strength-1 back glue plus a strength-1 signal from the
neighbour nearer the head).  Tile types are the distinct glue signatures of
the blueprint cells.  Labels only carry cell contents and signals, never row
indices, so a long program reuses the same interpreter tiles row after row.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.tiles import DIR_NAMES, OFFSETS, VEC_TO_DIR, TileType, TileSet
from ..errors import InvalidOperand, PathCollision, TileIUError
from .isa import DatapathProgram, Frame, Pose, vadd, vneg, interpret_pose

ABBR = {"buffer": "buf", "forward": "fwd", "left": "lft", "right": "rgt", "rise": "ris",
        "fall": "fal", "place": "plc", "variable": "var"}


class GenerationConflict(TileIUError):
    """Two blueprint cells with identical attachment inputs need different tiles."""
    code = "generation-conflict"


def code(sym) -> str:
    k = sym[0]
    if k == "I":
        return f"{ABBR[sym[1]]}{'' if sym[2] is None else sym[2]}{sym[3]}"
    if k == "K":
        return f"K{sym[1]}{'l' if sym[2] else ''}"
    if k in ("P", "R"):
        return f"{k}{sym[1]}"
    return k


def sigcode(sig) -> str:
    return ".".join(str(x) for x in sig)


def armed(sym) -> bool:
    return sym[0] == "I" and sym[3] == "a"


def _with_status(sym, st):
    return ("I", sym[1], sym[2], st)


# Row rules.  Each returns (new symbol, emits strength-2 forward, outgoing signal, mode).

def head_rule(sym, entry, data):
    """Returns (new, emit, signal to the right, signal to the left, mode)."""
    k = sym[0]
    if entry == "h":
        if k == "I":
            op = sym[1]
            done = _with_status(sym, "d")
            if op == "buffer":
                return done, False, ("seek", "n"), ("cm", "n"), "n"
            if op == "forward":
                return sym, False, ("fz", 1), ("cm", "n"), "n"
            mode = {"rise": "rise", "fall": "fall", "right": "tr", "left": "tl",
                    "variable": "var"}.get(op) or f"pl{sym[2]}"
            return done, False, ("seek", mode), ("cm", mode), mode
        if k == "K":
            borrow = int(sym[1] == 0)
            return ("K", 1 - sym[1], sym[2]), False, ("cp", "n"), ("dec", borrow), "n"
        if k in ("R", "L"):
            return sym, False, ("pc",), ("pc",), "n"
    if entry == "pp":
        return sym, False, None, ("pc",), "n"
    if entry == "in":
        return sym, False, None, (("w", data) if data else ("pc",)), "n"
    if entry == "fin":
        return sym, False, None, ("fin",), "n"
    raise GenerationConflict(f"no head rule for {sym} entering by {entry}")


def right_rule(sym, sig):
    k = sig[0]
    if k == "seek":
        mode = sig[1]
        if sym[0] == "I" and sym[3] == "p":
            return _with_status(sym, "a"), mode in ("n", "rise", "fall"), ("got", mode), mode
        if sym[0] == "R":
            return ("R", 1), False, None, mode
        return sym, False, sig, mode
    if k == "got":
        if sym[0] == "R":
            return ("R", 0), False, None, sig[1]
        return sym, False, sig, sig[1]
    if k == "fz":
        if sym[0] != "K":
            raise GenerationConflict(f"zero check reached {sym}")
        z = int(sig[1] and sym[1] == 0)
        if sym[2]:
            return (sym, False, ("seek", "n"), "n") if z else (sym, True, ("cp", "n"), "n")
        return sym, False, ("fz", z), "n"
    if k == "cp":
        return sym, False, sig, sig[1]
    if k == "pc":
        return sym, armed(sym), sig, "n"
    raise GenerationConflict(f"no rightward rule for {sig}")


def left_rule(sym, sig):
    k = sig[0]
    if k == "cm":
        return (_with_status(sym, "d") if armed(sym) else sym), False, sig, sig[1]
    if k == "dec":
        if sym[0] == "K":
            b = sig[1]
            return ("K", sym[1] ^ b, sym[2]), False, ("dec", int(b and sym[1] == 0)), "n"
        if armed(sym) and sym[1] == "forward":
            return sym, True, ("cm", "n"), "n"
        raise GenerationConflict(f"decrement reached {sym}")
    if k == "pc":
        return sym, armed(sym), sig, "n"
    if k == "w":
        if sym[0] != "P":
            raise GenerationConflict(f"payload write reached {sym}")
        bits = sig[1]
        rest = bits[:-1]
        return ("P", int(bits[-1])), False, (("w", rest) if rest else ("pc",)), "n"
    if k == "fin":
        return sym, False, sig, "n"
    raise GenerationConflict(f"no leftward rule for {sig}")


def initial_row(program: DatapathProgram):
    k = program.counter_width
    syms = [("L",), ("S",)]
    first = True
    for ins in program.body:
        st = "a" if first else "p"
        first = False
        if ins.kind == "forward":
            syms.append(("I", "forward", None, st))
            bits = format(ins.operand, f"0{k}b")
            syms.extend(("K", int(b), j == k - 1) for j, b in enumerate(bits))
        else:
            syms.append(("I", ins.kind, ins.operand, st))
    syms.extend(("P", int(b)) for b in program.payload)
    syms.append(("R", 0 if program.body else 1))
    return syms


@dataclass
class Cell:
    role: str
    glues: dict = field(default_factory=dict)   # direction -> (label, strength)
    inputs: set = field(default_factory=set)    # directions used to attach
    pose: Pose | None = None                    # LB cells: continuing pose
    next_dir: int | None = None                 # LB cells: face toward the next row


@dataclass
class Row:
    lb: tuple
    frame: Frame
    width: int
    mode: str
    syms: list


class Blueprint:
    """Intended terminal assembly of one gadget, plus the tiles it induces."""

    def __init__(self, gid: str):
        self.gid = gid
        self.cells: dict = {}
        self.order: list = []
        self.seed: set = set()
        self.ports: set = set()

    def label(self, *parts) -> str:
        return "/".join((self.gid,) + tuple(str(p) for p in parts))

    def put(self, pos, role: str) -> Cell:
        if pos in self.cells:
            raise PathCollision(f"gadget {self.gid} places two tiles at {pos}",
                                position=pos, roles=(self.cells[pos].role, role))
        c = Cell(role)
        self.cells[pos] = c
        self.order.append(pos)
        return c

    def glue(self, pos, vec, label: str, strength: int, is_input: bool = False, recv: bool | None = None):
        """Set one face.  Labels are suffixed with the bond's travel direction so
        that a glue emitted in one frame never pairs with the same glue emitted
        the opposite way in another frame."""
        d = VEC_TO_DIR[vec]
        recv = is_input if recv is None else recv
        label = f"{label}>{DIR_NAMES[VEC_TO_DIR[vneg(vec)] if recv else d]}"
        c = self.cells[pos]
        old = c.glues.get(d)
        if old is not None and old != (label, strength):
            raise GenerationConflict(f"face {DIR_NAMES[d]} of {pos} holds {old}, wanted {label}")
        c.glues[d] = (label, strength)
        if is_input:
            c.inputs.add(d)

    def free_face(self, pos, vec) -> bool:
        return VEC_TO_DIR[vec] not in self.cells[pos].glues

    # tile extraction
    def signature(self, pos) -> tuple:
        g = self.cells[pos].glues
        return tuple(g.get(d) for d in range(6))

    def tiles(self):
        """(tile list, {position: tile name}, {name: Cell metadata}) with a static determinism check."""
        names, tiles, meta = {}, [], {}
        by_input = {}
        for pos in self.order:
            sig = self.signature(pos)
            if sig not in names:
                name = f"{self.gid}.{len(names)}"
                names[sig] = name
                tiles.append(TileType.make(name, [g if g else None for g in sig]))
                meta[name] = self.cells[pos]
            if pos in self.seed or pos in self.ports:
                continue
            cell = self.cells[pos]
            key = frozenset((d, cell.glues[d]) for d in cell.inputs)
            if sum(cell.glues[d][1] for d in cell.inputs) < 2:
                raise GenerationConflict(f"cell {pos} ({cell.role}) attaches below temperature")
            prev = by_input.setdefault(key, sig)
            if prev != sig:
                raise GenerationConflict(f"cell {pos} ({cell.role}) shares its inputs with another tile")
        placement = {pos: names[self.signature(pos)] for pos in self.order}
        TileSet(tiles, 3)
        return tiles, placement, meta


class DatapathBuilder:
    def __init__(self, program: DatapathProgram, gid: str, inputs=None, callback: str | None = None):
        self.program = program
        self.gid = gid
        self.inputs = list(inputs or ())
        for bits in self.inputs:
            if len(bits) != len(program.payload) or any(c not in "01" for c in bits):
                raise InvalidOperand(f"input {bits!r} does not match the payload width {len(program.payload)}")
        self.callback = callback
        self.bp = Blueprint(gid)
        self.rows: list = []
        self.w = program.width
        self.finale_done = False
        self.lane_start = None     # (edge cell position, face vector) emitting the lane start
        self.start_row = None
        self.port_sites: list = []
        self.pose: Pose | None = None

    def L(self, *parts, fr: Frame | None = None):
        """Namespaced label; fr tags it with the frame of the receiving row."""
        lab = self.bp.label(*parts)
        return f"{lab}@{fr.names()}" if fr is not None else lab

    def build(self):
        fr = Frame()
        task = ("row", (0, 0, 0), fr, initial_row(self.program), None, "seed", None)
        while task is not None:
            task = self._row(*task[1:])
        if self.callback:
            self._lane()
        return self.bp

    # rows
    def _row(self, lb, fr: Frame, prev, head, entry, data):
        w = self.w
        bp = self.bp
        new, emit, mode = [None] * w, [False] * w, [None] * w
        sin, sout_r, sout_l = [None] * w, [None] * w, [None] * w
        if entry == "seed":
            new = list(prev)
            emit = [armed(s) for s in prev]
            mode = ["n"] * w
        else:
            n, e, sr, sl, m = head_rule(prev[head], entry, data)
            new[head], emit[head], mode[head] = n, e, m
            sout_r[head], sout_l[head] = sr, sl
            sig = sr
            for i in range(head + 1, w):
                sin[i] = sig
                new[i], emit[i], sig, mode[i] = right_rule(prev[i], sig)
                sout_r[i] = sig
            sig = sl
            for i in range(head - 1, -1, -1):
                sin[i] = sig
                new[i], emit[i], sig, mode[i] = left_rule(prev[i], sig)
                sout_l[i] = sig
        row_mode = mode[0] if entry == "seed" else mode[head]
        final = new[w - 1] == ("R", 1) and mode[w - 1] in ("n", "rise", "fall")
        finale = entry == "fin"
        cont = fr.rise() if row_mode == "rise" else fr.fall() if row_mode == "fall" else fr
        F, R, U = fr.forward, fr.right, fr.up
        out_vec = U if row_mode == "rise" else vneg(U) if row_mode == "fall" else F
        self.rows.append(Row(lb, fr, w, row_mode, new))
        for i in range(w):
            pos = fr.at(lb, 0, i)
            role = "LB" if i == 0 else "RB" if i == w - 1 else "row"
            cell = bp.put(pos, role)
            if entry == "seed":
                bp.seed.add(pos)
                if i < w - 1:
                    bp.glue(pos, R, self.L("seed", i, fr=fr), 2)
                if i > 0:
                    bp.glue(pos, vneg(R), self.L("seed", i - 1, fr=fr), 2, recv=True)
            else:
                p = code(prev[i])
                if i == head:
                    if entry == "h":
                        bp.glue(pos, vneg(F), self.L("h", p, fr=fr), 2, True)
                    elif entry == "pp":
                        bp.glue(pos, vneg(U), self.L("pp", p, fr=fr), 2, True)
                        bp.glue(pos, vneg(F), self.L("b", p, fr=fr), 1, recv=True)
                    elif entry == "in":
                        bp.glue(pos, vneg(F), self.L("b", p, fr=fr), 1, True)
                        bp.glue(pos, U, self.L("in", data, fr=fr), 1, True)
                    elif entry == "fin":
                        bp.glue(pos, vneg(F), self.L("fin", p, fr=fr), 2, True)
                else:
                    bp.glue(pos, vneg(F), self.L("b", p, fr=fr), 1, True)
                    if i > head:
                        bp.glue(pos, vneg(R), self.L("r", sigcode(sin[i]), fr=fr), 1, True)
                    else:
                        bp.glue(pos, R, self.L("l", sigcode(sin[i]), fr=fr), 1, True)
                if i >= head and i < w - 1:
                    bp.glue(pos, R, self.L("r", sigcode(sout_r[i]), fr=fr), 1)
                if i <= head and i > 0:
                    bp.glue(pos, vneg(R), self.L("l", sigcode(sout_l[i]), fr=fr), 1)
            c = code(new[i])
            if row_mode == "tr":
                bp.glue(pos, F, *((self.L("vtR", c, fr=fr), 2) if i == w - 1 else (self.L("vR", c, fr=fr), 1)))
            elif row_mode == "tl":
                bp.glue(pos, F, *((self.L("vtL", c, fr=fr), 2) if i == 0 else (self.L("vL", c, fr=fr), 1)))
            elif i == w - 1 and final and self.callback == "left-end" and not finale:
                bp.glue(pos, out_vec, self.L("fin", c, fr=cont), 2)
            else:
                bp.glue(pos, out_vec, *((self.L("h", c, fr=cont), 2) if emit[i] else (self.L("b", c, fr=cont), 1)))
            if new[i][0] == "P" and row_mode != "rise":
                bp.glue(pos, U, self.L("rd", new[i][1], fr=fr), 1)
            if i == 0:
                cell.pose = Pose(lb, cont)
                cell.next_dir = VEC_TO_DIR[F if row_mode in ("tr", "tl") else out_vec]
        rb = fr.at(lb, 0, w - 1)
        emitters = [i for i in range(w) if emit[i]]
        if len(emitters) > 1:
            raise GenerationConflict(f"row at {lb} has several advancing cells {emitters}")
        self.pose = Pose(lb, cont)
        if row_mode in ("tr", "tl"):
            return self._turn(lb, fr, new, row_mode)
        if row_mode.startswith("pl"):
            return self._place(lb, fr, new, row_mode[2:])
        if row_mode == "var":
            return self._stall(lb, fr, new)
        if emitters:
            return ("row", vadd(lb, out_vec), cont, new, emitters[0], "h", None)
        if final and not self.finale_done:
            if self.callback == "right-end":
                self.lane_start = (rb, R)
                self.start_row = len(self.rows) - 1
            elif self.callback == "left-end":
                self.finale_done = True
                return ("row", vadd(lb, out_vec), cont, new, w - 1, "fin", None)
        if finale:
            self.lane_start = (lb, vneg(R))
            self.start_row = len(self.rows) - 1
        return None

    def _place(self, lb, fr, syms, pid):
        bp, w = self.bp, self.w
        F, U = fr.forward, fr.up
        rb = fr.at(lb, 0, w - 1)
        c = code(syms[w - 1])
        bp.glue(rb, vneg(U), self.L("p1", pid, c, fr=fr), 2)
        p1 = vadd(rb, vneg(U))
        bp.put(p1, "pair")
        bp.glue(p1, U, self.L("p1", pid, c, fr=fr), 2, True)
        bp.glue(p1, F, self.L("p2", pid, c, fr=fr), 2)
        bp.glue(p1, vneg(U), self.L("pair", pid, fr=fr), 1)
        p2 = vadd(p1, F)
        bp.put(p2, "pair")
        bp.glue(p2, vneg(F), self.L("p2", pid, c, fr=fr), 2, True)
        bp.glue(p2, U, self.L("pp", c, fr=fr), 2)
        return ("row", vadd(lb, F), fr, syms, w - 1, "pp", None)

    def _stall(self, lb, fr, syms):
        w = self.w
        rb = fr.at(lb, 0, w - 1)
        port = fr.at(lb, 1, w - 1, 1)
        self.port_sites.append(port)
        if self.callback == "right-variable" and self.lane_start is None:
            self.lane_start = (rb, fr.right)
            self.start_row = len(self.rows) - 1
        if not self.inputs:
            return None
        bits = self.inputs.pop(0)
        self.bp.put(port, "port")
        self.bp.ports.add(port)
        self.bp.glue(port, vneg(fr.up), self.L("in", bits, fr=fr), 1)
        return ("row", vadd(lb, fr.forward), fr, syms, w - 1, "in", bits)

    def _turn(self, lb, fr: Frame, syms, mode):
        bp, w = self.bp, self.w
        F, R = fr.forward, fr.right
        at = lambda f, r: fr.at(lb, f, r)
        nf = fr.turn_right() if mode == "tr" else fr.turn_left()
        codes = [code(s) for s in syms]
        if mode == "tr":
            for j in range(w):
                c = codes[j]
                for f in range(1, w - j):
                    pos = at(f, j)
                    bp.put(pos, "carrier")
                    bp.glue(pos, vneg(F), self.L("vR", c, fr=fr), 1, True)
                    last = f == w - j - 1
                    bp.glue(pos, R, self.L("tvR", "T" if last else "V", fr=fr), 1, True)
                    bp.glue(pos, F, *((self.L("vtR", c, fr=fr), 2) if last else (self.L("vR", c, fr=fr), 1)))
                    if j > 0:
                        bp.glue(pos, vneg(R), self.L("tvR", "V", fr=fr), 1)
                pos = at(w - j, j)
                bp.put(pos, "carrier")
                bp.glue(pos, vneg(F), self.L("vtR", c, fr=fr), 2, True)
                if j > 0:
                    bp.glue(pos, vneg(R), self.L("tvR", "T", fr=fr), 1)
                    bp.glue(pos, F, self.L("hbRe" if j == w - 1 else "hbR", fr=fr), 1)
                if j == w - 1:
                    bp.glue(pos, R, self.L("h", c, fr=nf), 2)
                else:
                    bp.glue(pos, R, self.L("hzR", c, fr=fr), 1)
                for r in range(j + 1, w):
                    pos = at(w - j, r)
                    bp.put(pos, "carrier")
                    edge = "hbRe" if r == w - 1 else "hbR"
                    bp.glue(pos, vneg(R), self.L("hzR", c, fr=fr), 1, True)
                    bp.glue(pos, vneg(F), self.L(edge, fr=fr), 1, True)
                    bp.glue(pos, R, *((self.L("b", c, fr=nf), 1) if r == w - 1 else (self.L("hzR", c, fr=fr), 1)))
                    if j > 0:
                        bp.glue(pos, F, self.L(edge, fr=fr), 1)
            return ("row", at(w, w), fr.turn_right(), syms, w - 1, "h", None)
        for j in range(w):
            c = codes[j]
            for f in range(1, j + 1):
                pos = at(f, j)
                bp.put(pos, "carrier")
                bp.glue(pos, vneg(F), self.L("vL", c, fr=fr), 1, True)
                last = f == j
                bp.glue(pos, vneg(R), self.L("tvL", "T" if last else "V", fr=fr), 1, True)
                bp.glue(pos, F, *((self.L("vtL", c, fr=fr), 2) if last else (self.L("vL", c, fr=fr), 1)))
                if j < w - 1:
                    bp.glue(pos, R, self.L("tvL", "V", fr=fr), 1)
            pos = at(j + 1, j)
            bp.put(pos, "carrier")
            bp.glue(pos, vneg(F), self.L("vtL", c, fr=fr), 2, True)
            if j < w - 1:
                bp.glue(pos, R, self.L("tvL", "T", fr=fr), 1)
                bp.glue(pos, F, self.L("hbLe" if j == 0 else "hbL", fr=fr), 1)
            if j == 0:
                bp.glue(pos, vneg(R), self.L("h", c, fr=nf), 2)
            else:
                bp.glue(pos, vneg(R), self.L("hzL", c, fr=fr), 1)
            for r in range(j - 1, -1, -1):
                pos = at(j + 1, r)
                bp.put(pos, "carrier")
                edge = "hbLe" if r == 0 else "hbL"
                bp.glue(pos, R, self.L("hzL", c, fr=fr), 1, True)
                bp.glue(pos, vneg(F), self.L(edge, fr=fr), 1, True)
                bp.glue(pos, vneg(R), *((self.L("b", c, fr=nf), 1) if r == 0 else (self.L("hzL", c, fr=fr), 1)))
                if j < w - 1:
                    bp.glue(pos, F, self.L(edge, fr=fr), 1)
        return ("row", at(1, -1), fr.turn_left(), syms, 0, "h", None)

    # callbacks
    def _lane_sequence(self, side: int):
        rows = self.rows[: self.start_row + 1]
        w = self.w

        def anchor(row):
            return row.frame.at(row.lb, 0, (w - 1 + 1) if side > 0 else -1)

        seq = [anchor(rows[0])]
        owner = {seq[0]: rows[0].frame.at(rows[0].lb, 0, w - 1 if side > 0 else 0)}
        for a, b in zip(rows, rows[1:]):
            route = []
            if a.mode == "tl" and side > 0:
                route = [(w + 1, r) for r in range(-1, w + 1)] + [(f, w) for f in range(w, -1, -1)]
            elif a.mode == "tr" and side < 0:
                route = [(w + 1, r) for r in range(w, -2, -1)] + [(f, -1) for f in range(w, -1, -1)]
            seq.extend(a.frame.at(a.lb, f, r) for f, r in reversed(route))
            an = anchor(b)
            owner.setdefault(an, b.frame.at(b.lb, 0, w - 1 if side > 0 else 0))
            seq.append(an)
        out = []
        for p in reversed(seq):
            if not out or out[-1] != p:
                out.append(p)
        for p, q in zip(out, out[1:]):
            if sum(abs(x - y) for x, y in zip(p, q)) != 1:
                raise GenerationConflict(f"callback lane breaks between {p} and {q}")
        return out, owner

    def _lane(self):
        if self.lane_start is None:
            return
        bp = self.bp
        side = -1 if self.callback == "left-end" else 1
        lane, owner = self._lane_sequence(side)
        edge, face = self.lane_start
        if lane[0] != vadd(edge, face):
            raise GenerationConflict("callback lane does not begin at the start cell")
        for p in lane:
            if p in bp.cells:
                raise PathCollision(f"callback lane of {self.gid} runs into {p}", position=p)
        m = len(lane) - 1
        root_out = vneg(self.rows[0].frame.forward)
        delta = lambda a, b: tuple(y - x for x, y in zip(a, b))
        support = [None] * (m + 1)
        for i in range(1, m + 1):
            p = lane[i]
            skip = {lane[i - 1], lane[i + 1] if i < m else None}
            cands = []
            if p in owner:
                cands.append(owner[p])
            for o in OFFSETS:
                q = vadd(p, o)
                if q not in skip and q in bp.cells and q not in cands:
                    cands.append(q)
            for q in cands:
                if q in bp.cells and bp.cells[q].role not in ("port", "pair") and bp.free_face(q, delta(q, p)):
                    support[i] = q
                    break
        outs = [delta(lane[i], lane[i + 1]) if i < m else root_out for i in range(m + 1)]
        ins = [face if i == 0 else delta(lane[i], lane[i - 1]) for i in range(m + 1)]
        ins[0] = vneg(face)
        cfg = [None] * (m + 1)
        for i in range(m, -1, -1):
            kind = "a" if i == m else ("c" if support[i + 1] else "s" + cfg[i + 1])
            b = DIR_NAMES[VEC_TO_DIR[delta(lane[i], support[i])]] if support[i] else "-"
            cfg[i] = f"{DIR_NAMES[VEC_TO_DIR[ins[i]]]}{b}{DIR_NAMES[VEC_TO_DIR[outs[i]]]}{kind}"
        bp.glue(edge, face, self.L("cbs", cfg[0]), 2)
        for i, p in enumerate(lane):
            bp.put(p, "lane")
            if i == 0 or support[i] is None:
                bp.glue(p, ins[i], self.L("cbs", cfg[i]), 2, True)
            else:
                bp.glue(p, ins[i], self.L("cb"), 1, True)
                q = support[i]
                flag = "a" if i == m else ("" if support[i + 1] else "s" + cfg[i + 1])
                lab = self.L("cbB", DIR_NAMES[VEC_TO_DIR[outs[i]]] + flag)
                bp.glue(q, delta(q, p), lab, 1)
                bp.glue(p, delta(p, q), lab, 1, True)
            if i == m:
                bp.glue(p, outs[i], self.L("act"), 2)
            elif support[i + 1]:
                bp.glue(p, outs[i], self.L("cb"), 1)
            else:
                bp.glue(p, outs[i], self.L("cbs", cfg[i + 1]), 2)
        self.activation = (lane[-1], VEC_TO_DIR[root_out])
