"""Line-oriented text formats for systems, snapshots and codecs.

Every file starts with a magic word and a format version.  Fields are
whitespace separated, so tile names and glue labels must not contain
whitespace.  Glues are written label:strength, or "-" when null.

System file::

    TILEIU-SYSTEM 1
    name line
    dimension 2
    temperature 2
    diffusion none
    tile A N=- E=a:2 S=- W=-
    seed 0 0 0 A

Snapshot file (``place`` lines give the starting assembly; without them the
system's own seed is the start)::

    TILEIU-SNAPSHOT 1
    system <digest>
    scheduler-seed 0
    steps 2
    place 0 0 0 A
    event 1 1 0 0 B

Codec file (tiles referenced by name; ``target`` lines name the simulated
tiles by id)::

    TILEIU-CODEC 1
    m 2
    kind generated
    dimension 2
    target-size 3
    target-digest <digest>
    simulator-digest <digest>
    target 0 A
    window 0 0 0
    bit a0 0
    entry 0 0,0,0=A
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core.assembly import Assembly
from .core.system import TileSystem, validate_system
from .core.tiles import DIR_NAMES, dims_directions
from .errors import FormatError
from .simrel.codec import MacrotileCodec

VERSION = 1
SYSTEM_MAGIC = "TILEIU-SYSTEM"
SNAPSHOT_MAGIC = "TILEIU-SNAPSHOT"
CODEC_MAGIC = "TILEIU-CODEC"


def _lines(text: str, magic: str):
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or rows[0][0] != magic:
        raise FormatError(f"expected a {magic} header")
    if len(rows[0]) != 2 or rows[0][1] != str(VERSION):
        raise FormatError(f"unsupported {magic} version {' '.join(rows[0][1:])!r}")
    return rows[1:]


def _word(s: str) -> str:
    if not s or any(c.isspace() for c in s):
        raise FormatError(f"names and labels must be non-empty and free of whitespace, got {s!r}")
    return s


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"expected an integer, got {s!r}") from None


# systems

def dump_system(system: TileSystem) -> str:
    dirs = dims_directions(system.dimension)
    out = [f"{SYSTEM_MAGIC} {VERSION}", f"name {_word(system.name)}", f"dimension {system.dimension}",
           f"temperature {system.temperature}", f"diffusion {system.diffusion}"]
    for t in system.tiles:
        faces = []
        for d in dirs:
            g = t.glues[d]
            faces.append(f"{DIR_NAMES[d]}=" + ("-" if g.is_null else f"{_word(g.label)}:{g.strength}"))
        out.append(f"tile {_word(t.name)} " + " ".join(faces))
    for p, tid in sorted(system.seed.items()):
        out.append(f"seed {p[0]} {p[1]} {p[2]} {system.tiles[tid].name}")
    return "\n".join(out) + "\n"


def parse_system(text: str) -> TileSystem:
    raw = {"tiles": [], "seed": []}
    for row in _lines(text, SYSTEM_MAGIC):
        key = row[0]
        if key in ("name", "diffusion") and len(row) == 2:
            raw[key] = row[1]
        elif key in ("dimension", "temperature") and len(row) == 2:
            raw[key] = _int(row[1])
        elif key == "tile" and len(row) >= 2:
            glues = {}
            for f in row[2:]:
                d, sep, g = f.partition("=")
                if not sep:
                    raise FormatError(f"bad face {f!r} on tile {row[1]}")
                glues[d] = None if g == "-" else g
                if g != "-" and ":" not in g:
                    raise FormatError(f"glue {g!r} needs label:strength")
            raw["tiles"].append({"name": row[1], "glues": glues})
        elif key == "seed" and len(row) == 5:
            raw["seed"].append((_int(row[1]), _int(row[2]), _int(row[3]), row[4]))
        else:
            raise FormatError(f"unrecognised system line {' '.join(row)!r}")
    return validate_system(raw)


def load_system(path) -> TileSystem:
    with open(path) as f:
        return parse_system(f.read())


def save_system(system: TileSystem, path):
    with open(path, "w") as f:
        f.write(dump_system(system))


# snapshots

@dataclass
class Snapshot:
    system_digest: str = "-"
    scheduler_seed: int = 0
    base: list = field(default_factory=list)       # (position, tile name); empty means the system seed
    events: list = field(default_factory=list)     # (step, position, tile name)

    def assembly(self, names: dict, dimension: int, seed: Assembly | None = None) -> Assembly:
        """Replay onto the base (or the given seed); names maps tile name to id."""
        if self.base:
            pl = {p: names[n] for p, n in self.base}
        elif seed is not None:
            pl = dict(seed.placements)
        else:
            raise FormatError("snapshot has no placements and no system seed was given")
        for _, p, n in self.events:
            if p in pl:
                raise FormatError(f"event places a second tile at {p}")
            pl[p] = names[n]
        return Assembly(pl, dimension)

    def final_placements(self, seed_names: dict | None = None) -> dict:
        """{position: tile name} after all events."""
        pl = dict(self.base) if self.base else dict(seed_names or {})
        for _, p, n in self.events:
            pl[p] = n
        return pl


def dump_snapshot(snap: Snapshot) -> str:
    out = [f"{SNAPSHOT_MAGIC} {VERSION}", f"system {snap.system_digest or '-'}",
           f"scheduler-seed {snap.scheduler_seed}", f"steps {len(snap.events)}"]
    out += [f"place {p[0]} {p[1]} {p[2]} {_word(n)}" for p, n in sorted(snap.base)]
    out += [f"event {s} {p[0]} {p[1]} {p[2]} {_word(n)}" for s, p, n in snap.events]
    return "\n".join(out) + "\n"


def parse_snapshot(text: str) -> Snapshot:
    snap = Snapshot()
    steps = None
    for row in _lines(text, SNAPSHOT_MAGIC):
        key = row[0]
        if key == "system" and len(row) == 2:
            snap.system_digest = row[1]
        elif key == "scheduler-seed" and len(row) == 2:
            snap.scheduler_seed = _int(row[1])
        elif key == "steps" and len(row) == 2:
            steps = _int(row[1])
        elif key == "place" and len(row) == 5:
            snap.base.append(((_int(row[1]), _int(row[2]), _int(row[3])), row[4]))
        elif key == "event" and len(row) == 6:
            snap.events.append((_int(row[1]), (_int(row[2]), _int(row[3]), _int(row[4])), row[5]))
        else:
            raise FormatError(f"unrecognised snapshot line {' '.join(row)!r}")
    if steps is not None and steps != len(snap.events):
        raise FormatError(f"header announces {steps} events, file holds {len(snap.events)}")
    return snap


def load_snapshot(path) -> Snapshot:
    with open(path) as f:
        return parse_snapshot(f.read())


def save_snapshot(snap: Snapshot, path):
    with open(path, "w") as f:
        f.write(dump_snapshot(snap))


# codecs

@dataclass
class CodecFile:
    """A codec with tiles named rather than numbered."""
    m: int
    kind: str
    dimension: int
    target_size: int
    target_digest: str = ""
    simulator_digest: str = ""
    targets: dict = field(default_factory=dict)    # simulated id -> name
    window: tuple = ()
    bits: dict = field(default_factory=dict)       # simulator tile name -> bit
    entries: tuple = ()                            # (simulated id, ((cell, tile name), ...))

    def bind(self, names: dict) -> MacrotileCodec:
        """Numbered codec for a simulator whose tile ids are given by names (name -> id)."""
        bit_of = {names[n]: b for n, b in self.bits.items() if n in names}
        table = tuple((frozenset((c, names[n]) for c, n in pat), tid) for tid, pat in self.entries
                      if all(n in names for _, n in pat))
        return MacrotileCodec(self.m, self.kind, self.dimension, self.target_size, window=self.window,
                              bit_of=bit_of, table=table, target_digest=self.target_digest,
                              simulator_digest=self.simulator_digest)

    def names(self) -> list:
        out = list(self.bits)
        out += [n for _, pat in self.entries for _, n in pat]
        return sorted(set(out))


def codec_file(codec: MacrotileCodec, simulator_tiles, target_tiles=None) -> CodecFile:
    name = lambda i: simulator_tiles[i].name
    targets = {i: t.name for i, t in enumerate(target_tiles)} if target_tiles is not None else {}
    return CodecFile(codec.m, codec.kind, codec.dimension, codec.target_size, codec.target_digest,
                     codec.simulator_digest, targets, tuple(codec.window),
                     {name(i): b for i, b in sorted(codec.bit_of.items())},
                     tuple((tid, tuple(sorted((c, name(t)) for c, t in pat))) for pat, tid in codec.table))


def dump_codec(cf: CodecFile) -> str:
    out = [f"{CODEC_MAGIC} {VERSION}", f"m {cf.m}", f"kind {cf.kind}", f"dimension {cf.dimension}",
           f"target-size {cf.target_size}", f"target-digest {cf.target_digest or '-'}",
           f"simulator-digest {cf.simulator_digest or '-'}"]
    out += [f"target {i} {_word(n)}" for i, n in sorted(cf.targets.items())]
    out += [f"window {c[0]} {c[1]} {c[2]}" for c in cf.window]
    out += [f"bit {_word(n)} {b}" for n, b in sorted(cf.bits.items())]
    for tid, pat in cf.entries:
        out.append(f"entry {tid} " + " ".join(f"{c[0]},{c[1]},{c[2]}={_word(n)}" for c, n in pat))
    return "\n".join(out) + "\n"


def parse_codec(text: str) -> CodecFile:
    head, targets, window, bits, entries = {}, {}, [], {}, []
    for row in _lines(text, CODEC_MAGIC):
        key = row[0]
        if key in ("m", "dimension", "target-size") and len(row) == 2:
            head[key] = _int(row[1])
        elif key in ("kind", "target-digest", "simulator-digest") and len(row) == 2:
            head[key] = "" if row[1] == "-" else row[1]
        elif key == "target" and len(row) == 3:
            targets[_int(row[1])] = row[2]
        elif key == "window" and len(row) == 4:
            window.append(tuple(_int(x) for x in row[1:]))
        elif key == "bit" and len(row) == 3:
            bits[row[1]] = _int(row[2])
        elif key == "entry" and len(row) >= 3:
            pat = []
            for cell in row[2:]:
                xyz, sep, n = cell.partition("=")
                parts = xyz.split(",")
                if not sep or len(parts) != 3:
                    raise FormatError(f"bad pattern cell {cell!r}")
                pat.append((tuple(_int(x) for x in parts), n))
            entries.append((_int(row[1]), tuple(pat)))
        else:
            raise FormatError(f"unrecognised codec line {' '.join(row)!r}")
    missing = {"m", "kind", "dimension", "target-size"} - set(head)
    if missing:
        raise FormatError(f"codec file lacks {', '.join(sorted(missing))}")
    if head["kind"] not in ("generated", "table"):
        raise FormatError(f"unknown codec kind {head['kind']!r}")
    return CodecFile(head["m"], head["kind"], head["dimension"], head["target-size"],
                     head.get("target-digest", ""), head.get("simulator-digest", ""), targets,
                     tuple(window), bits, tuple(entries))


def load_codec(path) -> CodecFile:
    with open(path) as f:
        return parse_codec(f.read())


def save_codec(cf: CodecFile, path):
    with open(path, "w") as f:
        f.write(dump_codec(cf))


def voxel_lines(placements: dict) -> list:
    """'x y z tile-name' per placement, in lexicographic coordinate order."""
    return [f"{p[0]} {p[1]} {p[2]} {n}" for p, n in sorted(placements.items())]
