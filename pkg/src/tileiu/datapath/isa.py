"""Datapath micro-ISA: instructions, programs, frames and the pose interpreter.

A datapath grows as a sequence of rows.  Each row is a line of cells laid
along the row's right axis R, starting at its left boundary cell (LB).  Rows
advance along the forward axis F; U completes a right-handed frame.  The pose
of a datapath is the LB position of its last row together with the frame in
which growth would continue.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.tiles import DIR_NAMES, VEC_TO_DIR
from ..errors import InvalidOperand, ProgramTooWide

OPS = ("buffer", "forward", "left", "right", "rise", "fall", "place", "variable", "stop")
BOUNDARIES = ("plain", "right-callback", "left-callback", "variable-callback")
CALLBACKS = {"right-end": "right-callback", "left-end": "left-callback",
             "right-variable": "variable-callback"}
DEFAULT_MAX_WIDTH = 256


def vadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vscale(a, k):
    return (a[0] * k, a[1] * k, a[2] * k)


def vneg(a):
    return (-a[0], -a[1], -a[2])


@dataclass(frozen=True)
class Frame:
    forward: tuple = (0, 1, 0)
    right: tuple = (1, 0, 0)
    up: tuple = (0, 0, 1)

    def rise(self) -> "Frame":
        return Frame(self.up, self.right, vneg(self.forward))

    def fall(self) -> "Frame":
        return Frame(vneg(self.up), self.right, self.forward)

    def turn_right(self) -> "Frame":
        return Frame(self.right, vneg(self.forward), self.up)

    def turn_left(self) -> "Frame":
        return Frame(vneg(self.right), self.forward, self.up)

    def at(self, origin, f: int, r: int, u: int = 0):
        """World position of the local offset (f, r, u) from origin."""
        p = origin
        p = vadd(p, vscale(self.forward, f))
        p = vadd(p, vscale(self.right, r))
        return vadd(p, vscale(self.up, u))

    def names(self) -> str:
        return "".join(DIR_NAMES[VEC_TO_DIR[v]] for v in (self.forward, self.right, self.up))


@dataclass(frozen=True)
class Pose:
    position: tuple
    frame: Frame

    def relative_to(self, origin: "Pose") -> tuple:
        """Displacement as (forward, right, up) components in origin's frame."""
        d = tuple(a - b for a, b in zip(self.position, origin.position))
        fr = origin.frame
        return tuple(sum(x * y for x, y in zip(d, axis)) for axis in (fr.forward, fr.right, fr.up))


@dataclass(frozen=True)
class Instruction:
    kind: str
    operand: int | None = None

    def __post_init__(self):
        if self.kind not in OPS:
            raise InvalidOperand(f"unknown instruction {self.kind!r}")
        if self.kind == "forward":
            if not isinstance(self.operand, int) or isinstance(self.operand, bool) or self.operand < 1:
                raise InvalidOperand(f"forward needs a positive integer operand, got {self.operand!r}")
        elif self.kind == "place":
            if not isinstance(self.operand, int) or isinstance(self.operand, bool) or self.operand < 0:
                raise InvalidOperand(f"place needs a non-negative pair id, got {self.operand!r}")
        elif self.operand is not None:
            raise InvalidOperand(f"{self.kind} takes no operand")

    def __str__(self):
        return self.kind if self.operand is None else f"{self.kind}({self.operand})"

    @staticmethod
    def parse(text: str) -> "Instruction":
        text = text.strip()
        if "(" in text:
            name, rest = text.split("(", 1)
            try:
                return Instruction(name.strip(), int(rest.rstrip(")")))
            except ValueError as exc:
                raise InvalidOperand(f"bad operand in {text!r}") from exc
        return Instruction(text)


def forward(c: int) -> Instruction:
    return Instruction("forward", c)


def place(pair: int) -> Instruction:
    return Instruction("place", pair)


BUFFER, LEFT, RIGHT, RISE, FALL, VARIABLE, STOP = (Instruction(k) for k in
                                                    ("buffer", "left", "right", "rise", "fall", "variable", "stop"))


@dataclass(frozen=True)
class DatapathProgram:
    instructions: tuple = ()
    payload: str = ""
    boundary: str = "plain"
    max_width: int = DEFAULT_MAX_WIDTH

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(
            i if isinstance(i, Instruction) else Instruction.parse(i) for i in self.instructions))
        if any(c not in "01" for c in self.payload):
            raise InvalidOperand(f"payload must be a bit string, got {self.payload!r}")
        if self.boundary not in BOUNDARIES:
            raise InvalidOperand(f"unknown boundary {self.boundary!r}")
        kinds = [i.kind for i in self.instructions]
        if kinds.count("stop") > 1 or ("stop" in kinds and kinds[-1] != "stop"):
            raise InvalidOperand("a program holds at most one stop and it must come last")
        if self.width > self.max_width:
            raise ProgramTooWide(f"program width {self.width} exceeds {self.max_width}")

    @property
    def body(self) -> tuple:
        """Instructions that occupy row cells (everything except stop)."""
        return tuple(i for i in self.instructions if i.kind != "stop")

    @property
    def counter_width(self) -> int:
        ops = [i.operand for i in self.body if i.kind == "forward"]
        return max(ops).bit_length() if ops else 0

    @property
    def width(self) -> int:
        k = self.counter_width
        return 3 + sum(1 + (k if i.kind == "forward" else 0) for i in self.body) + len(self.payload)

    @property
    def variables(self) -> int:
        return sum(1 for i in self.body if i.kind == "variable")


def interpret_pose(program: DatapathProgram, inputs=None, callback: str | None = None,
                   origin: Pose | None = None) -> Pose:
    """Pose of the last row after executing the program, without building tiles.

    inputs lists the bit strings delivered to the variable instructions in
    order; a variable without a delivered input stalls the path.
    """
    pose = origin or Pose((0, 0, 0), Frame())
    p, fr = pose.position, pose.frame
    w = program.width
    inputs = list(inputs or ())
    for ins in program.body:
        k = ins.kind
        if k == "buffer":
            p = vadd(p, fr.forward)
        elif k == "forward":
            p = vadd(p, vscale(fr.forward, 2 * ins.operand + 1))
        elif k == "rise":
            p, fr = vadd(p, fr.forward), fr.rise()
        elif k == "fall":
            p, fr = vadd(p, fr.forward), fr.fall()
        elif k == "right":
            p, fr = fr.at(p, 1 + w, w), fr.turn_right()
        elif k == "left":
            p, fr = fr.at(p, 2, -1), fr.turn_left()
        elif k == "place":
            p = vadd(p, vscale(fr.forward, 2))
        elif k == "variable":
            p = vadd(p, fr.forward)
            if not inputs:
                return Pose(p, fr)
            inputs.pop(0)
            p = vadd(p, fr.forward)
    if callback == "left-end":
        p = vadd(p, fr.forward)
    return Pose(p, fr)
