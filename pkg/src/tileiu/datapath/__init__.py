"""Datapath instruction set, its tile generator and the fixed-pattern gadgets."""
from .builder import GenerationConflict
from .gadget import (GadgetTiles, Growth, assemble_datapath, grow_isolated, observed_pose,
                     wire_callback)
from .gadgets import (counter_signals, counter_steps, emit_circular_latch, emit_guide_rail,
                      emit_latch, emit_periodic_counter, rail_rows, rail_stopper)
from .isa import (BUFFER, CALLBACKS, FALL, LEFT, RIGHT, RISE, STOP, VARIABLE, DatapathProgram,
                  Frame, Instruction, Pose, forward, interpret_pose, place)

__all__ = [
    "BUFFER", "CALLBACKS", "FALL", "LEFT", "RIGHT", "RISE", "STOP", "VARIABLE",
    "DatapathProgram", "Frame", "GadgetTiles", "GenerationConflict", "Growth", "Instruction", "Pose",
    "assemble_datapath", "counter_signals", "counter_steps", "emit_circular_latch", "emit_guide_rail",
    "emit_latch", "emit_periodic_counter", "forward", "grow_isolated", "interpret_pose",
    "observed_pose", "place", "rail_rows", "rail_stopper", "wire_callback",
]
