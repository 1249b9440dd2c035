"""Macrotile modules: glue table, adder array, bracket, external communication and genome."""
from .adder import (AdderSpec, adder_fired, adder_tiles, array_inputs, bus_inputs, emit_adder_unit,
                    gen_adder_array, output_site, register_width, unit_seed)
from .bracket import BracketSpec, bracket_inputs, bracket_outputs, emit_bracket, gen_bracket
from .extcomm import delivered_payload, destination, ext_program, gen_external_comm
from .genome import GenomeSpec, emit_bands, gen_genome, genome_spec
from .glue_table import GlueEntry, entries_for, gen_glue_table
from .route import plan_route

__all__ = [
    "AdderSpec", "BracketSpec", "GenomeSpec", "GlueEntry", "adder_fired", "adder_tiles",
    "array_inputs", "bracket_inputs", "bracket_outputs", "bus_inputs", "delivered_payload",
    "destination", "emit_adder_unit", "emit_bands", "emit_bracket", "entries_for", "ext_program",
    "gen_adder_array", "gen_bracket", "gen_external_comm", "gen_genome", "gen_glue_table", "genome_spec",
    "output_site", "plan_route", "register_width", "unit_seed",
]
