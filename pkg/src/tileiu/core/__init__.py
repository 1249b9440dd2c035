"""Abstract Tile Assembly Model core: tiles, assemblies, dynamics and exploration."""
from .tiles import (DIR_NAMES, N, E, S, W, U, D, OFFSETS, OPPOSITE, Glue, NULL, TileType, TileSet,
                    dims_directions, step)
from .assembly import Assembly, AttachmentEvent
from .system import TileSystem, validate_system, make_system
from .stability import is_stable, min_cut, binding_graph
from .dynamics import frontier, attach, run, Simulator, RunResult, candidates_at
from .explore import explore_bounded, is_directed_bounded, Exploration, DirectedResult, memory_budget
