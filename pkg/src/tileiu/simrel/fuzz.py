"""Clean-mapping check: simulator growth allowed only face-adjacent to decoded tiles."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..core.assembly import Assembly
from .codec import MacrotileCodec, blocks


@dataclass
class FuzzReport:
    violations: list = field(default_factory=list)   # (block coordinate, kind)

    @property
    def clean(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.clean


def check_clean_mapping(codec: MacrotileCodec, assembly: Assembly) -> FuzzReport:
    content = blocks(assembly, codec.m, codec.dimension)
    if len(content) <= 1:
        return FuzzReport()
    decoded = {b for b, c in content.items() if codec.decode_block(c) is not None}
    dims = codec.dimension
    rng = [(-1, 0, 1)] * dims + [(0,)] * (3 - dims)
    neigh = [v for v in product(*rng) if any(v)]
    face = [v for v in neigh if sum(abs(c) for c in v) == 1]
    out = []
    for b in sorted(content):
        if b in decoded:
            continue
        if any((b[0] + v[0], b[1] + v[1], b[2] + v[2]) in decoded for v in face):
            continue
        if any((b[0] + v[0], b[1] + v[1], b[2] + v[2]) in decoded for v in neigh):
            out.append((b, "diagonal-fuzz"))
        else:
            out.append((b, "isolated-fuzz"))
    return FuzzReport(out)
