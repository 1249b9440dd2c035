"""Bounded checkers for follows, models, clean mapping and equivalent productions.

All checks explore the simulator to a fixed depth. A violation is only reported
when it is certain: for the models clause that means the search for a witness
ran out of moves, not out of depth. Everything else is "ok-at-depth" unless the
reachable set was exhausted, in which case the verdict is plain "ok".
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..core.assembly import Assembly
from ..core.explore import Exploration, explore_bounded, key_of, memory_budget, successors
from ..errors import BudgetExceeded
from .codec import MacrotileCodec, decode_star
from .fuzz import check_clean_mapping

OK = "ok"
OK_AT_DEPTH = "ok-at-depth"
VIOLATION = "violation"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    status: str
    witness: object = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != VIOLATION

    def __bool__(self):
        return self.ok


@dataclass
class SimulationReport:
    sections: dict = field(default_factory=dict)   # name -> CheckResult
    explored: int = 0
    exhausted: bool = False

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.sections.values())

    def __bool__(self):
        return self.ok

    def lines(self):
        for name, r in self.sections.items():
            extra = f" {r.detail}" if r.detail else ""
            yield f"{name}: {r.status}{extra}"


def _sub(a: Assembly, b: Assembly) -> bool:
    pb = b.placements
    return all(pb.get(p) == t for p, t in a.placements.items())


def reaches(system, start: Assembly, target: Assembly, budget: int | None = None) -> bool:
    """Whether ``target`` is producible from ``start`` in ``system``.

    Without diffusion the aTAM frontier is monotone, so attaching any attachable
    missing cell never hurts and a greedy pass is complete. With diffusion the
    order matters, so a memoised search over orders is used instead.
    """
    if not _sub(start, target):
        return False
    missing = {p: t for p, t in target.placements.items() if p not in start.placements}
    if not missing:
        return True
    if system.diffusion == "none":
        from ..core.dynamics import bound_strength
        from ..core.tiles import dims_directions
        dirs = dims_directions(system.dimension)
        glues = system.glues
        pl = dict(start.placements)
        progress = True
        while missing and progress:
            progress = False
            for p in list(missing):
                t = missing[p]
                if bound_strength(p, t, pl, glues, dirs) >= system.temperature:
                    pl[p] = t
                    del missing[p]
                    progress = True
        return not missing
    budget = memory_budget() if budget is None else budget
    seen = set()
    stack = [start]
    while stack:
        a = stack.pop()
        for p, t, b in successors(system, a):
            if missing.get(p) != t:
                continue
            if len(b) == len(target):
                return True
            k = key_of(b)
            if k not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(partial_count=len(seen))
                seen.add(k)
                stack.append(b)
    return False


class _Decoder:
    """Memoised R* over explored simulator assemblies."""

    def __init__(self, codec: MacrotileCodec):
        self.codec = codec
        self.cache = {}

    def __call__(self, key, assembly) -> Assembly:
        r = self.cache.get(key)
        if r is None:
            r = decode_star(self.codec, assembly)
            self.cache[key] = r
        return r


def _explore(simulator, depth, budget):
    return explore_bounded(simulator, depth, budget=budget, record_edges=True)


def _follows(ex: Exploration, simulated, dec: _Decoder) -> CheckResult:
    checked = {}
    for ka, kb, p, t in ex.edges:
        ra = dec(ka, ex.assemblies[ka])
        rb = dec(kb, ex.assemblies[kb])
        if ra == rb:
            continue
        pair = (key_of(ra), key_of(rb))
        ok = checked.get(pair)
        if ok is None:
            ok = reaches(simulated, ra, rb)
            checked[pair] = ok
        if not ok:
            return CheckResult(VIOLATION, (ex.assemblies[ka], ex.assemblies[kb]),
                               f"step at {p} maps {len(ra)} -> {len(rb)} tiles illegally")
    return CheckResult(OK if ex.exhausted else OK_AT_DEPTH)


def _first_arrivals(ex: Exploration, dec: _Decoder, seed_key) -> dict:
    """Group explored assemblies whose decode has just changed, keyed by decode."""
    arrivals = {}
    for ka, kb, _, _ in ex.edges:
        rb = dec(kb, ex.assemblies[kb])
        if dec(ka, ex.assemblies[ka]) != rb:
            arrivals.setdefault(key_of(rb), {})[kb] = ex.assemblies[kb]
    r0 = dec(seed_key, ex.assemblies[seed_key])
    arrivals.setdefault(key_of(r0), {})[seed_key] = ex.assemblies[seed_key]
    return arrivals


def _search_witness(simulator, start: Assembly, beta: Assembly, codec, horizon, budget):
    """BFS from ``start`` for an assembly decoding to ``beta``.

    Branches whose decode is not contained in ``beta`` are pruned: decoding is
    monotone, so they can never come back. Returns "found", "exhausted" or
    "horizon".
    """
    seen = {key_of(start)}
    layer = [start]
    for _ in range(horizon):
        nxt = []
        for a in layer:
            for p, t, b in successors(simulator, a):
                k = key_of(b)
                if k in seen:
                    continue
                rb = decode_star(codec, b)
                if not _sub(rb, beta):
                    continue
                if len(rb) == len(beta):
                    return "found"
                if len(seen) >= budget:
                    raise BudgetExceeded(partial_count=len(seen))
                seen.add(k)
                nxt.append(b)
        layer = nxt
        if not layer:
            return "exhausted"
    return "horizon"


def _models(simulator, simulated, codec, ex: Exploration, dec: _Decoder, horizon, budget) -> CheckResult:
    seed_key = key_of(simulator.seed)
    arrivals = _first_arrivals(ex, dec, seed_key)
    incomplete = not ex.exhausted
    for rkey in sorted(arrivals, key=lambda k: (len(k), sorted(k))):
        alpha = Assembly(dict(rkey), simulated.dimension)
        if not reaches(simulated, simulated.seed, alpha):
            continue   # reported by the follows / production sections
        for _, _, beta in successors(simulated, alpha):
            for _, a in sorted(arrivals[rkey].items(), key=lambda kv: sorted(kv[0])):
                res = _search_witness(simulator, a, beta, codec, horizon, budget)
                if res == "exhausted":
                    return CheckResult(VIOLATION, (alpha, beta, a),
                                       f"no simulator path to successor with {len(beta)} tiles")
                if res == "horizon":
                    incomplete = True
    return CheckResult(OK_AT_DEPTH if incomplete else OK)


def _productions(simulator, simulated, ex: Exploration, dec: _Decoder, budget) -> CheckResult:
    decoded = {}
    for k, a in ex.assemblies.items():
        r = dec(k, a)
        decoded[key_of(r)] = r
    for r in decoded.values():
        if not reaches(simulated, simulated.seed, r):
            return CheckResult(VIOLATION, r, f"decoded assembly with {len(r)} tiles not producible")
    if not ex.exhausted:
        return CheckResult(OK_AT_DEPTH, detail="reverse inclusion skipped (not exhausted)")
    try:
        tex = explore_bounded(simulated, 10 ** 9, budget=budget, record_edges=True)
    except BudgetExceeded:
        return CheckResult(OK_AT_DEPTH, detail="reverse inclusion skipped (simulated system too large)")
    missing = [a for k, a in tex.assemblies.items() if k not in decoded]
    if missing:
        return CheckResult(VIOLATION, missing[0], "simulated assembly never represented")
    term_s = {key_of(dec(key_of(a), a)) for a in ex.terminal(simulator)}
    term_t = {key_of(a) for a in tex.terminal(simulated)}
    if term_s != term_t:
        return CheckResult(VIOLATION, (term_s ^ term_t), "terminal assemblies differ")
    return CheckResult(OK)


def _fuzz(codec, ex: Exploration) -> CheckResult:
    for k, a in ex.assemblies.items():
        rep = check_clean_mapping(codec, a)
        if not rep.clean:
            return CheckResult(VIOLATION, (a, rep), ", ".join(f"{b}:{kind}" for b, kind in rep.violations))
    return CheckResult(OK if ex.exhausted else OK_AT_DEPTH)


def verify_follows(simulator, simulated, codec: MacrotileCodec, depth: int, budget: int | None = None) -> CheckResult:
    budget = memory_budget() if budget is None else budget
    ex = _explore(simulator, depth, budget)
    return _follows(ex, simulated, _Decoder(codec))


def verify_models(simulator, simulated, codec: MacrotileCodec, depth: int, budget: int | None = None,
                  horizon: int | None = None) -> CheckResult:
    """Bounded check that every simulated successor stays reachable.

    The witness set for a simulated assembly alpha is every explored simulator
    assembly at which the decode has just become alpha. Every assembly decoding
    to alpha descends from one of these, which settles the second clause; the
    first clause is checked by searching forward ``horizon`` steps from each.
    """
    budget = memory_budget() if budget is None else budget
    ex = _explore(simulator, depth, budget)
    return _models(simulator, simulated, codec, ex, _Decoder(codec), horizon or depth, budget)


def verify_simulation(simulator, simulated, codec: MacrotileCodec, depth: int, budget: int | None = None,
                      horizon: int | None = None) -> SimulationReport:
    budget = memory_budget() if budget is None else budget
    ex = _explore(simulator, depth, budget)
    dec = _Decoder(codec)
    rep = SimulationReport(explored=len(ex), exhausted=ex.exhausted)
    r0 = decode_star(codec, simulator.seed)
    rep.sections["seed"] = CheckResult(OK) if r0 == simulated.seed else CheckResult(
        VIOLATION, r0, "seed does not decode to the simulated seed")
    rep.sections["clean-mapping"] = _fuzz(codec, ex)
    rep.sections["follows"] = _follows(ex, simulated, dec)
    rep.sections["models"] = _models(simulator, simulated, codec, ex, dec, horizon or depth, budget)
    rep.sections["productions"] = _productions(simulator, simulated, ex, dec, budget)
    return rep
