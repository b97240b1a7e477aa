"""The solve pipeline: reduce, look for an odd clique model, color, or
report structure.

Every search here is exact and exponential; it is meant for graphs of a few
dozen vertices.  Reports say so with ``exactDeskScale: true``.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InstanceTooLarge, OddMinorError, PreconditionViolation, StateBudgetExceeded, TimeLimitExceeded
from .generators import all_graphs, random_connected_graph
from .graph import Coloring, Graph, bits, component_mask, find_parity_path, to_mask
from .io import format_graph6
from .oddmodel import DEFAULT_MAX_N, OddModel, Violation, find_odd_clique_model, validate_odd_model
from .reductions import ReductionTrace, lift_coloring, reduce_to_fixpoint
from .structure import BagClassification, Thresholds, classify_bag, k_coloring
from .treewidth import (DEFAULT_STATE_BUDGET, TreeDecomposition, chromatic_number_dp, heuristic_decomposition,
                        odd_model_dp, validate_decomposition)

SCHEMA = 1
COLORED = "colored"
ODD_MINOR_FOUND = "oddMinorFound"
STRUCTURE_REPORT = "structureReport"
IRREDUCIBLE = "irreducible under implemented rules"


@dataclass(frozen=True)
class Config:
    state_budget: int = DEFAULT_STATE_BUDGET
    timeout_s: float | None = None
    limit_n: int = 40
    dp_width_cap: int = 5  # tree-decomposition DPs only below this width
    model_max_n: int = DEFAULT_MAX_N  # exhaustive model search above this size is skipped
    witness_limit: int = 2000  # vertex sets examined by the separator witness scan
    seed: int = 0
    thresholds: Thresholds | None = None

    def to_json(self) -> dict:
        return {
            "stateBudget": self.state_budget, "timeoutS": self.timeout_s, "limitN": self.limit_n,
            "dpWidthCap": self.dp_width_cap, "modelMaxN": self.model_max_n, "witnessLimit": self.witness_limit,
            "seed": self.seed, "thresholds": self.thresholds.to_json() if self.thresholds else None,
        }


@dataclass
class StructureReport:
    decomposition: TreeDecomposition
    bags: list[BagClassification]
    witnesses: list[dict] = field(default_factory=list)

    @property
    def bag_degrees(self) -> list[int]:
        return [self.decomposition.degree(i) for i in range(len(self.decomposition.bags))]

    @property
    def flagged(self) -> list[int]:
        return [i for i, c in enumerate(self.bags) if c.verdict == "neither"]

    def to_json(self) -> dict:
        degrees = self.bag_degrees
        return {
            "status": IRREDUCIBLE,
            "decomposition": self.decomposition.to_json(),
            "width": self.decomposition.width,
            "bagDegrees": degrees,
            "maxBagDegree": max(degrees, default=0),
            "bags": [c.to_json() for c in self.bags],
            "flaggedBags": self.flagged,
            "separatorWitnesses": self.witnesses,
        }


@dataclass
class SolveReport:
    outcome: str
    t: int
    trace: ReductionTrace
    config: Config
    coloring: Coloring | None = None
    model: OddModel | None = None
    structure: StructureReport | None = None
    model_search: str = ""  # found / absent / presentNoWitness / skipped
    timings: dict = field(default_factory=dict)

    @property
    def reduced(self) -> Graph:
        return self.trace.reduced

    def to_json(self, timings: bool = False) -> dict:
        g, h = self.trace.original, self.reduced
        out = {
            "schema": SCHEMA,
            "exactDeskScale": True,
            "outcome": self.outcome,
            "t": self.t,
            "graph": {"n": g.n, "m": g.m, "graph6": format_graph6(g)},
            "reduced": {"n": h.n, "m": h.m, "graph6": format_graph6(h)},
            "modelSearch": self.model_search,
            "coloring": list(self.coloring.assignment) if self.coloring is not None else None,
            "model": self.model.to_json() if self.model is not None else None,
            "structure": self.structure.to_json() if self.structure is not None else None,
            "trace": self.trace.to_json(),
            "config": self.config.to_json(),
        }
        if timings:
            out["timings"] = dict(self.timings)
        return out

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True)


# ----------------------------------------------------------------------
# separator witnesses for structure reports


def linked_components(g: Graph, sep, parity: int) -> list[frozenset[int]]:
    """Components C of g - sep that see every vertex of ``sep`` and contain,
    for every pair u, v of ``sep``, a u-v path of the given length parity
    with interior in C."""
    sep = sorted(sep)
    sep_mask = to_mask(sep)
    rest = g.full_mask & ~sep_mask
    out = []
    todo = rest
    while todo:
        comp = component_mask(g, todo & -todo, rest)
        todo &= ~comp
        seen = 0
        for v in bits(comp):
            seen |= g.masks[v]
        if seen & sep_mask != sep_mask:
            continue
        inner = list(bits(comp))
        if all(find_parity_path(g, u, v, inner, parity) is not None for u, v in itertools.combinations(sep, 2)):
            out.append(frozenset(inner))
    return out


def separator_witnesses(g: Graph, t: int, limit: int = 2000) -> list[dict]:
    """Vertex sets with many parity-linked components.

    * a set of ``t`` vertices with at least t^2/2 components that odd-link
      every pair forces an odd K_t minor;
    * an independent set of ``s >= 2`` vertices with at least ``s``
      components that even-link every pair can be contracted to one vertex
      by odd-minor operations.

    Sets are scanned in lexicographic order; at most ``limit`` sets are
    examined.
    """
    out = []
    examined = 0
    for size in range(2, t + 1):
        for sep in itertools.combinations(range(g.n), size):
            examined += 1
            if examined > limit:
                return out
            if size == t:
                comps = linked_components(g, sep, 1)
                if len(comps) >= t * t / 2:
                    out.append({"kind": "oddLinked", "set": list(sep), "components": [sorted(c) for c in comps]})
            if not any(g.has_edge(u, v) for u, v in itertools.combinations(sep, 2)):
                comps = linked_components(g, sep, 0)
                if len(comps) >= size:
                    out.append({"kind": "evenLinked", "set": list(sep), "components": [sorted(c) for c in comps]})
    return out


def structure_report(h: Graph, t: int, config: Config) -> StructureReport:
    d = heuristic_decomposition(h)
    thresholds = config.thresholds or Thresholds.default(h.n, t)
    bags = []
    for bag in d.bags:
        members = sorted(bag)
        sub, _ = h.induced(members)
        bags.append(classify_bag(sub, h.n, thresholds, t, labels=members))
    return StructureReport(d, bags, separator_witnesses(h, t, config.witness_limit))


# ----------------------------------------------------------------------
# solve


class _Clock:
    def __init__(self, limit: float | None):
        self.limit = limit
        self.start = time.perf_counter()
        self.mark = self.start
        self.timings: dict[str, float] = {}

    def lap(self, phase: str) -> None:
        now = time.perf_counter()
        self.timings[phase] = round(now - self.mark, 6)
        self.mark = now
        if self.limit is not None and now - self.start > self.limit:
            raise TimeLimitExceeded(f"time limit of {self.limit}s exceeded after phase {phase!r}")


def _model_phase(h: Graph, t: int, config: Config, d: TreeDecomposition | None) -> tuple[str, OddModel | None]:
    """Direct search when the reduced graph is small enough; otherwise the
    tree-decomposition DP, which decides but gives no model."""
    if h.n < t:
        return "absent", None
    if t < 4 or h.n <= config.model_max_n:
        model = find_odd_clique_model(h, t, max_n=config.model_max_n)
        return ("found", model) if model is not None else ("absent", None)
    if d is not None and d.width <= config.dp_width_cap:
        return ("presentNoWitness" if odd_model_dp(h, d, t, config.state_budget).found else "absent"), None
    return "skipped", None


def _color_phase(h: Graph, t: int, config: Config, d: TreeDecomposition | None) -> Coloring | None:
    if d is not None and d.width <= config.dp_width_cap:
        found = chromatic_number_dp(h, d, t - 1, config.state_budget)
        return None if found is None else found[1]
    return k_coloring(h, t - 1)


def solve(g: Graph, t: int, config: Config | None = None) -> SolveReport:
    """Reduce ``g``, then return a lifted (t-1)-coloring, an odd K_t model of
    the reduced graph, or a structure report on the reduced graph."""
    config = config or Config()
    if t < 3:
        raise PreconditionViolation("t must be at least 3")
    if g.n > config.limit_n:
        raise InstanceTooLarge(f"solve is limited to n <= {config.limit_n}, got n={g.n}")
    clock = _Clock(config.timeout_s)
    trace = reduce_to_fixpoint(g, t)
    h = trace.reduced
    report = SolveReport(STRUCTURE_REPORT, t, trace, config, timings=clock.timings)
    try:
        clock.lap("reduce")
        d = heuristic_decomposition(h) if h.n else None
        clock.lap("decompose")
        report.model_search, model = _model_phase(h, t, config, d)
        clock.lap("modelSearch")
        if model is not None:
            report.outcome, report.model = ODD_MINOR_FOUND, model
            return report
        coloring = _color_phase(h, t, config, d)
        clock.lap("color")
        if coloring is not None:
            report.outcome, report.coloring = COLORED, lift_coloring(trace, coloring)
            clock.lap("lift")
            return report
        report.structure = structure_report(h, t, config)
        clock.lap("structure")
        return report
    except (StateBudgetExceeded, TimeLimitExceeded) as exc:
        exc.partial = report  # what was known when the limit hit
        raise


# ----------------------------------------------------------------------
# verification


def verify_report(g: Graph, t: int, r: SolveReport) -> Violation | None:
    """Re-check the certificate a report carries; None means valid."""
    populated = [name for name, val in (("coloring", r.coloring), ("model", r.model), ("structure", r.structure))
                 if val is not None]
    expected = {COLORED: "coloring", ODD_MINOR_FOUND: "model", STRUCTURE_REPORT: "structure"}.get(r.outcome)
    if expected is None:
        return Violation("outcome", f"unknown outcome {r.outcome!r}")
    if populated != [expected]:
        return Violation("exactly-one", f"outcome {r.outcome} but populated {populated}", tuple(populated))
    if r.t != t or r.trace.t != t:
        return Violation("t", f"report is for t={r.t}, trace for t={r.trace.t}, expected {t}")
    if r.trace.original != g:
        return Violation("trace-original", "trace does not start from the input graph")
    try:
        replayed = r.trace.replay()
    except (ValueError, OddMinorError) as exc:
        return Violation("trace-replay", str(exc))
    if replayed != r.reduced:
        return Violation("trace-replay", "replayed graph differs from the reduced graph")
    h = r.reduced
    if r.outcome == COLORED:
        if not r.coloring.is_proper(g, t - 1):
            bad = r.coloring.conflicts(g) if len(r.coloring) == g.n else ()
            return Violation("coloring", f"not a proper {t - 1}-coloring of the input graph", tuple(bad))
        return None
    if r.outcome == ODD_MINOR_FOUND:
        if r.model.t != t:
            return Violation("model-order", f"model has {r.model.t} nodes, expected {t}")
        return validate_odd_model(h, r.model)
    s = r.structure
    bad = validate_decomposition(h, s.decomposition)
    if bad is not None:
        return bad
    if len(s.bags) != len(s.decomposition.bags):
        return Violation("bags", "one classification per bag is required")
    for i, (bag, cls) in enumerate(zip(s.decomposition.bags, s.bags)):
        sub, _ = h.induced(sorted(bag))
        if not cls.verify(sub):
            return Violation("bag-classification", f"bag {i} classification does not verify", (i,))
    return None


# ----------------------------------------------------------------------
# sweeps


def family_graphs(family: str):
    """Graphs described by ``all:N``, ``connected:N`` (every graph, or every
    connected graph, on 1..N vertices up to isomorphism) or
    ``random:COUNT:NMAX:SEED`` (seeded random connected graphs)."""
    kind, _, rest = family.partition(":")
    parts = rest.split(":") if rest else []
    try:
        nums = [int(p) for p in parts]
    except ValueError as exc:
        raise PreconditionViolation(f"bad family description {family!r}") from exc
    if kind in ("all", "connected") and len(nums) == 1:
        for n in range(1, nums[0] + 1):
            yield from all_graphs(n, connected=kind == "connected")
    elif kind == "random" and len(nums) == 3:
        count, nmax, seed = nums
        rng = random.Random(seed)
        for _ in range(count):
            n = rng.randint(1, nmax)
            yield random_connected_graph(n, rng.uniform(0.1, 0.9), rng)
    else:
        raise PreconditionViolation(f"bad family description {family!r}")


def _sweep_one(args):
    g, t, config = args
    r = solve(g, t, config)
    bad = verify_report(g, t, r)
    return r.outcome, None if bad is None else str(bad)


def conjecture_sweep(family: str, t: int, config: Config | None = None, workers: int = 1) -> dict:
    """Solve every graph of the family and count outcomes.

    A structure report for t <= 5 is flagged: in that range every graph
    without an odd K_t minor is known to be (t-1)-colorable, so it points at
    a bug.  Results are aggregated in family order whatever ``workers`` is.
    """
    config = config or Config()
    graphs = list(family_graphs(family))
    jobs = [(g, t, config) for g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_sweep_one, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    else:
        results = [_sweep_one(job) for job in jobs]
    counts = {COLORED: 0, ODD_MINOR_FOUND: 0, STRUCTURE_REPORT: 0}
    flagged, invalid = [], []
    for g, (outcome, bad) in zip(graphs, results):
        counts[outcome] += 1
        if outcome == STRUCTURE_REPORT and t <= 5:
            flagged.append(format_graph6(g))
        if bad is not None:
            invalid.append({"graph6": format_graph6(g), "violation": bad})
    return {"family": family, "t": t, "graphs": len(graphs), "outcomes": counts,
            "flagged": flagged, "invalid": invalid}
