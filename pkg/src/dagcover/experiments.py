"""Seeded random-graph sampling and desk-scale threshold experiments.

The sampling model draws each ordered pair independently with
probability p; sweeps drive p = n**(-1/a*) through a list of n values
and report per-n statistics as CSV rows.  Every sample draws from its
own counter-based substream keyed by (seed, n, sample index), so runs
are byte-identical no matter how samples are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .covering import (
    enumerate_copies,
    skew_witness_pipeline,
    tau_greedy,
    tau_lower_clique,
    union_graph,
)
from .density import (
    UndirectedGraph,
    densest_subset_enum,
    fractional_arboricity,
    is_totally_balanced,
)
from .digraph import Digraph, Permutation, is_dag, is_rooted_star
from .errors import InfeasibleSizeError, InvalidInputError
from .rng import substream
from .skewness import SkewReport, skewness_exact

SWEEP_MODES = ("dagness", "tau_stats", "skew_pipeline", "copy_count")
CSV_COLUMNS = (
    "n,p,samples,frac_gh_dag,mean_copies,tau_greedy_mean,tau_lower_mean,"
    "pipeline_success,censored"
)


def sample_digraph(n: int, p: float, seed: int, sample_index: int = 0) -> Digraph:
    """One draw from the n-vertex, edge-probability-p digraph model.

    Ordered pairs are examined in lexicographic order (uniforms are
    drawn for the full n*n grid, diagonal entries discarded, to keep the
    indexing dense), so the stream layout is fixed.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"edge probability must lie in [0,1], got {p}")
    if n < 0:
        raise InvalidInputError(f"n must be >= 0, got {n}")
    rng = substream(seed, n, sample_index, 0)
    draws = rng.random(n * n)
    hits = np.flatnonzero(draws < p)
    us, vs = np.divmod(hits, n)
    keep = us != vs
    edges = frozenset(zip(us[keep].tolist(), vs[keep].tolist()))
    return Digraph._from_trusted(n, edges)


def sample_undirected(n: int, p: float, seed: int, sample_index: int = 0) -> UndirectedGraph:
    """One draw from the undirected model over unordered pairs."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"edge probability must lie in [0,1], got {p}")
    if n < 0:
        raise InvalidInputError(f"n must be >= 0, got {n}")
    rng = substream(seed, n, sample_index, 1)
    us, vs = np.triu_indices(n, k=1)
    draws = rng.random(len(us))
    keep = draws < p
    edges = [(int(u), int(v)) for u, v in zip(us[keep], vs[keep])]
    return UndirectedGraph(n, edges)


@dataclass(frozen=True)
class SweepConfig:
    pattern: Digraph
    a_star: Fraction
    n_values: tuple[int, ...]
    samples: int
    seed: int
    mode: str
    cap: int = 10**6
    perm_factor: float = 1.0  # skew_pipeline draws floor(perm_factor * log2 n) permutations

    def __post_init__(self):
        if self.a_star <= 0:
            raise InvalidInputError(f"a* must be positive, got {self.a_star}")
        if list(self.n_values) != sorted(self.n_values) or not self.n_values:
            raise InvalidInputError("n_values must be a non-empty ascending list")
        if self.samples < 1:
            raise InvalidInputError(f"samples must be >= 1, got {self.samples}")
        if self.mode not in SWEEP_MODES:
            raise InvalidInputError(f"mode must be one of {SWEEP_MODES}, got {self.mode!r}")

    def edge_probability(self, n: int) -> float:
        return float(n) ** (-1.0 / float(self.a_star))


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: float
    samples: int
    frac_gh_dag: Optional[float] = None
    mean_copies: Optional[float] = None
    tau_greedy_mean: Optional[float] = None
    tau_lower_mean: Optional[float] = None
    pipeline_success: Optional[float] = None
    censored: int = 0

    def to_csv_line(self) -> str:
        def cell(x) -> str:
            return "" if x is None else repr(x)

        return ",".join(
            [
                str(self.n),
                repr(self.p),
                str(self.samples),
                cell(self.frac_gh_dag),
                cell(self.mean_copies),
                cell(self.tau_greedy_mean),
                cell(self.tau_lower_mean),
                cell(self.pipeline_success),
                str(self.censored),
            ]
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "samples": self.samples,
            "frac_gh_dag": self.frac_gh_dag,
            "mean_copies": self.mean_copies,
            "tau_greedy_mean": self.tau_greedy_mean,
            "tau_lower_mean": self.tau_lower_mean,
            "pipeline_success": self.pipeline_success,
            "censored": self.censored,
        }


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    return "\n".join([CSV_COLUMNS, *(r.to_csv_line() for r in rows)]) + "\n"


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    import json

    return json.dumps([r.to_json_dict() for r in rows])


def _sweep_sample(args: tuple) -> dict:
    cfg, n, p, idx, skew = args
    g = sample_digraph(n, p, cfg.seed, idx)
    record: dict = {}
    if cfg.mode == "skew_pipeline":
        rng = substream(cfg.seed, n, idx, 3)
        x_count = max(1, math.floor(cfg.perm_factor * math.log2(n))) if n > 1 else 1
        perms = [
            Permutation._from_trusted(tuple(int(v) for v in rng.permutation(n)))
            for _ in range(x_count)
        ]
        record["censored"] = False
        try:
            record["pipeline_ok"] = skew_witness_pipeline(g, cfg.pattern, perms, skew=skew) is not None
        except InfeasibleSizeError:
            record["pipeline_ok"] = False
        return record
    cs = enumerate_copies(g, cfg.pattern, cfg.cap)
    record["censored"] = cs.truncated
    record["copies"] = len(cs)
    if cfg.mode == "dagness":
        record["gh_dag"] = is_dag(union_graph(cs))
    elif cfg.mode == "tau_stats":
        rng = substream(cfg.seed, n, idx, 2)
        seed_greedy = int(rng.integers(1 << 62))
        seed_lower = int(rng.integers(1 << 62))
        record["tau_greedy"] = tau_greedy(g, cfg.pattern, seed_greedy, copies=cs).size
        record["tau_lower"] = tau_lower_clique(g, cfg.pattern, seed_lower, copies=cs)
    return record


def threshold_sweep(cfg: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """Run the configured Monte Carlo sweep; one row per n.

    Per-sample statistics are aggregated over uncensored samples only;
    the censored column counts samples whose copy enumeration hit the
    cap.  Output is independent of `jobs`.
    """
    skew: Optional[SkewReport] = None
    if cfg.mode == "skew_pipeline":
        if is_rooted_star(cfg.pattern):
            raise InvalidInputError("skew_pipeline mode needs a pattern that is not a rooted star")
        skew = skewness_exact(cfg.pattern)
    rows = []
    for n in cfg.n_values:
        p = cfg.edge_probability(n)
        tasks = [(cfg, n, p, idx, skew) for idx in range(cfg.samples)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                records = list(pool.map(_sweep_sample, tasks))
        else:
            records = [_sweep_sample(t) for t in tasks]
        ok = [r for r in records if not r["censored"]]
        censored = cfg.samples - len(ok)

        def mean_of(key: str) -> Optional[float]:
            vals = [float(r[key]) for r in ok if key in r]
            return sum(vals) / len(vals) if vals else None

        rows.append(
            SweepRow(
                n=n,
                p=p,
                samples=cfg.samples,
                frac_gh_dag=mean_of("gh_dag"),
                mean_copies=mean_of("copies"),
                tau_greedy_mean=mean_of("tau_greedy"),
                tau_lower_mean=mean_of("tau_lower"),
                pipeline_success=mean_of("pipeline_ok"),
                censored=censored,
            )
        )
    return rows


@dataclass(frozen=True)
class CensusResult:
    """Balance statistics over G(h, 1/2) samples.

    `fraction` counts totally balanced draws over all draws; a draw with
    an isolated vertex (or no edges at all) is not totally balanced and
    is tallied in `isolated`/`edgeless` rather than resampled, matching
    the exact all-graphs enumeration used as the small-h oracle.  The
    histogram collects fractional arboricity over draws with >= 1 edge.
    """

    h: int
    samples: int
    fraction: float
    histogram: dict[Fraction, int] = field(compare=False)
    isolated: int = 0
    edgeless: int = 0

    def to_json_dict(self) -> dict:
        hist = {
            f"{v.numerator}/{v.denominator}": c
            for v, c in sorted(self.histogram.items())
        }
        return {
            "h": self.h,
            "samples": self.samples,
            "fraction": self.fraction,
            "histogram": hist,
            "isolated": self.isolated,
            "edgeless": self.edgeless,
        }


def _arboricity_value(g: UndirectedGraph) -> Fraction:
    # h <= 20 fits the enumeration oracle; the flow path covers the rest
    if g.n <= 20:
        return densest_subset_enum(g, "arboricity").value
    return fractional_arboricity(g).value


def balanced_census(h: int, samples: int, seed: int) -> CensusResult:
    """Fraction of G(h, 1/2) samples that are totally balanced, plus an a(H) histogram."""
    if h < 2:
        raise InvalidInputError(f"census needs h >= 2, got {h}")
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    balanced = 0
    isolated = 0
    edgeless = 0
    histogram: dict[Fraction, int] = {}
    for idx in range(samples):
        g = sample_undirected(h, 0.5, seed, idx)
        if g.edge_count == 0:
            edgeless += 1
            isolated += 1
            continue
        value = _arboricity_value(g)
        histogram[value] = histogram.get(value, 0) + 1
        if g.isolated_vertices():
            isolated += 1
            continue
        if is_totally_balanced(g):
            balanced += 1
    return CensusResult(
        h=h,
        samples=samples,
        fraction=balanced / samples,
        histogram=histogram,
        isolated=isolated,
        edgeless=edgeless,
    )


def figure1_graph() -> Digraph:
    """The 5-vertex counterexample dag: a 2-edge path feeding a transitive
    triangle whose source is the path's endpoint."""
    return Digraph(5, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)])


@dataclass(frozen=True)
class PropertyScan:
    two_cycles: int
    dense_four_vertex: int
    t3_sources: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "two_cycles": self.two_cycles,
            "four_vertex_five_edge": self.dense_four_vertex,
            "t3_sources": list(self.t3_sources),
        }


def prop_h_property_scan(g: Digraph) -> PropertyScan:
    """Counts behind the counterexample argument: 2-cycles, 4-vertex/5-edge
    subgraphs (edge subsets touching all four vertices), and vertices that
    are the source of some transitive triangle."""
    from itertools import combinations

    two = sum(1 for u, v in g.edges if u < v and (v, u) in g.edges)

    dense = 0
    for quad in combinations(range(g.n), 4):
        inner = sorted(g.edges_within(quad))
        if len(inner) < 5:
            continue
        for chosen in combinations(inner, 5):
            touched = {w for e in chosen for w in e}
            if len(touched) == 4:
                dense += 1

    sources = []
    for u in range(g.n):
        outs = g.out_adj[u]
        found = False
        for i in range(len(outs)):
            for j in range(i + 1, len(outs)):
                v, w = outs[i], outs[j]
                if (v, w) in g.edges or (w, v) in g.edges:
                    found = True
                    break
            if found:
                break
        if found:
            sources.append(u)
    return PropertyScan(two_cycles=two, dense_four_vertex=dense, t3_sources=tuple(sources))
