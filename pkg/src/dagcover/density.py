"""Exact maximal density and fractional arboricity.

Two independent routes compute the same quantities:

* ``densest_subset_enum`` enumerates all vertex subsets with bitmask
  DP (the oracle, n <= 20);
* ``fractional_arboricity`` / ``maximal_density`` run a parametric
  min-cut over the finite grid of candidate rationals p/q, entirely in
  exact arithmetic.

Both accept directed and undirected graphs; a directed 2-cycle counts
as two edges.  Isolated vertices never appear in a witness (they only
inflate the denominator), so the search runs over non-isolated
vertices; the whole-graph balance ratio m/(n-1) uses the declared n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .digraph import Digraph
from .errors import InvalidInputError, SizeLimitError, UndefinedParameterError


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges stored as (u, v) with u < v."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInputError(f"vertex count must be >= 0, got {n}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInputError(f"self-loop ({u},{v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def isolated_vertices(self) -> tuple[int, ...]:
        touched = {w for e in self.edges for w in e}
        return tuple(v for v in range(self.n) if v not in touched)


Graph = Union[Digraph, UndirectedGraph]


@dataclass(frozen=True)
class DensityReport:
    """Optimal ratio, a subset attaining it, and the whole-graph attainment flag."""

    value: Fraction
    witness: tuple[int, ...]
    totally_balanced: bool

    def to_json_dict(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "witness": list(self.witness),
            "totally_balanced": self.totally_balanced,
        }


def _tokens(g: Graph) -> list[tuple[int, int]]:
    """One token per counted edge, sorted for determinism."""
    if isinstance(g, (Digraph, UndirectedGraph)):
        return sorted(g.edges)
    raise InvalidInputError(f"expected Digraph or UndirectedGraph, got {type(g).__name__}")


def _check_input(g: Graph) -> list[tuple[int, int]]:
    toks = _tokens(g)
    if g.n < 2:
        raise InvalidInputError("density parameters need at least 2 vertices")
    if not toks:
        raise UndefinedParameterError("density parameters are undefined for edgeless graphs")
    return toks


def _active_vertices(tokens: list[tuple[int, int]]) -> list[int]:
    return sorted({w for e in tokens for w in e})


def _count_within(tokens: list[tuple[int, int]], subset: set[int]) -> int:
    return sum(1 for u, v in tokens if u in subset and v in subset)


# --- subset enumeration oracle -------------------------------------------

def densest_subset_enum(g: Graph, kind: str = "arboricity") -> DensityReport:
    """Brute-force maximum of e(S)/(|S|-1) (arboricity) or e(S)/|S| (density).

    Exhaustive over all subsets of the non-isolated vertices via bitmask
    DP; induced subgraphs suffice because dropping edges never raises the
    ratio.  Limited to n <= 20 declared vertices.
    """
    if kind not in ("arboricity", "density"):
        raise InvalidInputError(f"kind must be 'arboricity' or 'density', got {kind!r}")
    if g.n > 20:
        raise SizeLimitError(f"subset enumeration is limited to n <= 20, got {g.n}")
    tokens = _check_input(g)
    active = _active_vertices(tokens)
    k = len(active)
    index = {v: i for i, v in enumerate(active)}

    # multiplicity masks: m1 = neighbours with >= 1 token, m2 = with 2 tokens
    counts: dict[tuple[int, int], int] = {}
    for u, v in tokens:
        a, b = index[u], index[v]
        key = (min(a, b), max(a, b))
        counts[key] = counts.get(key, 0) + 1
    m1 = [0] * k
    m2 = [0] * k
    for (a, b), c in counts.items():
        m1[a] |= 1 << b
        m1[b] |= 1 << a
        if c == 2:
            m2[a] |= 1 << b
            m2[b] |= 1 << a

    size = 1 << k
    inside = [0] * size
    min_pop = 2 if kind == "arboricity" else 1
    best_num = -1
    best_den = 1
    best_mask = 0
    for s in range(1, size):
        low = s & -s
        i = low.bit_length() - 1
        rest = s ^ low
        e = inside[rest] + (m1[i] & rest).bit_count() + (m2[i] & rest).bit_count()
        inside[s] = e
        pop = s.bit_count()
        if pop < min_pop:
            continue
        den = pop - 1 if kind == "arboricity" else pop
        if e * best_den > best_num * den:
            best_num, best_den, best_mask = e, den, s

    value = Fraction(best_num, best_den)
    witness = tuple(active[i] for i in range(k) if best_mask >> i & 1)
    whole = Fraction(len(tokens), g.n - 1 if kind == "arboricity" else g.n)
    return DensityReport(value=value, witness=witness, totally_balanced=value == whole)


# --- parametric min-cut route --------------------------------------------

class _Dinic:
    """Integer max-flow; arcs stored in pairs so arc^1 is the reverse arc."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = [s]
        for u in queue:
            for a in self.adj[u]:
                v = self.to[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        to, cap, adj = self.to, self.cap, self.adj
        while True:
            level = self._levels(s, t)
            if level[t] < 0:
                return flow
            it = [0] * self.n
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    aug = min(cap[a] for a in path)
                    first_sat = len(path)
                    for i, a in enumerate(path):
                        cap[a] -= aug
                        cap[a ^ 1] += aug
                        if cap[a] == 0 and i < first_sat:
                            first_sat = i
                    flow += aug
                    # retreat to the tail of the first saturated arc
                    del path[first_sat:]
                    u = to[path[-1]] if path else s
                    continue
                advanced = False
                while it[u] < len(adj[u]):
                    a = adj[u][it[u]]
                    v = to[a]
                    if cap[a] > 0 and level[v] == level[u] + 1:
                        path.append(a)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1
                    a = path.pop()
                    u = to[a ^ 1]
                    it[u] += 1

    def source_side_maximal(self, t: int) -> set[int]:
        """After max_flow: nodes that cannot reach t in the residual graph."""
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            for a in self.adj[u]:
                if self.cap[a] > 0:
                    rev[self.to[a]].append(u)
        reach_t = [False] * self.n
        reach_t[t] = True
        queue = [t]
        for v in queue:
            for u in rev[v]:
                if not reach_t[u]:
                    reach_t[u] = True
                    queue.append(u)
        return {v for v in range(self.n) if not reach_t[v]}


def _build_network(
    tokens: list[tuple[int, int]],
    active: list[int],
    p: int,
    q: int,
    root: int | None,
) -> tuple[_Dinic, int]:
    """Source -> tokens (cap q) -> endpoints (inf) -> sink (cap p; 0 at root)."""
    index = {v: i for i, v in enumerate(active)}
    t_count = len(tokens)
    n_nodes = 2 + t_count + len(active)
    sink = n_nodes - 1
    net = _Dinic(n_nodes)
    inf = q * t_count + 1
    for i, (u, v) in enumerate(tokens):
        net.add(0, 1 + i, q)
        net.add(1 + i, 1 + t_count + index[u], inf)
        net.add(1 + i, 1 + t_count + index[v], inf)
    for v in active:
        net.add(1 + t_count + index[v], sink, 0 if v == root else p)
    return net, sink


def _exceeds(
    tokens: list[tuple[int, int]],
    active: list[int],
    lam: Fraction,
    kind: str,
) -> bool:
    """Strict test: does some subset beat lam?

    density:    exists S != {} with e(S) > lam*|S|     (single flow)
    arboricity: exists S, |S| >= 2, e(S) > lam*(|S|-1) (one flow per root;
                the root's sink capacity is zeroed so that the -lam shift
                applies exactly once, which rules the empty set out of the
                min-cut comparison)
    """
    p, q = lam.numerator, lam.denominator
    target = q * len(tokens)
    if kind == "density":
        net, sink = _build_network(tokens, active, p, q, None)
        return net.max_flow(0, sink) < target
    for root in active:
        net, sink = _build_network(tokens, active, p, q, root)
        if net.max_flow(0, sink) < target:
            return True
    return False


def _witness_at(
    tokens: list[tuple[int, int]],
    active: list[int],
    value: Fraction,
    kind: str,
) -> tuple[int, ...]:
    """Recover an optimal subset from a maximal min-cut at lam = value."""
    p, q = value.numerator, value.denominator
    t_count = len(tokens)
    roots: list[int | None] = list(active) if kind == "arboricity" else [None]
    for root in roots:
        net, sink = _build_network(tokens, active, p, q, root)
        net.max_flow(0, sink)
        side = net.source_side_maximal(sink)
        subset = {active[i - 1 - t_count] for i in side if i > t_count and i != sink}
        if kind == "arboricity" and len(subset) < 2:
            continue
        if not subset:
            continue
        e = _count_within(tokens, subset)
        den = len(subset) - 1 if kind == "arboricity" else len(subset)
        if Fraction(e, den) == value:
            return tuple(sorted(subset))
    raise AssertionError("no witness found at the optimal ratio; parametric search is inconsistent")


def _candidate_values(m: int, k: int, kind: str) -> list[Fraction]:
    max_den = k - 1 if kind == "arboricity" else k
    cands = {Fraction(p, q) for q in range(1, max_den + 1) for p in range(0, m + 1)}
    return sorted(cands)


def _parametric_max(g: Graph, kind: str) -> DensityReport:
    tokens = _check_input(g)
    active = _active_vertices(tokens)
    cands = _candidate_values(len(tokens), len(active), kind)
    lo, hi = 0, len(cands) - 1
    # test(lam) true  <=>  optimum > lam; the largest candidate always fails it
    while lo < hi:
        mid = (lo + hi) // 2
        if _exceeds(tokens, active, cands[mid], kind):
            lo = mid + 1
        else:
            hi = mid
    value = cands[lo]
    witness = _witness_at(tokens, active, value, kind)
    # self-consistency: re-evaluating the ratio on the witness must reproduce it
    e = _count_within(tokens, set(witness))
    den = len(witness) - 1 if kind == "arboricity" else len(witness)
    if Fraction(e, den) != value:
        raise AssertionError("witness does not reproduce the reported ratio")
    whole = Fraction(len(tokens), g.n - 1 if kind == "arboricity" else g.n)
    return DensityReport(value=value, witness=witness, totally_balanced=value == whole)


def fractional_arboricity(g: Graph) -> DensityReport:
    """max over subsets S, |S| >= 2, of e(S)/(|S|-1), with an attaining witness."""
    return _parametric_max(g, "arboricity")


def maximal_density(g: Graph) -> DensityReport:
    """max over nonempty subsets S of e(S)/|S|, with an attaining witness."""
    return _parametric_max(g, "density")


def is_totally_balanced(g: Graph) -> bool:
    """True iff the fractional arboricity is attained by the whole graph.

    Decided with a single strict min-cut test at m/(n-1): the graph is
    totally balanced exactly when no subset beats that ratio.  Inputs
    with isolated vertices are rejected (the whole-graph ratio would be
    ambiguous for them).
    """
    tokens = _check_input(g)
    if g.isolated_vertices():
        raise InvalidInputError("balance test requires a graph without isolated vertices")
    active = _active_vertices(tokens)
    return not _exceeds(tokens, active, Fraction(len(tokens), g.n - 1), "arboricity")
