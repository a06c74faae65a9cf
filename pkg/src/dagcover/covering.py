"""H-copy enumeration and permutation covering numbers.

A permutation covers a copy when all of the copy's edges run forward.
The whole module leans on one fact: a single permutation can cover a
family of copies if and only if the union of their edge sets is acyclic
(a topological order of an acyclic union covers every member; a
directed cycle in the union defeats any single order, because each
permutation makes some cycle edge backward).  It follows that
tau(H, G) equals the minimum number of groups in a partition of the
copies into acyclic-union families, which is what the exact solver
searches for, and that tau <= 1 exactly when the union of all copies is
acyclic.  The brute-force oracle over all n! permutations in the test
suite confirms the equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .digraph import (
    Digraph,
    Edge,
    Permutation,
    forward_count,
    is_dag,
    is_rooted_star,
    shortest_directed_cycle,
    topological_order,
)
from .errors import InfeasibleSizeError, InvalidInputError, SizeLimitError
from .rng import substream
from .skewness import Partition, SkewReport, skewness_exact

DEFAULT_COPY_CAP = 10**6
MAX_PATTERN_VERTICES = 10
MAX_EXACT_COPIES = 512


@dataclass(frozen=True)
class Copy:
    """One H-copy, identified by its edge set (automorphic re-embeddings collapse)."""

    vertices: frozenset[int]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class CopySet:
    host: Digraph
    pattern: Digraph
    copies: tuple[Copy, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.copies)


@dataclass(frozen=True)
class CoverSolution:
    """Permutations plus copy -> permutation assignment; every copy fully forward."""

    permutations: tuple[Permutation, ...]
    assignment: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.permutations)

    def covers(self, copies: Sequence[Copy]) -> bool:
        if len(copies) != len(self.assignment):
            return False
        for copy, idx in zip(copies, self.assignment):
            if forward_count(copy.edges, self.permutations[idx]) != len(copy.edges):
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "tau": self.size,
            "perms": [list(p.order) for p in self.permutations],
            "assignment": list(self.assignment),
        }


@dataclass(frozen=True)
class ConsistentFamily:
    """Disjoint vertex sets appearing as blocks, one before the other, in every permutation."""

    sets: tuple[frozenset[int], ...]
    x: int

    @property
    def r(self) -> int:
        return len(self.sets)

    def to_json_dict(self) -> dict:
        return {"sets": [sorted(s) for s in self.sets]}


# --- copy enumeration ------------------------------------------------------

def _pattern_order(h: Digraph) -> list[int]:
    """Visit pattern vertices so each one hangs off the already-mapped part."""
    deg = [len(h.out_adj[v]) + len(h.in_adj[v]) for v in range(h.n)]
    order = [max(range(h.n), key=lambda v: (deg[v], -v))]
    placed = set(order)
    while len(order) < h.n:
        def rank(v: int) -> tuple[int, int, int]:
            links = sum(1 for w in h.out_adj[v] if w in placed) + sum(
                1 for w in h.in_adj[v] if w in placed
            )
            return (links, deg[v], -v)

        nxt = max((v for v in range(h.n) if v not in placed), key=rank)
        order.append(nxt)
        placed.add(nxt)
    return order


def _check_pattern(h: Digraph) -> None:
    if h.n > MAX_PATTERN_VERTICES:
        raise SizeLimitError(f"pattern enumeration is limited to {MAX_PATTERN_VERTICES} vertices")
    if not is_dag(h):
        raise InvalidInputError("pattern must be a dag")
    if h.edge_count == 0:
        raise InvalidInputError("pattern needs at least one edge")
    if h.isolated_vertices():
        raise InvalidInputError("pattern must not have isolated vertices")


def _embed(
    g: Digraph,
    h: Digraph,
    cap: Optional[int],
    allowed: Optional[Sequence[Optional[frozenset[int]]]] = None,
    first_only: bool = False,
) -> tuple[list[Copy], bool]:
    """Backtracking embedding search; copies deduplicated by edge set.

    `allowed` optionally restricts the image of each pattern vertex.
    Deterministic: candidates are tried in increasing host-vertex order.
    """
    order = _pattern_order(h)
    h_out = h.out_sets
    h_in = h.in_sets
    g_outdeg = {v: len(g.out_adj[v]) for v in range(g.n)}
    g_indeg = {v: len(g.in_adj[v]) for v in range(g.n)}
    need_out = [len(h.out_adj[v]) for v in range(h.n)]
    need_in = [len(h.in_adj[v]) for v in range(h.n)]

    mapping: dict[int, int] = {}
    used: set[int] = set()
    seen_edge_sets: set[frozenset[Edge]] = set()
    found: list[Copy] = []
    truncated = False
    h_edges = h.sorted_edges

    def candidates(w: int) -> Iterable[int]:
        sets = []
        for u in h_out[w]:
            if u in mapping:
                sets.append(g.in_sets[mapping[u]])
        for u in h_in[w]:
            if u in mapping:
                sets.append(g.out_sets[mapping[u]])
        if allowed is not None and allowed[w] is not None:
            sets.append(allowed[w])
        if not sets:
            return range(g.n)
        base = min(sets, key=len)
        rest = [s for s in sets if s is not base]
        return sorted(base.intersection(*rest)) if rest else sorted(base)

    def rec(depth: int) -> bool:
        nonlocal truncated
        if depth == h.n:
            edges = frozenset((mapping[u], mapping[v]) for u, v in h_edges)
            if edges not in seen_edge_sets:
                if cap is not None and len(found) >= cap:
                    truncated = True
                    return True
                seen_edge_sets.add(edges)
                found.append(Copy(vertices=frozenset(mapping.values()), edges=edges))
                if first_only:
                    return True
            return False
        w = order[depth]
        for cand in candidates(w):
            if cand in used:
                continue
            if g_outdeg[cand] < need_out[w] or g_indeg[cand] < need_in[w]:
                continue
            mapping[w] = cand
            used.add(cand)
            if rec(depth + 1):
                del mapping[w]
                used.discard(cand)
                return True
            del mapping[w]
            used.discard(cand)
        return False

    rec(0)
    found.sort(key=lambda c: tuple(sorted(c.edges)))
    return found, truncated


def enumerate_copies(g: Digraph, h: Digraph, cap: int = DEFAULT_COPY_CAP) -> CopySet:
    """All subgraphs of g isomorphic to h, deduplicated by edge set.

    If more than `cap` distinct copies exist the result is truncated and
    flagged, not an error.
    """
    _check_pattern(h)
    copies, truncated = _embed(g, h, cap)
    return CopySet(host=g, pattern=h, copies=tuple(copies), truncated=truncated)


def union_copy_graph(g: Digraph, h: Digraph, cap: int = DEFAULT_COPY_CAP) -> tuple[Digraph, bool]:
    """The spanning subgraph of g holding every edge lying in some h-copy.

    Returns (graph, truncated); `truncated` propagates the enumeration cap.
    """
    cs = enumerate_copies(g, h, cap)
    return union_graph(cs), cs.truncated


def union_graph(copyset: CopySet) -> Digraph:
    edges: set[Edge] = set()
    for c in copyset.copies:
        edges |= c.edges
    return Digraph._from_trusted(copyset.host.n, frozenset(edges))


@dataclass(frozen=True)
class TauOneResult:
    acyclic: bool
    order: Optional[Permutation]
    cycle: Optional[tuple[int, ...]]
    truncated: bool


def tau_le_one(g: Digraph, h: Digraph, cap: int = DEFAULT_COPY_CAP) -> TauOneResult:
    """Is one permutation enough?  True iff the union of all copies is acyclic.

    The certificate is a covering permutation (topological order of the
    union, extended over all of g) or a shortest directed cycle of it.
    """
    gh, truncated = union_copy_graph(g, h, cap)
    order = topological_order(gh)
    if order is not None:
        return TauOneResult(acyclic=True, order=order, cycle=None, truncated=truncated)
    cyc = shortest_directed_cycle(gh)
    assert cyc is not None
    return TauOneResult(acyclic=False, order=None, cycle=tuple(cyc), truncated=truncated)


# --- compatibility ---------------------------------------------------------

def _edges_acyclic(edges: Iterable[Edge]) -> bool:
    """Kahn peel over exactly the endpoints touched by `edges`."""
    out: dict[int, list[int]] = {}
    indeg: dict[int, int] = {}
    for u, v in edges:
        out.setdefault(u, []).append(v)
        indeg[v] = indeg.get(v, 0) + 1
        indeg.setdefault(u, 0)
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for w in out.get(u, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == len(indeg)


def compatible(copies: Iterable[Copy]) -> bool:
    """True iff one permutation can cover all given copies (acyclic edge union)."""
    union: set[Edge] = set()
    for c in copies:
        union |= c.edges
    return _edges_acyclic(union)


def _conflict(a: Copy, b: Copy) -> bool:
    """Pair conflict: no single permutation covers both."""
    for u, v in a.edges:
        if (v, u) in b.edges:
            return True  # 2-cycle in the union
    return not _edges_acyclic(a.edges | b.edges)


# --- dynamic acyclic union (for the greedy cover) --------------------------

class _DynamicDag:
    """Incrementally maintained topological order with all-or-nothing inserts.

    Edge insertion follows the bounded-region reordering scheme: a
    backward edge (u, v) triggers a forward search from v and a backward
    search from u inside the position window [pos(v), pos(u)]; reaching u
    forward means a cycle, otherwise the two regions swap within their
    own slots.  try_add applies a whole edge batch and rolls back
    completely when any edge would close a cycle.
    """

    def __init__(self) -> None:
        self.out: dict[int, set[int]] = {}
        self.in_: dict[int, set[int]] = {}
        self.pos: dict[int, int] = {}
        self.order: list[int] = []
        self.edges: set[Edge] = set()

    def _insert(self, u: int, v: int, pos_snap: dict[int, int], slot_snap: dict[int, int],
                start_len: int, fresh: set[int]) -> bool:
        pos = self.pos
        pu, pv = pos[u], pos[v]
        if pu < pv:
            return True
        # forward region from v (positions < pu); hitting u closes a cycle
        fwd = [v]
        seen_f = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.out.get(x, ()):
                if y == u:
                    return False
                if y not in seen_f and pos[y] < pu:
                    seen_f.add(y)
                    fwd.append(y)
                    stack.append(y)
        # backward region from u (positions > pv)
        bwd = [u]
        seen_b = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in self.in_.get(x, ()):
                if y not in seen_b and pos[y] > pv:
                    seen_b.add(y)
                    bwd.append(y)
                    stack.append(y)
        bwd.sort(key=pos.__getitem__)
        fwd.sort(key=pos.__getitem__)
        slots = sorted(pos[x] for x in bwd + fwd)
        for slot, x in zip(slots, bwd + fwd):
            if slot < start_len and slot not in slot_snap:
                slot_snap[slot] = self.order[slot]
            if x not in fresh and x not in pos_snap:
                pos_snap[x] = pos[x]
            self.order[slot] = x
            pos[x] = slot
        return True

    def try_add(self, new_edges: Iterable[Edge]) -> bool:
        pos_snap: dict[int, int] = {}
        slot_snap: dict[int, int] = {}
        start_len = len(self.order)
        fresh: set[int] = set()
        added: list[Edge] = []
        ok = True
        for u, v in sorted(new_edges):
            if (u, v) in self.edges:
                continue
            for w in (u, v):
                if w not in self.pos:
                    self.pos[w] = len(self.order)
                    self.order.append(w)
                    fresh.add(w)
            if not self._insert(u, v, pos_snap, slot_snap, start_len, fresh):
                ok = False
                break
            self.out.setdefault(u, set()).add(v)
            self.in_.setdefault(v, set()).add(u)
            self.edges.add((u, v))
            added.append((u, v))
        if ok:
            return True
        for u, v in added:
            self.out[u].discard(v)
            self.in_[v].discard(u)
            self.edges.discard((u, v))
        for slot, w in slot_snap.items():
            self.order[slot] = w
        for w, p in pos_snap.items():
            self.pos[w] = p
        for w in fresh:
            del self.pos[w]
        del self.order[start_len:]
        return False

    def topological_vertices(self) -> list[int]:
        return list(self.order)


def _extend_to_permutation(n: int, prefix: Sequence[int]) -> Permutation:
    """Extension rule: the group's order first, remaining vertices by index."""
    seen = set(prefix)
    order = list(prefix) + [v for v in range(n) if v not in seen]
    return Permutation._from_trusted(tuple(order))


# --- greedy and lower bounds ------------------------------------------------

def tau_greedy(
    g: Digraph,
    h: Digraph,
    seed: int,
    cap: int = DEFAULT_COPY_CAP,
    copies: Optional[CopySet] = None,
) -> CoverSolution:
    """First-fit cover: scan copies in seeded random order, first group whose
    union stays acyclic takes the copy, otherwise a new group opens."""
    cs = copies if copies is not None else enumerate_copies(g, h, cap)
    count = len(cs.copies)
    scan = substream(seed).permutation(count) if count else []
    groups: list[_DynamicDag] = []
    assignment = [0] * count
    for i in scan:
        copy = cs.copies[int(i)]
        for gi, dd in enumerate(groups):
            if dd.try_add(copy.edges):
                assignment[int(i)] = gi
                break
        else:
            dd = _DynamicDag()
            if not dd.try_add(copy.edges):
                raise AssertionError("a single copy is always acyclic")
            groups.append(dd)
            assignment[int(i)] = len(groups) - 1
    perms = tuple(
        _extend_to_permutation(cs.host.n, dd.topological_vertices()) for dd in groups
    )
    solution = CoverSolution(permutations=perms, assignment=tuple(assignment))
    if not solution.covers(cs.copies):
        raise AssertionError("greedy cover failed verification")
    return solution


def tau_lower_clique(
    g: Digraph,
    h: Digraph,
    seed: int,
    cap: int = DEFAULT_COPY_CAP,
    copies: Optional[CopySet] = None,
) -> int:
    """Greedy clique in the conflict graph: pairwise-conflicting copies
    all need distinct permutations, so the clique size bounds tau from below.

    The scan order is the seeded shuffle, but the growth starts from the
    first shuffled copy containing an edge whose reversal also lies in
    some copy: such a copy is guaranteed a conflict partner, whereas a
    uniformly random start is usually conflict-free in sparse hosts and
    would freeze the clique at size 1.
    """
    cs = copies if copies is not None else enumerate_copies(g, h, cap)
    if not cs.copies:
        return 0
    order = [int(i) for i in substream(seed).permutation(len(cs.copies))]
    copy_edges: set[Edge] = set()
    for c in cs.copies:
        copy_edges |= c.edges
    start = order[0]
    for i in order:
        if any((v, u) in copy_edges for u, v in cs.copies[i].edges):
            start = i
            break
    clique: list[Copy] = [cs.copies[start]]
    for i in order:
        if i == start:
            continue
        cand = cs.copies[i]
        if all(_conflict(cand, member) for member in clique):
            clique.append(cand)
    return len(clique)


# --- exact tau --------------------------------------------------------------

@dataclass(frozen=True)
class TauExactResult:
    lower: int
    upper: int
    exact: bool
    solution: Optional[CoverSolution]
    nodes: int

    @property
    def value(self) -> int:
        if not self.exact:
            raise InvalidInputError("budget exceeded; only bounds are available")
        return self.upper


class _Budget(Exception):
    pass


def tau_exact(
    g: Digraph,
    h: Digraph,
    budget: int = 2_000_000,
    cap: int = DEFAULT_COPY_CAP,
    copies: Optional[CopySet] = None,
) -> TauExactResult:
    """Minimum number of acyclic-union groups partitioning the copies.

    Branch and bound over copy -> group assignments.  A greedy conflict
    clique is pre-assigned to distinct groups (sound: its members are
    pairwise incompatible and group labels are interchangeable), the
    next copy branched on is always one with the fewest compatible open
    groups, and a copy may open at most one new group.  If the node
    budget runs out the result degrades to (lower, upper) bounds.
    """
    cs = copies if copies is not None else enumerate_copies(g, h, cap)
    items = cs.copies
    count = len(items)
    if count == 0:
        empty = CoverSolution(permutations=(), assignment=())
        return TauExactResult(lower=0, upper=0, exact=True, solution=empty, nodes=0)
    if count > MAX_EXACT_COPIES:
        raise SizeLimitError(
            f"exact tau needs a pairwise conflict table; limited to {MAX_EXACT_COPIES} copies, got {count}"
        )

    conflict_mask = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            if _conflict(items[i], items[j]):
                conflict_mask[i] |= 1 << j
                conflict_mask[j] |= 1 << i

    # deterministic greedy clique, best over all starting copies
    best_clique: list[int] = []
    for start in range(count):
        clique = [start]
        mask = conflict_mask[start]
        while mask:
            nxt = (mask & -mask).bit_length() - 1
            clique.append(nxt)
            mask &= conflict_mask[nxt]
        if len(clique) > len(best_clique):
            best_clique = clique
    lower = len(best_clique)

    greedy = tau_greedy(g, h, seed=0, copies=cs)
    best_size = greedy.size
    best_assign = list(greedy.assignment)
    if lower == best_size:
        return TauExactResult(lower=lower, upper=best_size, exact=True, solution=greedy, nodes=0)

    anchor = sorted(best_clique)
    rest = [i for i in range(count) if i not in set(anchor)]

    assignment = [-1] * count
    group_edges: list[dict[Edge, int]] = []
    group_mask: list[int] = []

    def open_group(first: int) -> None:
        edges: dict[Edge, int] = {}
        for e in items[first].edges:
            edges[e] = 1
        group_edges.append(edges)
        group_mask.append(1 << first)
        assignment[first] = len(group_edges) - 1

    for a in anchor:
        open_group(a)

    def can_join(i: int, gi: int) -> bool:
        if conflict_mask[i] & group_mask[gi]:
            return False
        union = set(group_edges[gi])
        union.update(items[i].edges)
        return _edges_acyclic(union)

    def join(i: int, gi: int) -> None:
        for e in items[i].edges:
            group_edges[gi][e] = group_edges[gi].get(e, 0) + 1
        group_mask[gi] |= 1 << i
        assignment[i] = gi

    def leave(i: int, gi: int) -> None:
        for e in items[i].edges:
            cnt = group_edges[gi][e] - 1
            if cnt:
                group_edges[gi][e] = cnt
            else:
                del group_edges[gi][e]
        group_mask[gi] &= ~(1 << i)
        assignment[i] = -1

    nodes = 0

    def search(remaining: list[int]) -> None:
        nonlocal nodes, best_size, best_assign
        nodes += 1
        if nodes > budget:
            raise _Budget
        used = len(group_edges)
        if used >= best_size:
            return
        if not remaining:
            best_size = used
            best_assign = list(assignment)
            return
        # most constrained copy first (pairwise screen only, for speed)
        pick_at = 0
        pick_options = count + 2
        for at, i in enumerate(remaining):
            opts = sum(1 for gi in range(used) if not conflict_mask[i] & group_mask[gi])
            if opts < pick_options:
                pick_options = opts
                pick_at = at
                if opts == 0:
                    break
        i = remaining[pick_at]
        others = remaining[:pick_at] + remaining[pick_at + 1:]
        for gi in range(used):
            if can_join(i, gi):
                join(i, gi)
                search(others)
                leave(i, gi)
        if used + 1 < best_size:
            open_group(i)
            search(others)
            group_edges.pop()
            group_mask.pop()
            assignment[i] = -1

    exact = True
    try:
        search(rest)
    except _Budget:
        exact = False

    solution: Optional[CoverSolution] = None
    if exact or best_assign is not None:
        n_groups = max(best_assign) + 1 if best_assign else 0
        unions: list[set[Edge]] = [set() for _ in range(n_groups)]
        for idx, gi in enumerate(best_assign):
            unions[gi] |= items[idx].edges
        perms = []
        for union in unions:
            order = topological_order(Digraph._from_trusted(g.n, frozenset(union)))
            assert order is not None
            perms.append(order)
        solution = CoverSolution(permutations=tuple(perms), assignment=tuple(best_assign))
        if not solution.covers(items):
            raise AssertionError("exact cover failed verification")
    return TauExactResult(
        lower=lower if not exact else best_size,
        upper=best_size,
        exact=exact,
        solution=solution,
        nodes=nodes,
    )


# --- consistent families ----------------------------------------------------

def _restrict(perm: Permutation, ground: set[int]) -> list[int]:
    return [v for v in perm.order if v in ground]


def _pair_split(ground: set[int], perms: Sequence[Permutation]) -> tuple[set[int], set[int]]:
    """Two consistent sets of size floor(|ground| / 2**len(perms)).

    First and last halves of the first permutation, then refined through
    each further permutation keeping the larger consistent halves.
    """
    sigma = _restrict(perms[0], ground)
    size = len(sigma) // 2
    a = set(sigma[:size])
    b = set(sigma[len(sigma) - size:])
    for perm in perms[1:]:
        sigma = _restrict(perm, a | b)
        half = len(sigma) // 2
        c, d = sigma[:half], sigma[half:]
        a_in_c = [v for v in c if v in a]
        a_in_d = [v for v in d if v in a]
        nsize = size // 2
        if len(a_in_c) >= len(a_in_d):
            new_a = a_in_c[:nsize]
            new_b = [v for v in d if v in b][:nsize]
        else:
            new_a = a_in_d[:nsize]
            new_b = [v for v in c if v in b][:nsize]
        a, b, size = set(new_a), set(new_b), nsize
    return a, b


def consistent_sets(x_perms: Sequence[Permutation], t: int) -> ConsistentFamily:
    """r = 2**t disjoint sets, each a block of every permutation, sizes >= floor(n / r**x).

    Repeated halving: the ground set splits in two through all x
    permutations, then each part splits again, t levels deep.  Floors
    replace the exact divisibility of the idealized statement, which
    only costs the guaranteed size.  The result is verifier-checked.
    """
    if t < 1:
        raise InvalidInputError(f"t must be >= 1, got {t}")
    if not x_perms:
        raise InvalidInputError("need at least one permutation")
    n = len(x_perms[0])
    if any(len(p) != n for p in x_perms):
        raise InvalidInputError("permutations must share a length")
    r = 1 << t
    x = len(x_perms)
    if n < r**x:
        raise InfeasibleSizeError(f"need n >= r**x = {r**x}, got n = {n}")

    parts: list[set[int]] = [set(range(n))]
    for _ in range(t):
        nxt: list[set[int]] = []
        for part in parts:
            a, b = _pair_split(part, x_perms)
            nxt.extend((a, b))
        parts = nxt
    family = ConsistentFamily(sets=tuple(frozenset(p) for p in parts), x=x)
    if not verify_consistent(x_perms, family.sets):
        raise AssertionError("constructed family failed the consistency verifier")
    if any(len(s) < n // r**x for s in family.sets):
        raise AssertionError("constructed family violates the size guarantee")
    return family


def verify_consistent(
    x_perms: Sequence[Permutation], sets: "Sequence[Iterable[int]] | ConsistentFamily"
) -> bool:
    """True iff in every permutation, any two sets appear one entirely before the other."""
    if isinstance(sets, ConsistentFamily):
        sets = sets.sets
    families = [frozenset(s) for s in sets]
    for perm in x_perms:
        pos = perm.position
        spans = []
        for s in families:
            if not s:
                continue
            ps = [pos[v] for v in s]
            spans.append((min(ps), max(ps)))
        spans.sort()
        for (lo1, hi1), (lo2, _) in zip(spans, spans[1:]):
            if lo2 <= hi1:
                return False
    return True


# --- the skew-witness pipeline ----------------------------------------------

def find_consistent_copy(
    g: Digraph,
    h: Digraph,
    coloring: Partition,
    sets: Sequence[Iterable[int]],
) -> Optional[Copy]:
    """First copy whose embedding maps color class i into sets[i], or None."""
    _check_pattern(h)
    fams = [frozenset(s) for s in sets]
    if len(coloring.blocks) > len(fams):
        raise InvalidInputError("coloring has more blocks than there are target sets")
    union_check: set[int] = set()
    for s in fams:
        if union_check & s:
            raise InvalidInputError("target sets must be disjoint")
        union_check |= s
    if coloring.n != h.n:
        raise InvalidInputError("coloring must partition the pattern's vertices")
    allowed: list[Optional[frozenset[int]]] = [None] * h.n
    for i, block in enumerate(coloring.blocks):
        for v in block:
            allowed[v] = fams[i]
    copies, _ = _embed(g, h, cap=None, allowed=allowed, first_only=True)
    return copies[0] if copies else None


def skew_witness_pipeline(
    g: Digraph,
    h: Digraph,
    x_perms: Sequence[Permutation],
    skew: Optional[SkewReport] = None,
    cap: int = DEFAULT_COPY_CAP,
) -> Optional[tuple[Copy, tuple[int, ...]]]:
    """A copy of h in g that no permutation of x_perms covers beyond s(h) edges.

    Witness coloring of the skewness, color count padded to a power of
    two, consistent sets for the given permutations, then a copy
    embedded color-class-by-set.  Inside the returned copy every color
    class is consecutive under every permutation, so the skewness bound
    applies per permutation; the coverage profile lists the per-
    permutation forward counts.
    """
    if is_rooted_star(h):
        raise InvalidInputError("pipeline requires a pattern that is not a rooted star")
    report = skew if skew is not None else skewness_exact(h)
    if not x_perms:
        cs = enumerate_copies(g, h, cap)
        if not cs.copies:
            return None
        return cs.copies[0], ()
    if any(len(p) != g.n for p in x_perms):
        raise InvalidInputError("permutations must cover the host's vertex set")
    k = len(report.witness_coloring.blocks)
    t = max(1, (k - 1).bit_length())
    family = consistent_sets(x_perms, t)
    copy = find_consistent_copy(g, h, report.witness_coloring, family.sets[:k])
    if copy is None:
        return None
    profile = tuple(forward_count(copy.edges, p) for p in x_perms)
    if any(cnt > report.value for cnt in profile):
        raise AssertionError("pipeline postcondition violated: coverage exceeds the skewness")
    return copy, profile


# --- cycle configurations ----------------------------------------------------

def extract_cycle_configuration(
    g: Digraph, h: Digraph, cap: int = DEFAULT_COPY_CAP
) -> Optional[tuple[tuple[int, ...], list[Copy]]]:
    """A shortest cycle of the copy-union graph and a minimal copy set covering it.

    Greedy removal makes the family minimal: dropping any member leaves
    some cycle edge uncovered, which also caps the family size by the
    cycle length.  None when the union graph is acyclic.
    """
    cs = enumerate_copies(g, h, cap)
    gh = union_graph(cs)
    cyc = shortest_directed_cycle(gh)
    if cyc is None:
        return None
    k = len(cyc)
    cycle_edges = frozenset((cyc[i], cyc[(i + 1) % k]) for i in range(k))
    chosen = [c for c in cs.copies if c.edges & cycle_edges]
    for c in list(chosen):
        without = [d for d in chosen if d is not c]
        covered: set[Edge] = set()
        for d in without:
            covered |= d.edges & cycle_edges
        if covered == cycle_edges:
            chosen = without
    assert len(chosen) <= k
    return tuple(cyc), chosen
