import random

import pytest

from dagcover.covering import (
    Copy,
    _DynamicDag,
    compatible,
    consistent_sets,
    enumerate_copies,
    extract_cycle_configuration,
    find_consistent_copy,
    skew_witness_pipeline,
    tau_exact,
    tau_greedy,
    tau_le_one,
    tau_lower_clique,
    union_copy_graph,
    verify_consistent,
)
from dagcover.digraph import (
    Digraph,
    Permutation,
    forward_count,
    is_dag,
    make_directed_path,
    make_rooted_star,
    make_transitive_tournament,
    reverse,
)
from dagcover.errors import InfeasibleSizeError, InvalidInputError, SizeLimitError
from dagcover.rng import substream
from dagcover.skewness import Partition

from oracles import complete_digraph, perm_cover_minimum, random_digraph

T3 = make_transitive_tournament(3)
P3 = make_directed_path(2)

TWO_TRIANGLES = Digraph(4, [(0, 1), (1, 2), (0, 2), (1, 0), (0, 3), (1, 3)])


def test_enumerate_examples():
    assert len(enumerate_copies(make_transitive_tournament(4), T3)) == 4
    assert len(enumerate_copies(Digraph(3, [(0, 1), (1, 2), (2, 0)]), T3)) == 0
    assert len(enumerate_copies(T3, T3)) == 1
    assert len(enumerate_copies(Digraph(2, [(0, 1)]), P3)) == 0


def test_enumerate_copy_structure():
    cs = enumerate_copies(complete_digraph(4), T3)
    assert len(cs) == 24  # 4 triples x 6 orderings
    for c in cs.copies:
        assert c.edges <= cs.host.edges
        assert len(c.edges) == 3 and len(c.vertices) == 3
    assert len({c.edges for c in cs.copies}) == len(cs)


def test_enumerate_cap_truncates():
    cs = enumerate_copies(complete_digraph(4), T3, cap=5)
    assert cs.truncated and len(cs) == 5
    full = enumerate_copies(complete_digraph(4), T3)
    assert not full.truncated


def test_enumerate_rejects_bad_patterns():
    with pytest.raises(InvalidInputError):
        enumerate_copies(T3, Digraph(2, [(0, 1), (1, 0)]))  # not a dag
    with pytest.raises(InvalidInputError):
        enumerate_copies(T3, Digraph(3, [(0, 1)]))  # isolated vertex
    with pytest.raises(SizeLimitError):
        enumerate_copies(T3, make_directed_path(11))


def test_union_copy_graph():
    t4 = make_transitive_tournament(4)
    gh, truncated = union_copy_graph(t4, T3)
    assert gh.edges == t4.edges and not truncated
    gh2, _ = union_copy_graph(Digraph(3, [(0, 1)]), P3)
    assert gh2.edge_count == 0


def test_tau_le_one():
    res = tau_le_one(make_transitive_tournament(5), T3)
    assert res.acyclic and res.order is not None
    # no copies at all: trivially one permutation (tau = 0)
    res0 = tau_le_one(Digraph(4, [(0, 1)]), T3)
    assert res0.acyclic

    res2 = tau_le_one(TWO_TRIANGLES, T3)
    assert not res2.acyclic
    assert len(res2.cycle) == 2
    u, v = res2.cycle
    gh, _ = union_copy_graph(TWO_TRIANGLES, T3)
    assert (u, v) in gh.edges and (v, u) in gh.edges


def test_compatible():
    single = enumerate_copies(T3, T3).copies
    assert compatible(single)
    a = Copy(frozenset([0, 1, 2]), frozenset([(0, 1), (1, 2)]))
    b = Copy(frozenset([2, 3, 4]), frozenset([(2, 3), (3, 4)]))
    c = Copy(frozenset([4, 5, 0]), frozenset([(4, 5), (5, 0)]))
    assert compatible([a, b]) and compatible([b, c]) and compatible([a, c])
    assert not compatible([a, b, c])  # union is a directed 6-cycle
    d = Copy(frozenset([0, 1]), frozenset([(1, 0)]))
    assert not compatible([a, d])


def test_compatible_monotone_under_superset():
    rng = random.Random(3)
    for _ in range(40):
        g = random_digraph(rng, 5, 0.7)
        copies = enumerate_copies(g, P3).copies
        if len(copies) < 3:
            continue
        chosen = rng.sample(copies, 3)
        if not compatible(chosen[:2]):
            assert not compatible(chosen)


def test_dynamic_dag_matches_batch_recompute():
    rng = random.Random(21)
    for _ in range(60):
        dd = _DynamicDag()
        accepted: set = set()
        for _ in range(30):
            batch = {
                (rng.randrange(8), rng.randrange(8)) for _ in range(rng.randint(1, 3))
            }
            batch = {(u, v) for u, v in batch if u != v}
            if not batch:
                continue
            would_be = accepted | batch
            expected = is_dag(Digraph(8, would_be))
            got = dd.try_add(batch)
            assert got == expected
            if got:
                accepted = would_be
            # incremental order must stay a topological order of accepted edges
            pos = {v: i for i, v in enumerate(dd.order)}
            assert all(pos[u] < pos[v] for u, v in accepted)
            assert dd.edges == accepted


def test_tau_greedy():
    sol = tau_greedy(complete_digraph(3), T3, seed=1)
    assert sol.size >= 2
    assert sol.covers(enumerate_copies(complete_digraph(3), T3).copies)

    t5 = make_transitive_tournament(5)
    sol1 = tau_greedy(t5, T3, seed=9)
    assert sol1.size == 1

    empty = tau_greedy(Digraph(3, [(0, 1)]), T3, seed=0)
    assert empty.size == 0 and empty.assignment == ()


def test_tau_lower_clique_edges():
    # all copies mutually compatible: the clique cannot grow past one copy
    assert tau_lower_clique(make_transitive_tournament(5), T3, seed=2) == 1
    assert tau_lower_clique(complete_digraph(3), T3, seed=2) >= 2
    assert tau_lower_clique(Digraph(3, [(0, 1)]), T3, seed=2) == 0


def test_tau_greedy_deterministic():
    g = random_digraph(random.Random(5), 6, 0.6)
    a = tau_greedy(g, T3, seed=4)
    b = tau_greedy(g, T3, seed=4)
    assert a == b


def test_tau_exact_examples():
    res = tau_exact(complete_digraph(3), T3)
    assert res.exact and res.value == 6
    assert res.solution.covers(enumerate_copies(complete_digraph(3), T3).copies)

    assert tau_exact(make_transitive_tournament(6), T3).value == 1
    assert tau_exact(complete_digraph(4), T3).value == perm_cover_minimum(
        complete_digraph(4), T3
    )


def test_tau_exact_budget_degrades_to_bounds():
    # D5/T3 needs actual search nodes (greedy overshoots the clique bound),
    # so a unit budget is guaranteed to leave only bounds
    res = tau_exact(complete_digraph(5), T3, budget=1)
    assert not res.exact
    assert res.lower <= res.upper
    with pytest.raises(InvalidInputError):
        _ = res.value
    assert res.solution is not None and res.solution.size == res.upper
    # a generous budget gets the exact answer back, inside the old bounds
    full = tau_exact(complete_digraph(5), T3, budget=5_000_000)
    assert full.exact
    assert res.lower <= full.value <= res.upper


def test_tau_oracle_and_sandwich_random():
    rng = random.Random(42)
    for _ in range(40):
        n = rng.choice([3, 4])
        g = random_digraph(rng, n, rng.choice([0.4, 0.8]))
        for pattern in (T3, P3):
            cs = enumerate_copies(g, pattern)
            exact = tau_exact(g, pattern, copies=cs)
            assert exact.exact
            oracle = perm_cover_minimum(g, pattern)
            assert exact.value == oracle, (g, pattern)
            lower = tau_lower_clique(g, pattern, seed=7, copies=cs)
            upper = tau_greedy(g, pattern, seed=7, copies=cs).size
            assert lower <= exact.value <= upper


def test_tau_sandwich_n_up_to_6():
    rng = random.Random(17)
    for trial in range(40):
        n = rng.choice([5, 6])
        g = random_digraph(rng, n, rng.choice([0.3, 0.6]))
        for pattern in (T3, P3):
            cs = enumerate_copies(g, pattern)
            res = tau_exact(g, pattern, copies=cs)
            if not res.exact:
                continue
            lower = tau_lower_clique(g, pattern, seed=trial, copies=cs)
            upper = tau_greedy(g, pattern, seed=trial, copies=cs).size
            assert lower <= res.value <= upper


def test_consistent_sets_identity():
    fam = consistent_sets([Permutation(range(8))], 1)
    assert [sorted(s) for s in fam.sets] == [[0, 1, 2, 3], [4, 5, 6, 7]]


def test_consistent_sets_id_and_reverse():
    perms = [Permutation(range(8)), reverse(Permutation(range(8)))]
    fam = consistent_sets(perms, 1)
    assert all(len(s) == 2 for s in fam.sets)
    assert verify_consistent(perms, fam.sets)


def test_consistent_sets_properties():
    rng = substream(123)
    for trial in range(30):
        n = 64
        x = 1 + trial % 2
        t = 1 + trial % 2
        perms = [
            Permutation([int(v) for v in rng.permutation(n)]) for _ in range(x)
        ]
        fam = consistent_sets(perms, t)
        r = 2**t
        assert fam.r == r
        assert verify_consistent(perms, fam.sets)
        assert all(len(s) >= n // r**x for s in fam.sets)
        flat = [v for s in fam.sets for v in s]
        assert len(flat) == len(set(flat))


def test_consistent_sets_infeasible():
    with pytest.raises(InfeasibleSizeError):
        consistent_sets([Permutation(range(4)), Permutation(range(4))], 2)
    with pytest.raises(InvalidInputError):
        consistent_sets([], 1)


def test_verify_consistent():
    idp = Permutation(range(4))
    assert not verify_consistent([idp], [{0, 2}, {1, 3}])
    assert verify_consistent([idp], [{0}, {2}, {3}])
    assert verify_consistent([idp], [{0, 1}, {2, 3}])


def test_find_consistent_copy():
    t6 = make_transitive_tournament(6)
    singletons = Partition([[0], [1], [2]])
    found = find_consistent_copy(t6, T3, singletons, [{0, 1}, {2, 3}, {4, 5}])
    assert found is not None
    image = sorted(found.vertices)
    assert image[0] in {0, 1} and image[1] in {2, 3} and image[2] in {4, 5}

    # no edges between the target sets: nothing to find
    sparse = Digraph(6, [(0, 1)])
    assert find_consistent_copy(sparse, P3, Partition([[0], [1], [2]]), [{2}, {3}, {4}]) is None

    with pytest.raises(InvalidInputError):
        find_consistent_copy(t6, T3, singletons, [{0, 1}, {1, 2}, {4, 5}])


def test_pipeline_on_complete_host():
    d20 = complete_digraph(20)
    rng = substream(44)
    x = [Permutation([int(v) for v in rng.permutation(20)])]
    result = skew_witness_pipeline(d20, T3, x)
    assert result is not None
    copy, profile = result
    assert profile[0] <= 2
    assert forward_count(copy.edges, x[0]) == profile[0]


def test_pipeline_empty_x():
    result = skew_witness_pipeline(make_transitive_tournament(4), T3, [])
    assert result is not None
    copy, profile = result
    assert profile == () and len(copy.edges) == 3


def test_pipeline_rejects_rooted_star():
    with pytest.raises(InvalidInputError):
        skew_witness_pipeline(complete_digraph(8), make_rooted_star(3), [])


def test_pipeline_infeasible_size():
    rng = substream(9)
    perms = [Permutation([int(v) for v in rng.permutation(4)]) for _ in range(3)]
    with pytest.raises(InfeasibleSizeError):
        skew_witness_pipeline(complete_digraph(4), T3, perms)


def test_pipeline_profile_bounded_random():
    rng = substream(77)
    hits = 0
    for i in range(30):
        g = Digraph(
            16,
            {
                (u, v)
                for u in range(16)
                for v in range(16)
                if u != v and rng.random() < 0.5
            },
        )
        perms = [Permutation([int(v) for v in rng.permutation(16)]) for _ in range(2)]
        result = skew_witness_pipeline(g, T3, perms)
        if result is None:
            continue
        hits += 1
        copy, profile = result
        assert all(c <= 2 for c in profile)
        assert profile == tuple(forward_count(copy.edges, p) for p in perms)
    assert hits > 0


def test_extract_cycle_configuration():
    assert extract_cycle_configuration(make_transitive_tournament(4), T3) is None

    result = extract_cycle_configuration(TWO_TRIANGLES, T3)
    assert result is not None
    cycle, copies = result
    assert len(cycle) == 2 and len(copies) == 2
    k = len(cycle)
    cycle_edges = {(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
    union = set()
    for c in copies:
        union |= c.edges
    assert cycle_edges <= union
    # minimality: dropping any member uncovers a cycle edge
    for drop in copies:
        rest = set()
        for c in copies:
            if c is not drop:
                rest |= c.edges
        assert not cycle_edges <= rest
