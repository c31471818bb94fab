from __future__ import annotations

import random

import pytest

from equidom.generators import (
    EXAMPLE_NAMES,
    disjoint_union,
    weighted_example,
    two_bundle_example,
    inflate,
    k2n_minus_ne,
    path,
    random_graph,
)
from equidom.graph import Graph
from equidom.kernel import (
    BIG_STABLE_CLASS_NOT_ISOLATED,
    BUNDLE_RULE,
    CLIQUE_RULE,
    ISOLATED_RULE,
    MU_TOO_BIG,
    NOT_ONE_EQUIDOMINATING,
    PSEUDO_RULE,
    STABLE_CLASS_TOO_BIG,
    TOO_MANY_CLASSES,
    TWO_BIG_CLASSES,
    Classified,
    GraphKernel,
    NotEquidominating,
    PseudoKernel,
    ReductionTrace,
    TraceRecord,
    block_size_bound,
    kernel_k,
    kernel_target_t,
    lift_structure,
    parse_trace,
    reduce_clique_classes,
    reduce_pseudo_graph,
    reduce_stable_set_bundles,
    serialize_trace,
)
from equidom.oracle import brute_force_target_t, enumerate_mds
from equidom.pseudo import CLIQUE_BUNDLE, pseudo_class_partition
from equidom.pseudograph import PseudoGraph, build_pseudo_graph
from equidom.structure import WeightStructure
from equidom.twins import STABLE_CLASS, twin_partition

C2 = EXAMPLE_NAMES.index("c2")


def test_clique_rule_on_k5():
    H, tr = reduce_clique_classes(Graph.complete(5), 2)
    assert H == Graph.complete(2)
    assert [(r.deleted, r.representative) for r in tr.records] == [(2, 0), (3, 0), (4, 0)]
    assert tr.kept == (0, 1)


def test_clique_rule_on_weighted_example_deletes_c2():
    H, tr = reduce_clique_classes(weighted_example(), 1)
    assert tr.deleted() == [C2]
    assert H.n == 7


def test_clique_rule_without_clique_classes_is_identity():
    G = path(5)
    H, tr = reduce_clique_classes(G, 1)
    assert H == G and tr.records == ()


def test_bundle_rule_on_k8_minus_4e():
    H, _ = reduce_stable_set_bundles(k2n_minus_ne(4), 2)
    assert H == k2n_minus_ne(2)


def test_bundle_rule_keeps_bundle_at_bound():
    H, tr = reduce_stable_set_bundles(k2n_minus_ne(2), 2)
    assert H == k2n_minus_ne(2) and not tr.records


def test_bundle_rule_r1_leaves_a_stable_class():
    H, _ = reduce_stable_set_bundles(k2n_minus_ne(2), 1)
    assert H == Graph.edgeless(2)
    (c,) = twin_partition(H)
    assert c.kind == STABLE_CLASS


def test_pseudo_rule_trims_mu_equal_groups():
    PG = PseudoGraph([(CLIQUE_BUNDLE, range(5)), ("singleton", [5])],
                     {**{v: (1, 1) for v in range(5)}, 5: (1, 1)})
    PG3, tr = reduce_pseudo_graph(PG, 3)
    assert PG3.elements == [0, 1, 2, 5]
    assert [r.representative for r in tr.records] == [0, 0]


def test_pseudo_rule_on_two_bundle_example_r1():
    G = two_bundle_example()
    PG = build_pseudo_graph(G)
    worst = max(max(m) for m in PG.mu.values())
    PG1, _ = reduce_pseudo_graph(PG, worst)
    assert all(len(g) <= worst for groups in PG1.groups for g in groups)
    assert [kind for kind, _ in PG1.blocks] == [CLIQUE_BUNDLE, CLIQUE_BUNDLE]


def test_pseudo_rule_requires_bounded_mu():
    PG = PseudoGraph([("stable_class", [0, 1, 2])], {v: (3,) for v in range(3)})
    with pytest.raises(ValueError):
        reduce_pseudo_graph(PG, 2)


def test_pseudo_rule_without_bundles_only_trims_large_groups():
    PG = build_pseudo_graph(path(4))
    PG2, tr = reduce_pseudo_graph(PG, 2)
    assert PG2 == PG and not tr.records


def test_target_kernel_rejections():
    assert kernel_target_t(weighted_example(), 2) == NotEquidominating(TOO_MANY_CLASSES, "5 > 2")
    res = kernel_target_t(Graph.edgeless(5), 3)
    assert isinstance(res, NotEquidominating) and res.reason == STABLE_CLASS_TOO_BIG


def test_target_kernel_on_large_clique():
    res = kernel_target_t(Graph.complete(40), 1)
    assert isinstance(res, PseudoKernel)
    assert len(res.pseudo_graph) == 1
    s = lift_structure(Graph.complete(40), res.trace, WeightStructure({0: 1}, 1))
    assert s.weights == {v: 1 for v in range(40)} and s.t == 1


def test_mu_rejection():
    # the star K_{1,3}: leaves need all of their own stable class
    res = kernel_target_t(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), 2)
    assert isinstance(res, NotEquidominating)
    assert res.reason in (STABLE_CLASS_TOO_BIG, MU_TOO_BIG)


def test_k1_classification():
    res = kernel_k(Graph.edgeless(6), 1)
    assert isinstance(res, Classified)
    assert res.structure == WeightStructure({v: 1 for v in range(6)}, 6)
    assert kernel_k(Graph.complete(3), 1).structure.t == 1
    assert kernel_k(k2n_minus_ne(3), 1).structure.t == 2
    res = kernel_k(path(5), 1)
    assert res.structure is None and res.reason == NOT_ONE_EQUIDOMINATING


def test_case_2_1_trims_isolated_stable_class():
    G = disjoint_union(Graph.edgeless(1000), Graph.complete(3))
    res = kernel_k(G, 2)
    assert isinstance(res, GraphKernel)
    assert res.graph.n == 32 + 3
    assert res.trace.isolated_class == tuple(range(32))
    assert all(r.rule == ISOLATED_RULE for r in res.trace.records)


def _verify_isolated(G: Graph, N: int, s: WeightStructure) -> bool:
    """Check ``s`` on ``G`` = (N isolated vertices) + H when ``s`` is constant on them.

    A set D = (j isolated vertices) + Y is an mds iff j = N and Y is an mds of H,
    so it suffices to range over Y and the count j.
    """
    i = {s.weights[v] for v in range(N)}
    assert len(i) == 1
    (i,) = i
    rest = list(range(N, G.n))
    H = Graph.from_edges(len(rest), [(u - N, v - N) for u, v in G.edges()])
    mds = set(enumerate_mds(H))
    for Y in range(1 << len(rest)):
        wy = sum(s.weights[rest[b]] for b in range(len(rest)) if Y >> b & 1)
        for j in range(N + 1):
            if (wy + i * j == s.t) != (j == N and Y in mds):
                return False
    return True


def test_case_2_1_lift_adjusts_target():
    N = 40
    G = disjoint_union(Graph.edgeless(N), Graph.complete(2))
    res = kernel_k(G, 2)
    assert isinstance(res, GraphKernel)
    kept = res.trace.kept
    # kernel structure: S' weight 2 (constant), K2 weight 1
    weights = {kept[j]: (2 if j < 32 else 1) for j in range(res.graph.n)}
    s = lift_structure(G, res.trace, WeightStructure(weights, 2 * 32 + 1))
    assert s.t == 2 * N + 1
    assert _verify_isolated(G, N, s)


def test_case_2_1_lift_makes_kernel_structure_constant():
    N, k = 250, 3
    G = disjoint_union(Graph.edgeless(N), Graph.complete(2))
    res = kernel_k(G, k)
    assert isinstance(res, GraphKernel) and res.graph.n == k ** 5 + 2
    kept = res.trace.kept
    # valid on the kernel but not constant on S': no S' subset can trade for the K2 weight 1
    weights = {kept[j]: (3 if j < 200 else 2) if j < k ** 5 else 1 for j in range(res.graph.n)}
    t = 3 * 200 + 2 * 43 + 1
    s = lift_structure(G, res.trace, WeightStructure(weights, t))
    assert {s.weights[v] for v in range(N)} == {3}
    assert s.t == 3 * N + 1
    assert _verify_isolated(G, N, s)
    assert not _verify_isolated(G, N, WeightStructure(s.weights, s.t + 1))


def test_case_2_small_big_class_returns_graph_unchanged():
    G = disjoint_union(Graph.edgeless(5), Graph.complete(2))
    res = kernel_k(G, 2)
    assert isinstance(res, GraphKernel) and res.graph == G


def test_case_2_2_rejects_non_isolated_big_class():
    G = Graph.from_edges(41, [(v, 40) for v in range(40)])
    assert kernel_k(G, 2).reason == BIG_STABLE_CLASS_NOT_ISOLATED


def test_two_big_classes_rejected():
    G = disjoint_union(Graph.edgeless(5), Graph.complete(4))
    assert kernel_k(G, 2).reason == TWO_BIG_CLASSES


def test_pseudo_kernel_bounds_on_random_graphs():
    rng = random.Random(5)
    for seed in range(80):
        G = random_graph(rng.randint(2, 9), rng.choice([0.3, 0.6, 0.9]), seed)
        for t in (1, 2, 3):
            res = kernel_target_t(G, t)
            if isinstance(res, PseudoKernel):
                PG = res.pseudo_graph
                assert PG.s <= t
                assert all(len(ids) <= block_size_bound(t, PG.s) for _, ids in PG.blocks)


def test_trace_serialization_round_trip():
    G = inflate(path(2), clique={0: 4}, bundle={1: 3})
    res = kernel_target_t(G, 3)
    assert isinstance(res, PseudoKernel)
    text = serialize_trace(res.trace)
    assert parse_trace(text) == list(res.trace.records)
    assert {r.rule for r in res.trace.records} <= {CLIQUE_RULE, BUNDLE_RULE, PSEUDO_RULE}
    with pytest.raises(ValueError):
        parse_trace("clique_class 1\n")


def test_trace_composition():
    outer = ReductionTrace((TraceRecord(CLIQUE_RULE, 3, 0),), (0, 1, 2, 4))
    inner = ReductionTrace((TraceRecord(BUNDLE_RULE, 3, 1),), (0, 1, 2))
    both = outer.then(inner)
    assert both.records[1] == TraceRecord(BUNDLE_RULE, 4, 1)
    assert both.kept == (0, 1, 2)


def test_lift_identity():
    G = path(4)
    s = brute_force_target_t(G, 3)
    assert lift_structure(G, ReductionTrace.identity(range(4)), s) == s


def test_reductions_preserve_target_answers_on_inflated_graphs():
    rng = random.Random(11)
    checked = 0
    for _ in range(25):
        core = random_graph(rng.randint(2, 4), 0.6, rng.randrange(10**6))
        v = rng.randrange(core.n)
        G = inflate(core, clique={v: rng.randint(2, 6)}) if rng.random() < 0.5 else inflate(core, bundle={v: rng.randint(2, 4)})
        if G.n > 14:
            continue
        for t in (1, 2, 3):
            before = brute_force_target_t(G, t) is not None
            H, _ = reduce_clique_classes(G, t)
            assert (brute_force_target_t(H, t) is not None) == before
            H, _ = reduce_stable_set_bundles(G, -(-t // 2))
            assert (brute_force_target_t(H, t) is not None) == before
            checked += 1
    assert checked > 20
