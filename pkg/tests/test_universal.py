import math
from itertools import combinations

import pytest

from oracles import naive_embedding_ok
from ugraph import universal as U
from ugraph.decomp import exact_pathwidth, exact_treedepth, exact_treewidth, validate
from ugraph.embed import embed_disconnected, embed_treedepth
from ugraph.errors import ClassViolationError, InvariantError, SizeLimitError
from ugraph.graph import (
    INDUCED,
    SUBGRAPH,
    Embedding,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
    verify_embedding,
)
from ugraph.iso import are_isomorphic, canonical_key, enumerate_graphs

# tw2quasi sizes under the fallback provider, computed once from the recurrence.
TW2_SIZES = {3: 3, 4: 33, 5: 3114, 6: 10109, 7: 3006274, 8: 8387034, 9: 72528282}
HN_SIZES = {4: 6, 5: 14, 6: 34, 7: 82, 8: 194, 9: 450}


# --- treedepth ------------------------------------------------------------------------------


def test_treedepth_n3_k2_is_a_star():
    a = U.build_treedepth_universal(3, 2)
    assert a.order == 4
    assert are_isomorphic(a.graph, star_graph(3))


def test_treedepth_n2_k3_is_closure_of_binary_tree():
    a = U.build_treedepth_universal(2, 3)
    assert a.order == 7 and a.graph.m == 10
    assert exact_treedepth(a.graph)[0] == 3


def test_treedepth_k1_is_a_single_vertex():
    a = U.build_treedepth_universal(5, 1)
    assert a.order == 1 and a.graph.m == 0


@pytest.mark.parametrize("n,k", [(3, 2), (4, 3), (5, 2), (3, 4), (2, 5)])
def test_treedepth_size_formula(n, k):
    a = U.build_treedepth_universal(n, k)
    assert a.order == (n ** k - 1) // (n - 1) == U.treedepth_size(n, k)
    forest = a.certificate()
    assert validate(forest, a.graph) and forest.depth == k


def test_treedepth_cap():
    with pytest.raises(SizeLimitError):
        U.build_treedepth_universal(50, 6, cap=1000)


# --- pathwidth --------------------------------------------------------------------------------


def test_pathwidth_k1_has_n_squared_vertices():
    assert U.build_pathwidth_universal(3, 1).order == 9
    assert all(U.pathwidth_size(n, 1) == n * n for n in range(1, 13))


def test_pathwidth_u_2_6():
    a = U.build_pathwidth_universal(6, 2)
    assert a.order == 110 == (6 - 1) * 2 + 4 * U.pathwidth_size(5, 1)
    pd = a.certificate()
    assert validate(pd, a.graph)
    assert pd.width <= 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pathwidth_recurrence_and_bound(k):
    for n in range(1, 13):
        s = U.pathwidth_size(n, k)
        assert s <= n ** (k + 1)
        if k >= 2 and n >= k * k + k:
            assert s == (n - 1) * k + (n - 2) * U.pathwidth_size(n - 1, k - 1)
        elif k >= 2:
            assert s == n


@pytest.mark.parametrize("n,k", [(6, 2), (8, 2), (12, 2), (12, 3)])
def test_pathwidth_certificates(n, k):
    a = U.build_pathwidth_universal(n, k)
    assert a.order == U.pathwidth_size(n, k)
    pd = a.certificate()
    assert validate(pd, a.graph) and pd.width <= k * k + k - 1


def test_pathwidth_small_artifacts_confirmed_by_oracle():
    for n in range(1, 6):
        for k in (1, 2):
            a = U.build_pathwidth_universal(n, k)
            if a.order <= 14:
                assert exact_pathwidth(a.graph)[0] <= k * k + k - 1


# --- treewidth --------------------------------------------------------------------------------


def test_single_level_subgraph_host_is_a_clique():
    a = U.build_treewidth_universal(4, 2, SUBGRAPH, L=5, levels=1)
    assert a.order == 5
    assert a.explicit() == complete_graph(5)


def test_treewidth_defaults():
    a = U.build_treewidth_universal(6, 2)
    assert a.meta["L"] == 8
    assert a.meta["levels"] == math.ceil(3 * math.log2(6)) + 1


def test_treewidth_host_matches_materialized_graph():
    a = U.build_treewidth_universal(4, 1, INDUCED, L=3, levels=2)
    g = a.explicit()
    assert g.n == a.order
    host = a.graph
    for u, v in combinations(range(g.n), 2):
        assert host.has_edge(u, v) == g.has_edge(u, v)
    d = a.certificate()
    assert validate(d, g) and d.width == 2


def test_treewidth_sample_has_small_treewidth():
    a = U.build_treewidth_universal(4, 1, SUBGRAPH, L=4, levels=2)
    g = a.explicit()
    d = a.certificate()
    assert validate(d, g) and d.width <= 3
    sample, _ = g.induced(range(12))
    assert exact_treewidth(sample)[0] <= 3


def test_treewidth_size_is_closed_form():
    a = U.build_treewidth_universal(5, 1, SUBGRAPH, L=3, levels=3)
    assert a.explicit().n == a.order


# --- tw2quasi ---------------------------------------------------------------------------------


def test_u3_is_a_triangle():
    a = U.build_tw2_quasi_universal(3)
    assert a.explicit() == complete_graph(3)
    assert a.meta["specialEdge"] == [0, 1]


@pytest.mark.parametrize("n", sorted(TW2_SIZES))
def test_tw2quasi_sizes(n):
    a = U.build_tw2_quasi_universal(n)
    assert a.order == TW2_SIZES[n] == U.tw2quasi_size(n, U.FallbackProvider())


@pytest.mark.parametrize("n", sorted(HN_SIZES))
def test_tw2quasi_recurrence(n):
    p = U.FallbackProvider()
    h = p(n)
    assert h.graph.n == HN_SIZES[n]
    m = U.child_param(n)
    assert U.tw2quasi_size(n, p) == h.graph.n + (n - 1) * h.graph.m * (U.tw2quasi_size(m, p) - 2)


def test_u4_recurrence_uses_the_triangle():
    p = U.FallbackProvider()
    h = p(4)
    assert U.tw2quasi_size(4, p) == h.graph.n + 3 * h.graph.m * (3 - 2)


@pytest.mark.parametrize("n", [4, 5])
def test_tw2quasi_certificate(n):
    a = U.build_tw2_quasi_universal(n)
    g = a.explicit()
    d = a.certificate()
    assert validate(d, g) and d.width <= 3
    for u, v in combinations(range(g.n), 2):
        if g.has_edge(u, v) != a.graph.has_edge(u, v):
            raise AssertionError((u, v))


def test_provider_contract():
    for n in range(4, 8):
        assert U.check_provider(U.FallbackProvider(), n) == []


def test_provider_is_flagged_exponential():
    a = U.build_tw2_quasi_universal(5)
    assert a.meta["provider"]["flag"] == U.EXPONENTIAL_FALLBACK


# --- blow-ups and universal vertices ---------------------------------------------------------


def test_blowup_examples():
    assert are_isomorphic(U.blowup(complete_graph(2), 2), cycle_graph(4))
    g = cycle_graph(5)
    assert U.blowup(g, 1) == g
    b = U.blowup(path_graph(3), 2)
    assert (b.n, b.m) == (6, 8)


@pytest.mark.parametrize("g", [path_graph(3), cycle_graph(4), complete_graph(3)])
@pytest.mark.parametrize("t", [1, 2])
def test_blowup_treewidth(g, t):
    tw, d = exact_treewidth(g)
    b = U.blowup(g, t)
    bd = U.blowup_decomposition(d, t)
    assert validate(bd, b) and bd.width <= t * (tw + 1) - 1
    assert exact_treewidth(b)[0] <= t * (tw + 1) - 1


def test_add_universal_vertices_examples():
    assert U.add_universal_vertices(empty_graph(0), 3) == complete_graph(3)
    w = U.add_universal_vertices(cycle_graph(4), 1)
    assert w.n == 5 and w.m == 8 and w.degree(4) == 4
    p = U.add_universal_vertices(path_graph(3), 2)
    assert (p.n, p.m) == (5, 9)


def test_plus_t_keeps_classes_apart():
    for n in range(1, 6):
        keys = {canonical_key(U.add_universal_vertices(g, 2)) for g in enumerate_graphs(n)}
        assert len(keys) == len(list(enumerate_graphs(n)))


# --- lifts ------------------------------------------------------------------------------------


def test_lift_of_k2():
    lift = U.sub_to_induced_lift(complete_graph(2), 1)
    assert lift.graph.n == 3
    assert sorted(1 << len(b) for b in lift.back) == [1, 2]


def test_lift_of_triangle_has_seven_vertices():
    assert U.sub_to_induced_lift(complete_graph(3), 2).graph.n == 7


def test_lift_of_edgeless_graph_is_itself():
    g = empty_graph(4)
    assert U.sub_to_induced_lift(g, 0).graph == g


def test_lift_rejects_wrong_degeneracy():
    with pytest.raises(ClassViolationError):
        U.sub_to_induced_lift(complete_graph(4), 2)


@pytest.mark.parametrize("g,d", [(complete_graph(3), 2), (cycle_graph(5), 2), (complete_graph(4), 3)])
def test_lift_sits_inside_the_blowup(g, d):
    lift = U.sub_to_induced_lift(g, d)
    host = U.blowup(g, 1 << d)
    e = Embedding(lift.graph, host, lift.inclusion(), SUBGRAPH)
    assert verify_embedding(e)
    assert naive_embedding_ok(lift.graph, host, lift.inclusion(), induced=False)


def test_degeneracy_order_back_degrees():
    g = cycle_graph(6)
    order = U.degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    assert max(sum(1 for w in g.adj[v] if pos[w] < pos[v]) for v in range(6)) == 2


# --- disconnected guests ----------------------------------------------------------------------


def test_disconnected_lift_n1():
    u = U.disconnected_lift(lambda m: U.build_treedepth_universal(m, 2), 1)
    sizes = [p for p, _, _ in u.parts]
    assert sizes == [1, 1, 2]


def test_disconnected_lift_star_forests():
    n = 4
    union = U.disconnected_lift(lambda m: U.build_treedepth_universal(m, 2), n)

    def emb(g, art):
        return embed_treedepth(g, art)

    for g in enumerate_graphs(n):
        if exact_treedepth(g)[0] <= 2:
            e = embed_disconnected(g, union, emb)
            assert verify_embedding(e)


def test_connected_guest_stays_in_one_copy():
    union = U.disconnected_lift(lambda m: U.build_treedepth_universal(m, 2), 4)
    e = embed_disconnected(star_graph(3), union, embed_treedepth)
    copies = {max(i for i, (_, off, _) in enumerate(union.parts) if off <= y) for y in e.map}
    assert len(copies) == 1


# --- descriptions ------------------------------------------------------------------------------


@pytest.mark.parametrize("kind,n,k", [("treedepth", 3, 2), ("pathwidth", 6, 2), ("treewidth", 5, 1),
                                      ("tw2quasi", 5, 2)])
def test_description_round_trip(kind, n, k):
    a = U.build_artifact(kind, n, k)
    b = U.artifact_from_description(a.describe())
    assert b.order == a.order and b.describe() == a.describe()


def test_description_size_mismatch():
    d = U.build_artifact("treedepth", 3, 2).describe()
    d["vertices"] = 5
    with pytest.raises(InvariantError):
        U.artifact_from_description(d)
