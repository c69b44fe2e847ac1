import json
from itertools import combinations

import pytest

from oracles import naive_embedding_ok
from ugraph import universal as U
from ugraph.decomp import exact_pathwidth, exact_treedepth, exact_treewidth
from ugraph.embed import (
    complete_to_two_tree,
    embed_any,
    embed_induced_via_lift,
    embed_pathwidth,
    embed_treedepth,
    embed_treewidth,
    embed_tw2,
    embed_via_lift,
)
from ugraph.errors import ClassViolationError
from ugraph.generators import two_trees
from ugraph.graph import (
    INDUCED,
    SUBGRAPH,
    Embedding,
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
    verify_embedding,
)
from ugraph.io import embedding_to_json
from ugraph.iso import canonical_key, enumerate_connected_graphs, enumerate_graphs


def check(e, guest, induced=False):
    assert verify_embedding(e)
    assert naive_embedding_ok(guest, e.host, e.map, induced)


# --- treedepth --------------------------------------------------------------------------------


def test_p3_centre_goes_to_root():
    a = U.build_treedepth_universal(3, 2)
    e = embed_treedepth(path_graph(3), a)
    check(e, path_graph(3))
    assert e.map[1] == 0


def test_single_vertex_goes_to_root():
    for a in (U.build_treedepth_universal(4, 3), U.build_treedepth_universal(2, 2)):
        assert embed_treedepth(empty_graph(1), a).map == (0,)


def test_all_connected_4_vertex_graphs_with_td_3():
    a = U.build_treedepth_universal(4, 3)
    done = 0
    for g in enumerate_connected_graphs(4):
        if exact_treedepth(g)[0] <= 3:
            check(embed_treedepth(g, a), g)
            done += 1
    assert done == 5  # every connected 4-vertex graph except K_4


def test_treedepth_class_violation():
    with pytest.raises(ClassViolationError):
        embed_treedepth(complete_graph(4), U.build_treedepth_universal(4, 2))
    with pytest.raises(ClassViolationError):
        embed_treedepth(path_graph(5), U.build_treedepth_universal(4, 3))


# --- pathwidth --------------------------------------------------------------------------------


def test_c4_into_u_2_6():
    e = embed_pathwidth(cycle_graph(4), U.build_pathwidth_universal(6, 2))
    check(e, cycle_graph(4))


def test_single_vertex_maps_into_first_block():
    a = U.build_pathwidth_universal(6, 2)
    e = embed_pathwidth(empty_graph(1), a)
    assert e.map[0] in a.meta["layout"]["blocks"][0]


def test_disconnected_pathwidth_guests():
    a = U.build_pathwidth_universal(6, 2)
    for g in enumerate_graphs(6):
        if not g.is_connected() and exact_pathwidth(g)[0] <= 2:
            check(embed_pathwidth(g, a), g)


def test_pathwidth_k1_caterpillars():
    a = U.build_pathwidth_universal(5, 1)
    for g in enumerate_graphs(5):
        if exact_pathwidth(g)[0] <= 1:
            check(embed_pathwidth(g, a), g)


def test_pathwidth_k3_small():
    a = U.build_pathwidth_universal(12, 3)
    for g in [complete_graph(4), cycle_graph(7), Graph(6, list(combinations(range(4), 2)) + [(3, 4), (4, 5)])]:
        assert exact_pathwidth(g)[0] <= 3
        check(embed_pathwidth(g, a), g)


def test_pathwidth_class_violation():
    with pytest.raises(ClassViolationError):
        embed_pathwidth(complete_graph(4), U.build_pathwidth_universal(6, 2))


# --- treewidth --------------------------------------------------------------------------------


def test_star_into_induced_k1_host():
    a = U.build_treewidth_universal(4, 1, INDUCED)
    g = star_graph(3)
    check(embed_treewidth(g, a), g, induced=True)


def test_both_4_vertex_trees_embed_induced():
    a = U.build_treewidth_universal(4, 1, INDUCED)
    for g in (path_graph(4), star_graph(3)):
        check(embed_treewidth(g, a), g, induced=True)


def test_clique_fitting_one_bag_uses_the_root():
    a = U.build_treewidth_universal(4, 2, SUBGRAPH)
    e = embed_treewidth(complete_graph(3), a)
    check(e, complete_graph(3))
    assert all(a.graph.locate(y)[0] == 0 for y in e.map)


def test_all_trees_up_to_6_induced():
    a = U.build_treewidth_universal(6, 1, INDUCED)
    for n in range(1, 7):
        for g in enumerate_connected_graphs(n):
            if g.m == n - 1:
                e = embed_treewidth(g, a)
                check(e, g, induced=True)
                assert e.aux["dummies"] is not None


def test_treewidth_two_subgraph_mode():
    a = U.build_treewidth_universal(6, 2, SUBGRAPH)
    for g in enumerate_connected_graphs(5):
        if exact_treewidth(g)[0] <= 2:
            check(embed_treewidth(g, a), g)


def test_treewidth_class_violation():
    with pytest.raises(ClassViolationError):
        embed_treewidth(complete_graph(4), U.build_treewidth_universal(6, 2))


# --- tw2quasi ---------------------------------------------------------------------------------


def test_triangle_pinned_into_u3_is_identity():
    a = U.build_tw2_quasi_universal(3)
    e = embed_tw2(complete_graph(3), a, (0, 1))
    assert e.map == (0, 1, 2)


def test_fan_into_u7():
    fan = Graph(5, [(0, 1), (1, 2), (2, 3)] + [(4, i) for i in range(4)])
    e = embed_tw2(fan, U.build_tw2_quasi_universal(7))
    check(e, fan)


def test_two_trees_up_to_6_with_every_pin():
    a = U.build_tw2_quasi_universal(6)
    for n in range(2, 7):
        for g in two_trees(n):
            for u, v in g.sorted_edges():
                for p in ((u, v), (v, u)):
                    e = embed_tw2(g, a, p)
                    check(e, g)
                    assert (e.map[p[0]], e.map[p[1]]) == (0, 1)


def test_completion_is_a_two_tree():
    for g in enumerate_connected_graphs(6):
        if exact_treewidth(g)[0] <= 2:
            t = complete_to_two_tree(g)
            assert g.edges <= t.edges
            assert t.m == 2 * t.n - 3 and exact_treewidth(t)[0] == 2


def test_tw2_rejects_k4():
    with pytest.raises(ClassViolationError):
        embed_tw2(complete_graph(4), U.build_tw2_quasi_universal(5))


def test_pin_must_be_an_edge():
    with pytest.raises(ClassViolationError):
        embed_tw2(path_graph(3), U.build_tw2_quasi_universal(4), (0, 2))


# --- lifts ------------------------------------------------------------------------------------


def test_non_edge_into_k2_lift():
    lift = U.sub_to_induced_lift(complete_graph(2), 1)
    e = embed_induced_via_lift(empty_graph(2), lift, [0, 1])
    check(e, empty_graph(2), induced=True)
    second = lift.order[1]
    assert e.map[second] == lift.member(second, 0)


def test_p3_inside_triangle_lift():
    lift = U.sub_to_induced_lift(complete_graph(3), 2)
    e = embed_induced_via_lift(path_graph(3), lift, [0, 1, 2])
    assert lift.graph.n == 7
    check(e, path_graph(3), induced=True)


def test_spanning_subgraphs_of_k4():
    lift = U.sub_to_induced_lift(complete_graph(4), 3)
    pairs = list(combinations(range(4), 2))
    classes = set()
    for bits in range(1 << 6):
        h = Graph(4, [pairs[i] for i in range(6) if bits >> i & 1])
        e = embed_induced_via_lift(h, lift, [0, 1, 2, 3])
        check(e, h, induced=True)
        classes.add(canonical_key(h))
    assert len(classes) == 11


def test_lift_pipeline_on_treedepth_host():
    a = U.build_treedepth_universal(4, 3)
    lift = U.sub_to_induced_lift(a.graph, 2)
    for g in enumerate_connected_graphs(4):
        if exact_treedepth(g)[0] <= 3:
            check(embed_via_lift(g, a, lift, embed_treedepth), g, induced=True)


def test_lift_rejects_bad_witness():
    lift = U.sub_to_induced_lift(path_graph(3), 1)
    with pytest.raises(ClassViolationError):
        embed_induced_via_lift(path_graph(3), lift, [0, 2, 1])


# --- dispatch and determinism -----------------------------------------------------------------


@pytest.mark.parametrize("art", [
    U.build_treedepth_universal(5, 4),
    U.build_pathwidth_universal(6, 2),
    U.build_treewidth_universal(6, 2, INDUCED),
    U.build_tw2_quasi_universal(6),
])
def test_certificates_are_deterministic(art):
    g = cycle_graph(5)
    a = embedding_to_json(embed_any(g, art))
    b = embedding_to_json(embed_any(g, art))
    assert a == b
    assert json.loads(a)["aux"]["procedure"].startswith("embed")


def test_induced_outputs_are_strict():
    a = U.build_treewidth_universal(5, 2, INDUCED)
    for g in enumerate_connected_graphs(5):
        if exact_treewidth(g)[0] <= 2:
            e = embed_treewidth(g, a)
            assert e.mode == INDUCED
            assert verify_embedding(Embedding(g, a.graph, e.map, INDUCED))
