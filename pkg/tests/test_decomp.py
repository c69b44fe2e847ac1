import random

import pytest

from oracles import naive_pathwidth, naive_treedepth, naive_treewidth
from ugraph import decomp, extremal
from ugraph.decomp import (
    DEPTH_CONSTANT,
    EliminationForest,
    PathDecomposition,
    TreeDecomposition,
    balance_log_depth,
    decomposition_from_json,
    decomposition_to_json,
    depth_bound,
    exact_pathwidth,
    exact_treedepth,
    exact_treewidth,
    reduce,
    reduce_path,
    simple_kpath_recognize,
    validate,
)
from ugraph.errors import ParseError, SizeLimitError
from ugraph.generators import elimination_bags, random_k_tree
from ugraph.graph import (
    Graph,
    complete_binary_tree,
    complete_graph,
    cycle_graph,
    empty_graph,
    grid_graph,
    path_graph,
    star_graph,
)
from ugraph.iso import enumerate_connected_graphs


def fs(*bags):
    return [frozenset(b) for b in bags]


# --- validate -------------------------------------------------------------------------------


def test_single_bag_is_valid():
    g = cycle_graph(5)
    d = TreeDecomposition(fs(range(5)), [], 0)
    assert validate(d, g)
    assert d.width == 4


def test_path_bags_for_p4():
    g = path_graph(4)
    assert validate(PathDecomposition(fs({0, 1}, {1, 2}, {2, 3})), g)
    assert PathDecomposition(fs({0, 1}, {1, 2}, {2, 3})).width == 1
    bad = validate(PathDecomposition(fs({0, 1}, {2}, {2, 3})), g)
    assert not bad and "1" in bad.message


def test_validate_catches_disconnected_occurrence():
    g = path_graph(3)
    d = PathDecomposition(fs({0, 1}, {1, 2}, {0}))
    assert not validate(d, g)


def test_validate_rejects_cycle_in_tree():
    g = path_graph(3)
    d = TreeDecomposition(fs({0, 1}, {1, 2}, {1}), [(0, 1), (1, 2), (2, 0)], 0)
    assert not validate(d, g)


def test_validate_elimination_forest():
    g = path_graph(4)
    assert validate(EliminationForest([1, -1, 1, 2]), g)
    assert EliminationForest([1, -1, 1, 2]).depth == 3
    assert not validate(EliminationForest([1, -1, 1, 1]), g)  # 2 and 3 are siblings


# --- reduce -------------------------------------------------------------------------------


def test_star_duplicate_bags_collapse():
    c = 0
    d = TreeDecomposition(fs({c, 1}, {c, 1}, {c, 2}, {c, 3}, {c, 4}), [(0, 1), (1, 2), (2, 3), (3, 4)], 0)
    r = reduce(d)
    assert len(r.bags) == 4
    assert validate(r, star_graph(4))


def test_reduce_is_idempotent_and_never_widens():
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(1, 3)
        g, d = random_k_tree(rng.randint(k + 1, 15), k, rng)
        once = reduce(d)
        twice = reduce(once)
        assert sorted(map(sorted, once.bags)) == sorted(map(sorted, twice.bags))
        assert once.width <= d.width
        assert validate(once, g)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_k_tree_reduces_to_n_minus_k_bags(k):
    rng = random.Random(k)
    for _ in range(30):
        n = rng.randint(k + 1, 30)
        g, d = random_k_tree(n, k, rng)
        assert len(reduce(d).bags) == n - k


def test_reduce_path_drops_contained_bags():
    pd = PathDecomposition(fs({0, 1}, {1}, {1, 2}, {1, 2}))
    r = reduce_path(pd)
    assert r.bags == fs({0, 1}, {1, 2})


# --- exact oracles ---------------------------------------------------------------------------


def test_small_widths():
    assert exact_treewidth(complete_graph(4))[0] == 3
    assert exact_treewidth(cycle_graph(5))[0] == 2
    assert exact_treewidth(grid_graph(3, 3))[0] == 3
    assert all(exact_pathwidth(path_graph(n))[0] == 1 for n in range(2, 10))
    assert exact_treedepth(path_graph(4))[0] == 3
    assert exact_treedepth(star_graph(5))[0] == 2
    assert all(exact_treedepth(complete_graph(n))[0] == n for n in range(1, 8))


def test_c5_treewidth_matches_orderings():
    assert naive_treewidth(cycle_graph(5)) == exact_treewidth(cycle_graph(5))[0] == 2


def test_binary_tree_on_15_vertices_has_pathwidth_2():
    g = complete_binary_tree(4)
    assert g.n == 15
    w, pd = exact_pathwidth(g, max_n=15)
    assert w == 2 and validate(pd, g)


def test_simple_two_paths_on_7_vertices_have_pathwidth_2():
    for x in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        g = extremal.simple_kpath_from_record(extremal.SimpleKPathRecord(2, 7, x))
        assert exact_pathwidth(g)[0] == 2


def test_empty_graph_conventions():
    g = empty_graph(0)
    assert exact_treewidth(g)[0] == -1
    assert exact_pathwidth(g)[0] == -1
    assert exact_treedepth(g)[0] == 0


def test_size_limit():
    with pytest.raises(SizeLimitError):
        exact_treewidth(path_graph(decomp.MAX_EXACT_N + 1))


def test_witnesses_validate_and_match_width():
    for n in range(1, 7):
        for g in enumerate_connected_graphs(n):
            tw, td_ = exact_treewidth(g)
            pw, pd = exact_pathwidth(g)
            dep, forest = exact_treedepth(g)
            assert validate(td_, g) and td_.width == tw
            assert validate(pd, g) and pd.width == pw
            assert validate(forest, g) and forest.depth == dep
            assert tw <= pw <= dep - 1


def test_oracles_against_orderings_on_six_vertices():
    for g in enumerate_connected_graphs(6):
        assert exact_treewidth(g)[0] == naive_treewidth(g)
        assert exact_pathwidth(g)[0] == naive_pathwidth(g)
        assert exact_treedepth(g)[0] == naive_treedepth(g)


def test_disconnected_treedepth_takes_max_over_components():
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (4, 5)])
    assert exact_treedepth(g)[0] == 3
    assert naive_treedepth(g) == 3


# --- balance_log_depth ------------------------------------------------------------------------


def test_balance_path_15():
    g = path_graph(15)
    d = PathDecomposition(fs(*({i, i + 1} for i in range(14)))).to_tree()
    b = balance_log_depth(d, g)
    assert validate(b, g)
    assert b.width <= 4
    assert b.is_binary()
    assert b.depth() <= depth_bound(15)


def test_balance_single_bag():
    g = complete_graph(4)
    b = balance_log_depth(TreeDecomposition(fs(range(4)), [], 0), g)
    assert b.depth() == 1 and validate(b, g)


def test_balance_50_vertex_two_trees():
    rng = random.Random(50)
    for _ in range(10):
        g, d = random_k_tree(50, 2, rng)
        b = balance_log_depth(d, g)
        assert validate(b, g)
        assert b.width <= 7
        assert b.depth() <= DEPTH_CONSTANT * 5.644 + 1


def test_balance_on_1000_random_k_trees():
    rng = random.Random(1000)
    for i in range(1000):
        k = 1 + i % 3
        n = rng.randint(k + 1, 40)
        g, d = random_k_tree(n, k, rng)
        b = balance_log_depth(d, g)
        assert validate(b, g), (i, n, k)
        assert b.width <= 3 * k + 1
        assert b.is_binary()
        assert b.depth() <= depth_bound(n)


def test_elimination_bags_of_k_tree():
    rng = random.Random(4)
    g, _ = random_k_tree(12, 2, rng)
    order = list(range(11, -1, -1))  # reverse insertion order is perfect
    d = elimination_bags(g, order)
    assert validate(d, g) and d.width == 2


# --- simple k-path recognition ----------------------------------------------------------------


def test_recognize_figure_graph():
    g = extremal.simple_kpath_from_record(extremal.SimpleKPathRecord(2, 7, (1, 2)))
    ok, pd = simple_kpath_recognize(g, 2)
    assert ok and validate(pd, g) and pd.width == 2


def test_recognize_rejects_k4_and_c6():
    assert not simple_kpath_recognize(complete_graph(4), 2)[0]
    assert not simple_kpath_recognize(cycle_graph(6), 2)[0]


# --- JSON -------------------------------------------------------------------------------------


@pytest.mark.parametrize("d", [
    TreeDecomposition(fs({0, 1}, {1, 2}), [(0, 1)], 0),
    PathDecomposition(fs({0, 1}, {1, 2})),
    EliminationForest([-1, 0, 1]),
])
def test_json_round_trip(d):
    text = decomposition_to_json(d)
    assert decomposition_to_json(decomposition_from_json(text)) == text
    assert validate(decomposition_from_json(text), path_graph(3))


def test_json_rejects_unknown_kind():
    with pytest.raises(ParseError):
        decomposition_from_json('{"kind": "wheel", "bags": []}')
