import math
import random
from itertools import combinations

import pytest

from oracles import naive_isomorphic, naive_vc_dimension
from ugraph import extremal as X
from ugraph.decomp import exact_pathwidth, simple_kpath_recognize
from ugraph.errors import SizeLimitError
from ugraph.graph import Embedding, Graph, JumpSet, complete_graph
from ugraph.iso import are_isomorphic, automorphism_count
from ugraph.universal import add_universal_vertices

# exact class counts of simple k-paths, (k, n) -> (records, classes)
KPATH_COUNTS = {(2, 7): (4, 3), (2, 8): (8, 6), (2, 9): (16, 10), (3, 9): (9, 8), (3, 10): (27, 21)}


def fig(x):
    return X.simple_kpath_from_record(X.SimpleKPathRecord(2, 7, x))


# --- records --------------------------------------------------------------------------------


@pytest.mark.parametrize("k,n,x", [(1, 6, (1,)), (2, 5, ()), (2, 7, (1,)), (2, 7, (1, 3)), (2, 7, (0, 1))])
def test_bad_records(k, n, x):
    with pytest.raises(ValueError):
        X.SimpleKPathRecord(k, n, x)


def test_left_figure_graph():
    want = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)]
    assert fig((1, 1)) == Graph(7, [(u - 1, v - 1) for u, v in want])


def test_right_figure_graph():
    want = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7), (5, 6), (6, 7)]
    g = fig((1, 2))
    assert g == Graph(7, [(u - 1, v - 1) for u, v in want])
    assert sorted(g.degree(v) for v in range(7)) == [2, 2, 3, 3, 3, 4, 5]
    assert not are_isomorphic(g, fig((1, 1)))


def test_six_vertex_records():
    a = X.simple_kpath_from_record(X.SimpleKPathRecord(2, 6, (1,)))
    b = X.simple_kpath_from_record(X.SimpleKPathRecord(2, 6, (2,)))
    assert are_isomorphic(a, b) == naive_isomorphic(a, b) is False


@pytest.mark.parametrize("k,n", sorted(KPATH_COUNTS))
def test_simple_kpath_counts(k, n):
    r = X.count_simple_kpaths(n, k)
    assert (r.record_count, r.class_count) == KPATH_COUNTS[(k, n)]
    assert r.class_count >= k ** (n - 2 * k - 2)
    assert r.largest_class <= 2 and 2 * r.class_count >= r.record_count
    assert r.ok


@pytest.mark.parametrize("k,n", [(2, 6), (2, 7), (2, 8), (3, 8), (3, 9), (2, 10)])
def test_generated_simple_kpaths_are_recognized(k, n):
    from itertools import product
    for x in product(range(1, k + 1), repeat=n - 2 * k - 1):
        g = X.simple_kpath_from_record(X.SimpleKPathRecord(k, n, x))
        assert simple_kpath_recognize(g, k)[0]
        assert exact_pathwidth(g)[0] == k
        degs = sorted(g.degree(v) for v in range(n))
        assert degs[:2] == [k, k] and degs[2] > k


def test_count_cap():
    with pytest.raises(SizeLimitError):
        X.count_simple_kpaths(20, 2, cap=100)


# --- grids ------------------------------------------------------------------------------------


def test_grid_edge_counts():
    for bits in (0, 1):
        g = X.build_triangulated_grid(2, 2, bits).graph
        assert (g.n, g.m) == (4, 5)
    g = X.build_triangulated_grid(3, 3, 0).graph
    assert (g.n, g.m) == (9, 16)


def test_grid_diagonal_bits_choose_the_diagonal():
    a = X.build_triangulated_grid(2, 2, 0)
    b = X.build_triangulated_grid(2, 2, 1)
    assert a.graph.has_edge(a.vertex(1, 1), a.vertex(2, 2))
    assert b.graph.has_edge(b.vertex(2, 1), b.vertex(1, 2))
    assert a.graph != b.graph


def test_rows_and_columns_are_paths():
    grid = X.build_triangulated_grid(4, 3, 0b101011)
    for i in range(1, 4):
        r = grid.row(i)
        assert all(grid.graph.has_edge(r[j], r[j + 1]) for j in range(len(r) - 1))
    for j in range(1, 5):
        c = grid.column(j)
        assert all(grid.graph.has_edge(c[i], c[i + 1]) for i in range(len(c) - 1))


def test_internal_vertices():
    grid = X.build_triangulated_grid(4, 4)
    assert len(grid.internal(1)) == 4
    assert X.build_triangulated_grid(2, 2).internal(1) == []


def test_double_grid_sizes():
    assert X.double_grid_bits(3) == 16
    g3 = X.build_double_grid(X.TriangulatedDoubleGrid.from_bitmap(3, 0))
    assert (g3.n, g3.m) == (18, 48)
    g2 = X.build_double_grid(X.TriangulatedDoubleGrid.from_bitmap(2, 0))
    assert (g2.n, g2.m) == (8, 18)
    assert len(X.boundary_cycle(3)) == 8


def test_double_grids_are_planar_triangulations():
    rng = random.Random(4)
    for l in (2, 3, 4):
        for _ in range(40):
            g = X.build_double_grid(X.TriangulatedDoubleGrid.from_bitmap(l, rng.getrandbits(X.double_grid_bits(l))))
            assert g.n == 2 * l * l and g.m == 3 * g.n - 6
            assert X.is_planar(g)


def test_double_grid_l2_count():
    r = X.count_double_grids(2)
    assert r.class_count == 6 and r.bound == 1 and r.ok


def test_double_grid_automorphisms_bounded():
    rng = random.Random(8)
    for _ in range(30):
        g = X.build_double_grid(X.TriangulatedDoubleGrid.from_bitmap(3, rng.getrandbits(16)))
        assert automorphism_count(g) <= 4 * g.m


def test_double_grid_range():
    with pytest.raises(SizeLimitError):
        X.count_double_grids(4)


# --- jumps --------------------------------------------------------------------------------------


def test_plain_3x3_grid():
    g = X.build_triangulated_grid(3, 3, 0).graph
    assert not X.jump_experiment(g, [], 5)
    assert X.jump_experiment(g, [], 4)


def test_jumps_are_disjoint_non_edges():
    rng = random.Random(7)
    grid = X.build_triangulated_grid(6, 6, rng.getrandbits(25))
    js = X.random_internal_jumps(grid, 3, 1, rng)
    used = [v for e in js.jumps for v in e]
    assert len(used) == len(set(used)) == 6
    assert all(v in grid.internal(1) for v in used)
    assert not any(grid.graph.has_edge(*e) for e in js.jumps)


def test_jump_monotonicity_on_4x4():
    rng = random.Random(44)
    for _ in range(5):
        grid = X.build_triangulated_grid(4, 4, rng.getrandbits(9))
        js = sorted(X.random_internal_jumps(grid, 2, 1, rng).jumps)
        for t in (5, 6):
            seen = [X.jump_experiment(grid, js[:c], t) for c in range(len(js) + 1)]
            assert seen == sorted(seen)


def test_jump_set_rejects_edges():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        JumpSet(g, frozenset([(0, 1)]))


# --- set families ------------------------------------------------------------------------------


def test_vc_examples():
    assert X.vc_dimension(X.SetFamily(2, [[], [0], [1], [0, 1]]))[0] == 2
    assert X.vc_dimension(X.SetFamily(3, [[], [0], [1], [2]]))[0] == 1


def test_large_family_forces_dimension():
    rng = random.Random(2)
    n, d = 8, 1
    sets = set()
    while len(sets) <= 2 * n ** d:
        sets.add(frozenset(x for x in range(n) if rng.random() < 0.5))
    assert X.vc_dimension(X.SetFamily(n, sets))[0] >= d + 1


def test_vc_matches_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        ground = rng.randint(1, 7)
        sets = [[x for x in range(ground) if rng.random() < 0.5] for _ in range(rng.randint(1, 20))]
        fam = X.SetFamily(ground, sets)
        d, wit = X.vc_dimension(fam)
        assert d == naive_vc_dimension(ground, sets)
        assert len(wit) == d
        assert len(fam.sets) <= X.sauer_shelah_bound(ground, d)


def test_set_family_checks_ground():
    with pytest.raises(ValueError):
        X.SetFamily(2, [[0, 2]])


# --- apex stripping -------------------------------------------------------------------------------


def _k2_guest(host, leaf, apex):
    return Embedding(complete_graph(2), host, [leaf, apex])


def test_single_guest_keeps_its_apex():
    host = complete_graph(4)
    r = X.apex_strip(host, [_k2_guest(host, 0, 3)], 1)
    assert r.apex == (3,) and len(r.surviving) == 1


def test_majority_apex_set():
    host = complete_graph(6)
    fam = [_k2_guest(host, 1 + i % 4, 0) for i in range(7)] + [_k2_guest(host, 2 + i, 1) for i in range(3)]
    r = X.apex_strip(host, fam, 1)
    assert r.apex == (0,)
    assert len(r.surviving) == 7 >= math.ceil(10 / 6)
    assert r.host_sub.n == 5


def test_shared_apex_keeps_everyone():
    host = complete_graph(5)
    fam = [_k2_guest(host, i, 4) for i in range(4)]
    assert X.apex_strip(host, fam, 1).surviving == fam


def test_apex_pigeonhole_random():
    rng = random.Random(12)
    for _ in range(100):
        n, t = rng.randint(4, 8), rng.randint(1, 2)
        host = Graph(n, [p for p in combinations(range(n), 2) if rng.random() < 0.7])
        guest = add_universal_vertices(Graph(1), t)
        fam = []
        for _ in range(rng.randint(1, 30)):
            fam.append(Embedding(guest, host, rng.sample(range(n), guest.n)))
        r = X.apex_strip(host, fam, t)
        assert len(r.surviving) >= len(fam) / math.comb(n, t)
        assert all(set(r.apex) <= set(host.adj[v]) for v in r.sub_vertices)


# --- pw2 experiment ---------------------------------------------------------------------------


@pytest.mark.parametrize("n,classes", [(6, 2), (7, 3), (8, 6)])
def test_pw2_experiment(n, classes):
    r = X.pw2_lowerbound_experiment(n)
    assert r.classes == classes
    assert r.host_vertices == classes * n
    assert r.size_bound == math.ceil(math.sqrt(classes))
    assert r.mechanism_ok


# --- reports -------------------------------------------------------------------------------------


def test_reports():
    rows = [{"a": 1, "pass": True}, {"a": 2, "pass": False}]
    assert X.to_csv(rows) == "a,pass\n1,True\n2,False\n"
    md = X.to_markdown("demo", rows)
    assert md.startswith("# demo") and "1/2 rows pass." in md
    assert X.to_csv([]) == ""
