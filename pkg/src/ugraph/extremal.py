"""Generators and desk-scale experiments for the counting and lower-bound
arguments: simple k-paths, triangulated (double) grids, jumps, set families
and shattering, apex stripping.

Triangulated grid layout: vertex (x, y), 1 <= x <= a, 1 <= y <= b, has index
(y-1)*a + (x-1). Cell (x, y) is the square with lower-left corner (x, y); its
bit (index (y-1)*(a-1) + (x-1)) picks the diagonal (x,y)-(x+1,y+1) when 0 and
(x+1,y)-(x,y+1) when 1.

Double grid layout: grid 1 occupies 0..l^2-1, grid 2 the next l^2 indices.
Boundary vertices b_0..b_{4l-5} run counter-clockwise from (1,1) along the
bottom row; b_j of grid 1 is matched to b_j of grid 2. Band face j is the
quadrangle b_j^1 b_{j+1}^1 b_{j+1}^2 b_j^2; its bit picks b_j^1-b_{j+1}^2
when 0 and b_{j+1}^1-b_j^2 when 1. The full bitmap is
[grid-1 cells, grid-2 cells, band faces], least significant bit first.
"""

from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

import networkx as nx

from .errors import InvariantError, SizeLimitError
from .graph import Graph, JumpSet, disjoint_union
from .iso import automorphism_count, canonical_form, canonical_key
from .minor import DEFAULT_BUDGET, has_clique_minor

# --- simple k-paths --------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleKPathRecord:
    k: int
    n: int
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        if self.k < 2 or self.n < self.k + 4:
            raise ValueError("records need k >= 2 and n >= k+4")
        if len(self.x) != self.n - 2 * self.k - 1:
            raise ValueError(f"record length must be n-2k-1 = {self.n - 2 * self.k - 1}")
        if any(not 1 <= v <= self.k for v in self.x):
            raise ValueError("record entries must lie in 1..k")


def simple_kpath_bags(n: int, k: int, x=()) -> list:
    """Bags of G(x) on vertices 0..n-1.

    The first bags are the windows {i, .., i+k}; from bag k+1 on, each step
    drops the x-th smallest of the k older vertices and adds the next vertex.
    Works for every n >= k+1 (x must then have max(0, n-2k-1) entries).
    """
    if n < k + 1:
        raise ValueError("need n >= k+1")
    x = tuple(x)
    if len(x) != max(0, n - 2 * k - 1):
        raise ValueError("record has the wrong length")
    first = min(k + 1, n - k)
    bags = [frozenset(range(i, i + k + 1)) for i in range(first)]
    cur = sorted(bags[-1])
    for j in x:
        older, newest = cur[:-1], cur[-1]
        del older[j - 1]
        cur = older + [newest, newest + 1]
        bags.append(frozenset(cur))
    if max(bags[-1]) != n - 1:
        raise InvariantError("bag sequence does not reach the last vertex")
    return bags


def simple_kpath_from_record(r: SimpleKPathRecord) -> Graph:
    bags = simple_kpath_bags(r.n, r.k, r.x)
    return Graph(r.n, {e for b in bags for e in combinations(sorted(b), 2)})


@dataclass
class KPathCount:
    n: int
    k: int
    record_count: int
    class_count: int
    largest_class: int
    bound: int
    representatives: list = field(repr=False)
    classes: dict = field(repr=False)  # canonical key -> list of records

    @property
    def ok(self) -> bool:
        return self.class_count >= self.bound and self.largest_class <= 2


def count_simple_kpaths(n: int, k: int, cap: int = 10 ** 6) -> KPathCount:
    """Enumerate every record, group the graphs by canonical form."""
    if k < 2 or n < k + 4:
        raise ValueError("need k >= 2 and n >= k+4")
    total = k ** (n - 2 * k - 1)
    if total > cap:
        raise SizeLimitError(f"{total} records exceed the cap of {cap}")
    classes = {}
    reps = {}
    for x in product(range(1, k + 1), repeat=n - 2 * k - 1):
        g = simple_kpath_from_record(SimpleKPathRecord(k, n, x))
        key = canonical_key(g)
        classes.setdefault(key, []).append(x)
        reps.setdefault(key, g)
    keys = sorted(classes)
    res = KPathCount(n, k, total, len(keys), max(len(v) for v in classes.values()),
                     k ** (n - 2 * k - 2), [canonical_form(reps[key]) for key in keys],
                     {key: classes[key] for key in keys})
    if 2 * res.class_count < res.record_count:
        raise InvariantError("a class holds more than two records")
    return res


# --- triangulated grids ------------------------------------------------------------------


def _bits(diagonals, count):
    if isinstance(diagonals, int):
        if diagonals < 0 or diagonals >> count:
            raise ValueError(f"diagonal bitmap needs exactly {count} bits")
        return [diagonals >> i & 1 for i in range(count)]
    bits = [int(b) for b in diagonals]
    if len(bits) != count or any(b not in (0, 1) for b in bits):
        raise ValueError(f"diagonal bitmap needs exactly {count} bits")
    return bits


def _grid_edges(a, b, bits, off=0):
    def idx(x, y):
        return off + (y - 1) * a + (x - 1)

    es = []
    for y in range(1, b + 1):
        for x in range(1, a + 1):
            if x < a:
                es.append((idx(x, y), idx(x + 1, y)))
            if y < b:
                es.append((idx(x, y), idx(x, y + 1)))
    for y in range(1, b):
        for x in range(1, a):
            if bits[(y - 1) * (a - 1) + (x - 1)] == 0:
                es.append((idx(x, y), idx(x + 1, y + 1)))
            else:
                es.append((idx(x + 1, y), idx(x, y + 1)))
    return es


@dataclass
class TriangulatedGrid:
    a: int  # number of columns (x range)
    b: int  # number of rows (y range)
    diagonals: tuple
    graph: Graph = field(repr=False)

    def vertex(self, x: int, y: int) -> int:
        return (y - 1) * self.a + (x - 1)

    def coords(self, v: int):
        y, x = divmod(v, self.a)
        return x + 1, y + 1

    def row(self, i: int) -> list:
        return [self.vertex(x, i) for x in range(1, self.a + 1)]

    def column(self, j: int) -> list:
        return [self.vertex(j, y) for y in range(1, self.b + 1)]

    def internal(self, tau: int) -> list:
        """Vertices whose row and column are both tau-internal (may be empty)."""
        return [self.vertex(x, y) for y in range(tau + 1, self.b - tau + 1)
                for x in range(tau + 1, self.a - tau + 1)]


def build_triangulated_grid(a: int, b: int, diagonals=0) -> TriangulatedGrid:
    if a < 2 or b < 2:
        raise ValueError("grid sides must be at least 2")
    bits = _bits(diagonals, (a - 1) * (b - 1))
    return TriangulatedGrid(a, b, tuple(bits), Graph(a * b, _grid_edges(a, b, bits)))


def boundary_cycle(l: int) -> list:
    """Indices of the boundary of an l x l grid, counter-clockwise from (1, 1)."""
    def idx(x, y):
        return (y - 1) * l + (x - 1)

    cyc = [idx(x, 1) for x in range(1, l + 1)]
    cyc += [idx(l, y) for y in range(2, l + 1)]
    cyc += [idx(x, l) for x in range(l - 1, 0, -1)]
    cyc += [idx(1, y) for y in range(l - 1, 1, -1)]
    return cyc


def double_grid_bits(l: int) -> int:
    return 2 * (l - 1) ** 2 + 4 * l - 4


@dataclass
class TriangulatedDoubleGrid:
    l: int
    first: tuple
    second: tuple
    faces: tuple

    @classmethod
    def from_bitmap(cls, l: int, bitmap: int) -> "TriangulatedDoubleGrid":
        bits = _bits(bitmap, double_grid_bits(l))
        c = (l - 1) ** 2
        return cls(l, tuple(bits[:c]), tuple(bits[c:2 * c]), tuple(bits[2 * c:]))


def build_double_grid(spec: TriangulatedDoubleGrid) -> Graph:
    l = spec.l
    if l < 2:
        raise ValueError("double grids need l >= 2")
    c = (l - 1) ** 2
    if len(spec.first) != c or len(spec.second) != c or len(spec.faces) != 4 * l - 4:
        raise ValueError("bitmap sizes do not match l")
    off = l * l
    es = _grid_edges(l, l, spec.first) + _grid_edges(l, l, spec.second, off)
    cyc = boundary_cycle(l)
    m = len(cyc)
    es += [(v, v + off) for v in cyc]
    for j in range(m):
        u, w = cyc[j], cyc[(j + 1) % m]
        if spec.faces[j] == 0:
            es.append((u, w + off))
        else:
            es.append((w, u + off))
    return Graph(2 * off, es)


def is_planar(g: Graph) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.check_planarity(h)[0]


@dataclass
class DoubleGridCount:
    l: int
    instances: int
    class_count: int
    bound: int
    euler_ok: bool
    planar_ok: bool
    aut_ok: bool
    max_aut: int
    edges: int
    class_sizes: dict = field(repr=False)

    @property
    def ok(self) -> bool:
        return self.class_count >= self.bound and self.euler_ok and self.planar_ok and self.aut_ok


def _double_grid_chunk(l, lo, hi, check_planarity):
    nv = 2 * l * l
    classes, reps = {}, {}
    euler_ok = planar_ok = True
    for bitmap in range(lo, hi):
        g = build_double_grid(TriangulatedDoubleGrid.from_bitmap(l, bitmap))
        if g.m != 3 * nv - 6:
            euler_ok = False
        if check_planarity and not is_planar(g):
            planar_ok = False
        key = canonical_key(g)
        if key not in classes:
            classes[key] = 0
            reps[key] = g
        classes[key] += 1
    return classes, reps, euler_ok, planar_ok


def count_double_grids(l: int, check_planarity: bool = True, progress=None,
                       threads: int = 1) -> DoubleGridCount:
    """Exact number of non-isomorphic double grids over every bitmap.

    Automorphism counts are computed once per class: isomorphic instances
    have equal automorphism groups, so this covers every instance.
    ``threads`` > 1 splits the bitmaps across worker processes.
    """
    if l not in (2, 3):
        raise SizeLimitError("count_double_grids supports l in {2, 3}")
    total = 1 << double_grid_bits(l)
    step = 4096
    chunks = [(lo, min(total, lo + step)) for lo in range(0, total, step)]
    classes, reps = {}, {}
    euler_ok = planar_ok = True

    def merge(part, done):
        nonlocal euler_ok, planar_ok
        c, r, e, p = part
        euler_ok &= e
        planar_ok &= p
        for key, cnt in c.items():
            if key not in classes:
                classes[key] = 0
                reps[key] = r[key]
            classes[key] += cnt
        if progress:
            progress(done, total, len(classes))

    if threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            futs = [ex.submit(_double_grid_chunk, l, lo, hi, check_planarity) for lo, hi in chunks]
            for (lo, hi), f in zip(chunks, futs):
                merge(f.result(), hi)
    else:
        for lo, hi in chunks:
            merge(_double_grid_chunk(l, lo, hi, check_planarity), hi)
    max_aut = max(automorphism_count(g) for g in reps.values())
    m = 3 * (2 * l * l) - 6
    return DoubleGridCount(l, total, len(classes), math.ceil(total / (24 * l * l)), euler_ok,
                           planar_ok, max_aut <= 4 * m, max_aut, m,
                           {i: c for i, c in enumerate(classes[k] for k in sorted(classes))})


# --- jumps -------------------------------------------------------------------------------


def random_internal_jumps(grid: TriangulatedGrid, count: int, tau: int, rng: random.Random) -> JumpSet:
    """Uniformly random pairwise disjoint non-edges among tau-internal vertices."""
    inner = grid.internal(tau)
    cands = [(u, v) for u, v in combinations(inner, 2) if not grid.graph.has_edge(u, v)]
    rng.shuffle(cands)
    used, out = set(), []
    for u, v in cands:
        if len(out) == count:
            break
        if u in used or v in used:
            continue
        used.update((u, v))
        out.append((u, v))
    return JumpSet(grid.graph, frozenset(out), disjoint=True)


def jump_experiment(grid, jumps, t: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Does grid + jumps contain a K_t minor?"""
    g = grid.graph if isinstance(grid, TriangulatedGrid) else grid
    if not isinstance(jumps, JumpSet):
        jumps = JumpSet(g, frozenset(jumps))
    return has_clique_minor(jumps.apply(), t, budget)


# --- set families ------------------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    ground: int
    sets: tuple

    def __post_init__(self):
        fs = tuple(sorted({frozenset(s) for s in self.sets}, key=lambda s: (len(s), sorted(s))))
        for s in fs:
            if any(not 0 <= x < self.ground for x in s):
                raise ValueError("set leaves the ground set")
        object.__setattr__(self, "sets", fs)

    def masks(self) -> list:
        return [sum(1 << x for x in s) for s in self.sets]


def sauer_shelah_bound(n: int, d: int) -> int:
    return sum(math.comb(n, i) for i in range(d + 1))


def vc_dimension(f: SetFamily, max_ground: int = 24, max_family: int = 10 ** 5):
    """(d, shattered set) with d the exact VC-dimension; checks Sauer-Shelah."""
    n = f.ground
    if n > max_ground or len(f.sets) > max_family:
        raise SizeLimitError("family too large for exhaustive shattering")
    masks = f.masks()
    if not masks:
        return -1, ()
    best, witness = 0, ()
    limit = min(n, max(0, len(masks).bit_length() - 1))
    for size in range(1, limit + 1):
        found = None
        for s in combinations(range(n), size):
            sm = sum(1 << x for x in s)
            if len({m & sm for m in masks}) == 1 << size:
                found = s
                break
        if found is None:
            break
        best, witness = size, found
    if len(masks) > sauer_shelah_bound(n, best):
        raise InvariantError("Sauer-Shelah inequality violated")
    return best, witness


# --- apex stripping -----------------------------------------------------------------------


@dataclass
class ApexStrip:
    apex: tuple
    host_sub: Graph
    sub_vertices: list
    surviving: list
    bound: float


def apex_set(e, t: int) -> tuple:
    """Images of the t universal vertices (aux['apex'] or the last t guest vertices)."""
    apex = e.aux.get("apex") if e.aux else None
    if apex is None:
        apex = range(e.guest.n - t, e.guest.n)
    return tuple(sorted(e.map[v] for v in apex))


def apex_strip(host: Graph, family, t: int) -> ApexStrip:
    family = list(family)
    if not family:
        raise ValueError("empty family")
    counts = {}
    for e in family:
        s = apex_set(e, t)
        counts[s] = counts.get(s, 0) + 1
    best = min(counts, key=lambda s: (-counts[s], s))
    common = set(range(host.n)) - set(best)
    for a in best:
        common &= host.adj[a]
    sub, verts = host.induced(sorted(common))
    surviving = [e for e in family if apex_set(e, t) == best]
    bound = len(family) / math.comb(host.n, t)
    if len(surviving) < bound:
        raise InvariantError("pigeonhole bound violated")
    return ApexStrip(best, sub, verts, surviving, bound)


# --- pw2 lower-bound mechanism ------------------------------------------------------------


@dataclass
class PW2Report:
    n: int
    classes: int
    host_vertices: int
    size_bound: int
    mechanism_ok: bool
    rows: list = field(repr=False)


def pw2_lowerbound_experiment(n: int) -> PW2Report:
    """Disjoint union of all n-vertex simple 2-paths, with the endpoint-bag check.

    For each component the two degree-2 vertices must be exactly the private
    vertices of the first and last bags of its reduced path-decomposition.
    """
    from .decomp import reduce_path, simple_kpath_recognize

    if not 6 <= n <= 8:
        raise SizeLimitError("pw2 experiment supports 6 <= n <= 8")
    res = count_simple_kpaths(n, 2)
    host, offs = disjoint_union(res.representatives)
    rows, all_ok = [], True
    for i, g in enumerate(res.representatives):
        ok, pd = simple_kpath_recognize(g, 2)
        low = sorted(v for v in range(g.n) if g.degree(v) == 2)
        good = False
        if ok:
            bags = reduce_path(pd).bags
            ends = sorted(list(bags[0] - bags[1]) + list(bags[-1] - bags[-2]))
            good = ends == low and len(low) == 2
        all_ok &= good
        rows.append({"component": i, "offset": offs[i], "degree2": low, "endpoint_bags_ok": good})
    if host.n != res.class_count * n:
        raise InvariantError("union host size mismatch")
    return PW2Report(n, res.class_count, host.n, math.isqrt(res.class_count - 1) + 1, all_ok, rows)


# --- reports -------------------------------------------------------------------------------


def to_csv(rows: list) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def to_markdown(title: str, rows: list) -> str:
    lines = [f"# {title}", ""]
    if rows:
        cols = list(rows[0])
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "---|" * len(cols))
        for r in rows:
            lines.append("| " + " | ".join(str(r[c]) for c in cols) + " |")
    passed = sum(1 for r in rows if r.get("pass") in (True, "pass"))
    lines += ["", f"{passed}/{len(rows)} rows pass.", ""]
    return "\n".join(lines)
