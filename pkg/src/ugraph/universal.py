"""Universal graph constructions together with the metadata their embedders use.

Index layouts (all reproducible, all documented here):

* treedepth: heap order of the complete n-ary tree of depth k, so the
  children of v are v*n+1 .. v*n+n; the graph is its ancestor closure.
* pathwidth: blocks S_1..S_{n-1} first (S_i = [(i-1)k, ik)), then the copies
  U'_1..U'_{n-2} of the (n-1, k-1) artifact one after the other. For k = 1
  the caterpillar has spine 0..n-1 and the pendants of spine vertex j at
  n + j(n-1) + t, t < n-1.
* treewidth: level by level through the bag skeleton; see TreewidthHost.
* tw2quasi: H_n first, then one block per (edge of H_n, copy); see QuasiHost.

The treewidth and tw2quasi hosts are implicit: they expose ``n``,
``has_edge`` and ``materialize`` and never store their edge sets.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from . import decomp
from .decomp import EliminationForest, PathDecomposition, TreeDecomposition
from .errors import ClassViolationError, InvariantError, SizeLimitError
from .graph import INDUCED, MODES, SUBGRAPH, Graph, complete_graph, disjoint_union
from .iso import canonical_key

DEFAULT_CAP = 10 ** 7

TREEDEPTH = "treedepth"
PATHWIDTH = "pathwidth"
TREEWIDTH = "treewidth"
TW2QUASI = "tw2quasi"
CLASS_KINDS = (TREEDEPTH, PATHWIDTH, TREEWIDTH, TW2QUASI)

POLYNOMIAL = "polynomial"
EXPONENTIAL_FALLBACK = "exponentialFallback"


def _check_cap(size, cap, what):
    if cap is not None and size > cap:
        raise SizeLimitError(f"{what} has {size} vertices, over the cap of {cap}")


def _check_params(n, k):
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")


@dataclass
class UniversalArtifact:
    graph: object  # Graph, or an implicit host with n / has_edge / materialize
    class_kind: str
    k: int
    n: int
    mode: str = SUBGRAPH
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.graph.n

    def certificate(self, cap: int = DEFAULT_CAP):
        """Decomposition witness for the host graph."""
        if self.class_kind == TREEDEPTH:
            return EliminationForest(list(self.meta["parent"]))
        if self.class_kind == PATHWIDTH:
            return PathDecomposition(pathwidth_bags(self.meta["layout"]))
        if self.class_kind == TREEWIDTH:
            return self.graph.skeleton_decomposition(cap)
        if self.class_kind == TW2QUASI:
            return self.graph.decomposition(cap)
        raise ValueError(self.class_kind)

    def explicit(self, cap: int = DEFAULT_CAP) -> Graph:
        if isinstance(self.graph, Graph):
            return self.graph
        return self.graph.materialize(cap)

    def describe(self) -> dict:
        """JSON-ready summary (the CLI sidecar)."""
        out = {"classKind": self.class_kind, "k": self.k, "n": self.n, "mode": self.mode,
               "vertices": self.order}
        for key in ("specialEdge", "bagSkeleton", "degeneracyOrder", "provider", "layoutSummary"):
            if key in self.meta:
                out[key] = self.meta[key]
        return out


# --- treedepth ---------------------------------------------------------------------------

def treedepth_size(n: int, k: int) -> int:
    return k if n == 1 else (n ** k - 1) // (n - 1)


def build_treedepth_universal(n: int, k: int, cap: int = DEFAULT_CAP) -> UniversalArtifact:
    """Ancestor closure of the complete n-ary rooted tree with k levels."""
    _check_params(n, k)
    size = treedepth_size(n, k)
    _check_cap(size, cap, "treedepth artifact")
    parent = [-1] + [(v - 1) // n for v in range(1, size)]
    edges = []
    for v in range(1, size):
        a = parent[v]
        while a >= 0:
            edges.append((a, v))
            a = parent[a]
    meta = {"parent": parent, "arity": n, "levels": k}
    return UniversalArtifact(Graph(size, edges), TREEDEPTH, k, n, SUBGRAPH, meta)


# --- pathwidth ---------------------------------------------------------------------------

def pathwidth_size(n: int, k: int) -> int:
    if k == 1:
        return n * n
    if n < k * k + k:
        return n
    return (n - 1) * k + (n - 2) * pathwidth_size(n - 1, k - 1)


@lru_cache(maxsize=None)
def _pw_layout(n, k):
    if k == 1:
        return {"kind": "caterpillar", "n": n, "k": 1, "size": n * n}
    if n < k * k + k:
        return {"kind": "clique", "n": n, "k": k, "size": n}
    sub = _pw_layout(n - 1, k - 1)
    base = (n - 1) * k
    return {
        "kind": "recursive", "n": n, "k": k,
        "size": base + (n - 2) * sub["size"],
        "blocks": [list(range(i * k, (i + 1) * k)) for i in range(n - 1)],
        "regions": [base + i * sub["size"] for i in range(n - 2)],
        "sub": sub,
    }


def _pw_edges(layout):
    kind = layout["kind"]
    n = layout["n"]
    if kind == "clique":
        return list(combinations(range(n), 2))
    if kind == "caterpillar":
        es = [(j, j + 1) for j in range(n - 1)]
        es += [(j, n + j * (n - 1) + t) for j in range(n) for t in range(n - 1)]
        return es
    blocks, regions, sub = layout["blocks"], layout["regions"], layout["sub"]
    es = []
    for i, blk in enumerate(blocks):
        es.extend(combinations(blk, 2))
        if i + 1 < len(blocks):
            es.extend((a, b) for a in blk for b in blocks[i + 1])
    sub_es = _pw_edges(sub)
    sz = sub["size"]
    for i, off in enumerate(regions):
        region = range(off, off + sz)
        es.extend((a, x) for a in blocks[i] + blocks[i + 1] for x in region)
        es.extend((u + off, v + off) for u, v in sub_es)
    return es


def pathwidth_bags(layout) -> list:
    """The explicit path-decomposition of the construction (local indices)."""
    kind = layout["kind"]
    n = layout["n"]
    if kind == "clique":
        return [frozenset(range(n))]
    if kind == "caterpillar":
        bags = []
        for j in range(n):
            bags.extend(frozenset((j, n + j * (n - 1) + t)) for t in range(n - 1))
            if j + 1 < n:
                bags.append(frozenset((j, j + 1)))
        return bags or [frozenset([0])]
    blocks, regions = layout["blocks"], layout["regions"]
    sub_bags = pathwidth_bags(layout["sub"])
    bags = []
    for i, off in enumerate(regions):
        pair = frozenset(blocks[i]) | frozenset(blocks[i + 1])
        bags.extend(pair | {x + off for x in b} for b in sub_bags)
    return bags


def build_pathwidth_universal(n: int, k: int, cap: int = DEFAULT_CAP) -> UniversalArtifact:
    _check_params(n, k)
    size = pathwidth_size(n, k)
    _check_cap(size, cap, "pathwidth artifact")
    layout = _pw_layout(n, k)
    g = Graph(size, _pw_edges(layout))
    meta = {"layout": layout, "layoutSummary": {"kind": layout["kind"], "size": size}}
    return UniversalArtifact(g, PATHWIDTH, k, n, SUBGRAPH, meta)


# --- treewidth ---------------------------------------------------------------------------

def default_bag_size(k: int) -> int:
    return 3 * k + 2


def default_levels(n: int) -> int:
    return math.ceil(decomp.DEPTH_CONSTANT * math.log2(max(n, 1))) + 1


class TreewidthHost:
    """Implicit host built from a rooted bag skeleton.

    Bags have L slots. A child bag is specified by (S, pattern, copy): the
    slots in the bitmask S keep the parent's vertex, every other slot gets a
    fresh vertex, and the two copies let a binary guest node send both children
    to the same specification. In induced mode a pattern is a labeled graph on
    the pairs of slots that are not both in S (bit t = t-th such pair in
    lexicographic order) and the roots range over all labeled graphs on the
    slots; in subgraph mode there is one root and one pattern and every bag is
    a clique.

    Children of a bag are ordered by S, then pattern, then copy, which gives
    K children per bag and a linear bag index b' = b*K + c one level down.
    Vertices are numbered level by level: root bag r owns r*L + slot; a fresh
    slot of the child c of bag p at level i >= 1 gets
    offset(i) + p*F + prefix(c) + rank of the slot among the fresh slots,
    where F is the number of fresh vertices below one bag.
    """

    def __init__(self, L: int, levels: int, mode: str = SUBGRAPH):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if not 1 <= L <= 16:
            raise ValueError("bag size must lie in 1..16")
        if levels < 1:
            raise ValueError("need at least one level")
        self.L, self.levels, self.mode = L, levels, mode
        induced = mode == INDUCED
        self.pairs = list(combinations(range(L), 2))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.roots = 1 << len(self.pairs) if induced else 1
        self.free_pos, self.patterns, self.fresh_slots = [], [], []
        self.base, self.cumf = [], []
        b = f = 0
        for s in range(1 << L):
            fr = [i for i, (x, y) in enumerate(self.pairs) if not (s >> x & 1 and s >> y & 1)]
            self.free_pos.append({p: t for t, p in enumerate(fr)})
            p_count = 1 << len(fr) if induced else 1
            self.patterns.append(p_count)
            fresh = [j for j in range(L) if not s >> j & 1]
            self.fresh_slots.append(fresh)
            self.base.append(b)
            self.cumf.append(f)
            b += 2 * p_count
            f += 2 * p_count * len(fresh)
        self.K, self.F = b, f
        counts = [self.roots * L] + [self.roots * self.K ** (i - 1) * self.F for i in range(1, levels)]
        self.offsets = [0]
        for c in counts:
            self.offsets.append(self.offsets[-1] + c)
        self.n = self.offsets[-1]

    def bags_at(self, level: int) -> int:
        return self.roots * self.K ** level

    # child specifications
    def child_index(self, s: int, pattern: int, copy: int) -> int:
        if not 0 <= pattern < self.patterns[s] or copy not in (0, 1):
            raise ValueError("bad child specification")
        return self.base[s] + 2 * pattern + copy

    def decode_child(self, c: int):
        s = bisect_right(self.base, c) - 1
        j = c - self.base[s]
        return s, j >> 1, j & 1

    def pattern_of(self, s: int, adjacent) -> int:
        """Pattern index for a child with shared slots s; ``adjacent(x, y)`` says
        whether slots x < y are joined."""
        if self.mode != INDUCED:
            return 0
        out = 0
        for p, t in self.free_pos[s].items():
            if adjacent(*self.pairs[p]):
                out |= 1 << t
        return out

    def root_pattern(self, adjacent) -> int:
        if self.mode != INDUCED:
            return 0
        out = 0
        for i, (x, y) in enumerate(self.pairs):
            if adjacent(x, y):
                out |= 1 << i
        return out

    # vertex ranks
    def fresh_vertex(self, level: int, b: int, slot: int) -> int:
        if level == 0:
            return b * self.L + slot
        p, c = divmod(b, self.K)
        s, pat, copy = self.decode_child(c)
        fresh = self.fresh_slots[s]
        nf = len(fresh)
        return self.offsets[level] + p * self.F + self.cumf[s] + (2 * pat + copy) * nf + fresh.index(slot)

    def locate(self, v: int):
        """(level, bag index, slot) of the bag where v is created."""
        if not 0 <= v < self.n:
            raise IndexError(v)
        level = bisect_right(self.offsets, v) - 1
        local = v - self.offsets[level]
        if level == 0:
            b, slot = divmod(local, self.L)
            return 0, b, slot
        p, rem = divmod(local, self.F)
        s = bisect_right(self.cumf, rem) - 1
        fresh = self.fresh_slots[s]
        j, r = divmod(rem - self.cumf[s], len(fresh))
        return level, p * self.K + self.base[s] + j, fresh[r]

    def _bit(self, level, b, x, y):
        if self.mode != INDUCED:
            return True
        p = self.pair_index[(min(x, y), max(x, y))]
        if level == 0:
            return bool(b >> p & 1)
        s, pat, _ = self.decode_child(b % self.K)
        return bool(pat >> self.free_pos[s][p] & 1)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        lu, bu, su = self.locate(u)
        lv, bv, sv = self.locate(v)
        if lu > lv:
            lu, bu, su, lv, bv, sv = lv, bv, sv, lu, bu, su
        if lu == lv:
            return bu == bv and self._bit(lv, bv, su, sv)
        if bv // self.K ** (lv - lu) != bu:
            return False
        x = bv
        for _ in range(lv - lu):
            s, _, _ = self.decode_child(x % self.K)
            if not s >> su & 1:
                return False
            x //= self.K
        return self._bit(lv, bv, su, sv)

    # explicit views
    def _walk(self, cap):
        _check_cap(self.n, cap, "treewidth host")
        stack = [(0, r, [r * self.L + j for j in range(self.L)], -1) for r in range(self.roots - 1, -1, -1)]
        while stack:
            level, b, verts, parent = stack.pop()
            yield level, b, verts, parent
            if level + 1 < self.levels:
                for c in range(self.K - 1, -1, -1):
                    s, _, _ = self.decode_child(c)
                    cb = b * self.K + c
                    cv = [verts[j] if s >> j & 1 else self.fresh_vertex(level + 1, cb, j) for j in range(self.L)]
                    stack.append((level + 1, cb, cv, (level, b)))

    def materialize(self, cap: int = DEFAULT_CAP) -> Graph:
        es = []
        for level, b, verts, _ in self._walk(cap):
            s = (1 << self.L) - 1 if level == 0 else self.decode_child(b % self.K)[0]
            for x, y in self.pairs:
                if level > 0 and s >> x & 1 and s >> y & 1:
                    continue
                if self._bit(level, b, x, y):
                    es.append((verts[x], verts[y]))
        return Graph(self.n, es)

    def skeleton_decomposition(self, cap: int = DEFAULT_CAP) -> TreeDecomposition:
        """The bag skeleton as a tree-decomposition of width L-1 (roots chained)."""
        bags, edges, ids = [], [], {}
        roots = []
        for level, b, verts, parent in self._walk(cap):
            ids[(level, b)] = len(bags)
            bags.append(frozenset(verts))
            if parent == -1:
                roots.append(ids[(level, b)])
            else:
                edges.append((ids[parent], ids[(level, b)]))
        edges += [(roots[i], roots[i + 1]) for i in range(len(roots) - 1)]
        td = TreeDecomposition(bags, edges, roots[0] if roots else None)
        td.meta = {"L": self.L, "levels": self.levels, "mode": self.mode}
        return td


def build_treewidth_universal(n: int, k: int, mode: str = SUBGRAPH, L: int | None = None,
                              levels: int | None = None, cap: int | None = None) -> UniversalArtifact:
    """Implicit host for graphs of treewidth <= k on <= n vertices.

    ``L`` defaults to 3k+2 (the bag size balance_log_depth guarantees) and
    ``levels`` to ceil(C log2 n) + 1 with C = decomp.DEPTH_CONSTANT. ``cap``,
    when given, bounds the host's vertex count (implicit hosts need none).
    """
    _check_params(n, k)
    L = default_bag_size(k) if L is None else L
    levels = default_levels(n) if levels is None else levels
    host = TreewidthHost(L, levels, mode)
    _check_cap(host.n, cap, "treewidth artifact")
    meta = {
        "L": L, "levels": levels, "arity": host.K, "roots": host.roots,
        "bagSkeleton": {"L": L, "levels": levels, "arity": host.K, "roots": host.roots,
                        "patterns": "labeled" if mode == INDUCED else "clique"},
    }
    return UniversalArtifact(host, TREEWIDTH, k, n, mode, meta)


# --- tw2quasi ----------------------------------------------------------------------------

@dataclass
class HnData:
    """H_n with e* = (0, 1). ``pieces`` lists, per glued piece, the piece's
    vertex list (piece-local index -> H vertex) and its path bags in H vertices."""
    n: int
    graph: Graph
    pieces: list
    flag: str

    @property
    def special(self):
        return (0, 1)


def simple_two_paths(n: int) -> list:
    """All simple 2-paths on n >= 3 vertices up to isomorphism, as (graph, bags)."""
    from .extremal import simple_kpath_bags

    if n < 3:
        raise ValueError("simple 2-paths need at least 3 vertices")
    records = list(product((1, 2), repeat=max(0, n - 5)))
    seen = {}
    for x in records:
        bags = simple_kpath_bags(n, 2, x)
        g = Graph(n, [e for b in bags for e in combinations(sorted(b), 2)])
        seen.setdefault(canonical_key(g), (g, bags))
    return [seen[key] for key in sorted(seen)]


class FallbackProvider:
    """H_n = all pinned simple 2-paths glued on one edge.

    Every n-vertex simple 2-path G and every ordered edge (p, q) of G with
    deg(p) = 2 or deg(q) = 2 contributes one piece with p -> 0 and q -> 1,
    up to colored isomorphism. Correct by construction, exponential in n.
    """

    name = "fallback"
    flag = EXPONENTIAL_FALLBACK

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._cache = {}

    def __call__(self, n: int) -> HnData:
        if n in self._cache:
            return self._cache[n]
        pieces_src = {}
        for g, bags in simple_two_paths(n):
            for p, q in sorted(g.edges) + sorted((b, a) for a, b in g.edges):
                if g.degree(p) != 2 and g.degree(q) != 2:
                    continue
                colors = [0] * n
                colors[p], colors[q] = 1, 2
                pieces_src.setdefault(canonical_key(g, colors), (g, bags, p, q))
        es, pieces = [(0, 1)], []
        total = 2
        for key in sorted(pieces_src):
            g, bags, p, q = pieces_src[key]
            where = {p: 0, q: 1}
            for v in range(n):
                if v not in where:
                    where[v] = total
                    total += 1
            _check_cap(total, self.cap, "fallback H_n")
            es.extend((where[a], where[b]) for a, b in g.edges)
            pieces.append(([where[v] for v in range(n)], [frozenset(where[v] for v in b) for b in bags]))
        data = HnData(n, Graph(total, es), pieces, self.flag)
        self._cache[n] = data
        return data


def check_provider(provider, n: int) -> list:
    """Return the (graph, p, q) pins of n-vertex simple 2-paths with deg(p) = 2
    that do not embed into H_n with p -> 0, q -> 1 (empty when the contract holds)."""
    from .embed import pinned_search

    data = provider(n)
    bad = []
    for g, _ in simple_two_paths(n):
        for a, b in sorted(g.edges):
            for p, q in ((a, b), (b, a)):
                if g.degree(p) == 2 and pinned_search(g, data, p, q) is None:
                    bad.append((g, p, q))
    return bad


class QuasiHost:
    """Implicit U_n: H_n first, then for each edge j = (x, y) of H_n (sorted) and
    each copy c < n-1 a block of |U_m| - 2 vertices holding a copy of U_m whose
    special edge (0, 1) is identified with (x, y)."""

    def __init__(self, param: int, hdata: HnData, child: "QuasiHost | None", copies: int):
        self.param = param
        self.hdata = hdata
        self.H = hdata.graph
        self.h = self.H.n
        self.child = child
        self.copies = copies if child is not None else 0
        self.block = child.n - 2 if child is not None else 0
        self.hedges = self.H.sorted_edges()
        self.edge_index = {e: i for i, e in enumerate(self.hedges)}
        self.n = self.h + len(self.hedges) * self.copies * self.block

    @property
    def special(self):
        return (0, 1)

    def locate(self, v: int):
        t, off = divmod(v - self.h, self.block)
        j, c = divmod(t, self.copies)
        return j, c, off + 2

    def to_host(self, j: int, c: int, local: int) -> int:
        if local < 2:
            return self.hedges[j][local]
        return self.h + (j * self.copies + c) * self.block + local - 2

    def has_edge(self, a: int, b: int) -> bool:
        if a == b or not (0 <= a < self.n and 0 <= b < self.n):
            return False
        if a > b:
            a, b = b, a
        if b < self.h:
            return self.H.has_edge(a, b)
        j, c, lb = self.locate(b)
        if a < self.h:
            x, y = self.hedges[j]
            if a == x:
                return self.child.has_edge(0, lb)
            if a == y:
                return self.child.has_edge(1, lb)
            return False
        ja, ca, la = self.locate(a)
        return (ja, ca) == (j, c) and self.child.has_edge(la, lb)

    def _local_edges(self):
        es = list(self.H.edges)
        if self.child is not None:
            sub = self.child._local_edges()
            for j in range(len(self.hedges)):
                for c in range(self.copies):
                    es.extend((self.to_host(j, c, u), self.to_host(j, c, v)) for u, v in sub)
        return es

    def materialize(self, cap: int = DEFAULT_CAP) -> Graph:
        _check_cap(self.n, cap, f"U_{self.param}")
        return Graph(self.n, self._local_edges())

    def _bags(self):
        """(bags, tree edges) with node 0 = hub bag {0, 1}."""
        bags, edges = [frozenset((0, 1))], []
        holder = {}
        for _, pbags in self.hdata.pieces:
            start = len(bags)
            bags.extend(pbags)
            edges.extend((start + i, start + i + 1) for i in range(len(pbags) - 1))
            first = next(start + i for i, b in enumerate(pbags) if {0, 1} <= b)
            edges.append((0, first))
            for i, b in enumerate(pbags):
                for e in combinations(sorted(b), 2):
                    holder.setdefault(e, start + i)
        if self.child is not None:
            cb, ce = self.child._bags()
            for j, e in enumerate(self.hedges):
                for c in range(self.copies):
                    start = len(bags)
                    bags.extend(frozenset(self.to_host(j, c, x) for x in b) for b in cb)
                    edges.extend((start + a, start + b) for a, b in ce)
                    edges.append((holder[e], start))
        return bags, edges

    def decomposition(self, cap: int = DEFAULT_CAP) -> TreeDecomposition:
        _check_cap(self.n, cap, f"U_{self.param}")
        bags, edges = self._bags()
        return TreeDecomposition(bags, edges, 0)


def _triangle_data() -> HnData:
    return HnData(3, complete_graph(3), [([0, 1, 2], [frozenset((0, 1, 2))])], POLYNOMIAL)


def child_param(n: int) -> int:
    """ceil(n/2 + 1)."""
    return (n + 3) // 2


def build_quasi_host(n: int, provider) -> QuasiHost:
    if n < 3:
        raise ValueError("tw2quasi needs n >= 3")
    if n == 3:
        return QuasiHost(3, _triangle_data(), None, 0)
    child = build_quasi_host(child_param(n), provider)
    data = provider(n)
    if data.graph.n < 2 or not data.graph.has_edge(0, 1):
        raise InvariantError("provider H_n must contain the special edge (0, 1)")
    return QuasiHost(n, data, child, n - 1)


def tw2quasi_size(n: int, provider) -> int:
    """|V(U_n)| from the displayed recurrence, evaluated on the provider's H_n."""
    if n == 3:
        return 3
    h = provider(n).graph
    return h.n + (n - 1) * h.m * (tw2quasi_size(child_param(n), provider) - 2)


_DEFAULT_PROVIDER = FallbackProvider()


def build_tw2_quasi_universal(n: int, provider=None, cap: int | None = None) -> UniversalArtifact:
    """U_n containing every n-vertex graph of treewidth <= 2 (implicit host)."""
    provider = _DEFAULT_PROVIDER if provider is None else provider
    host = build_quasi_host(n, provider)
    _check_cap(host.n, cap, f"U_{n}")
    chain, h = [], host
    while h is not None:
        chain.append({"n": h.param, "H_vertices": h.h, "H_edges": len(h.hedges),
                      "copies_per_edge": h.copies, "vertices": h.n})
        h = h.child
    meta = {"specialEdge": [0, 1], "provider": {"name": getattr(provider, "name", "custom"),
                                                 "flag": provider.flag},
            "copyTree": chain}
    return UniversalArtifact(host, TW2QUASI, 2, n, SUBGRAPH, meta)


# --- operations on graphs ---------------------------------------------------------------

def blowup(g: Graph, t: int) -> Graph:
    """Vertex u becomes the stable set u*t .. u*t+t-1."""
    if t < 1:
        raise ValueError("t must be positive")
    es = [(u * t + i, v * t + j) for u, v in g.edges for i in range(t) for j in range(t)]
    return Graph(g.n * t, es)


def blowup_decomposition(d: TreeDecomposition, t: int) -> TreeDecomposition:
    return TreeDecomposition([{u * t + i for u in b for i in range(t)} for b in d.bags],
                             list(d.tree_edges), d.root)


def add_universal_vertices(g: Graph, t: int) -> Graph:
    """G^{+t}: new vertices n..n+t-1 form a clique dominating g."""
    n = g.n
    es = list(g.edges)
    es += [(a, b) for a, b in combinations(range(n, n + t), 2)]
    es += [(v, a) for a in range(n, n + t) for v in range(n)]
    return Graph(n + t, es)


def degeneracy_order(g: Graph) -> list:
    """Smallest-last order with lowest-index tie-break: reverse of the order in
    which minimum-degree vertices are removed."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    removed = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        removed.append(v)
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return removed[::-1]


@dataclass
class LiftArtifact:
    graph: Graph
    base: Graph
    d: int
    order: list
    back: list     # back[v]: back-neighbours of base vertex v, in order position
    offsets: list  # offsets[v]: first vertex of S_v

    def member(self, v: int, bits: int) -> int:
        return self.offsets[v] + bits

    def inclusion(self) -> list:
        """Map of lift vertices into blowup(base, 2**d)."""
        t = 1 << self.d
        out = [0] * self.graph.n
        for v in range(self.base.n):
            for x in range(1 << len(self.back[v])):
                out[self.offsets[v] + x] = v * t + x
        return out


def sub_to_induced_lift(g: Graph, d: int, cap: int = DEFAULT_CAP) -> LiftArtifact:
    """Graph containing every subgraph of g as an induced subgraph.

    Base vertex v_i of the degeneracy order becomes S_i of size 2^{b_i}, b_i its
    number of back-neighbours; member x (an integer read as a bit vector over
    those back-neighbours) is complete to S_w exactly for the back-neighbours w
    whose bit is set. The S_i are laid out in order.
    """
    order = degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    back = [sorted((w for w in g.adj[v] if pos[w] < pos[v]), key=pos.get) for v in range(g.n)]
    worst = max((len(b) for b in back), default=0)
    if worst > d:
        raise ClassViolationError(f"graph is not {d}-degenerate (back-degree {worst})")
    offsets = [0] * g.n
    total = 0
    for v in order:
        offsets[v] = total
        total += 1 << len(back[v])
    _check_cap(total, cap, "lift")
    es = []
    for v in range(g.n):
        for s, w in enumerate(back[v]):
            sw = 1 << len(back[w])
            for x in range(1 << len(back[v])):
                if x >> s & 1:
                    a = offsets[v] + x
                    es.extend((a, offsets[w] + y) for y in range(sw))
    return LiftArtifact(Graph(total, es), g, d, order, back, offsets)


@dataclass
class UnionArtifact:
    graph: Graph
    n: int
    parts: list  # (size parameter, vertex offset, artifact)


def disconnected_lift(builder, n: int, cap: int = DEFAULT_CAP) -> UnionArtifact:
    """Disjoint union of ceil(n / 2^(i-1)) copies of builder(2^i), i = 0..top.

    top = max(1, ceil(log2 n)); see the decisions ledger for the n = 1 case.
    A component on s vertices fits a copy of builder(2^ceil(log2 s)).
    """
    if n < 1:
        raise ValueError("n must be positive")
    top = max(1, (n - 1).bit_length())
    plan = []
    for i in range(top + 1):
        count = -(-n * 2 // (1 << i))  # ceil(n / 2^(i-1))
        plan.append((1 << i, count))
    arts = {}
    total = 0
    for size, count in plan:
        arts[size] = builder(size)
        total += count * arts[size].order
        _check_cap(total, cap, "disconnected lift")
    graphs, params = [], []
    for size, count in plan:
        g = arts[size].explicit(cap)
        graphs.extend([g] * count)
        params.extend([size] * count)
    union, offs = disjoint_union(graphs)
    parts = [(p, o, arts[p]) for p, o in zip(params, offs)]
    return UnionArtifact(union, n, parts)


def build_artifact(class_kind: str, n: int, k: int = 2, mode: str = SUBGRAPH, L: int | None = None,
                   levels: int | None = None, cap: int = DEFAULT_CAP) -> UniversalArtifact:
    """Uniform entry point used by the CLI."""
    if class_kind == TREEDEPTH:
        return build_treedepth_universal(n, k, cap)
    if class_kind == PATHWIDTH:
        return build_pathwidth_universal(n, k, cap)
    if class_kind == TREEWIDTH:
        return build_treewidth_universal(n, k, mode, L, levels)
    if class_kind == TW2QUASI:
        return build_tw2_quasi_universal(n)
    raise ValueError(f"unknown class {class_kind!r}")


def artifact_from_description(desc: dict, cap: int = DEFAULT_CAP) -> UniversalArtifact:
    """Rebuild an artifact from its describe() dictionary (constructions are deterministic)."""
    kind = desc["classKind"]
    skel = desc.get("bagSkeleton") or {}
    if kind == TW2QUASI and desc.get("provider", {}).get("name", "fallback") != "fallback":
        raise ValueError("only the fallback provider can be rebuilt from a description")
    art = build_artifact(kind, int(desc["n"]), int(desc.get("k", 2)), desc.get("mode", SUBGRAPH),
                         skel.get("L"), skel.get("levels"), cap)
    if "vertices" in desc and int(desc["vertices"]) != art.order:
        raise InvariantError("rebuilt artifact size differs from its description")
    return art
