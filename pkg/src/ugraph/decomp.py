"""Tree, path and elimination-forest witnesses, exact width oracles, and the
logarithmic-depth rebalancing of tree-decompositions."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ParseError, SizeLimitError
from .graph import Graph, Report

MAX_EXACT_N = 14


@dataclass
class TreeDecomposition:
    bags: list
    tree_edges: list
    root: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.bags = [frozenset(b) for b in self.bags]
        self.tree_edges = [tuple(sorted(e)) for e in self.tree_edges]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self):
        nb = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            nb[a].append(b)
            nb[b].append(a)
        return [sorted(x) for x in nb]

    def children(self):
        """Children lists for the rooted view (root defaults to node 0)."""
        r = 0 if self.root is None else self.root
        nb = self.neighbors()
        ch = [[] for _ in self.bags]
        if not self.bags:
            return ch
        seen = {r}
        order = [r]
        for x in order:
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    ch[x].append(y)
                    order.append(y)
        return ch

    def depth(self) -> int:
        """Number of nodes on a longest root-to-leaf path."""
        if not self.bags:
            return 0
        ch = self.children()
        r = 0 if self.root is None else self.root
        best = 0
        stack = [(r, 1)]
        while stack:
            x, d = stack.pop()
            best = max(best, d)
            stack.extend((y, d + 1) for y in ch[x])
        return best

    def is_binary(self) -> bool:
        return all(len(c) <= 2 for c in self.children())


@dataclass
class PathDecomposition:
    bags: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.bags = [frozenset(b) for b in self.bags]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_tree(self) -> TreeDecomposition:
        return TreeDecomposition(list(self.bags), [(i, i + 1) for i in range(len(self.bags) - 1)], 0 if self.bags else None)


@dataclass
class EliminationForest:
    parent: list  # parent[v] = -1 for roots

    @property
    def n(self) -> int:
        return len(self.parent)

    def depth_of(self, v) -> int:
        d = 1
        while self.parent[v] >= 0:
            v = self.parent[v]
            d += 1
        return d

    @property
    def depth(self) -> int:
        return max((self.depth_of(v) for v in range(self.n)), default=0)

    def ancestors(self, v) -> list:
        out = []
        while self.parent[v] >= 0:
            v = self.parent[v]
            out.append(v)
        return out

    def children(self) -> list:
        ch = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return ch

    def roots(self) -> list:
        return [v for v, p in enumerate(self.parent) if p < 0]


# --- validation -------------------------------------------------------------------

def _is_tree(nnodes, edges):
    if nnodes == 0:
        return not edges
    if len(edges) != nnodes - 1:
        return False
    nb = [[] for _ in range(nnodes)]
    for a, b in edges:
        if not (0 <= a < nnodes and 0 <= b < nnodes) or a == b:
            return False
        nb[a].append(b)
        nb[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nnodes


def _validate_tree(bags, edges, g):
    if g.n and not bags:
        return Report(False, "no bags")
    if not _is_tree(len(bags), edges):
        return Report(False, "underlying graph is not a tree")
    where = [[] for _ in range(g.n)]
    for i, b in enumerate(bags):
        for v in b:
            if not 0 <= v < g.n:
                return Report(False, f"bag {i} holds unknown vertex {v}", (i,))
            where[v].append(i)
    for v in range(g.n):
        if not where[v]:
            return Report(False, f"vertex {v} in no bag", (v,))
    for u, v in sorted(g.edges):
        if not any(u in bags[i] for i in where[v]):
            return Report(False, f"edge {u}-{v} not covered", (u, v))
    nb = [[] for _ in bags]
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    for v in range(g.n):
        nodes = set(where[v])
        start = where[v][0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(nodes):
            return Report(False, f"bags of vertex {v} are not connected", (v,))
    return Report(True)


def validate(d, g: Graph) -> Report:
    """Check a decomposition witness against g."""
    if isinstance(d, TreeDecomposition):
        r = _validate_tree(d.bags, d.tree_edges, g)
        if r and d.root is not None and not 0 <= d.root < len(d.bags):
            return Report(False, "root is not a node")
        return r
    if isinstance(d, PathDecomposition):
        t = d.to_tree()
        return _validate_tree(t.bags, t.tree_edges, g)
    if isinstance(d, EliminationForest):
        if d.n != g.n:
            return Report(False, f"forest has {d.n} vertices, graph has {g.n}")
        for v in range(d.n):
            seen = {v}
            x = d.parent[v]
            while x >= 0:
                if x >= d.n or x in seen:
                    return Report(False, f"parent map has a cycle or bad index at {v}", (v,))
                seen.add(x)
                x = d.parent[x]
        for u, v in sorted(g.edges):
            if u not in d.ancestors(v) and v not in d.ancestors(u):
                return Report(False, f"edge {u}-{v} joins unrelated vertices", (u, v))
        return Report(True)
    raise TypeError(f"not a decomposition: {type(d).__name__}")


# --- reduction -------------------------------------------------------------------------

def reduce(d: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges st with B_s a subset of B_t until none remain."""
    bags = {i: b for i, b in enumerate(d.bags)}
    nb = {i: set() for i in bags}
    for a, b in d.tree_edges:
        nb[a].add(b)
        nb[b].add(a)
    root = d.root
    changed = True
    while changed:
        changed = False
        for s in sorted(bags):
            hit = None
            for t in sorted(nb[s]):
                if bags[s] <= bags[t]:
                    hit = t
                    break
            if hit is None:
                continue
            t = hit
            for x in nb[s]:
                if x != t:
                    nb[x].discard(s)
                    nb[x].add(t)
                    nb[t].add(x)
            nb[t].discard(s)
            del nb[s]
            del bags[s]
            if root == s:
                root = t
            changed = True
    keep = sorted(bags)
    pos = {x: i for i, x in enumerate(keep)}
    edges = sorted({tuple(sorted((pos[a], pos[b]))) for a in keep for b in nb[a]})
    return TreeDecomposition([bags[x] for x in keep], edges,
                             None if root is None else pos[root], dict(d.meta))


def reduce_path(d: PathDecomposition) -> PathDecomposition:
    bags = list(d.bags)
    changed = True
    while changed:
        changed = False
        for i in range(len(bags)):
            if (i > 0 and bags[i] <= bags[i - 1]) or (i + 1 < len(bags) and bags[i] <= bags[i + 1]):
                del bags[i]
                changed = True
                break
    return PathDecomposition(bags, dict(d.meta))


# --- exact oracles --------------------------------------------------------------

def _check_size(g, limit):
    if g.n > limit:
        raise SizeLimitError(f"exact oracle supports at most {limit} vertices, got {g.n}")


def _reach(masks, inside, v):
    """Component of v in G[inside | {v}] as a bitmask."""
    comp = 1 << v
    frontier = comp
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        x = low.bit_length() - 1
        new = masks[x] & inside & ~comp
        comp |= new
        frontier |= new
    return comp


def _q(masks, s, v):
    comp = _reach(masks, s, v)
    out = 0
    c = comp
    while c:
        low = c & -c
        c ^= low
        out |= masks[low.bit_length() - 1]
    return out & ~s & ~(1 << v)


def _bits(x):
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def exact_treewidth(g: Graph, max_n: int = MAX_EXACT_N):
    """Treewidth by the subset DP over elimination orderings.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is
    the set of vertices outside S + v reachable from v through S.
    """
    _check_size(g, max_n)
    n = g.n
    if n == 0:
        return -1, TreeDecomposition([], [], None)
    masks = g.masks
    full = (1 << n) - 1
    tw = {0: -1}
    choice = {}
    for s in range(1, full + 1):
        best, arg = None, None
        for v in _bits(s):
            rest = s & ~(1 << v)
            val = max(tw[rest], _q(masks, rest, v).bit_count())
            if best is None or val < best:
                best, arg = val, v
        tw[s] = best
        choice[s] = arg
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return tw[full], decomposition_from_order(g, order)


def elimination_width(g: Graph, order) -> int:
    masks = g.masks
    s = 0
    w = -1
    for v in order:
        w = max(w, _q(masks, s, v).bit_count())
        s |= 1 << v
    return w


def decomposition_from_order(g: Graph, order) -> TreeDecomposition:
    """Tree-decomposition whose bags are v + Q(earlier, v) along ``order``."""
    n = g.n
    if n == 0:
        return TreeDecomposition([], [], None)
    masks = g.masks
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    s = 0
    for v in order:
        bags.append(frozenset([v] + _bits(_q(masks, s, v))))
        s |= 1 << v
    edges = []
    for i, v in enumerate(order):
        later = [pos[w] for w in bags[i] if w != v]
        if later:
            edges.append((i, min(later)))
        elif i != n - 1:
            edges.append((i, n - 1))
    return TreeDecomposition(bags, edges, n - 1)


def exact_pathwidth(g: Graph, max_n: int = MAX_EXACT_N):
    """Pathwidth as vertex separation number, by subset DP."""
    _check_size(g, max_n)
    n = g.n
    if n == 0:
        return -1, PathDecomposition([])
    masks = g.masks
    full = (1 << n) - 1

    def boundary(s):
        c = 0
        for v in _bits(s):
            if masks[v] & ~s:
                c += 1
        return c

    vs = {0: 0}
    choice = {}
    for s in range(1, full + 1):
        bd = boundary(s)
        best, arg = None, None
        for v in _bits(s):
            val = max(vs[s & ~(1 << v)], bd)
            if best is None or val < best:
                best, arg = val, v
        vs[s] = best
        choice[s] = arg
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    pd = path_decomposition_from_layout(g, order)
    return pd.width, pd


def vertex_separation(g: Graph, order) -> int:
    masks = g.masks
    s = 0
    w = 0
    for v in order:
        s |= 1 << v
        w = max(w, sum(1 for x in _bits(s) if masks[x] & ~s))
    return w


def path_decomposition_from_layout(g: Graph, order) -> PathDecomposition:
    masks = g.masks
    s = 0
    bags = []
    for v in order:
        bd = [x for x in _bits(s) if masks[x] & ~s]
        bags.append(frozenset(bd + [v]))
        s |= 1 << v
    return PathDecomposition(bags)


def exact_treedepth(g: Graph, max_n: int = MAX_EXACT_N):
    """td(S) = 1 + min_v td(S - v) on connected S, max over components otherwise."""
    _check_size(g, max_n)
    n = g.n
    if n == 0:
        return 0, EliminationForest([])
    masks = g.masks
    memo = {}

    def comps(s):
        out = []
        while s:
            low = s & -s
            c = _reach(masks, s, low.bit_length() - 1)
            out.append(c)
            s &= ~c
        return out

    def td(s):
        if s in memo:
            return memo[s][0]
        cs = comps(s)
        if len(cs) > 1:
            val = max(td(c) for c in cs)
            memo[s] = (val, None)
            return val
        if s & (s - 1) == 0:
            memo[s] = (1, s.bit_length() - 1)
            return 1
        best, arg = None, None
        for v in _bits(s):
            val = 1 + td(s & ~(1 << v))
            if best is None or val < best:
                best, arg = val, v
        memo[s] = (best, arg)
        return best

    full = (1 << n) - 1
    depth = td(full)
    parent = [-1] * n

    def build(s, par):
        for c in comps(s):
            td(c)
            r = memo[c][1]
            parent[r] = par
            rest = c & ~(1 << r)
            if rest:
                build(rest, r)

    build(full, -1)
    return depth, EliminationForest(parent)


def forest_depth_from_order(g: Graph, order) -> int:
    """Depth of the elimination forest that roots each component at its
    earliest vertex in ``order`` and recurses."""
    masks = g.masks
    rank = {v: i for i, v in enumerate(order)}

    def rec(s):
        best = 0
        while s:
            low = s & -s
            c = _reach(masks, s, low.bit_length() - 1)
            s &= ~c
            r = min(_bits(c), key=rank.__getitem__)
            best = max(best, 1 + rec(c & ~(1 << r)))
        return best

    return rec((1 << g.n) - 1)


# --- log-depth balancing --------------------------------------------------------------

def _tree_adj(nnodes, edges):
    nb = [[] for _ in range(nnodes)]
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    return [sorted(x) for x in nb]


def _piece_components(nb, piece, removed):
    left = set(piece)
    left.discard(removed)
    out = []
    for s in sorted(left):
        if s not in left:
            continue
        comp = {s}
        left.discard(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y in left:
                    left.discard(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def _centroid(nb, piece):
    best, arg = None, None
    for t in sorted(piece):
        big = max((len(c) for c in _piece_components(nb, piece, t)), default=0)
        if best is None or big < best:
            best, arg = big, t
    return arg


def _path_in(nb, piece, a, b):
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y in piece and y not in prev:
                prev[y] = x
                stack.append(y)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def _dist_in(nb, piece, src):
    dist = {src: 0}
    queue = [src]
    for x in queue:
        for y in nb[x]:
            if y in piece and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


DEPTH_CONSTANT = 3


def balance_log_depth(d: TreeDecomposition, g: Graph) -> TreeDecomposition:
    """Rooted binary tree-decomposition of logarithmic depth.

    The input is reduced first so every adhesion has at most k vertices. A
    piece of the input tree is attached to the rest through at most two tree
    edges; its interface W is the union of those adhesions (<= 2k vertices).
    With one boundary edge the piece is split at its centroid t; with two, at
    the node t of the path between the boundary nodes nearest to the centroid,
    so every sub-piece again has at most two boundary edges. The new bag is
    W + B_t, of size <= 3k + 1. Sub-pieces hang below it through a
    weight-balanced binary merge whose bags are unions of the sub-pieces'
    interfaces.
    """
    k = d.width
    rd = reduce(d)
    bags = rd.bags
    nb = _tree_adj(len(bags), rd.tree_edges)
    out_bags, out_edges = [], []

    def adh(a, b):
        return bags[a] & bags[b]

    def new_node(bag):
        out_bags.append(frozenset(bag))
        return len(out_bags) - 1

    def merge(items):
        # items: list of (weight, root node, interface)
        if len(items) == 1:
            return items[0][1], items[0][2]
        total = sum(w for w, _, _ in items)
        acc, cut, best = 0, 1, None
        for i in range(1, len(items)):
            acc += items[i - 1][0]
            gap = abs(total - 2 * acc)
            if best is None or gap < best:
                best, cut = gap, i
        left = merge(items[:cut])
        right = merge(items[cut:])
        iface = left[1] | right[1]
        node = new_node(iface)
        out_edges.append((node, left[0]))
        out_edges.append((node, right[0]))
        return node, iface

    def build(piece, bnd):
        w = frozenset().union(*[adh(a, b) for a, b in bnd]) if bnd else frozenset()
        if len(piece) == 1:
            (t,) = piece
            return new_node(w | bags[t]), w
        if len(bnd) <= 1:
            t = _centroid(nb, piece)
        else:
            c = _centroid(nb, piece)
            path = _path_in(nb, piece, bnd[0][0], bnd[1][0])
            dist = _dist_in(nb, piece, c)
            t = min(path, key=lambda x: (dist[x], x))
        x = new_node(w | bags[t])
        subs = []
        for comp in _piece_components(nb, piece, t):
            cb = [(a, b) for a, b in bnd if a in comp]
            cb += [(y, t) for y in nb[t] if y in comp]
            root, iface = build(comp, cb)
            subs.append((len(comp), root, iface))
        if len(subs) == 1:
            out_edges.append((x, subs[0][1]))
        elif len(subs) > 1:
            total = sum(s[0] for s in subs)
            acc, cut, best = 0, 1, None
            for i in range(1, len(subs)):
                acc += subs[i - 1][0]
                gap = abs(total - 2 * acc)
                if best is None or gap < best:
                    best, cut = gap, i
            for part in (subs[:cut], subs[cut:]):
                r, _ = merge(part)
                out_edges.append((x, r))
        return x, w

    if not bags:
        return TreeDecomposition([], [], None, {"depth_constant": DEPTH_CONSTANT})
    root, _ = build(frozenset(range(len(bags))), [])
    res = TreeDecomposition(out_bags, out_edges, root)
    res.meta = {
        "input_width": k,
        "achieved_width": res.width,
        "width_bound": 3 * max(k, 0) + 1,
        "depth_constant": DEPTH_CONSTANT,
        "depth": res.depth(),
        "depth_bound": DEPTH_CONSTANT * math.log2(max(g.n, 1)) + 1,
        "normalization": "reduced input; repeated bags may remain and are harmless",
    }
    return res


def depth_bound(n: int) -> float:
    return DEPTH_CONSTANT * math.log2(max(n, 1)) + 1


# --- simple k-paths -----------------------------------------------------------------------

def simple_kpath_recognize(g: Graph, k: int):
    """Search for a path-decomposition into (k+1)-clique bags whose adhesions
    have size k and are pairwise distinct. Returns (ok, PathDecomposition|None)."""
    n = g.n
    if n < k + 1 or k < 1:
        return False, None
    if g.m != k * (k + 1) // 2 + k * (n - k - 1):
        return False, None
    adj = g.adj

    def is_clique(vs):
        vs = list(vs)
        return all(vs[j] in adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    from itertools import combinations

    def extend(bags, used, adhs):
        if len(used) == n:
            return bags
        cur = bags[-1]
        for y in sorted(cur):
            if not adj[y] <= used:
                continue
            a = cur - {y}
            if a in adhs:
                continue
            for v in sorted(set(range(n)) - used):
                if a <= adj[v]:
                    r = extend(bags + [a | {v}], used | {v}, adhs | {a})
                    if r:
                        return r
        return None

    for first in combinations(range(n), k + 1):
        if not is_clique(first):
            continue
        b0 = frozenset(first)
        r = extend([b0], set(first), frozenset())
        if r:
            pd = PathDecomposition(r)
            return True, pd
    return False, None


# --- JSON -------------------------------------------------------------------------------

def decomposition_to_json(d) -> str:
    if isinstance(d, PathDecomposition):
        obj = {"kind": "path", "nodes": len(d.bags), "bags": [sorted(b) for b in d.bags]}
    elif isinstance(d, TreeDecomposition):
        obj = {"kind": "tree", "nodes": len(d.bags), "edges": [list(e) for e in sorted(d.tree_edges)],
               "bags": [sorted(b) for b in d.bags], "root": d.root}
    elif isinstance(d, EliminationForest):
        obj = {"kind": "elimination", "nodes": d.n, "parent": list(d.parent),
               "bags": [sorted([v] + d.ancestors(v)) for v in range(d.n)]}
    else:
        raise TypeError(type(d).__name__)
    return json.dumps(obj)


def decomposition_from_json(text: str):
    try:
        obj = json.loads(text)
        kind = obj["kind"]
        if kind == "path":
            return PathDecomposition(obj["bags"])
        if kind == "tree":
            return TreeDecomposition(obj["bags"], [tuple(e) for e in obj["edges"]], obj.get("root"))
        if kind == "elimination":
            return EliminationForest(list(obj["parent"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad decomposition JSON: {exc}") from None
    raise ParseError(f"unknown decomposition kind {kind!r}")
