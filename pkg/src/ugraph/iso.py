"""Canonical forms, isomorphism and automorphism counting for small graphs.

Colour refinement with individualization. Cells are split by neighbour counts
into the current cells, so every step commutes with vertex relabeling; the
first smallest non-singleton cell is the branching target. Canonical labels
are the lexicographically largest leaf certificate, found with orbit pruning
by the automorphisms discovered on the way.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import SizeLimitError
from .graph import Graph


def _refine(masks, cells):
    while True:
        cms = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            cms.append(m)
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups = {}
            for v in c:
                mv = masks[v]
                key = tuple((mv & cm).bit_count() for cm in cms)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            changed = True
            for key in sorted(groups):
                out.append(tuple(groups[key]))
        if not changed:
            return out
        cells = out


def _initial_cells(n, colors):
    if colors is None:
        return [tuple(range(n))] if n else []
    by = {}
    for v in range(n):
        by.setdefault(colors[v], []).append(v)
    return [tuple(by[c]) for c in sorted(by)]


def _target(cells):
    best = -1
    size = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (size is None or len(c) < size):
            best, size = i, len(c)
    return best


def _individualize(masks, cells, i, v):
    c = cells[i]
    rest = tuple(x for x in c if x != v)
    return _refine(masks, cells[:i] + [(v,), rest] + cells[i + 1:])


def _leaf_cert(masks, cells):
    lab = [c[0] for c in cells]
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        m = masks[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(r)
    return tuple(rows), lab


def _orbits_fixing(autos, prefix, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in autos:
        if all(a[p] == p for p in prefix):
            for x in range(n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    return find


class _Canon:
    def __init__(self, masks, n):
        self.masks = masks
        self.n = n
        self.first = None
        self.best = None
        self.autos = []

    def leaf(self, cells, prefix):
        cert, lab = _leaf_cert(self.masks, cells)
        if self.first is None:
            self.first = self.best = (cert, lab, list(prefix))
            return self.n + 1
        for ref in (self.first, self.best):
            if cert == ref[0]:
                auto = [0] * self.n
                for a, b in zip(ref[1], lab):
                    auto[a] = b
                self.autos.append(auto)
                j = 0
                while j < len(prefix) and j < len(ref[2]) and prefix[j] == ref[2][j]:
                    j += 1
                return j
        if cert > self.best[0]:
            self.best = (cert, lab, list(prefix))
        return self.n + 1

    def dfs(self, cells, prefix):
        i = _target(cells)
        if i < 0:
            return self.leaf(cells, prefix)
        depth = len(prefix)
        explored = []
        for v in cells[i]:
            if explored and self.autos:
                find = _orbits_fixing(self.autos, prefix, self.n)
                rv = find(v)
                if any(find(w) == rv for w in explored):
                    continue
            explored.append(v)
            prefix.append(v)
            j = self.dfs(_individualize(self.masks, cells, i, v), prefix)
            prefix.pop()
            if j < depth:
                return j
        return self.n + 1


def canonical_label(g: Graph, colors: Sequence | None = None):
    """Return (key, lab) with lab[i] = original vertex placed at position i.

    Two (coloured) graphs are isomorphic iff their keys are equal.
    """
    n = g.n
    cells = _initial_cells(n, colors)
    if colors is None:
        ckey = ()
    else:
        ckey = tuple(sorted((c, colors.count(c)) for c in set(colors)))
    if n == 0:
        return (0, ckey, ()), []
    c = _Canon(g.masks, n)
    c.dfs(_refine(g.masks, cells), [])
    cert, lab, _ = c.best
    return (n, ckey, cert), lab


def canonical_key(g: Graph, colors: Sequence | None = None):
    return canonical_label(g, colors)[0]


def canonical_form(g: Graph) -> Graph:
    _, lab = canonical_label(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def _quick_invariant(g: Graph):
    return g.n, g.m, tuple(sorted(len(a) for a in g.adj))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if _quick_invariant(g1) != _quick_invariant(g2):
        return False
    return canonical_key(g1) == canonical_key(g2)


def automorphism_count(g: Graph, colors: Sequence | None = None) -> int:
    """Exact |Aut(g)| (colour-preserving if colors given) by orbit-stabilizer.

    Along the first branch of the search tree v_1, v_2, ..., the orbit of v_i
    under the pointwise stabilizer of v_1..v_{i-1} is the set of w in the
    target cell whose subtree holds a leaf equal to the first leaf.
    """
    n = g.n
    if n == 0:
        return 1
    masks = g.masks
    cells = _refine(masks, _initial_cells(n, colors))
    path = []
    inv = []
    while True:
        inv.append(tuple(len(c) for c in cells))
        i = _target(cells)
        if i < 0:
            break
        path.append((cells, i))
        cells = _individualize(masks, cells, i, cells[i][0])
    first_cert, first_lab = _leaf_cert(masks, cells)
    prefix_all = [c[i][0] for c, i in path]
    autos = []

    def search(cells, depth, prefix):
        if tuple(len(c) for c in cells) != inv[depth]:
            return None
        i = _target(cells)
        if i < 0:
            cert, lab = _leaf_cert(masks, cells)
            return lab if cert == first_cert else None
        tried = []
        for u in cells[i]:
            if tried and autos:
                find = _orbits_fixing(autos, prefix, n)
                if any(find(t) == find(u) for t in tried):
                    continue
            tried.append(u)
            prefix.append(u)
            r = search(_individualize(masks, cells, i, u), depth + 1, prefix)
            prefix.pop()
            if r is not None:
                return r
        return None

    order = 1
    for depth in range(len(path) - 1, -1, -1):
        cells, i = path[depth]
        prefix = prefix_all[:depth]
        v0 = cells[i][0]
        for w in cells[i][1:]:
            find = _orbits_fixing(autos, prefix, n)
            if find(w) == find(v0):
                continue
            lab = search(_individualize(masks, cells, i, w), depth + 1, prefix + [w])
            if lab is not None:
                auto = [0] * n
                for a, b in zip(first_lab, lab):
                    auto[a] = b
                autos.append(auto)
        find = _orbits_fixing(autos, prefix, n)
        r0 = find(v0)
        order *= sum(1 for w in cells[i] if find(w) == r0)
    return order


# --- enumeration ---------------------------------------------------------------

def _extend_all(reps, n, connected):
    """All graphs on n vertices obtained by adding vertex n-1 to reps."""
    seen = {}
    full = (1 << (n - 1)) - 1
    for g in reps:
        start = 1 if connected else 0
        for nb in range(start, full + 1):
            es = list(g.edges)
            es.extend((v, n - 1) for v in range(n - 1) if nb >> v & 1)
            h = Graph(n, es)
            key = canonical_key(h)
            if key not in seen:
                seen[key] = h
    return [canonical_form(seen[k]) for k in sorted(seen)]


@lru_cache(maxsize=None)
def _graphs(n: int, connected: bool) -> tuple:
    if n == 0:
        return () if connected else (Graph(0),)
    if n == 1:
        return (Graph(1),)
    return tuple(_extend_all(_graphs(n - 1, connected), n, connected))


def enumerate_connected_graphs(n: int):
    """One canonical representative per isomorphism class of connected graphs.

    Every connected graph has a vertex whose removal keeps it connected, so
    extending connected (n-1)-vertex classes by a vertex with a non-empty
    neighbourhood reaches every class.
    """
    if n > 8:
        raise SizeLimitError("enumerate_connected_graphs supports n <= 8")
    if n < 1:
        return iter(())
    return iter(_graphs(n, True))


def enumerate_graphs(n: int):
    """All isomorphism classes of graphs on n vertices (n <= 7)."""
    if n > 7:
        raise SizeLimitError("enumerate_graphs supports n <= 7")
    return iter(_graphs(n, False))
