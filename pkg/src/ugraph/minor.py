"""Exact clique-minor testing for small graphs.

Delete/contract branching over edges, memoised on canonical forms of the
contracted graph, with safe reductions:

* vertices of degree <= 1 never help a K_t model (t >= 3);
* a degree-2 vertex can be contracted into a neighbour (t >= 4);
* the search runs per connected component.

With ``theorems=True`` (default) two exact shortcuts are also applied:
planar graphs have no K_5 minor (Wagner), and a graph with minimum degree
>= 3 has a K_4 minor (Dirac). ``theorems=False`` gives the bare search, used
to cross-check the shortcuts on small inputs.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from .errors import ResourceLimitError
from .graph import Graph
from .iso import canonical_key

DEFAULT_BUDGET = 10 ** 7


class _Search:
    def __init__(self, t, budget, theorems):
        self.t = t
        self.budget = budget
        self.theorems = theorems
        self.nodes = 0
        self.memo = set()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError(f"minor search exceeded budget of {self.budget} nodes")

    # state: adj dict rep -> set(rep); groups dict rep -> frozenset(original vertices)
    def reduce(self, adj, groups):
        t = self.t
        changed = True
        while changed:
            changed = False
            for v in sorted(adj):
                if v not in adj:
                    continue
                d = len(adj[v])
                if t >= 3 and d <= 1:
                    for w in adj[v]:
                        adj[w].discard(v)
                    del adj[v]
                    del groups[v]
                    changed = True
                elif t >= 4 and d == 2:
                    a = min(adj[v])
                    self.contract(adj, groups, a, v)
                    changed = True

    @staticmethod
    def contract(adj, groups, a, v):
        for w in adj[v]:
            if w != a:
                adj[w].discard(v)
                adj[w].add(a)
                adj[a].add(w)
        adj[a].discard(v)
        del adj[v]
        groups[a] = groups[a] | groups.pop(v)

    def clique(self, adj):
        t = self.t
        cand = sorted(v for v in adj if len(adj[v]) >= t - 1)
        if len(cand) < t:
            return None

        def grow(chosen, pool):
            if len(chosen) == t:
                return chosen
            if len(chosen) + len(pool) < t:
                return None
            for i, v in enumerate(pool):
                r = grow(chosen + [v], [w for w in pool[i + 1:] if w in adj[v]])
                if r:
                    return r
            return None

        return grow([], cand)

    def key(self, adj):
        vs = sorted(adj)
        pos = {v: i for i, v in enumerate(vs)}
        g = Graph(len(vs), ((pos[u], pos[w]) for u in vs for w in adj[u] if u < w))
        return canonical_key(g)

    def run(self, adj, groups):
        self.tick()
        t = self.t
        self.reduce(adj, groups)
        if len(adj) < t:
            return None
        comps = _components(adj)
        if len(comps) > 1:
            for comp in comps:
                sub = {v: set(adj[v]) for v in comp}
                r = self.run(sub, {v: groups[v] for v in comp})
                if r:
                    return r
            return None
        m = sum(len(a) for a in adj.values()) // 2
        if m < t * (t - 1) // 2:
            return None
        c = self.clique(adj)
        if c:
            return [sorted(groups[v]) for v in c]
        if self.theorems:
            if t >= 5 and _planar(adj):
                return None
            if t == 4:
                return self.k4_model(adj, groups)
        key = self.key(adj)
        if key in self.memo:
            return None
        u = min(adj, key=lambda x: (len(adj[x]), x))
        v = min(adj[u], key=lambda x: (len(adj[x]), x))
        a2 = {x: set(s) for x, s in adj.items()}
        g2 = dict(groups)
        self.contract(a2, g2, u, v)
        r = self.run(a2, g2)
        if r:
            return r
        a3 = {x: set(s) for x, s in adj.items()}
        a3[u].discard(v)
        a3[v].discard(u)
        r = self.run(a3, dict(groups))
        if r:
            return r
        self.memo.add(key)
        return None

    def k4_model(self, adj, groups):
        # min degree >= 3 here, so a K4 model exists; find it by bare search.
        inner = _Search(4, self.budget - self.nodes, theorems=False)
        r = inner.run({x: set(s) for x, s in adj.items()}, dict(groups))
        self.nodes += inner.nodes
        if r is None:
            raise AssertionError("graph of minimum degree 3 without K4 minor")
        return r


def _components(adj):
    seen, out = set(), []
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def _planar(adj):
    h = nx.Graph()
    h.add_nodes_from(adj)
    h.add_edges_from((u, w) for u in adj for w in adj[u] if u < w)
    return nx.check_planarity(h)[0]


def find_clique_minor(g: Graph, t: int, budget: int = DEFAULT_BUDGET, theorems: bool = True):
    """Return t branch sets (sorted vertex lists) of a K_t model, or None."""
    if t < 1:
        raise ValueError("t must be positive")
    if t == 1:
        return [[0]] if g.n else None
    if t == 2:
        e = min(g.edges) if g.edges else None
        return [[e[0]], [e[1]]] if e else None
    if t == 3:
        cyc = _find_cycle(g)
        if cyc is None:
            return None
        return [[cyc[0]], [cyc[1]], sorted(cyc[2:])]
    s = _Search(t, budget, theorems)
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    groups = {v: frozenset([v]) for v in range(g.n)}
    return s.run(adj, groups)


def has_clique_minor(g: Graph, t: int, budget: int = DEFAULT_BUDGET, theorems: bool = True) -> bool:
    return find_clique_minor(g, t, budget, theorems) is not None


def _find_cycle(g: Graph):
    parent = {}
    for s in range(g.n):
        if s in parent:
            continue
        parent[s] = -1
        stack = [s]
        while stack:
            x = stack.pop()
            for y in sorted(g.adj[x]):
                if y == parent[x]:
                    continue
                if y in parent:
                    # back edge x-y: walk both to their common ancestor
                    px, py = [x], [y]
                    anc = set()
                    a = x
                    while a != -1:
                        anc.add(a)
                        a = parent[a]
                    b = y
                    while b not in anc:
                        b = parent[b]
                        py.append(b)
                    a = x
                    while a != b:
                        a = parent[a]
                        px.append(a)
                    cyc = px + list(reversed(py[:-1]))
                    return cyc
                parent[y] = x
                stack.append(y)
    return None


def is_clique_model(g: Graph, sets) -> bool:
    """Independent check that ``sets`` is a K_t model in g."""
    used = set()
    for s in sets:
        if not s or used & set(s):
            return False
        used |= set(s)
        sub, _ = g.induced(s)
        if not sub.is_connected():
            return False
    for a, b in combinations(sets, 2):
        if not any(g.has_edge(x, y) for x in a for y in b):
            return False
    return True
