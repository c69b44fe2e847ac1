"""Seeded random instances and small exhaustive families used by tests and
experiments."""

from __future__ import annotations

import random
from itertools import combinations

from .decomp import TreeDecomposition
from .graph import Graph, complete_graph
from .iso import canonical_form, canonical_key


def random_k_tree(n: int, k: int, rng: random.Random):
    """Random k-tree on n >= k+1 vertices with its clique-bag decomposition.

    Vertices 0..k form the first clique; vertex v > k joins a random k-subset
    of an existing (k+1)-clique bag. Returns (graph, decomposition with n-k bags).
    """
    if n < k + 1:
        raise ValueError("a k-tree needs at least k+1 vertices")
    edges = list(complete_graph(k + 1).edges)
    bags = [frozenset(range(k + 1))]
    tree = []
    for v in range(k + 1, n):
        i = rng.randrange(len(bags))
        drop = rng.choice(sorted(bags[i]))
        base = bags[i] - {drop}
        edges.extend((u, v) for u in base)
        bags.append(base | {v})
        tree.append((i, len(bags) - 1))
    return Graph(n, edges), TreeDecomposition(bags, tree, 0)


def elimination_bags(g: Graph, order):
    """Bags v + later neighbours (no fill), one per vertex, tree by earliest later
    neighbour. Valid when ``order`` is a perfect elimination ordering."""
    pos = {v: i for i, v in enumerate(order)}
    bags, edges = [], []
    for i, v in enumerate(order):
        later = [w for w in g.adj[v] if pos[w] > i]
        bags.append(frozenset([v] + later))
    n = len(order)
    for i, v in enumerate(order):
        later = [pos[w] for w in bags[i] if w != v]
        if later:
            edges.append((i, min(later)))
        elif i != n - 1:
            edges.append((i, n - 1))
    return TreeDecomposition(bags, edges, n - 1)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def two_trees(n: int) -> list:
    """All 2-trees on n >= 2 vertices up to isomorphism (canonical forms)."""
    if n == 2:
        return [complete_graph(2)]
    level = {canonical_key(complete_graph(3)): complete_graph(3)}
    for size in range(4, n + 1):
        nxt = {}
        for g in level.values():
            for u, v in sorted(g.edges):
                h = Graph(size, list(g.edges) + [(u, size - 1), (v, size - 1)])
                key = canonical_key(h)
                nxt.setdefault(key, h)
        level = nxt
    return [canonical_form(level[k]) for k in sorted(level)]
