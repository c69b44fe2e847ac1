"""Finite simple graphs on vertices 0..n-1, plus embeddings and jump sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

SUBGRAPH = "subgraph"
INDUCED = "induced"
MODES = (SUBGRAPH, INDUCED)


def _norm(u, v):
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph. Edges are stored as sorted pairs (u, v), u < v."""

    __slots__ = ("n", "edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            es.add(_norm(u, v))
        self.n = n
        self.edges = frozenset(es)
        self._adj = None
        self._masks = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        edges = []
        for u, m in enumerate(masks):
            m >>= u + 1
            v = u + 1
            while m:
                if m & 1:
                    edges.append((u, v))
                m >>= 1
                v += 1
        return cls(n, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adj(self) -> tuple:
        if self._adj is None:
            nb = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nb[u].add(v)
                nb[v].add(u)
            self._adj = tuple(frozenset(s) for s in nb)
        return self._adj

    @property
    def masks(self) -> tuple:
        """Adjacency rows as int bitmasks. Meant for small graphs."""
        if self._masks is None:
            ms = [0] * self.n
            for u, v in self.edges:
                ms[u] |= 1 << v
                ms[v] |= 1 << u
            self._masks = tuple(ms)
        return self._masks

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def neighbors(self, u: int) -> frozenset:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def relabel(self, perm: Sequence[int], n: int | None = None) -> "Graph":
        """Image under vertex map ``perm`` (old index -> new index)."""
        return Graph(self.n if n is None else n, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph, relabeled by sorted order. Returns (graph, old indices)."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vs), es), vs

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def remove_edges(self, gone: Iterable[Sequence[int]]) -> "Graph":
        drop = {_norm(*e) for e in gone}
        return Graph(self.n, self.edges - drop)

    def complement(self) -> "Graph":
        return Graph(self.n, ((u, v) for u in range(self.n) for v in range(u + 1, self.n)
                              if (u, v) not in self.edges))

    def components(self, within: Iterable[int] | None = None) -> list:
        """Connected components (sorted vertex lists), ordered by smallest vertex."""
        alive = set(range(self.n)) if within is None else set(within)
        adj = self.adj
        out = []
        for s in sorted(alive):
            if s not in alive:
                continue
            alive.discard(s)
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in alive:
                        alive.discard(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def materialize(self, cap: int | None = None) -> "Graph":
        return self


# --- standard families -------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def grid_graph(a: int, b: int) -> Graph:
    """Plain a x b grid; vertex (x, y) (1-based) has index (y-1)*a + (x-1)."""
    es = []
    for y in range(b):
        for x in range(a):
            v = y * a + x
            if x + 1 < a:
                es.append((v, v + 1))
            if y + 1 < b:
                es.append((v, v + a))
    return Graph(a * b, es)


def complete_binary_tree(depth: int) -> Graph:
    """Heap-indexed complete binary tree with ``depth`` levels."""
    n = 2 ** depth - 1
    return Graph(n, ((i, (i - 1) // 2) for i in range(1, n)))


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list]:
    """Disjoint union; returns the graph and the offset of each part."""
    offs, es, total = [], [], 0
    for g in graphs:
        offs.append(total)
        es.extend((u + total, v + total) for u, v in g.edges)
        total += g.n
    return Graph(total, es), offs


# --- embeddings ---------------------------------------------------------------

@dataclass
class Embedding:
    guest: Graph
    host: object  # Graph or an implicit host exposing n and has_edge
    map: tuple
    mode: str = SUBGRAPH
    aux: dict = field(default_factory=dict)

    def __post_init__(self):
        self.map = tuple(int(x) for x in self.map)
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class Report:
    ok: bool
    message: str = ""
    pair: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_embedding(e: Embedding, mode: str | None = None) -> Report:
    """Check injectivity, edge preservation and (induced) non-edge preservation.

    The host only needs ``n`` and ``has_edge``, so implicit hosts work too.
    """
    mode = e.mode if mode is None else mode
    g, h, f = e.guest, e.host, e.map
    if len(f) != g.n:
        return Report(False, f"map has {len(f)} entries, guest has {g.n} vertices")
    seen = {}
    for x, y in enumerate(f):
        if not 0 <= y < h.n:
            return Report(False, f"vertex {x} maps outside host ({y})", (x,))
        if y in seen:
            return Report(False, f"not injective: {seen[y]} and {x} both map to {y}", (seen[y], x))
        seen[y] = x
    for u, v in sorted(g.edges):
        if not h.has_edge(f[u], f[v]):
            return Report(False, f"edge {u}-{v} maps to non-edge {f[u]}-{f[v]}", (u, v))
    if mode == INDUCED:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if (u, v) not in g.edges and h.has_edge(f[u], f[v]):
                    return Report(False, f"non-edge {u}-{v} maps to edge {f[u]}-{f[v]}", (u, v))
    return Report(True)


@dataclass(frozen=True)
class JumpSet:
    host: Graph
    jumps: frozenset
    disjoint: bool = False

    def __post_init__(self):
        js = frozenset(_norm(int(a), int(b)) for a, b in self.jumps)
        object.__setattr__(self, "jumps", js)
        for u, v in js:
            if u == v or not (0 <= u < self.host.n and 0 <= v < self.host.n):
                raise ValueError(f"bad jump {u}-{v}")
            if self.host.has_edge(u, v):
                raise ValueError(f"jump {u}-{v} is an edge of the host")
        if self.disjoint:
            used = [x for e in js for x in e]
            if len(used) != len(set(used)):
                raise ValueError("jumps are not pairwise disjoint")

    def apply(self) -> Graph:
        return self.host.add_edges(self.jumps)
