"""Constructive embeddings into the universal graphs of ``universal``.

Every public procedure checks its own output with verify_embedding before
returning it and raises InvariantError otherwise, so no unverified
certificate ever leaves this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .decomp import (
    EliminationForest,
    PathDecomposition,
    TreeDecomposition,
    balance_log_depth,
    decomposition_to_json,
    exact_pathwidth,
    exact_treedepth,
    exact_treewidth,
    reduce_path,
    validate,
)
from .errors import ClassViolationError, InvariantError
from .graph import INDUCED, SUBGRAPH, Embedding, Graph, verify_embedding
from .universal import (
    PATHWIDTH,
    TREEDEPTH,
    TREEWIDTH,
    TW2QUASI,
    LiftArtifact,
    UnionArtifact,
    UniversalArtifact,
)


@dataclass
class GuestPreparation:
    guest: Graph
    witness: object  # EliminationForest | PathDecomposition | TreeDecomposition


def _json_witness(d):
    return json.loads(decomposition_to_json(d)) if d is not None else None


def _finish(guest, host, f, mode, aux):
    e = Embedding(guest, host, f, mode, aux)
    rep = verify_embedding(e)
    if not rep:
        raise InvariantError(f"{aux.get('procedure', 'embedding')} produced a bad map: {rep.message}")
    return e


def _require(cond, msg):
    if not cond:
        raise ClassViolationError(msg)


def _checked_witness(guest, witness):
    rep = validate(witness, guest)
    if not rep:
        raise ClassViolationError(f"supplied decomposition is invalid: {rep.message}")
    return witness


# --- treedepth --------------------------------------------------------------------------


def prepare_treedepth(guest: Graph, k: int, forest: EliminationForest | None = None) -> GuestPreparation:
    if forest is None:
        td, forest = exact_treedepth(guest)
    else:
        _checked_witness(guest, forest)
        td = forest.depth
    _require(td <= k, f"treedepth {td} exceeds {k}")
    return GuestPreparation(guest, forest)


def embed_treedepth(guest: Graph, artifact: UniversalArtifact, forest: EliminationForest | None = None) -> Embedding:
    """Map an elimination tree of the guest into T_{n,k}, children in index order."""
    _require(artifact.class_kind == TREEDEPTH, "not a treedepth artifact")
    _require(guest.n <= artifact.n, f"guest has {guest.n} > {artifact.n} vertices")
    _require(guest.n == 0 or guest.is_connected(), "guest must be connected (see disconnected_lift)")
    prep = prepare_treedepth(guest, artifact.k, forest)
    forest = prep.witness
    arity = artifact.meta["arity"]
    f = [0] * guest.n
    children = forest.children()
    stack = [(r, 0) for r in forest.roots()]
    while stack:
        v, h = stack.pop()
        f[v] = h
        for j, c in enumerate(sorted(children[v])):
            stack.append((c, h * arity + 1 + j))
    aux = {"procedure": "embed_treedepth", "decompositionUsed": _json_witness(forest), "dummies": []}
    return _finish(guest, artifact.graph, f, SUBGRAPH, aux)


# --- pathwidth --------------------------------------------------------------------------


def _bridge(g: Graph, bags):
    """Connect g without raising the width of its path-decomposition.

    Components meeting in a bag are joined inside that bag; consecutive bags
    lying in different components get a bridging bag {u, w} between them.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    extra = []
    for b in bags:
        vs = sorted(b)
        for v in vs[1:]:
            if find(v) != find(vs[0]):
                parent[find(v)] = find(vs[0])
                extra.append((vs[0], v))
    out = [bags[0]] if bags else []
    for prev, cur in zip(bags, bags[1:]):
        u, w = min(prev), min(cur)
        if find(u) != find(w):
            parent[find(w)] = find(u)
            extra.append((u, w))
            out.append(frozenset((u, w)))
        out.append(cur)
    return g.add_edges(extra), out


def _caterpillar(g: Graph, n: int):
    m = g.n
    spine = [v for v in range(m) if g.degree(v) >= 2] or [0]
    sset = set(spine)
    snb = {v: [w for w in g.adj[v] if w in sset] for v in spine}
    if any(len(x) > 2 for x in snb.values()):
        raise InvariantError("pathwidth-1 guest is not a caterpillar")
    start = min(v for v in spine if len(snb[v]) <= 1) if len(spine) > 1 else spine[0]
    walk, prev = [start], None
    while len(walk) < len(spine):
        nxt = [w for w in snb[walk[-1]] if w != prev]
        if not nxt:
            raise InvariantError("caterpillar spine is not a path")
        prev = walk[-1]
        walk.append(nxt[0])
    if len(walk) > n:
        raise InvariantError("caterpillar spine longer than the host path")
    f = [None] * m
    for j, v in enumerate(walk):
        f[v] = j
    used = [0] * len(walk)
    pos = {v: j for j, v in enumerate(walk)}
    for v in range(m):
        if v in sset:
            continue
        hubs = sorted(w for w in g.adj[v] if w in sset)
        if not hubs:
            raise InvariantError("leaf not attached to the spine")
        j = pos[hubs[0]]
        if used[j] >= n - 1:
            raise InvariantError("too many pendants on one spine vertex")
        f[v] = n + j * (n - 1) + used[j]
        used[j] += 1
    return f


def _pw_embed(g: Graph, bags, layout):
    n, k = layout["n"], layout["k"]
    if g.n == 0:
        return []
    if g.n > n:
        raise InvariantError(f"pathwidth recursion got {g.n} > {n} vertices")
    if layout["kind"] == "clique":
        return list(range(g.n))
    bags = [b for b in bags if b]
    if max(len(b) for b in bags) > k + 1:
        raise InvariantError("pathwidth recursion exceeded its width budget")
    g2, bags2 = _bridge(g, bags)
    bags2 = reduce_path(PathDecomposition(bags2)).bags
    if layout["kind"] == "caterpillar":
        return _caterpillar(g2, n)
    blocks, regions = layout["blocks"], layout["regions"]
    f = [None] * g.n
    if len(bags2) == 1:
        v0 = 0
        f[v0] = blocks[0][0]
        groups = {0: list(range(1, g.n))} if g.n > 1 else {}
    else:
        chosen, used = [], set()
        for i in range(len(bags2) - 1):
            a = bags2[i] & bags2[i + 1]
            if not a & used:
                chosen.append(sorted(a))
                used |= a
        if len(chosen) > len(blocks):
            raise InvariantError("more adhesions than clique blocks")
        for i, a in enumerate(chosen):
            for t, v in enumerate(a):
                f[v] = blocks[i][t]
        rest = [v for v in range(g.n) if v not in used]
        groups = {}
        r = len(chosen)
        for comp in g2.components(rest):
            nb = set().union(*(g2.adj[v] for v in comp)) - set(comp)
            if r == 1:
                i = 0
            else:
                i = next((i for i in range(r - 1) if nb <= set(chosen[i]) | set(chosen[i + 1])), None)
                if i is None:
                    raise InvariantError("component does not sit between two consecutive adhesions")
            groups.setdefault(i, []).extend(comp)
    for i in sorted(groups):
        if i >= len(regions):
            raise InvariantError("no sub-artifact region left")
        sub, old = g2.induced(sorted(groups[i]))
        pos = {v: t for t, v in enumerate(old)}
        sub_bags = [frozenset(pos[v] for v in b if v in pos) for b in bags2]
        loc = _pw_embed(sub, sub_bags, layout["sub"])
        for t, v in enumerate(old):
            f[v] = regions[i] + loc[t]
    return f


def prepare_pathwidth(guest: Graph, k: int, pd: PathDecomposition | None = None) -> GuestPreparation:
    if pd is None:
        w, pd = exact_pathwidth(guest)
    else:
        _checked_witness(guest, pd)
        w = pd.width
    _require(w <= k, f"pathwidth {w} exceeds {k}")
    return GuestPreparation(guest, pd)


def embed_pathwidth(guest: Graph, artifact: UniversalArtifact, pd: PathDecomposition | None = None) -> Embedding:
    """Adhesions A_1..A_r go to the blocks S_i, the rest recurses into U'_i."""
    _require(artifact.class_kind == PATHWIDTH, "not a pathwidth artifact")
    _require(guest.n <= artifact.n, f"guest has {guest.n} > {artifact.n} vertices")
    prep = prepare_pathwidth(guest, artifact.k, pd)
    f = _pw_embed(guest, list(prep.witness.bags), artifact.meta["layout"])
    aux = {"procedure": "embed_pathwidth", "decompositionUsed": _json_witness(prep.witness), "dummies": []}
    return _finish(guest, artifact.graph, f, SUBGRAPH, aux)


# --- treewidth --------------------------------------------------------------------------


def prepare_treewidth(guest: Graph, k: int, td: TreeDecomposition | None = None) -> GuestPreparation:
    if td is None:
        w, td = exact_treewidth(guest)
    else:
        _checked_witness(guest, td)
        w = td.width
    _require(w <= k, f"treewidth {w} exceeds {k}")
    return GuestPreparation(guest, balance_log_depth(td, guest))


def embed_treewidth(guest: Graph, artifact: UniversalArtifact, mode: str | None = None,
                    td: TreeDecomposition | None = None) -> Embedding:
    """Walk a binary log-depth decomposition of the guest down the bag skeleton."""
    _require(artifact.class_kind == TREEWIDTH, "not a treewidth artifact")
    mode = artifact.mode if mode is None else mode
    _require(not (mode == INDUCED and artifact.mode != INDUCED), "induced embedding needs an induced artifact")
    _require(guest.n <= artifact.n, f"guest has {guest.n} > {artifact.n} vertices")
    host = artifact.graph
    L = host.L
    if guest.n == 0:
        return _finish(guest, host, [], mode, {"procedure": "embed_treewidth", "dummies": 0})
    prep = prepare_treewidth(guest, artifact.k, td)
    bal = prep.witness
    if bal.width + 1 > L:
        raise ClassViolationError(f"balanced decomposition has bags of size {bal.width + 1} > L = {L}")
    if bal.depth() > host.levels:
        raise InvariantError(f"balanced depth {bal.depth()} exceeds the {host.levels} host levels")
    children = bal.children()
    f = [None] * guest.n
    dummies = 0

    def adjacency(content):
        return lambda x, y: (content[x] is not None and content[y] is not None
                             and guest.has_edge(content[x], content[y]))

    root = bal.root
    content = sorted(bal.bags[root])
    dummies += L - len(content)
    content += [None] * (L - len(content))
    b = host.root_pattern(adjacency(content))
    for j, v in enumerate(content):
        if v is not None:
            f[v] = host.fresh_vertex(0, b, j)
    stack = [(root, 0, b, content)]
    while stack:
        x, level, b, content = stack.pop()
        first = None
        for y in children[x]:
            bag = bal.bags[y]
            s = 0
            for j, v in enumerate(content):
                if v is not None and v in bag:
                    s |= 1 << j
            kept = {content[j] for j in range(L) if s >> j & 1}
            new = sorted(bag - kept)
            fresh = host.fresh_slots[s]
            if len(new) > len(fresh):
                raise InvariantError("bag does not fit its child specification")
            cc = [content[j] if s >> j & 1 else None for j in range(L)]
            for slot, v in zip(fresh, new):
                cc[slot] = v
            dummies += len(fresh) - len(new)
            pattern = host.pattern_of(s, adjacency(cc))
            copy = 1 if first == (s, pattern) else 0
            first = first or (s, pattern)
            cb = b * host.K + host.child_index(s, pattern, copy)
            for slot, v in zip(fresh, new):
                f[v] = host.fresh_vertex(level + 1, cb, slot)
            stack.append((y, level + 1, cb, cc))
    aux = {"procedure": "embed_treewidth", "decompositionUsed": _json_witness(bal), "dummies": dummies,
           "L": L}
    return _finish(guest, host, f, mode, aux)


# --- tw2quasi ---------------------------------------------------------------------------


def pinned_search(g: Graph, data, p: int, q: int):
    """Subgraph embedding of g into H_n with p -> 0 and q -> 1, or None.

    Backtracking inside one glued piece at a time (all of H_n when the
    provider gives no pieces).
    """
    H = data.graph
    pieces = data.pieces or [(list(range(H.n)), None)]
    order, seen = [p, q], {p, q}
    i = 0
    while len(order) < g.n or i < len(order):
        if i == len(order):
            x = min(set(range(g.n)) - seen)
            seen.add(x)
            order.append(x)
        for w in sorted(g.adj[order[i]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    for verts, _ in pieces:
        if len(verts) < g.n:
            continue
        allowed = set(verts)
        f = {p: 0, q: 1}
        if g.has_edge(p, q) and not H.has_edge(0, 1):
            continue
        used = {0, 1}

        def rec(i):
            if i == len(order):
                return True
            v = order[i]
            done = [w for w in g.adj[v] if w in f]
            if done:
                cand = set(H.adj[f[done[0]]]) & allowed
                for w in done[1:]:
                    cand &= H.adj[f[w]]
            else:
                cand = allowed
            for c in sorted(cand - used):
                f[v] = c
                used.add(c)
                if rec(i + 1):
                    return True
                used.discard(c)
                del f[v]
            return False

        if rec(2):
            return f
    return None


def complete_to_two_tree(g: Graph) -> Graph:
    """A 2-tree on the same vertices containing g (needs tw(g) <= 2, n >= 2).

    Eliminate min-degree vertices with fill, then rebuild in reverse order,
    attaching each vertex to an edge that contains its later neighbours.
    """
    n = g.n
    if n < 2:
        raise ValueError("2-trees have at least 2 vertices")
    adj = [set(a) for a in g.adj]
    alive = set(range(n))
    order, later = [], {}
    while len(alive) > 2:
        v = min(alive, key=lambda x: (len(adj[x]), x))
        nb = sorted(adj[v])
        if len(nb) > 2:
            raise ClassViolationError("guest has treewidth above 2")
        for a in nb:
            adj[a].discard(v)
        if len(nb) == 2:
            adj[nb[0]].add(nb[1])
            adj[nb[1]].add(nb[0])
        later[v] = nb
        alive.discard(v)
        order.append(v)
    a, b = sorted(alive)
    edges = {(a, b)}
    inc = {a: {(a, b)}, b: {(a, b)}}
    for v in reversed(order):
        nb = later[v]
        if len(nb) == 2:
            e = (nb[0], nb[1])
            if e not in edges:
                raise InvariantError("fill edge missing from the partial 2-tree")
        elif len(nb) == 1:
            e = min(inc[nb[0]])
        else:
            e = min(edges)
        x, y = e
        for z in (x, y):
            edges.add((min(v, z), max(v, z)))
            inc.setdefault(v, set()).add((min(v, z), max(v, z)))
            inc[z].add((min(v, z), max(v, z)))
    out = Graph(n, edges)
    if not set(g.edges) <= out.edges:
        raise InvariantError("2-tree completion lost an edge")
    return out


def _tw2_rec(g: Graph, host, u: int, v: int):
    """Map the 2-tree g into the quasi host with u -> 0 and v -> 1."""
    n = g.n
    if n > host.param:
        raise InvariantError(f"guest with {n} vertices reached U_{host.param}")
    if n == 2:
        return {u: 0, v: 1}
    if host.child is None:
        (w,) = [x for x in range(n) if x not in (u, v)]
        return {u: 0, v: 1, w: 2}
    limit = (host.param - 2) / 2

    def common(a, b, comp):
        ws = [x for x in comp if a in g.adj[x] and b in g.adj[x]]
        if len(ws) != 1:
            raise InvariantError("side part without a unique apex")
        return ws[0]

    comps = g.components([x for x in range(n) if x not in (u, v)])
    big = min(comps, key=lambda c: (-len(c), min(c)))
    used = {u, v, common(u, v, big)}
    cur, entry = frozenset(used), frozenset((u, v))
    while True:
        rest = [x for x in range(n) if x not in used]
        nxt = None
        for comp in g.components(rest):
            if len(comp) <= limit:
                continue
            nb = frozenset(set().union(*(g.adj[x] for x in comp)) - set(comp))
            if len(nb) == 2 and nb <= cur and nb != entry:
                nxt = (nb, comp)
        if nxt is None:
            break
        edge, comp = nxt
        a, b = sorted(edge)
        w = common(a, b, comp)
        used.add(w)
        cur, entry = edge | {w}, edge
    g0, old = g.induced(sorted(used))
    pos = {x: i for i, x in enumerate(old)}
    phi0 = pinned_search(g0, host.hdata, pos[u], pos[v])
    if phi0 is None:
        raise InvariantError(f"provider H_{host.param} misses a pinned simple 2-path")
    f = {old[i]: h for i, h in phi0.items()}
    copies = {}
    for comp in g.components([x for x in range(n) if x not in used]):
        nb = sorted(set().union(*(g.adj[x] for x in comp)) - set(comp))
        if len(nb) != 2:
            raise InvariantError("hanging part not attached to an edge")
        a, b = nb
        x, y = sorted((f[a], f[b]))
        j = host.edge_index[(x, y)]
        c = copies.get(j, 0)
        if c >= host.copies:
            raise InvariantError("ran out of glued copies on an edge")
        copies[j] = c + 1
        lo, hi = (a, b) if f[a] == x else (b, a)
        sub, sold = g.induced(sorted(comp) + [a, b])
        spos = {z: i for i, z in enumerate(sold)}
        loc = _tw2_rec(sub, host.child, spos[lo], spos[hi])
        for i, h in loc.items():
            f[sold[i]] = host.to_host(j, c, h)
    return f


def embed_tw2(guest: Graph, artifact: UniversalArtifact, pinned=None) -> Embedding:
    """Embed a graph of treewidth <= 2 into U_n; ``pinned`` = (a, b) sends a to
    e_n[0] and b to e_n[1]."""
    _require(artifact.class_kind == TW2QUASI, "not a tw2quasi artifact")
    host = artifact.graph
    n = guest.n
    _require(n <= artifact.n, f"guest has {n} > {artifact.n} vertices")
    aux = {"procedure": "embed_tw2", "dummies": [], "pinnedEdge": None}
    if n == 0:
        return _finish(guest, host, [], SUBGRAPH, aux)
    if n == 1:
        return _finish(guest, host, [0], SUBGRAPH, aux)
    if pinned is not None:
        a, b = pinned
        _require(guest.has_edge(a, b), "pinned pair must be an edge of the guest")
    two = complete_to_two_tree(guest)
    if pinned is None:
        es = two.sorted_edges()
        a, b = next(((x, y) for x, y in es if 2 in (two.degree(x), two.degree(y))), es[0])
    fmap = _tw2_rec(two, host, a, b)
    aux["pinnedEdge"] = [a, b]
    aux["decompositionUsed"] = {"kind": "two-tree", "edges": [list(e) for e in two.sorted_edges()]}
    f = [fmap[x] for x in range(n)]
    e = _finish(guest, host, f, SUBGRAPH, aux)
    if (f[a], f[b]) != (0, 1):
        raise InvariantError("pinned edge missed e_n")
    return e


# --- lifts and unions -------------------------------------------------------------------


def embed_induced_via_lift(guest: Graph, lift: LiftArtifact, witness) -> Embedding:
    """Induced embedding of a subgraph of the lift's base graph.

    ``witness`` is a subgraph embedding of the guest into lift.base (or its map).
    Each guest vertex goes to the member of its base vertex's stable set whose
    bits are its adjacencies to the back-neighbours' preimages.
    """
    phi = list(witness.map) if isinstance(witness, Embedding) else list(witness)
    if not verify_embedding(Embedding(guest, lift.base, phi, SUBGRAPH)):
        raise ClassViolationError("witness is not a subgraph embedding into the base graph")
    inv = {h: v for v, h in enumerate(phi)}
    f = []
    for v in range(guest.n):
        base = phi[v]
        bits = 0
        for s, w in enumerate(lift.back[base]):
            if w in inv and guest.has_edge(v, inv[w]):
                bits |= 1 << s
        f.append(lift.member(base, bits))
    aux = {"procedure": "embed_induced_via_lift", "dummies": [], "witness": phi,
           "degeneracyOrder": list(lift.order)}
    return _finish(guest, lift.graph, f, INDUCED, aux)


def embed_via_lift(guest: Graph, artifact: UniversalArtifact, lift: LiftArtifact, embedder) -> Embedding:
    """Subgraph-embed into the artifact, then lift to an induced embedding."""
    sub = embedder(guest, artifact)
    return embed_induced_via_lift(guest, lift, sub)


def embed_disconnected(guest: Graph, union: UnionArtifact, embedder) -> Embedding:
    """Each component (largest first) goes to a fresh copy of the smallest
    fitting builder size."""
    _require(guest.n <= union.n, f"guest has {guest.n} > {union.n} vertices")
    f = [None] * guest.n
    taken = set()
    for comp in sorted(guest.components(), key=lambda c: (-len(c), min(c))):
        size = 1 << (len(comp) - 1).bit_length()
        idx = next((i for i, (p, _, _) in enumerate(union.parts) if p == size and i not in taken), None)
        if idx is None:
            raise InvariantError(f"no free copy of size {size}")
        taken.add(idx)
        _, off, art = union.parts[idx]
        sub, old = guest.induced(comp)
        e = embedder(sub, art)
        for t, v in enumerate(old):
            f[v] = off + e.map[t]
    aux = {"procedure": "embed_disconnected", "dummies": []}
    return _finish(guest, union.graph, f, SUBGRAPH, aux)


def embed_any(guest: Graph, artifact: UniversalArtifact, **kw) -> Embedding:
    """Dispatch on the artifact's class."""
    kind = artifact.class_kind
    if kind == TREEDEPTH:
        return embed_treedepth(guest, artifact, kw.get("forest"))
    if kind == PATHWIDTH:
        return embed_pathwidth(guest, artifact, kw.get("pd"))
    if kind == TREEWIDTH:
        return embed_treewidth(guest, artifact, kw.get("mode"), kw.get("td"))
    if kind == TW2QUASI:
        return embed_tw2(guest, artifact, kw.get("pinned"))
    raise ValueError(kind)
