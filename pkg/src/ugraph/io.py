"""Graph, embedding and decomposition serialization.

graph6 follows the standard format (column-wise upper triangle, 6 bits per
printable byte). The edge-list format is an ``n m`` header followed by one
``u v`` line per edge.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .graph import Graph, Embedding

G6_HEADER = ">>graph6<<"


def _encode_n(n):
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n < 1 << 36:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    n = g.n
    vals = _encode_n(n)
    bits = []
    es = g.edges
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        vals.append(x)
    s = "".join(chr(v + 63) for v in vals)
    return (G6_HEADER + s) if header else s


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(G6_HEADER):
        s = s[len(G6_HEADER):]
    try:
        data = [ord(c) - 63 for c in s]
    except TypeError as exc:
        raise ParseError(str(exc)) from None
    if not data or any(not 0 <= d < 64 for d in data):
        raise ParseError("invalid graph6 characters")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    elif len(data) >= 8:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        rest = data[8:]
    else:
        raise ParseError("truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {need}")
    bits = []
    for d in rest:
        bits.extend((d >> s) & 1 for s in range(5, -1, -1))
    es = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                es.append((i, j))
            k += 1
    return Graph(n, es)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ParseError("empty edge list")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        es = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad edge list: {exc}") from None
    if len(es) != m:
        raise ParseError(f"header says {m} edges, found {len(es)}")
    try:
        return Graph(n, es)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_graph(path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    if p.suffix == ".g6":
        return from_graph6(text.splitlines()[0] if text.strip() else "")
    if p.suffix == ".el":
        return from_edge_list(text)
    raise ParseError(f"cannot tell graph format of {p.name}: use .g6 or .el")


def write_graph(g: Graph, path) -> None:
    p = Path(path)
    if p.suffix == ".g6":
        p.write_text(to_graph6(g) + "\n")
    elif p.suffix == ".el":
        p.write_text(to_edge_list(g))
    else:
        raise ParseError(f"cannot tell graph format of {p.name}: use .g6 or .el")


def _graph_obj(g):
    if not isinstance(g, Graph):
        # implicit host: only its order is recorded, the reader must supply it
        return {"n": g.n, "implicit": True}
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def embedding_to_json(e: Embedding, host_ref=None) -> str:
    """Serialize a certificate. Huge or implicit hosts are referenced, not inlined."""
    host = host_ref if host_ref is not None else _graph_obj(e.host)
    obj = {
        "guest": _graph_obj(e.guest),
        "host": host,
        "mode": e.mode,
        "map": list(e.map),
        "aux": e.aux,
    }
    return json.dumps(obj, indent=1, sort_keys=False)


def embedding_from_json(text: str, host=None) -> Embedding:
    try:
        obj = json.loads(text)
        guest = Graph(obj["guest"]["n"], obj["guest"]["edges"])
        if host is None:
            if obj["host"].get("implicit") or "classKind" in obj["host"]:
                raise ParseError("certificate references an implicit host; pass the host")
            host = Graph(obj["host"]["n"], obj["host"]["edges"])
        return Embedding(guest, host, obj["map"], obj["mode"], obj.get("aux", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad embedding JSON: {exc}") from None
