"""Command-line front end.

Exit codes: 0 ok, 2 resource limit, 3 class violation, 4 internal invariant or
failed verification, 5 I/O or parse error. Usage errors count as parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from . import decomp, extremal, generators, graph as gmod, io as gio, minor, universal
from .embed import embed_any
from .errors import ClassViolationError, ParseError, ResourceLimitError, UGraphError
from .graph import INDUCED, SUBGRAPH, verify_embedding

CACHE_ENV = "UGRAPH_CACHE_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}")


def _out(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise ParseError(str(exc)) from None


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


# --- construct ------------------------------------------------------------------------------

def _sidecar(path) -> Path:
    return Path(str(path) + ".meta.json")


def _cache_files(cfg: dict, suffix: str):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:32]
    d = Path(root)
    d.mkdir(parents=True, exist_ok=True)
    return d / f"{key}{suffix}", d / f"{key}{suffix}.meta.json"


def cmd_construct(a) -> int:
    cfg = {"class": a.cls, "n": a.n, "k": a.k, "mode": a.mode, "L": a.L, "levels": a.levels,
           "cap": a.cap, "metaOnly": a.meta_only}
    out = Path(a.out)
    if not a.meta_only and out.suffix not in (".g6", ".el"):
        raise ParseError("output graph must end in .g6 or .el")
    cached = _cache_files(cfg, out.suffix or ".none")
    if cached and cached[1].exists() and (a.meta_only or cached[0].exists()):
        if not a.meta_only:
            out.write_text(cached[0].read_text())
        _sidecar(out).write_text(cached[1].read_text())
        print(f"construct: {out} (cached)")
        return 0
    art = universal.build_artifact(a.cls, a.n, a.k, a.mode, a.L, a.levels, a.cap)
    desc = art.describe()
    if not a.meta_only:
        g = art.explicit(a.cap)
        gio.write_graph(g, out)
        desc["graphFile"] = out.name
    meta_text = _dump(desc)
    _sidecar(out).write_text(meta_text)
    if cached:
        if not a.meta_only:
            cached[0].write_text(out.read_text())
        cached[1].write_text(meta_text)
    print(f"construct: {a.cls} n={a.n} k={a.k} -> {art.order} vertices")
    return 0


# --- embed / verify -------------------------------------------------------------------------

def _load_artifact(path, cap):
    desc = _read_json(path)
    try:
        return universal.artifact_from_description(desc, cap), desc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad artifact description: {exc}") from None


def _host_ref(desc):
    return {k: v for k, v in desc.items() if k != "graphFile"}


def cmd_embed(a) -> int:
    art, desc = _load_artifact(a.artifact, a.cap)
    guest = gio.read_graph(a.guest)
    kw = {}
    if guest.n > decomp.MAX_EXACT_N and not a.decomposition and art.class_kind != universal.TW2QUASI:
        raise ResourceLimitError(f"guest has {guest.n} vertices; pass --decomposition beyond "
                                 f"{decomp.MAX_EXACT_N}")
    if a.decomposition:
        d = decomp.decomposition_from_json(Path(a.decomposition).read_text())
        kw = {"forest": d, "pd": d, "td": d}
    if a.mode:
        kw["mode"] = a.mode
    if a.pinned:
        try:
            x, y = (int(t) for t in a.pinned.split(","))
        except ValueError:
            raise ParseError("--pinned takes two vertices, e.g. 0,1") from None
        kw["pinned"] = (x, y)
    e = embed_any(guest, art, **kw)
    _out(gio.embedding_to_json(e, host_ref=_host_ref(desc)) + "\n", a.out)
    print(f"embed: verified {e.mode} embedding of {guest.n} vertices", file=sys.stderr)
    return 0


def cmd_verify(a) -> int:
    if a.certificate:
        obj = _read_json(a.certificate)
        host_obj = obj.get("host", {})
        host = None
        if "classKind" in host_obj:
            host = universal.artifact_from_description(host_obj, a.cap).graph
        e = gio.embedding_from_json(json.dumps(obj), host)
        rep = verify_embedding(e)
        if not rep:
            print(f"verify: INVALID: {rep.message}", file=sys.stderr)
            return 4
        print("verify: certificate ok")
        return 0
    if not (a.decomposition and a.graph):
        raise ParseError("verify needs --certificate, or --decomposition with --graph")
    d = decomp.decomposition_from_json(Path(a.decomposition).read_text())
    g = gio.read_graph(a.graph)
    rep = decomp.validate(d, g)
    if not rep:
        print(f"verify: INVALID: {rep.message}", file=sys.stderr)
        return 4
    print("verify: decomposition ok")
    return 0


# --- width / generate / minor ---------------------------------------------------------------

def cmd_width(a) -> int:
    g = gio.read_graph(a.graph)
    measures = ["tw", "pw", "td"] if a.measure == "all" else [a.measure]
    fns = {"tw": decomp.exact_treewidth, "pw": decomp.exact_pathwidth, "td": decomp.exact_treedepth}
    res = {}
    witness = None
    for m in measures:
        w, witness = fns[m](g)
        res[m] = w
    print(_dump(res), end="")
    if a.out:
        _out(decomp.decomposition_to_json(witness) + "\n", a.out)
    return 0


def _family(a, rng):
    f = a.family
    if f == "path":
        return gmod.path_graph(a.n)
    if f == "cycle":
        return gmod.cycle_graph(a.n)
    if f == "complete":
        return gmod.complete_graph(a.n)
    if f == "star":
        return gmod.star_graph(a.n)
    if f == "grid":
        return gmod.grid_graph(a.n, a.m or a.n)
    if f == "binary-tree":
        return gmod.complete_binary_tree(a.n)
    if f == "random":
        return generators.random_graph(a.n, a.p, rng)
    if f == "k-tree":
        return generators.random_k_tree(a.n, a.k, rng)[0]
    if f == "simple-kpath":
        rec = [int(t) for t in a.record.split(",")] if a.record else \
            [rng.randint(1, a.k) for _ in range(a.n - 2 * a.k - 1)]
        return extremal.simple_kpath_from_record(extremal.SimpleKPathRecord(a.k, a.n, rec))
    if f == "triangulated-grid":
        b = a.m or a.n
        bits = a.bits if a.bits is not None else rng.getrandbits((a.n - 1) * (b - 1))
        return extremal.build_triangulated_grid(a.n, b, bits).graph
    if f == "double-grid":
        bits = a.bits if a.bits is not None else rng.getrandbits(extremal.double_grid_bits(a.n))
        return extremal.build_double_grid(extremal.TriangulatedDoubleGrid.from_bitmap(a.n, bits))
    raise ParseError(f"unknown family {f!r}")


def cmd_generate(a) -> int:
    rng = random.Random(a.seed)
    try:
        g = _family(a, rng)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    gio.write_graph(g, a.out)
    print(f"generate: {a.family} with {g.n} vertices and {g.m} edges -> {a.out}")
    return 0


def cmd_minor(a) -> int:
    g = gio.read_graph(a.graph)
    model = minor.find_clique_minor(g, a.t, a.budget)
    print(_dump({"t": a.t, "hasMinor": model is not None, "branchSets": model}), end="")
    return 0


# --- experiments ----------------------------------------------------------------------------

def _exp_kpaths(a):
    r = extremal.count_simple_kpaths(a.n, a.k)
    return [{"k": a.k, "n": a.n, "records": r.record_count, "classCount": r.class_count,
             "largestClass": r.largest_class, "bound": r.bound, "pass": r.ok}]


def _exp_double_grids(a):
    r = extremal.count_double_grids(a.l, threads=a.threads)
    return [{"l": a.l, "instances": r.instances, "classCount": r.class_count, "bound": r.bound,
             "edges": r.edges, "maxAut": r.max_aut, "euler": r.euler_ok, "planar": r.planar_ok,
             "pass": r.ok}]


def _exp_pw2(a):
    r = extremal.pw2_lowerbound_experiment(a.n)
    return [{"n": a.n, "classes": r.classes, "hostVertices": r.host_vertices,
             "sizeBound": r.size_bound, "mechanism": r.mechanism_ok,
             "pass": r.mechanism_ok and r.host_vertices >= r.size_bound}]


def _exp_jumps(a):
    rng = random.Random(a.seed)
    rows = []
    for trial in range(a.trials):
        bits = rng.getrandbits((a.l - 1) ** 2)
        grid = extremal.build_triangulated_grid(a.l, a.l, bits)
        full = extremal.random_internal_jumps(grid, a.jumps, a.tau, rng)
        prev = False
        ordered = sorted(full.jumps)
        for c in range(len(ordered) + 1):
            js = gmod.JumpSet(grid.graph, frozenset(ordered[:c]), disjoint=True)
            res = extremal.jump_experiment(grid.graph, js, a.t, a.budget)
            rows.append({"trial": trial, "diagonals": bits, "jumps": c, "t": a.t, "minor": res,
                         "pass": res or not prev})
            prev = res
    return rows


def _exp_vc(a):
    rng = random.Random(a.seed)
    rows = []
    for trial in range(a.trials):
        sets = [[x for x in range(a.ground) if rng.random() < 0.5] for _ in range(a.size)]
        fam = extremal.SetFamily(a.ground, sets)
        d, wit = extremal.vc_dimension(fam)
        bound = extremal.sauer_shelah_bound(a.ground, d)
        rows.append({"trial": trial, "family": len(fam.sets), "vc": d, "witness": " ".join(map(str, wit)),
                     "sauerShelah": bound, "pass": len(fam.sets) <= bound})
    return rows


EXPERIMENTS = {
    "count-simple-kpaths": _exp_kpaths,
    "count-double-grids": _exp_double_grids,
    "pw2-lowerbound": _exp_pw2,
    "grid-jumps": _exp_jumps,
    "vc-demo": _exp_vc,
}


def cmd_experiment(a) -> int:
    rows = EXPERIMENTS[a.name](a)
    prefix = a.out or a.name
    _out(extremal.to_csv(rows), prefix + ".csv")
    _out(extremal.to_markdown(a.name, rows), prefix + ".md")
    bad = 0
    for r in rows:
        ok = r.get("pass")
        bad += not ok
        print(f"{a.name}: {'pass' if ok else 'FAIL'} " + " ".join(f"{k}={v}" for k, v in r.items() if k != "pass"))
    return 0 if not bad else 4


# --- parser ---------------------------------------------------------------------------------

def _globals(p, suppress):
    # Accepted before or after the subcommand; the subcommand copy must not
    # overwrite a value given before it.
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized commands")
    p.add_argument("--cap", type=int, default=d(universal.DEFAULT_CAP), help="vertex cap")
    p.add_argument("--budget", type=int, default=d(minor.DEFAULT_BUDGET), help="search-node budget")
    p.add_argument("--threads", type=int, default=d(os.cpu_count() or 1),
                   help="worker processes for experiments")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ugraph", description="Universal graphs for bounded-width classes.")
    _globals(p, False)
    common = _Parser(add_help=False)
    _globals(common, True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    c = sub.add_parser("construct", help="build a universal graph")
    c.add_argument("--class", dest="cls", required=True, choices=universal.CLASS_KINDS)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--mode", choices=(SUBGRAPH, INDUCED), default=SUBGRAPH)
    c.add_argument("--L", type=int)
    c.add_argument("--levels", type=int)
    c.add_argument("--provider", choices=("fallback",), default="fallback")
    c.add_argument("--meta-only", action="store_true", help="write only the JSON sidecar")
    c.add_argument("--out", required=True, help="graph file (.g6 or .el); sidecar gets .meta.json")

    e = sub.add_parser("embed", help="embed a guest into a constructed artifact")
    e.add_argument("--artifact", required=True, help="the .meta.json sidecar")
    e.add_argument("--guest", required=True)
    e.add_argument("--mode", choices=(SUBGRAPH, INDUCED))
    e.add_argument("--pinned", help="tw2quasi only: a,b sends a to e_n[0] and b to e_n[1]")
    e.add_argument("--decomposition", help="decomposition JSON for large guests")
    e.add_argument("--out", default="-")

    v = sub.add_parser("verify", help="check a certificate or a decomposition")
    v.add_argument("--certificate")
    v.add_argument("--decomposition")
    v.add_argument("--graph")

    w = sub.add_parser("width", help="exact treewidth / pathwidth / treedepth")
    w.add_argument("--graph", required=True)
    w.add_argument("--measure", choices=("tw", "pw", "td", "all"), default="all")
    w.add_argument("--out", help="write the witness of the last measure as JSON")

    g = sub.add_parser("generate", help="write a graph from a named family")
    g.add_argument("--family", required=True, choices=(
        "path", "cycle", "complete", "star", "grid", "binary-tree", "random", "k-tree",
        "simple-kpath", "triangulated-grid", "double-grid"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--record")
    g.add_argument("--bits", type=int)
    g.add_argument("--out", required=True)

    m = sub.add_parser("minor", help="K_t minor test")
    m.add_argument("--graph", required=True)
    m.add_argument("--t", type=int, required=True)

    x = sub.add_parser("experiment", help="run a named experiment, write CSV and Markdown")
    x.add_argument("name", choices=sorted(EXPERIMENTS))
    x.add_argument("--k", type=int, default=2)
    x.add_argument("--n", type=int, default=7)
    x.add_argument("--l", type=int, default=3)
    x.add_argument("--t", type=int, default=5)
    x.add_argument("--tau", type=int, default=1)
    x.add_argument("--jumps", type=int, default=2)
    x.add_argument("--trials", type=int, default=1)
    x.add_argument("--ground", type=int, default=8)
    x.add_argument("--size", type=int, default=40)
    x.add_argument("--out", help="report prefix (default: the experiment name)")
    return p


COMMANDS = {
    "construct": cmd_construct,
    "embed": cmd_embed,
    "verify": cmd_verify,
    "width": cmd_width,
    "generate": cmd_generate,
    "minor": cmd_minor,
    "experiment": cmd_experiment,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UGraphError as exc:
        print(f"ugraph: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"ugraph: {exc}", file=sys.stderr)
        return ClassViolationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
