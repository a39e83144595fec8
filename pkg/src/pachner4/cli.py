"""
Command-line interface.

Triangulation arguments may be a file holding a gluing table or a
signature, ``-`` for standard input, or ``family:KIND:K[:L]`` for a family
member (e.g. ``family:D:2:1``).  The named pieces ``pillow``, ``dsb2`` and
``cylinder`` are accepted too.

Exit codes: 0 on success, 1 on domain errors (including "no sequence
found"), 2 when a search aborts on its resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .canonical import parse_signature, signature
from .csum import connected_sum, parse_site
from .errors import TriangulationError
from .families import cylinder_c, dsb2, family, pillow_s4
from .homology import euler_characteristic, homology
from .kernel import (Triangulation, boundary, components, dual_graph, f_vector,
                     is_orientable, parse_table_text, to_table_text, validate)
from .moves import format_sequence, parse_sequence
from .search import SearchConfig, outside_in, verify_sequence

EXIT_OK, EXIT_DOMAIN, EXIT_ABORT = 0, 1, 2

_NAMED = {"pillow": pillow_s4, "dsb2": dsb2, "cylinder": cylinder_c}


def parse_triangulation_text(text: str) -> Triangulation:
    stripped = text.strip()
    if stripped.startswith("d") and ":" in stripped.split("\n", 1)[0]:
        return parse_signature(stripped)
    return parse_table_text(text)


def load(arg: str) -> Triangulation:
    if arg in _NAMED:
        return _NAMED[arg]()
    if arg.startswith("family:"):
        parts = arg.split(":")[1:]
        if len(parts) not in (2, 3):
            raise TriangulationError(f"bad family argument {arg!r}")
        kind, k = parts[0], int(parts[1])
        l = int(parts[2]) if len(parts) == 3 else 0
        return family(kind, k, l)
    if arg == "-":
        return parse_triangulation_text(sys.stdin.read())
    try:
        with open(arg) as fh:
            return parse_triangulation_text(fh.read())
    except OSError as exc:
        raise TriangulationError(f"cannot read {arg}: {exc.strerror}") from None


def emit(t: Triangulation, fmt: str) -> str:
    return signature(t) + "\n" if fmt == "sig" else to_table_text(t)


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, data: dict, lines: list):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# Commands

def cmd_gen(args):
    t = family(args.family, args.k, args.l)
    text = emit(t, args.format)
    if args.json:
        _report(args, {"family": args.family, "k": args.k, "l": args.l,
                       "pentachora": t.size, "format": args.format, "text": text}, [])
        return EXIT_OK
    _write(text, args.out)
    return EXIT_OK


def invariants(t: Triangulation) -> dict:
    rep = validate(t)
    h = homology(t) if rep.no_reverse_self_identification else None
    bcomps = components(boundary(t)) if t.dim > 0 else []
    return {
        "pentachora": t.size,
        "f_vector": list(f_vector(t)),
        "euler_characteristic": euler_characteristic(t),
        "homology": h.as_dict() if h else None,
        "orientable": is_orientable(t),
        "validity": {
            "structural_ok": rep.structural_ok,
            "no_reverse_self_identification": rep.no_reverse_self_identification,
            "closed": rep.closed,
            "vertex_links_manifoldlike": rep.vertex_links_manifoldlike,
            "offending_faces": [list(x) for x in rep.offending_faces],
        },
        "boundary_components": [len(c) for c in bcomps],
    }


def cmd_invariants(args):
    t = load(args.file)
    data = invariants(t)
    h = homology(t) if data["homology"] else None
    lines = [
        f"pentachora: {data['pentachora']}",
        f"f-vector: {tuple(data['f_vector'])}",
        f"euler characteristic: {data['euler_characteristic']}",
        f"homology: {h if h else 'undefined (self-identified faces)'}",
        f"betti: {h.betti if h else '-'}",
        f"orientable: {data['orientable']}",
    ]
    lines += [f"{k}: {v}" for k, v in data["validity"].items()]
    lines.append(f"boundary components (tetrahedra each): {data['boundary_components']}")
    _report(args, data, lines)
    return EXIT_OK


def cmd_search(args):
    a, b = load(args.a), load(args.b)
    config = SearchConfig(headroom=args.headroom, simplify=args.simplify,
                          ring_size_limit=args.ring_limit, threads=args.threads,
                          debug=args.debug)
    out = outside_in(a, b, config)
    data = {"result": out.result, "cap": out.cap, "reason": out.reason,
            "stats": out.stats.as_dict(),
            "sequence": [str(s) for s in out.sequence] if out.found else None}
    lines = [f"result: {out.result}"]
    if out.found:
        lines.append(f"length: {len(out.sequence)}")
        lines.append("moves: " + " ".join(str(s) for s in out.sequence))
    elif out.reason:
        lines.append(f"reason: {out.reason}")
    lines += [f"{k}: {v}" for k, v in out.stats.as_dict().items()]
    _report(args, data, lines)
    if out.found and args.cert:
        header = {"from": signature(a), "to": signature(b), "cap": out.cap,
                  "tool": f"pachner4 {__version__}"}
        with open(args.cert, "w") as fh:
            fh.write(format_sequence(out.sequence, header))
    if out.result == "aborted":
        return EXIT_ABORT
    return EXIT_OK if out.found else EXIT_DOMAIN


def cmd_verify(args):
    a, b = load(args.a), load(args.b)
    with open(args.cert) as fh:
        steps, header = parse_sequence(fh.read())
    cap = args.cap
    if cap is None and "cap" in header:
        cap = int(header["cap"])
    rep = verify_sequence(a, b, steps, cap)
    data = {"ok": rep.ok, "failed_step": rep.step, "reason": rep.reason,
            "steps": len(steps), "max_pentachora": rep.max_size}
    if rep.ok:
        lines = [f"ok: {len(steps)} moves, at most {rep.max_size} pentachora"]
    else:
        lines = [f"failed at step {rep.step}: {rep.reason}"]
    _report(args, data, lines)
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_csum(args):
    a, b = load(args.a), load(args.b)
    t = connected_sum(a, parse_site(args.site1), b, parse_site(args.site2), args.sign)
    text = emit(t, args.format)
    if args.json:
        _report(args, {"pentachora": t.size, "format": args.format, "text": text}, [])
    else:
        _write(text, args.out)
    return EXIT_OK


def cmd_canon(args):
    t = load(args.file)
    sig = signature(t)
    _report(args, {"signature": sig, "pentachora": t.size}, [sig])
    return EXIT_OK


def to_dot(t: Triangulation) -> str:
    g = dual_graph(t)
    lines = ["graph dual {"]
    for node in sorted(g.nodes):
        lines.append(f"  {node};")
    edges = sorted((u, v, d["facets"]) for u, v, d in g.edges(data=True))
    for u, v, (f1, f2) in edges:
        lines.append(f'  {u} -- {v} [label="{f1}-{f2}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(args):
    t = load(args.file)
    text = to_dot(t)
    if args.json:
        g = dual_graph(t)
        _report(args, {"nodes": g.number_of_nodes(), "arcs": g.number_of_edges(),
                       "dot": text}, [])
    else:
        _write(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pachner4",
        description="Generalised 4-manifold triangulations: families, invariants, "
                    "connected sums and Pachner-graph search.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "generate a family member")
    p.add_argument("--family", required=True, choices=["P", "E", "A", "D"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["table", "sig"], default="table")

    p = add("invariants", cmd_invariants, "f-vector, homology and validity")
    p.add_argument("file")

    p = add("search", cmd_search, "outside-in Pachner search between two triangulations")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--headroom", type=int, required=True)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--ring-limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cert")
    p.add_argument("--debug", action="store_true", help="check ring disjointness")

    p = add("verify", cmd_verify, "replay a move certificate")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("cert")
    p.add_argument("--cap", type=int, default=None)

    p = add("csum", cmd_csum, "connected sum of two triangulations")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--site1", required=True, help="pentachoron.facet, e.g. 0.4")
    p.add_argument("--site2", required=True)
    p.add_argument("--sign", action="store_true")
    p.add_argument("--out")
    p.add_argument("--format", choices=["table", "sig"], default="table")

    p = add("canon", cmd_canon, "print the isomorphism signature")
    p.add_argument("file")

    p = add("dot", cmd_dot, "dual graph in DOT format")
    p.add_argument("file")
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TriangulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
