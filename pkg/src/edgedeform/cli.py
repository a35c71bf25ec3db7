"""Command-line front end.

A thin client over the service handlers: each verb builds a request
model, invokes the handler in-process, and renders the response as text
or JSON.  Exit codes: 0 verdict delivered, 1 input/parse errors, 2
violated mathematical preconditions (loops, triangles, caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import EdgeDeformError, ParseError
from .service import handlers
from .service.models import (
    AnalyzeRequest,
    CensusRequest,
    GraphPayload,
    OracleRequest,
    RegularityRequest,
    SeparateRequest,
)

VERBS_WITH_GRAPH = [
    "t1", "rigid", "rigid-indep", "rigid-no456", "separations", "separate",
    "polarize", "inseparable", "t2", "t2-sufficient", "oracle-t1",
    "oracle-t2", "regularity",
]


def _add_graph_args(parser):
    parser.add_argument("input", nargs="?", help="edge-list file (one 'u v' per line)")
    parser.add_argument("--family", help="family spec, e.g. cycle:5 or letterplace2:chain:3")


def _add_common(parser):
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("--cap-degree", type=int, default=None,
                        help="cap on per-vertex subset enumeration (default 16)")


def _parse_window(text):
    try:
        lo, hi = text.split(":")
        return (int(lo), int(hi))
    except ValueError:
        raise ParseError(f"bad window {text!r} (expected LO:HI)") from None


def _payload(args):
    if args.input is not None and args.family:
        raise ParseError("give either an input file or --family, not both")
    if args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input!r}: {exc}") from exc
        return GraphPayload(text=text, name=Path(args.input).name)
    if args.family:
        return GraphPayload(family=args.family)
    raise ParseError("an input file or --family is required")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="edgedeform",
        description="Deformation data of edge ideals: generators, rigidity, "
                    "separations, obstruction vanishing, and exact graded oracles.")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, helptext in [
        ("t1", "list the deformation-map generators with classifications"),
        ("rigid", "local rigidity criterion"),
        ("rigid-indep", "independent-set rigidity criterion"),
        ("rigid-no456", "rigidity on graphs with no induced 4/5/6-cycle"),
        ("separations", "all separating vertices and separation pairs"),
        ("polarize", "replace loops by pendant edges"),
        ("inseparable", "is the graph inseparable?"),
        ("t2", "obstruction-vanishing criterion (triangle-free graphs)"),
        ("t2-sufficient", "no induced 3/4-cycles: obstructions vanish"),
    ]:
        p = sub.add_parser(verb, help=helptext)
        _add_graph_args(p)
        _add_common(p)

    p = sub.add_parser("separate", help="separate the graph at a vertex")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--side-a", default="", help="comma-separated vertices of side A")
    p.add_argument("--side-b", required=True, help="comma-separated vertices of side B")
    p.add_argument("--new-name", default=None, help="name for the fresh vertex")

    for verb in ("oracle-t1", "oracle-t2"):
        p = sub.add_parser(verb, help=f"graded dimensions for {verb[-2:]} over a window")
        _add_graph_args(p)
        _add_common(p)
        p.add_argument("--window", default=None, help="degree window LO:HI")
        p.add_argument("--check-generation", action="store_true",
                       help="also verify the combinatorial generators span each degree")

    p = sub.add_parser("regularity", help="windowed regularity of every separation")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--degree-bound", type=int, default=5)

    p = sub.add_parser("census", help="batch verdict table over many graphs")
    p.add_argument("inputs", nargs="*", help="edge-list files")
    p.add_argument("--family", action="append", default=[],
                   help="family spec (repeatable; ranges like cycle:3..12 allowed)")
    p.add_argument("--checks", default=None,
                   help="comma list from rigid,rigid-indep,inseparable,t2,"
                        "t2-sufficient,oracle-t1,oracle-t2")
    p.add_argument("--window", default=None, help="t1 oracle window LO:HI")
    p.add_argument("--window-t2", default=None, help="t2 oracle window LO:HI")
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _emit_json(model, out):
    payload = model.model_dump(by_alias=True)
    out.write(json.dumps(payload, indent=2) + "\n")


def _fmt_bool(value):
    if value is None:
        return "-"
    return "true" if value else "false"


def _render_graph(view, out):
    out.write(f"graph: {len(view.vertices)} vertices, {len(view.edges)} edges\n")
    if view.stripped:
        out.write(f"stripped isolated vertices: {', '.join(view.stripped)}\n")


def _render(verb, resp, out):
    if verb == "t1":
        _render_graph(resp.graph, out)
        for hom in resp.homs:
            lam = f" lambda={hom.lam}" if hom.lam is not None else ""
            sub = f" L={{{','.join(hom.L)}}}" if hom.L is not None else ""
            images = "; ".join(f"{k} -> {v}" for k, v in hom.images.items()) or "0"
            out.write(f"[{hom.classification.status}] {hom.kind} {hom.source}{sub}{lam} "
                      f"(degree {hom.degree}): {images}\n")
        out.write("counts: " + ", ".join(f"{k}={v}" for k, v in resp.counts.items()) + "\n")
    elif verb in ("rigid", "rigid-indep", "rigid-no456"):
        out.write(f"rigid: {_fmt_bool(resp.rigid)}\n")
        if resp.witness:
            out.write("witness: " + json.dumps(resp.witness) + "\n")
    elif verb == "separations":
        out.write(f"separable: {_fmt_bool(resp.separable)}\n")
        for row in resp.vertices:
            for pair in row.pairs:
                a = "{" + ",".join(pair.A) + "}"
                b = "{" + ",".join(pair.B) + "}"
                out.write(f"{row.vertex}: A={a} B={b}\n")
    elif verb == "separate":
        out.write(f"fresh vertex: {resp.fresh_vertex}\n")
        for u, v in resp.graph.edges:
            out.write(f"{u} {v}\n")
    elif verb == "polarize":
        if resp.fresh_vertices:
            out.write(f"fresh vertices: {', '.join(resp.fresh_vertices)}\n")
        for u, v in resp.graph.edges:
            out.write(f"{u} {v}\n")
    elif verb in ("inseparable", "t2-sufficient"):
        out.write(f"verdict: {_fmt_bool(resp.verdict)}\n")
    elif verb == "t2":
        out.write(f"vanishes: {_fmt_bool(resp.vanishes)}\n")
        if resp.witness is not None:
            w = resp.witness
            out.write(f"witness: edge={w.edge[0]}*{w.edge[1]} "
                      f"L_a={{{','.join(w.L_a)}}} L_b={{{','.join(w.L_b)}}} "
                      f"lambda={w.lam} x={w.x}\n")
    elif verb in ("oracle-t1", "oracle-t2"):
        out.write("c\thom\ttrivial\tcohomology\tgeneration\n")
        for row in resp.degrees:
            gen = "-" if row.generation_ok is None else _fmt_bool(row.generation_ok)
            out.write(f"{row.c}\t{row.hom_dim}\t{row.trivial_dim}\t"
                      f"{row.cohomology_dim}\t{gen}\n")
        out.write(f"note: {resp.note}\n")
    elif verb == "regularity":
        for row in resp.rows:
            a = "{" + ",".join(row.A) + "}"
            b = "{" + ",".join(row.B) + "}"
            out.write(f"{row.vertex}: A={a} B={b} fresh={row.fresh_vertex} "
                      f"regular<= {resp.degree_bound}: {_fmt_bool(row.regular_up_to_bound)}\n")
        out.write(f"all regular up to degree {resp.degree_bound}: "
                  f"{_fmt_bool(resp.all_regular)}\n")
    elif verb == "census":
        cols = ["name", "n", "m", "rigid", "rigid_indep", "insep",
                "t2", "t2_suff", "t1_zero", "t2_zero", "flags"]
        out.write("\t".join(cols) + "\n")
        for row in resp.rows:
            flags = []
            if row.mismatch:
                flags.append("MISMATCH")
            if row.error:
                flags.append(f"error:{row.error}")
            out.write("\t".join([
                row.name, str(row.vertices), str(row.edges),
                _fmt_bool(row.rigid), _fmt_bool(row.rigid_indep),
                _fmt_bool(row.inseparable), _fmt_bool(row.t2_vanishes),
                _fmt_bool(row.t2_sufficient), _fmt_bool(row.t1_window_zero),
                _fmt_bool(row.t2_window_zero), ",".join(flags) or "-",
            ]) + "\n")
        out.write(f"mismatches: {resp.mismatches}\n")
        out.write(f"note: {resp.note}\n")


def _run_verb(args, out):
    verb = args.verb
    if verb == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    if verb == "census":
        payloads = []
        for path in args.inputs:
            try:
                payloads.append(GraphPayload(text=Path(path).read_text(),
                                             name=Path(path).name))
            except OSError as exc:
                raise ParseError(f"cannot read {path!r}: {exc}") from exc
        payloads.extend(GraphPayload(family=f) for f in args.family)
        if not payloads:
            raise ParseError("census needs at least one input file or --family")
        req = CensusRequest(
            graphs=payloads,
            checks=args.checks.split(",") if args.checks else None,
            window_t1=_parse_window(args.window) if args.window else None,
            window_t2=_parse_window(args.window_t2) if args.window_t2 else None,
            cap=args.cap_degree,
        )
        resp = handlers.census_handler(req)
    elif verb == "separate":
        req = SeparateRequest(
            graph=_payload(args),
            vertex=args.vertex,
            side_a=[t for t in args.side_a.split(",") if t],
            side_b=[t for t in args.side_b.split(",") if t],
            new_name=args.new_name,
        )
        resp = handlers.separate_handler(req)
    elif verb in ("oracle-t1", "oracle-t2"):
        req = OracleRequest(
            graph=_payload(args),
            window=_parse_window(args.window) if args.window else None,
            cap=args.cap_degree,
            check_generation=args.check_generation,
        )
        resp = (handlers.oracle_t1_handler if verb == "oracle-t1"
                else handlers.oracle_t2_handler)(req)
    elif verb == "regularity":
        req = RegularityRequest(graph=_payload(args), degree_bound=args.degree_bound)
        resp = handlers.regularity_handler(req)
    else:
        req = AnalyzeRequest(graph=_payload(args), cap=args.cap_degree)
        resp = {
            "t1": handlers.t1_handler,
            "rigid": handlers.rigid_handler,
            "rigid-indep": handlers.rigid_indep_handler,
            "rigid-no456": handlers.rigid_no456_handler,
            "separations": handlers.separations_handler,
            "polarize": handlers.polarize_handler,
            "inseparable": handlers.inseparable_handler,
            "t2": handlers.t2_handler,
            "t2-sufficient": handlers.t2_sufficient_handler,
        }[verb](req)
    if getattr(args, "json", False):
        _emit_json(resp, out)
    else:
        _render(verb, resp, out)
    return 0


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run_verb(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EdgeDeformError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
