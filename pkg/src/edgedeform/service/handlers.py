"""Service handlers: the shared implementation behind the HTTP endpoints
and the CLI.

Handlers take request models, run the core library, and return response
models; domain errors propagate to the caller, which maps them to HTTP
status codes or exit codes.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .. import deform, graphs, obstructions, oracle
from ..errors import EdgeDeformError, ParseError, TriangleFoundError
from ..monomials import ONE
from .models import (
    AnalyzeRequest,
    CensusRequest,
    CensusResponse,
    CensusRow,
    ClassificationView,
    GradedReportView,
    GraphPayload,
    GraphView,
    HomView,
    PairSidesView,
    PolarizeResponse,
    RegularityRequest,
    RegularityResponse,
    RegularityRowView,
    RigidResponse,
    SeparateRequest,
    SeparateResponse,
    SeparationsResponse,
    SeparationVertexView,
    SimpleVerdictResponse,
    T1Response,
    T2Response,
    T2WitnessView,
)

DEFAULT_CENSUS_CHECKS = ("rigid", "rigid-indep", "inseparable", "t2", "t2-sufficient")
ORACLE_CHECKS = ("oracle-t1", "oracle-t2")


def parse_family_spec(spec):
    """Expand a family spec into named graphs.

    Grammar: cycle|path|complete|star:N (or N..M for a range),
    all-connected:N for every labeled simple connected graph on N
    vertices, letterplace2:chain:N, letterplace2:antichain:N, or
    letterplace2:<poset file>.
    """
    parts = spec.split(":")
    if parts[0] == "letterplace2":
        if len(parts) == 3 and parts[1] in ("chain", "antichain"):
            n = _parse_size(parts[2], spec)
            poset = graphs.Poset.chain(n) if parts[1] == "chain" else graphs.Poset.antichain(n)
            return [(spec, graphs.letterplace2(poset))]
        if len(parts) == 2:
            path = Path(parts[1])
            try:
                text = path.read_text()
            except OSError as exc:
                raise ParseError(f"cannot read poset file {parts[1]!r}: {exc}") from exc
            return [(spec, graphs.letterplace2(graphs.parse_poset_text(text)))]
        raise ParseError(f"bad letterplace2 spec {spec!r}")
    if len(parts) != 2:
        raise ParseError(f"bad family spec {spec!r} (expected name:n)")
    kind, size = parts
    if kind == "all-connected":
        n = _parse_size(size, spec)
        return [(f"{kind}:{n}#{i}", g)
                for i, g in enumerate(graphs.labeled_graphs(n, connected=True))]
    if ".." in size:
        lo_s, hi_s = size.split("..", 1)
        lo, hi = _parse_size(lo_s, spec), _parse_size(hi_s, spec)
        if hi < lo:
            raise ParseError(f"empty range in family spec {spec!r}")
        return [(f"{kind}:{n}", graphs.family(kind, n)) for n in range(lo, hi + 1)]
    return [(spec, graphs.family(kind, _parse_size(size, spec)))]


def _parse_size(token, spec):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad size {token!r} in family spec {spec!r}") from None


def load_graph(payload: GraphPayload):
    """Materialize a single graph from a payload; rejects multi-graph specs."""
    if payload.edges is not None:
        return graphs.build_graph([tuple(e) for e in payload.edges])
    if payload.text is not None:
        return graphs.parse_graph_text(payload.text)
    expanded = parse_family_spec(payload.family)
    if len(expanded) != 1:
        raise ParseError(
            f"family spec {payload.family!r} expands to {len(expanded)} graphs; "
            "only census accepts multi-graph specs")
    return expanded[0][1]


def load_graph_stream(payloads):
    """Expand payloads into (name, graph) rows for the census."""
    rows = []
    for payload in payloads:
        if payload.family is not None:
            expanded = parse_family_spec(payload.family)
            if payload.name and len(expanded) == 1:
                expanded = [(payload.name, expanded[0][1])]
            rows.extend(expanded)
        else:
            graph = load_graph(payload)
            rows.append((payload.name or f"graph-{len(rows)}", graph))
    return rows


def _derivation_string(expression):
    if not expression:
        return None
    parts = []
    for coeff, mult, vertex in expression:
        prefix = "" if coeff == 1 else f"{coeff}*"
        body = f"d/d{vertex}" if mult.is_one() else f"{mult}*d/d{vertex}"
        parts.append(prefix + body)
    return " + ".join(parts)


def hom_view(hom, classification=None):
    if hom.kind == "edge":
        source = f"{hom.source[0]}*{hom.source[1]}"
    else:
        source = hom.source
    cls = classification or deform.Classification("nontrivial", "generator")
    return HomView(
        kind=hom.kind,
        source=source,
        L=list(hom.subset) if hom.subset is not None else None,
        lam=str(hom.multiplier) if hom.multiplier is not None else None,
        degree=hom.degree,
        images={f"{e[0]}*{e[1]}": str(q) for e, q in sorted(hom.images.items())},
        classification=ClassificationView(
            status=cls.status,
            reason=cls.reason,
            derivation=_derivation_string(cls.derivation),
        ),
    )


def t1_handler(req: AnalyzeRequest) -> T1Response:
    graph = load_graph(req.graph)
    cap = req.cap or deform.DEFAULT_STAR_CAP
    views = []
    counts = {"nontrivial": 0, "trivial": 0, "zero": 0, "derivations": 0}
    for e in graph.edge_list():
        for hom, cls in deform.edge_homs(graph, e):
            counts[cls.status] += 1
            views.append(hom_view(hom, cls))
    for v in graph.vertices:
        for hom, cls in deform.star_homs(graph, v, cap=cap):
            counts[cls.status] += 1
            views.append(hom_view(hom, cls))
    for v in graph.vertices:
        hom = deform.derivation_hom(graph, v)
        counts["derivations"] += 1
        views.append(hom_view(hom, deform.Classification(
            "trivial", "coordinate derivation", ((Fraction(1), ONE, v),))))
    return T1Response(graph=GraphView.from_graph(graph), homs=views, counts=counts)


def rigid_handler(req: AnalyzeRequest) -> RigidResponse:
    graph = load_graph(req.graph)
    result = deform.is_rigid(graph, cap=req.cap or deform.DEFAULT_STAR_CAP)
    return RigidResponse(rigid=result.rigid, criterion="local", witness=result.witness)


def rigid_indep_handler(req: AnalyzeRequest) -> RigidResponse:
    graph = load_graph(req.graph)
    verdict = deform.is_rigid_independent_sets(graph)
    return RigidResponse(rigid=verdict, criterion="independent-sets")


def rigid_no456_handler(req: AnalyzeRequest) -> RigidResponse:
    graph = load_graph(req.graph)
    verdict = deform.rigid_no456(graph)
    return RigidResponse(rigid=verdict, criterion="no-4/5/6-cycles")


def separations_handler(req: AnalyzeRequest) -> SeparationsResponse:
    graph = load_graph(req.graph)
    rows = [
        SeparationVertexView(
            vertex=v,
            pairs=[PairSidesView(A=list(a), B=list(b)) for a, b in pairs])
        for v, pairs in graphs.separating_vertices(graph)
    ]
    return SeparationsResponse(separable=bool(rows), vertices=rows)


def separate_handler(req: SeparateRequest) -> SeparateResponse:
    graph = load_graph(req.graph)
    result = graphs.separate(graph, req.vertex, (req.side_a, req.side_b),
                             new_name=req.new_name)
    fresh = result.vertices[-1]
    return SeparateResponse(graph=GraphView.from_graph(result), fresh_vertex=fresh)


def polarize_handler(req: AnalyzeRequest) -> PolarizeResponse:
    graph = load_graph(req.graph)
    result = graphs.polarize(graph)
    fresh = [v for v in result.vertices if not graph.has_vertex(v)]
    return PolarizeResponse(graph=GraphView.from_graph(result), fresh_vertices=fresh)


def inseparable_handler(req: AnalyzeRequest) -> SimpleVerdictResponse:
    return SimpleVerdictResponse(verdict=graphs.is_inseparable(load_graph(req.graph)))


def t2_handler(req: AnalyzeRequest) -> T2Response:
    graph = load_graph(req.graph)
    result = obstructions.t2_vanishes_trianglefree(
        graph, cap=req.cap or obstructions.DEFAULT_PAIR_CAP)
    witness = None
    if result.witness is not None:
        witness = T2WitnessView(
            edge=list(result.witness["edge"]),
            L_a=result.witness["L_a"],
            L_b=result.witness["L_b"],
            lam=result.witness["lambda"],
            x=result.witness["x"],
        )
    return T2Response(vanishes=result.vanishes, witness=witness)


def t2_sufficient_handler(req: AnalyzeRequest) -> SimpleVerdictResponse:
    return SimpleVerdictResponse(verdict=obstructions.t2_zero_sufficient(load_graph(req.graph)))


def oracle_t1_handler(req) -> GradedReportView:
    graph = load_graph(req.graph)
    report = oracle.t1_report(
        graph,
        window=tuple(req.window) if req.window else oracle.T1_WINDOW,
        check_generation=req.check_generation,
        cap=req.cap or deform.DEFAULT_STAR_CAP,
    )
    return GradedReportView.from_report(report)


def oracle_t2_handler(req) -> GradedReportView:
    graph = load_graph(req.graph)
    report = oracle.t2_report(
        graph,
        window=tuple(req.window) if req.window else oracle.T2_WINDOW,
        check_generation=req.check_generation,
        cap=req.cap or deform.DEFAULT_STAR_CAP,
    )
    return GradedReportView.from_report(report)


def regularity_handler(req: RegularityRequest) -> RegularityResponse:
    graph = load_graph(req.graph)
    rows = []
    for v, pairs in graphs.separating_vertices(graph):
        for a, b in pairs:
            separated = graphs.separate(graph, v, (a, b))
            fresh = separated.vertices[-1]
            ok = oracle.separation_regularity_check(
                graph, separated, v, fresh, degree_bound=req.degree_bound)
            rows.append(RegularityRowView(
                vertex=v, A=list(a), B=list(b), fresh_vertex=fresh,
                regular_up_to_bound=ok))
    return RegularityResponse(
        degree_bound=req.degree_bound,
        rows=rows,
        all_regular=all(r.regular_up_to_bound for r in rows),
    )


def census_handler(req: CensusRequest) -> CensusResponse:
    checks = tuple(req.checks) if req.checks else DEFAULT_CENSUS_CHECKS
    known = set(DEFAULT_CENSUS_CHECKS) | set(ORACLE_CHECKS)
    for c in checks:
        if c not in known:
            raise ParseError(f"unknown census check {c!r}")
    window_t1 = tuple(req.window_t1) if req.window_t1 else oracle.T1_WINDOW
    window_t2 = tuple(req.window_t2) if req.window_t2 else oracle.T2_WINDOW
    cap = req.cap or deform.DEFAULT_STAR_CAP
    rows = []
    mismatches = 0
    for name, graph in load_graph_stream(req.graphs):
        row = CensusRow(name=name, vertices=len(graph.vertices),
                        edges=len(graph.edge_list()))
        try:
            if "rigid" in checks:
                row.rigid = deform.is_rigid(graph, cap=cap).rigid
            if "rigid-indep" in checks and graph.is_simple:
                row.rigid_indep = deform.is_rigid_independent_sets(graph)
            if "inseparable" in checks:
                row.inseparable = graphs.is_inseparable(graph)
            if "t2" in checks and graph.is_simple:
                try:
                    row.t2_vanishes = obstructions.t2_vanishes_trianglefree(
                        graph, cap=cap).vanishes
                except TriangleFoundError:
                    row.t2_vanishes = None
            if "t2-sufficient" in checks and graph.is_simple:
                row.t2_sufficient = obstructions.t2_zero_sufficient(graph)
            if "oracle-t1" in checks:
                row.t1_window_zero = oracle.t1_report(graph, window=window_t1).all_zero()
            if "oracle-t2" in checks and graph.is_simple:
                row.t2_window_zero = oracle.t2_report(graph, window=window_t2).all_zero()
        except EdgeDeformError as exc:
            row.error = str(exc)
        if row.rigid is not None and row.rigid_indep is not None \
                and row.rigid != row.rigid_indep:
            row.mismatch = True
        if row.rigid is not None and row.t1_window_zero is not None \
                and row.rigid != row.t1_window_zero:
            row.mismatch = True
        if row.t2_vanishes is not None and row.t2_window_zero is not None \
                and row.t2_vanishes != row.t2_window_zero:
            row.mismatch = True
        if row.t2_sufficient and row.t2_vanishes is False:
            row.mismatch = True
        if row.mismatch:
            mismatches += 1
        rows.append(row)
    return CensusResponse(
        rows=rows,
        mismatches=mismatches,
        note=("oracle columns are window-bounded; vanishing in all degrees is "
              "certified by the combinatorial criteria only"),
    )
