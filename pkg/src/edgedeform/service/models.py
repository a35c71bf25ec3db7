"""Pydantic request/response models for the analysis service.

These models define the wire schema shared by the HTTP endpoints and the
CLI; JSON field names follow the report conventions (e.g. "lambda" for
multipliers, generator keys rendered as "u*v|x*y").
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GraphPayload(BaseModel):
    """One graph, given as explicit edges, edge-list text, or a family spec."""

    model_config = ConfigDict(extra="forbid")

    edges: Optional[list[tuple[str, str]]] = None
    text: Optional[str] = None
    family: Optional[str] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        sources = [s is not None for s in (self.edges, self.text, self.family)]
        if sum(sources) != 1:
            raise ValueError("exactly one of edges, text, family must be given")
        return self


class GraphView(BaseModel):
    vertices: list[str]
    edges: list[list[str]]
    loops: list[str]
    stripped: list[str]

    @classmethod
    def from_graph(cls, graph):
        return cls(
            vertices=list(graph.vertices),
            edges=[list(e) for e in graph.edge_list()],
            loops=list(graph.loops()),
            stripped=list(graph.stripped),
        )


class ClassificationView(BaseModel):
    status: str
    reason: str
    derivation: Optional[str] = None


class HomView(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: str
    source: str
    L: Optional[list[str]] = None
    lam: Optional[str] = Field(default=None, alias="lambda")
    degree: int
    images: dict[str, str]
    classification: ClassificationView


class T1Response(BaseModel):
    graph: GraphView
    homs: list[HomView]
    counts: dict[str, int]


class RigidResponse(BaseModel):
    rigid: bool
    criterion: str
    witness: Optional[dict[str, Any]] = None


class SimpleVerdictResponse(BaseModel):
    verdict: bool


class PairSidesView(BaseModel):
    A: list[str]
    B: list[str]


class SeparationVertexView(BaseModel):
    vertex: str
    pairs: list[PairSidesView]


class SeparationsResponse(BaseModel):
    separable: bool
    vertices: list[SeparationVertexView]


class SeparateRequest(BaseModel):
    graph: GraphPayload
    vertex: str
    side_a: list[str]
    side_b: list[str]
    new_name: Optional[str] = None


class SeparateResponse(BaseModel):
    graph: GraphView
    fresh_vertex: str


class PolarizeResponse(BaseModel):
    graph: GraphView
    fresh_vertices: list[str]


class T2WitnessView(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    edge: list[str]
    L_a: list[str]
    L_b: list[str]
    lam: str = Field(alias="lambda")
    x: str


class T2Response(BaseModel):
    vanishes: bool
    witness: Optional[T2WitnessView] = None


class DegreeRowView(BaseModel):
    c: int
    hom_dim: int
    trivial_dim: int
    cohomology_dim: int
    generation_ok: Optional[bool] = None


class GradedReportView(BaseModel):
    kind: str
    degrees: list[DegreeRowView]
    window: list[int]
    caps: dict[str, int]
    note: str

    @classmethod
    def from_report(cls, report):
        return cls(**report.as_dict())


class AnalyzeRequest(BaseModel):
    graph: GraphPayload
    cap: Optional[int] = None


class OracleRequest(BaseModel):
    graph: GraphPayload
    window: Optional[tuple[int, int]] = None
    cap: Optional[int] = None
    check_generation: bool = False


class RegularityRequest(BaseModel):
    graph: GraphPayload
    degree_bound: int = 5


class RegularityRowView(BaseModel):
    vertex: str
    A: list[str]
    B: list[str]
    fresh_vertex: str
    regular_up_to_bound: bool


class RegularityResponse(BaseModel):
    degree_bound: int
    rows: list[RegularityRowView]
    all_regular: bool


class CensusRequest(BaseModel):
    graphs: list[GraphPayload]
    checks: Optional[list[str]] = None
    window_t1: Optional[tuple[int, int]] = None
    window_t2: Optional[tuple[int, int]] = None
    cap: Optional[int] = None


class CensusRow(BaseModel):
    name: str
    vertices: int
    edges: int
    rigid: Optional[bool] = None
    rigid_indep: Optional[bool] = None
    inseparable: Optional[bool] = None
    t2_vanishes: Optional[bool] = None
    t2_sufficient: Optional[bool] = None
    t1_window_zero: Optional[bool] = None
    t2_window_zero: Optional[bool] = None
    mismatch: bool = False
    error: Optional[str] = None


class CensusResponse(BaseModel):
    rows: list[CensusRow]
    mismatches: int
    note: str


class ErrorBody(BaseModel):
    error: str
    kind: str
