"""Pydantic request/response envelopes for the HTTP service.

The mathematical payloads (polynomials, forms, foliations, germs, ...) travel
as plain JSON objects in the formats defined by :mod:`folcas.jsonio`; the
library constructors are their validators.  The models here type the service
envelopes and everything the service itself computes.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


# -- requests ---------------------------------------------------------------


class CheckRequest(BaseModel):
    document: dict = Field(description="Foliation JSON, or a corpus entry JSON")
    seed: int = 0


class FoliationRequest(BaseModel):
    foliation: dict = Field(description="{'ambient_dim', 'omega', 'degree'}")
    seed: int = 0


class DegreeRequest(FoliationRequest):
    trials: int = 5


class ReduceRequest(BaseModel):
    germ: dict = Field(description="Chart 1-form JSON: A dx + B dy")
    max_depth: int = 64


class PullbackRequest(BaseModel):
    components: list[dict] = Field(
        description="Homogeneous polynomial JSON, one per target coordinate"
    )
    foliation: dict


class RiccatiRequest(BaseModel):
    ode: dict = Field(description="{'a', 'b', 'c'} rational-function JSON")


class CatalogRequest(BaseModel):
    catalog: dict = Field(description="{'family': k, 'params': {...}}")


# -- responses --------------------------------------------------------------


class ErrorInfo(BaseModel):
    code: str
    message: str
    exit_code: int
    payload: dict | list | str | None = None


class ErrorResponse(BaseModel):
    error: ErrorInfo


class FoliationChecks(BaseModel):
    homogeneous_equal_degree: bool
    euler_contraction_zero: bool
    integrable: bool
    gcd_input_normalized: bool


class CheckResponse(BaseModel):
    ok: bool
    kind: str
    ambient_dim: int | None = None
    degree: int | None = None
    checks: FoliationChecks | None = None
    entry: dict | None = None


class DegreeResponse(BaseModel):
    tangency_degree: int
    declared_degree: int
    match: bool


class CellCount(BaseModel):
    rational: int
    residual: int


class SingularResponse(BaseModel):
    rational_points: list[list[str]]
    residual_degree: int
    by_cell: dict[str, CellCount]


class BBEntryModel(BaseModel):
    pt: list[str] | None = None
    cell: str | None = None
    at: str | None = None
    count: int | None = None
    bb: str


class BBResponse(BaseModel):
    per_point: list[BBEntryModel]
    total: str
    expected: str
    complete: bool
    diagnostics: list[str] = []


class TreeNodeModel(BaseModel):
    id: int
    parent: int | None
    chart_path: list[str]
    form: dict
    status: str
    node_class: dict | None = Field(default=None, alias="class")

    model_config = {"populate_by_name": True}


class ReduceResponse(BaseModel):
    nodes: list[TreeNodeModel]
    depth: int
    blowup_count: int


class PullbackResponse(BaseModel):
    ambient_dim: int
    omega: dict
    degree: int


class RiccatiResponse(BaseModel):
    triple: dict
    mc_zero: bool
    unfolding: dict
    integrable: bool
    restrict_zero: dict
    restrict_infinity: dict
    restrict_infinity_scale: str


class CatalogResponse(BaseModel):
    family: int
    realized: dict
    closed: bool


class CorpusResponse(BaseModel):
    count: int
    entries: list[dict]


class HealthResponse(BaseModel):
    status: str
    version: str
