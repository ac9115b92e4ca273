"""Pydantic request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class MatrixDoc(BaseModel):
    dim: int
    entries: list[list[list[float]]]


class GeamParamsDoc(BaseModel):
    trace: list[float]
    square_ratio: list[float]
    pair_ratio: list[float]
    cross_ratio: float


class GeamDoc(BaseModel):
    d: int
    sizes: list[int]
    gammas: list[float]
    elements: list[list[MatrixDoc]]
    params: GeamParamsDoc


class ConstructRequest(BaseModel):
    """Exactly one of eta / R / mub / t_list selects the builder."""

    model_config = ConfigDict(populate_by_name=True)

    d: int
    sizes: Optional[list[int]] = None
    eta: Optional[float] = None
    difference: Optional[float] = Field(None, alias="R")
    mub: bool = False
    t_list: Optional[list[float]] = None
    weight_policy: Optional[Literal["equal-trace", "uniform", "explicit"]] = None
    weights: Optional[list[float]] = None
    tol: Optional[float] = None


class ConstructResponse(BaseModel):
    family: GeamDoc
    fitted: GeamParamsDoc
    rank: int
    element_count: int
    classification: str


class VerifyRequest(BaseModel):
    family: GeamDoc
    tol: Optional[float] = None


class VerifyResponse(BaseModel):
    passed: bool
    deviations: dict[str, float]
    fitted: GeamParamsDoc
    gammas: list[float]
    rank: int
    element_count: int
    classification: str
    count_equality: Optional[bool] = None
    tol: float


class CertificateDoc(BaseModel):
    is_design: bool
    kappa_plus: float
    kappa_minus: float
    S: float
    mu: float
    residual: float


class DesignCheckRequest(BaseModel):
    family: GeamDoc
    tol: Optional[float] = None


class DesignCheckResponse(BaseModel):
    direct: CertificateDoc
    closed_form: Optional[CertificateDoc] = None
    closed_form_error: Optional[str] = None
    kappa_agreement: Optional[float] = None
    passed: bool
    tol: float


class TomoRequest(BaseModel):
    """State given explicitly or drawn at random (rank + seed)."""

    family: GeamDoc
    state: Optional[MatrixDoc] = None
    random_rank: Optional[int] = None
    random_seed: Optional[int] = None
    shots: Optional[int] = None
    seed: int = 0
    tol: Optional[float] = None


class IocClosedDoc(BaseModel):
    c: float
    c_max: float


class TomoResponse(BaseModel):
    sizes: list[int]
    gammas: list[float]
    p_exact: list[list[float]]
    p_empirical: Optional[list[list[float]]] = None
    shots: Optional[int] = None
    seed: Optional[int] = None
    ioc_exact: float
    ioc_empirical: Optional[float] = None
    ioc_closed: Optional[IocClosedDoc] = None
    ioc_closed_warning: Optional[str] = None
    purity_true: float
    purity_from_probabilities: float
    purity_from_probabilities_empirical: Optional[float] = None
    purity_reconstructed: float
    trace_distance: float
    trace_distance_empirical: Optional[float] = None


class ErrorDoc(BaseModel):
    error: str
    detail: str
    exit_code: int
