"""FastAPI service exposing the measurement toolkit.

Endpoints mirror the CLI subcommands: /construct, /verify,
/design-check, and /tomo. Domain errors map to HTTP 400 with a
machine-readable body {"error", "detail", "exit_code"}; request
validation failures surface as FastAPI's usual 422.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import serialize
from ..config import resolve_tol
from ..designs import conical_check_direct, kappas_closed_form
from ..errors import GeamkitError, NotConstantS, SizeMismatch, WeightError
from ..geam import (
    GEAM,
    build_gsm,
    completeness_rank,
    constant_difference_family,
    equal_overlap_family,
    equal_trace_weights,
    extract_parameters,
    mub_geam,
    rescale_to_geam,
)
from ..operators import hs_inner, random_density, trace_distance
from ..tomography import (
    born_probabilities,
    geam_dual_frame,
    index_of_coincidence,
    ioc_closed_form,
    purity_from_probabilities,
    reconstruct_state,
    sample_measurements,
)
from . import schemas


def _build_family(req: schemas.ConstructRequest) -> GEAM:
    chosen = [
        name
        for name, given in [
            ("eta", req.eta is not None),
            ("R", req.difference is not None),
            ("mub", req.mub),
            ("t_list", req.t_list is not None),
        ]
        if given
    ]
    if len(chosen) != 1:
        raise WeightError(
            f"exactly one of eta / R / mub / t_list must be given, got {chosen or 'none'}"
        )
    kind = chosen[0]
    if kind != "t_list" and (req.weights is not None or req.weight_policy is not None):
        raise WeightError("weights and weight-policy apply only with t_list")
    if kind == "mub":
        return mub_geam(req.d)
    if req.sizes is None:
        raise SizeMismatch("sizes are required unless building from MUBs")
    if kind == "eta":
        return equal_overlap_family(req.d, req.sizes, req.eta)
    if kind == "R":
        return constant_difference_family(req.d, req.sizes, req.difference)
    gsm = build_gsm(req.d, req.sizes, mixing=req.t_list)
    policy = req.weight_policy or ("explicit" if req.weights is not None else "equal-trace")
    if policy == "explicit":
        if req.weights is None:
            raise WeightError("explicit weight policy requires weights")
        weights = req.weights
    elif req.weights is not None:
        raise WeightError(f"weights given but policy is {policy!r}")
    elif policy == "uniform":
        weights = [1.0 / gsm.n_lines] * gsm.n_lines
    else:
        weights = equal_trace_weights(req.d, req.sizes)
    return rescale_to_geam(gsm, weights)


def create_app() -> FastAPI:
    app = FastAPI(title="geamkit", version="0.1.0")

    @app.exception_handler(GeamkitError)
    async def _domain_error(_: Request, exc: GeamkitError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={
                "error": type(exc).__name__,
                "detail": str(exc),
                "exit_code": exc.exit_code,
            },
        )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": "ValueError", "detail": str(exc), "exit_code": 2},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/construct", response_model=schemas.ConstructResponse)
    def construct(req: schemas.ConstructRequest):
        tol = resolve_tol(req.tol)
        geam = _build_family(req)
        fit = extract_parameters(geam, tol)
        span = completeness_rank(geam, tol)
        return {
            "family": serialize.geam_to_dict(geam),
            "fitted": {
                "trace": list(fit.trace),
                "square_ratio": list(fit.square_ratio),
                "pair_ratio": list(fit.pair_ratio),
                "cross_ratio": fit.cross_ratio,
            },
            "rank": span.rank,
            "element_count": span.element_count,
            "classification": span.classification,
        }

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        tol = resolve_tol(req.tol)
        geam = serialize.geam_from_dict(req.family.model_dump())
        fit = extract_parameters(geam, tol)
        span = completeness_rank(geam, tol)
        return {
            "passed": fit.passed,
            "deviations": fit.deviations,
            "fitted": {
                "trace": list(fit.trace),
                "square_ratio": list(fit.square_ratio),
                "pair_ratio": list(fit.pair_ratio),
                "cross_ratio": fit.cross_ratio,
            },
            "gammas": list(geam.gammas),
            "rank": span.rank,
            "element_count": span.element_count,
            "classification": span.classification,
            "count_equality": span.count_equality,
            "tol": tol,
        }

    @app.post("/design-check", response_model=schemas.DesignCheckResponse)
    def design_check(req: schemas.DesignCheckRequest):
        tol = resolve_tol(req.tol)
        geam = serialize.geam_from_dict(req.family.model_dump())
        direct = conical_check_direct(geam, tol)
        closed = None
        closed_error = None
        agreement = None
        try:
            closed_cert = kappas_closed_form(geam, tol)
            closed = serialize.certificate_to_dict(closed_cert)
            agreement = max(
                abs(direct.kappa_plus - closed_cert.kappa_plus),
                abs(direct.kappa_minus - closed_cert.kappa_minus),
            )
        except NotConstantS as exc:
            closed_error = str(exc)
        return {
            "direct": serialize.certificate_to_dict(direct),
            "closed_form": closed,
            "closed_form_error": closed_error,
            "kappa_agreement": agreement,
            "passed": direct.is_design,
            "tol": tol,
        }

    @app.post("/tomo", response_model=schemas.TomoResponse)
    def tomo(req: schemas.TomoRequest):
        tol = resolve_tol(req.tol)
        geam = serialize.geam_from_dict(req.family.model_dump())
        if (req.state is None) == (req.random_rank is None):
            raise WeightError("give either a state or a random rank, not both")
        if req.state is not None:
            rho = serialize.density_from_dict(req.state.model_dump())
        else:
            rho = random_density(geam.d, req.random_rank, req.random_seed or 0)

        exact = born_probabilities(rho, geam)
        duals = geam_dual_frame(geam, tol)
        rho_exact = reconstruct_state(exact, duals)
        purity_true = hs_inner(rho, rho)

        ioc_closed = None
        warning = None
        try:
            bounds = ioc_closed_form(geam, purity_true, tol)
            ioc_closed = {"c": bounds.c, "c_max": bounds.c_max}
        except NotConstantS as exc:
            warning = f"closed-form coincidence skipped: {exc}"

        out = {
            "sizes": list(geam.sizes),
            "gammas": list(geam.gammas),
            "p_exact": [list(line) for line in exact.p],
            "ioc_exact": index_of_coincidence(exact),
            "ioc_closed": ioc_closed,
            "ioc_closed_warning": warning,
            "purity_true": purity_true,
            "purity_from_probabilities": purity_from_probabilities(geam, exact),
            "purity_reconstructed": hs_inner(rho_exact, rho_exact),
            "trace_distance": trace_distance(rho_exact, rho),
        }
        if req.shots is not None:
            empirical = sample_measurements(rho, geam, req.shots, req.seed)
            rho_emp = reconstruct_state(empirical, duals, enforce_physical=True)
            out.update(
                {
                    "p_empirical": [list(line) for line in empirical.p],
                    "shots": req.shots,
                    "seed": req.seed,
                    "ioc_empirical": index_of_coincidence(empirical),
                    "purity_from_probabilities_empirical": purity_from_probabilities(
                        geam, empirical
                    ),
                    "trace_distance_empirical": trace_distance(rho_emp, rho),
                }
            )
        return out

    return app


app = create_app()
