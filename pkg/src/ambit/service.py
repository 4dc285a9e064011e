"""Stateless JSON-over-HTTP facade.

Versioned under ``/v1``; every handler is a pure function of the validated
request body, so repeating a request yields an identical response. Error
responses are ``{code, message, detail}`` objects: 400 for validation
failures, 422 for assumptions that contradict the data or for capped
requests, 500 for internal faults. Successful responses carry a
``schema_version`` field.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import results, simulation
from .errors import (
    AssumptionError,
    CapExceededError,
    InfeasibleAssumptionError,
    UndefinedMARError,
    ValidationError,
)
from .formats import assumption_from_obj, treatment_problem_from_obj
from .identification import OutcomeScale
from .polling import load_polls

SCHEMA_VERSION = "1"

#: Work cap for the simulate endpoint: replications x max sample size.
SIMULATE_CAP = 10**8


class ScaleBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    lo: float
    hi: float


class RegionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    mean: Optional[float] = None
    rate: float
    assumption: dict[str, Any]
    scale: Optional[ScaleBody] = None


class PriorBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    weights: list[float]


class DecideRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    action_labels: list[str]
    state_labels: list[str]
    welfare: list[list[float]]
    criterion: Literal["bayes", "maximin", "minimax_regret"]
    prior: Optional[PriorBody] = None


class TreatmentRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    stratum_label: str = "stratum"
    arms: list[dict[str, Any]]


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    mean: Optional[float] = None
    rate: float
    deltas: list[tuple[float, float]]


class PollAuditRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    polls: list[dict[str, Any]]
    assumptions: list[dict[str, Any]]
    deltas: Optional[list[tuple[float, float]]] = None


def _ok(payload: dict[str, Any]) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, **payload}


def _error(code: str, message: str, detail: Any = None) -> dict[str, Any]:
    return {"code": code, "message": message, "detail": detail}


def create_app() -> FastAPI:
    app = FastAPI(title="ambit", version=SCHEMA_VERSION)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _on_request_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error(
                "validation_error", "invalid request body", jsonable_encoder(exc.errors())
            ),
        )

    @app.exception_handler(ValidationError)
    async def _on_validation(request: Request, exc: ValidationError):
        return JSONResponse(
            status_code=400, content=_error("validation_error", str(exc))
        )

    @app.exception_handler(AssumptionError)
    async def _on_assumption(request: Request, exc: AssumptionError):
        code = (
            "undefined_mar"
            if isinstance(exc, UndefinedMARError)
            else "infeasible_assumption"
            if isinstance(exc, InfeasibleAssumptionError)
            else "assumption_error"
        )
        return JSONResponse(status_code=422, content=_error(code, str(exc)))

    @app.exception_handler(CapExceededError)
    async def _on_cap(request: Request, exc: CapExceededError):
        return JSONResponse(status_code=422, content=_error("cap_exceeded", str(exc)))

    @app.exception_handler(Exception)
    async def _on_internal(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content=_error("internal_error", "internal fault")
        )

    @app.get("/v1/health")
    async def health() -> dict[str, Any]:
        return {"status": "ok", "schema_version": SCHEMA_VERSION}

    @app.post("/v1/region")
    async def region(body: RegionRequest) -> JSONResponse:
        assumption = assumption_from_obj(body.assumption)
        scale = OutcomeScale(body.scale.lo, body.scale.hi) if body.scale else None
        return JSONResponse(
            _ok(results.region_result(body.mean, body.rate, assumption, scale))
        )

    @app.post("/v1/decide")
    async def decide(body: DecideRequest) -> JSONResponse:
        weights = body.prior.weights if body.prior is not None else None
        return JSONResponse(
            _ok(
                results.decide_result(
                    body.action_labels,
                    body.state_labels,
                    body.welfare,
                    body.criterion,
                    weights,
                )
            )
        )

    @app.post("/v1/treatment")
    async def treatment(body: TreatmentRequest) -> JSONResponse:
        problem = treatment_problem_from_obj(
            {"stratum_label": body.stratum_label, "arms": body.arms}
        )
        return JSONResponse(_ok(results.treatment_result(problem)))

    @app.post("/v1/sweep")
    async def sweep(body: SweepRequest) -> JSONResponse:
        return JSONResponse(
            _ok(results.sweep_result(body.mean, body.rate, body.deltas))
        )

    @app.post("/v1/poll-audit")
    async def poll_audit(body: PollAuditRequest) -> JSONResponse:
        summaries = load_polls(body.polls)
        assumptions = [
            assumption_from_obj(a, where=f"assumptions[{i}]")
            for i, a in enumerate(body.assumptions)
        ]
        return JSONResponse(
            _ok(results.poll_audit_result(summaries, assumptions, body.deltas))
        )

    @app.post("/v1/simulate")
    async def simulate(body: dict[str, Any]) -> JSONResponse:
        config = simulation.load_sim_config(body)
        work = config.replications * max(config.sample_sizes)
        if work > SIMULATE_CAP:
            raise CapExceededError(
                f"replications x max sample size = {work} exceeds the "
                f"{SIMULATE_CAP} per-request cap"
            )
        return JSONResponse(_ok(results.simulate_result(config)))

    return app


app = create_app()
