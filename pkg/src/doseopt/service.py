"""HTTP gateway: versioned JSON API over the engine, with async simulation jobs.

Boundaries and probabilities are reported as 6-decimal strings so clients
never depend on float wire formatting. Simulation runs go through a small
worker pool and are polled by job id.
"""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import configio, merit
from .boin import lambda_bounds
from .boin12 import generate_rds_table, default_rds_table
from .conduct import CohortEvent, ConflictError, ReplayError, TrialStore
from .outcomes import ValidationError
from .simulate import (advise_sample_size, simulate_boin12, simulate_two_stage,
                       TwoStageConfig)

API_PREFIX = "/v1"


def dec6(x: float) -> str:
    return f"{x:.6f}"


def _error_payload(code: str, message: str, field: str | None):
    return {"code": code, "message": message, "field": field}


def create_app(data_dir: str, token: str | None = None,
               sim_workers: int = 2) -> FastAPI:
    app = FastAPI(title="doseopt", version="1")
    store = TrialStore(data_dir)
    jobs: dict[str, dict] = {}
    jobs_lock = threading.Lock()
    pool = ThreadPoolExecutor(max_workers=sim_workers)

    # -- middleware ---------------------------------------------------------

    @app.middleware("http")
    async def auth(request: Request, call_next):
        if token:
            supplied = request.headers.get("authorization", "")
            if supplied != f"Bearer {token}":
                return JSONResponse(
                    status_code=401,
                    content=_error_payload("unauthorized", "bad or missing token",
                                           None))
        return await call_next(request)

    @app.exception_handler(ConflictError)
    async def conflict_handler(_req, exc: ConflictError):
        return JSONResponse(status_code=409,
                            content=_error_payload("conflict", str(exc), exc.field))

    @app.exception_handler(ReplayError)
    async def replay_handler(_req, exc: ReplayError):
        return JSONResponse(status_code=500,
                            content=_error_payload("corrupt-log", str(exc), None))

    @app.exception_handler(ValidationError)
    async def validation_handler(_req, exc: ValidationError):
        missing = exc.field == "trial_id" and "no trial" in str(exc)
        return JSONResponse(
            status_code=404 if missing else 422,
            content=_error_payload("not-found" if missing else "invalid",
                                   str(exc), exc.field))

    # -- trials -------------------------------------------------------------

    def _trial_view(rec):
        return {
            "trial_id": rec.trial_id,
            "status": rec.status,
            "created_at": rec.created_at,
            "warnings": rec.warnings,
            "recommendation": rec.recommendation,
            "final_obd": rec.final_obd,
            "state": [{"dose": j + 1, "n": ds.n, "x_t": ds.x_t, "x_e": ds.x_e,
                       "eliminated": ds.eliminated,
                       "elimination_reason": ds.elimination_reason}
                      for j, ds in enumerate(rec.state)],
            "n_events": len(rec.events),
        }

    @app.post(f"{API_PREFIX}/trials", status_code=201)
    async def create_trial(body: dict):
        cfg = configio.conduct_config_from_dict(body.get("config", body))
        rec = store.create(cfg, trial_id=body.get("id"))
        return _trial_view(rec)

    @app.get(API_PREFIX + "/trials/{trial_id}")
    async def get_trial(trial_id: str):
        return _trial_view(store.replay(trial_id))

    @app.post(API_PREFIX + "/trials/{trial_id}/cohorts")
    async def post_cohort(trial_id: str, body: dict):
        event = CohortEvent(
            dose=int(body.get("dose", 0)), size=int(body.get("size", 0)),
            x_t=int(body.get("x_t", -1)), x_e=int(body.get("x_e", -1)),
            note=str(body.get("note", "")),
            override=bool(body.get("override", False)),
            event_key=body.get("event_key"))
        decision = store.record_cohort(trial_id, event)
        return {"decision": decision.to_dict(),
                "trial": _trial_view(store.replay(trial_id))}

    @app.post(API_PREFIX + "/trials/{trial_id}/close")
    async def close_trial(trial_id: str, body: dict | None = None):
        force = bool((body or {}).get("force", False))
        return store.close(trial_id, force=force)

    @app.get(API_PREFIX + "/trials/{trial_id}/audit")
    async def audit(trial_id: str):
        return store.audit_bundle(trial_id)

    # -- design tables ------------------------------------------------------

    @app.get(API_PREFIX + "/designs/boundaries")
    async def boundaries(target: float, phi1: float | None = None,
                         phi2: float | None = None):
        b = lambda_bounds(target, phi1, phi2)
        return {"target": dec6(b.phi), "phi1": dec6(b.phi1), "phi2": dec6(b.phi2),
                "lambda_e": dec6(b.lambda_e), "lambda_d": dec6(b.lambda_d)}

    def _table_response(table, fmt: str):
        if fmt == "csv":
            return PlainTextResponse(table.to_csv(), media_type="text/csv")
        return {"rows": [{"n": k[0], "n_tox": k[1], "n_eff": k[2],
                          "rds": v if v != "E" else None,
                          "eliminated": v == "E"}
                         for k, v in sorted(table.rows.items())]}

    @app.get(API_PREFIX + "/designs/boin12/table")
    async def boin12_table(phi_t: float | None = None, phi_e: float | None = None,
                           n_max: int | None = None, fmt: str = "json"):
        if phi_t is None and phi_e is None and n_max is None:
            return _table_response(default_rds_table(), fmt)
        cfg = configio.boin12_config_from_dict(
            {k: v for k, v in (("phi_t", phi_t), ("phi_e", phi_e))
             if v is not None})
        ns = range((n_max if n_max is not None else cfg.max_per_dose) + 1)
        return _table_response(generate_rds_table(cfg, ns), fmt)

    @app.post(API_PREFIX + "/designs/boin12/table")
    async def boin12_table_custom(body: dict):
        cfg = configio.boin12_config_from_dict(body.get("config", body))
        n_values = body.get("n_values") or range(cfg.max_per_dose + 1)
        fmt = body.get("fmt", "json")
        return _table_response(generate_rds_table(cfg, n_values), fmt)

    @app.post(API_PREFIX + "/designs/merit/search")
    async def merit_search(body: dict):
        spec = configio.merit_spec_from_dict(body)
        design = merit.search(spec)
        return {"n": design.n, "m_t": design.m_t, "m_e": design.m_e,
                "achieved_t1e": dec6(merit.generalized_t1e(design, spec)),
                "achieved_power": dec6(merit.generalized_power(design, spec))}

    @app.get(API_PREFIX + "/designs/advise")
    async def advise(n_doses: int, strategy: str, arms: int = 2):
        lo, hi = advise_sample_size(n_doses, strategy, arms)
        return {"low": lo, "high": hi}

    # -- simulations --------------------------------------------------------

    def _run_job(job_id: str, cfg):
        try:
            oc = (simulate_two_stage(cfg) if isinstance(cfg.design, TwoStageConfig)
                  else simulate_boin12(cfg))
            header = [json.dumps(configio.sim_config_to_dict(cfg), sort_keys=True)]
            with jobs_lock:
                jobs[job_id].update(status="done", result=oc.to_dict(),
                                    csv=oc.to_csv(header_lines=header))
        except Exception as exc:   # report, never hang the poller
            with jobs_lock:
                jobs[job_id].update(status="failed", error=str(exc))

    @app.post(API_PREFIX + "/simulations", status_code=202)
    async def submit_simulation(body: dict):
        cfg = configio.sim_config_from_dict(body)
        job_id = uuid.uuid4().hex[:12]
        with jobs_lock:
            jobs[job_id] = {"status": "running", "result": None}
        pool.submit(_run_job, job_id, cfg)
        return {"job_id": job_id, "status": "running"}

    @app.get(API_PREFIX + "/simulations/{job_id}")
    async def get_simulation(job_id: str):
        with jobs_lock:
            job = jobs.get(job_id)
            if job is None:
                return JSONResponse(
                    status_code=404,
                    content=_error_payload("not-found", f"no job {job_id}", None))
            return dict(job)

    return app
