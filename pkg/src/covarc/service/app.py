"""HTTP service: read-only risk API over a reloadable snapshot.

Request handlers share one immutable snapshot reference. Reload builds a
fresh snapshot off to the side and swaps the reference in a single
assignment, so every in-flight request sees either the old or the new
snapshot entirely; the snapshot_time in each response identifies which.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import threading
import time
from contextlib import asynccontextmanager
from typing import Iterator, Optional

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse

from ..errors import IngestError, InsufficientDataError, UnknownNameError, UnknownRegionError
from ..ingest import DataSnapshot, load_snapshot
from ..riskmodel import RiskConfig, simulate, assess
from .config import ServiceConfig
from .schemas import (
    ActivityIn,
    ConfigOut,
    ConfigOverridesIn,
    HealthOut,
    IntervalOut,
    ProfileIn,
    RegionOut,
    RiskReportOut,
    RiskRequest,
)

log = logging.getLogger("covarc.service")
access_log = logging.getLogger("covarc.service.access")


class SnapshotHolder:
    """Owns the current snapshot reference; swap is atomic for readers."""

    def __init__(self, config: ServiceConfig):
        self._config = config
        self._lock = threading.Lock()  # serializes builders, never readers
        self.current: DataSnapshot | None = None
        self.last_error: str | None = None

    def reload(self) -> DataSnapshot:
        with self._lock:
            snapshot = load_snapshot(
                self._config.snapshot_dir, allow_mdy_dates=self._config.allow_mdy_dates
            )
            self.current = snapshot
            self.last_error = None
            return snapshot

    def try_reload(self) -> bool:
        try:
            snapshot = self.reload()
        except IngestError as exc:
            self.last_error = str(exc)
            log.error("snapshot reload failed: %s", exc)
            return False
        log.info(
            "snapshot loaded: %d regions, snapshot_time=%s",
            len(snapshot.cases),
            snapshot.snapshot_time.isoformat(),
        )
        return True


def _error_body(code: str, message: str, **extra) -> dict:
    return {"code": code, "message": message, **extra}


def _field_errors(exc: RequestValidationError) -> list[dict]:
    fields = []
    for err in exc.errors():
        loc = [str(part) for part in err["loc"] if part not in ("body", "query")]
        fields.append({"field": ".".join(loc), "message": err["msg"]})
    return fields


def create_app(config: ServiceConfig, auto_load: bool = True) -> FastAPI:
    holder = SnapshotHolder(config)
    stop_event = threading.Event()

    def reload_loop():
        while not stop_event.wait(config.reload_seconds):
            holder.try_reload()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        threads = []
        if auto_load:
            initial = threading.Thread(target=holder.try_reload, daemon=True, name="covarc-initial-load")
            initial.start()
            threads.append(initial)
        if config.reload_seconds > 0:
            periodic = threading.Thread(target=reload_loop, daemon=True, name="covarc-reload")
            periodic.start()
            threads.append(periodic)
        yield
        stop_event.set()

    app = FastAPI(title="covarc", version="0.1.0", lifespan=lifespan)
    app.state.holder = holder
    app.state.service_config = config

    if config.allowed_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.allowed_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        access_log.info(
            "%s",
            json.dumps(
                {
                    "time": dt.datetime.now(dt.timezone.utc).isoformat(),
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "duration_ms": round((time.perf_counter() - started) * 1000.0, 3),
                },
                separators=(",", ":"),
            ),
        )
        return response

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body(
                "validation-error", "request failed validation", fields=_field_errors(exc)
            ),
        )

    @app.exception_handler(UnknownRegionError)
    async def on_unknown_region(request: Request, exc: UnknownRegionError):
        return JSONResponse(status_code=404, content=_error_body("region-not-found", str(exc)))

    @app.exception_handler(UnknownNameError)
    async def on_unknown_name(request: Request, exc: UnknownNameError):
        field = f"profile.{exc.kind}"
        return JSONResponse(
            status_code=400,
            content=_error_body(
                "validation-error",
                "request failed validation",
                fields=[{"field": field, "message": str(exc)}],
            ),
        )

    @app.exception_handler(InsufficientDataError)
    async def on_insufficient_data(request: Request, exc: InsufficientDataError):
        return JSONResponse(
            status_code=422,
            content=_error_body(
                "insufficient-data",
                str(exc),
                required_from=exc.required_from.isoformat(),
                required_to=exc.required_to.isoformat(),
            ),
        )

    def get_snapshot() -> DataSnapshot:
        snapshot = holder.current
        if snapshot is None:
            raise HTTPException(
                status_code=503,
                detail="snapshot not loaded yet",
                headers={"Retry-After": "5"},
            )
        return snapshot

    def effective_config(overrides: ConfigOverridesIn | None) -> RiskConfig:
        if overrides is None:
            return config.risk
        try:
            return config.risk.with_overrides(
                k_indoor=overrides.k_indoor,
                k_outdoor=overrides.k_outdoor,
                variant_smoothing_sigma_days=overrides.variant_smoothing_sigma_days,
                variant_lag_days=overrides.variant_lag_days,
            )
        except ValueError as exc:
            raise HTTPException(
                status_code=400,
                detail=_error_body("validation-error", f"bad config overrides: {exc}"),
            ) from None

    @app.get("/healthz", response_model=HealthOut)
    def healthz():
        snapshot = holder.current
        if snapshot is None:
            return JSONResponse(
                status_code=503,
                content={"status": "loading", "snapshot_time": None, "regions_loaded": 0},
                headers={"Retry-After": "5"},
            )
        return HealthOut(
            status="ok",
            snapshot_time=snapshot.snapshot_time,
            regions_loaded=len(snapshot.cases),
        )

    @app.get("/api/v1/regions", response_model=list[RegionOut])
    def regions(snapshot: DataSnapshot = Depends(get_snapshot)):
        out = []
        for cid in snapshot.region_ids():
            key = snapshot.region_key(cid)
            out.append(
                RegionOut(
                    canonical_id=cid,
                    country=key.country,
                    region=key.region,
                    population=snapshot.populations[cid],
                    has_variants=cid in snapshot.variants,
                    has_ratios=cid in snapshot.ratios,
                )
            )
        return out

    @app.post("/api/v1/risk", response_model=RiskReportOut)
    def risk(body: RiskRequest, snapshot: DataSnapshot = Depends(get_snapshot)):
        report = assess(
            snapshot,
            body.region,
            body.date,
            body.profile.to_domain(),
            body.activity.to_domain(),
            effective_config(body.config_overrides),
        )
        return RiskReportOut.from_report(report)

    @app.post("/api/v1/reload")
    def reload_snapshot(request: Request):
        if config.reload_token is None:
            raise HTTPException(
                status_code=403,
                detail=_error_body("reload-disabled", "no reload token configured"),
            )
        auth = request.headers.get("authorization", "")
        if auth != f"Bearer {config.reload_token}":
            raise HTTPException(
                status_code=401, detail=_error_body("unauthorized", "bad reload token")
            )
        if not holder.try_reload():
            raise HTTPException(
                status_code=500,
                detail=_error_body("reload-failed", holder.last_error or "unknown error"),
            )
        return {"status": "reloaded", "snapshot_time": holder.current.snapshot_time.isoformat()}

    @app.get("/api/v1/simulate")
    def simulate_endpoint(
        region: str,
        date_from: dt.date = Query(alias="from"),
        date_to: dt.date = Query(alias="to"),
        age_years: int = Query(ge=0),
        sex: str = Query(pattern="^(male|female)$"),
        chronic_illness: bool = False,
        vaccine: str = Query(),
        mask: str = Query(),
        n_indoor: int = Query(ge=0),
        n_outdoor: int = Query(ge=0),
        k_indoor: Optional[float] = Query(default=None, gt=0),
        k_outdoor: Optional[float] = Query(default=None, gt=0),
        variant_smoothing_sigma_days: Optional[float] = Query(default=None, gt=0),
        variant_lag_days: Optional[int] = Query(default=None, ge=0),
        snapshot: DataSnapshot = Depends(get_snapshot),
    ):
        if date_from > date_to:
            return JSONResponse(
                status_code=400,
                content=_error_body(
                    "invalid-range", f"'from' ({date_from}) is after 'to' ({date_to})"
                ),
            )
        risk_config = effective_config(
            ConfigOverridesIn(
                k_indoor=k_indoor,
                k_outdoor=k_outdoor,
                variant_smoothing_sigma_days=variant_smoothing_sigma_days,
                variant_lag_days=variant_lag_days,
            )
        )
        profile = ProfileIn(
            age_years=age_years, sex=sex, chronic_illness=chronic_illness, vaccine=vaccine, mask=mask
        )
        activity = ActivityIn(n_indoor=n_indoor, n_outdoor=n_outdoor)
        days = simulate(
            snapshot,
            region,
            date_from,
            date_to,
            profile.to_domain(),
            activity.to_domain(),
            risk_config,
        )

        def render() -> Iterator[str]:
            yield (
                '{"region":' + json.dumps(region)
                + ',"snapshot_time":' + json.dumps(snapshot.snapshot_time.isoformat())
                + ',"config":' + ConfigOut.from_config(risk_config).model_dump_json()
                + ',"rows":['
            )
            first = True
            for day in days:
                if day.report is None:
                    continue
                row = {
                    "date": day.date.isoformat(),
                    "infection": IntervalOut.from_interval(day.report.infection).model_dump(),
                    "hospitalization": IntervalOut.from_interval(day.report.hospitalization).model_dump(),
                    "death": IntervalOut.from_interval(day.report.death).model_dump(),
                    "flags": list(day.report.flags),
                }
                yield ("" if first else ",") + json.dumps(row, separators=(",", ":"))
                first = False
            yield '],"skipped":['
            first = True
            for day in days:
                if day.report is not None:
                    continue
                skipped = {
                    "date": day.date.isoformat(),
                    "code": "insufficient-data",
                    "message": day.skip_reason,
                }
                yield ("" if first else ",") + json.dumps(skipped, separators=(",", ":"))
                first = False
            yield "]}"

        return StreamingResponse(render(), media_type="application/json")

    if config.static_dir is not None and config.static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
