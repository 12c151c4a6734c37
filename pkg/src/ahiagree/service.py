"""Stateless HTTP wrapper around the analysis engine.

Three endpoints under /api/v1: analyze (POST), ranking-function (GET) and
health (GET).  Request bodies are capped at 1 MiB.  Data problems come back
as 400 with the offending row when known; configuration problems as 422.
The process keeps no state between requests.
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import __version__, report
from .classify import SubrangeScheme
from .errors import AhiAgreeError, ConfigError, InputError
from .ingest import PairedSample
from .ranking import RankingConfig, Shape, sample_curve

MAX_BODY_BYTES = 1 << 20
MAX_CURVE_SAMPLES = 100_000
MIN_CURVE_SAMPLES = 10
DEFAULT_ORIGINS = "http://localhost:5173,http://127.0.0.1:5173"


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=report.dumps_canonical(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(message: str, status_code: int, row: int | None = None) -> Response:
    body: dict = {"error": message}
    if row is not None:
        body["row"] = row
    return _json_response(body, status_code)


def _require_number(value, what: str, row: int | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{what} must be a number", row=row)
    return float(value)


def _sample_from_payload(payload: dict) -> PairedSample:
    pairs = payload.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise InputError("payload must contain a non-empty 'pairs' array")
    reference = []
    measured = []
    for k, pair in enumerate(pairs, start=1):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError("each pair must be a two-element array", row=k)
        r = _require_number(pair[0], "reference value", row=k)
        m = _require_number(pair[1], "measured value", row=k)
        if not (r >= 0.0 and m >= 0.0):
            raise InputError("values must be finite and non-negative", row=k)
        reference.append(r)
        measured.append(m)
    if len(reference) < 3:
        raise InputError(f"need at least 3 pairs, got {len(reference)}")
    try:
        return PairedSample(reference=reference, measured=measured)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _config_from_payload(payload: dict):
    config = payload.get("config") or {}
    if not isinstance(config, dict):
        raise ConfigError("'config' must be an object")
    known = {"thresholds", "ranking_min", "ranking_max", "shape", "ci"}
    unknown = sorted(set(config) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

    thresholds = config.get("thresholds", [5.0, 15.0, 30.0])
    if not isinstance(thresholds, (list, tuple)) or len(thresholds) != 3:
        raise ConfigError("'thresholds' must be an array of three numbers")
    t1, t2, t3 = (_require_number(t, "threshold") for t in thresholds)
    scheme = SubrangeScheme(t1=t1, t2=t2, t3=t3)

    vmin = _require_number(config.get("ranking_min", 0.5), "'ranking_min'")
    vmax = _require_number(config.get("ranking_max", 1.5), "'ranking_max'")
    shape_name = config.get("shape", "cubic")
    try:
        shape = Shape(shape_name)
    except ValueError:
        raise ConfigError(
            f"unknown shape {shape_name!r}; choose from "
            + ", ".join(s.value for s in Shape)
        ) from None
    ranking_cfg = RankingConfig.for_scheme(scheme, vmin=vmin, vmax=vmax, shape=shape)

    ci = _require_number(config.get("ci", 0.95), "'ci'")
    if not 0.0 < ci < 1.0:
        raise ConfigError(f"'ci' must be in (0, 1), got {ci}")
    return scheme, ranking_cfg, ci


def _parse_curve_query(params) -> tuple[RankingConfig, int]:
    raw_thresholds = params.get("thresholds", "5,15,30")
    parts = raw_thresholds.split(",")
    if len(parts) != 3:
        raise ConfigError(
            f"expected three comma-separated thresholds, got {raw_thresholds!r}"
        )
    try:
        t1, t2, t3 = (float(p) for p in parts)
        vmin = float(params.get("min", "0.5"))
        vmax = float(params.get("max", "1.5"))
        samples = int(params.get("samples", "601"))
    except ValueError:
        raise ConfigError("numeric query parameter could not be parsed") from None
    try:
        shape = Shape(params.get("shape", "cubic"))
    except ValueError:
        raise ConfigError(f"unknown shape {params.get('shape')!r}") from None
    if not MIN_CURVE_SAMPLES <= samples <= MAX_CURVE_SAMPLES:
        raise ConfigError(
            f"samples must be between {MIN_CURVE_SAMPLES} and {MAX_CURVE_SAMPLES}"
        )
    scheme = SubrangeScheme(t1=t1, t2=t2, t3=t3)
    cfg = RankingConfig.for_scheme(scheme, vmin=vmin, vmax=vmax, shape=shape)
    return cfg, samples


def create_app() -> FastAPI:
    app = FastAPI(title="ahiagree", version=__version__, docs_url=None, redoc_url=None)
    origins = [
        o.strip()
        for o in os.environ.get("ALLOWED_ORIGINS", DEFAULT_ORIGINS).split(",")
        if o.strip()
    ]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["GET", "POST"],
        allow_headers=["Content-Type"],
    )

    @app.get("/api/v1/health")
    async def health() -> Response:
        return _json_response({"status": "ok", "version": __version__})

    @app.get("/api/v1/ranking-function")
    async def ranking_function(request: Request) -> Response:
        try:
            cfg, samples = _parse_curve_query(request.query_params)
        except (ConfigError, AhiAgreeError) as exc:
            return _error(str(exc), 422)
        xs, values = sample_curve(cfg, samples)
        return _json_response(
            {
                "config": {
                    "thresholds": list(cfg.hotspots),
                    "min": cfg.vmin,
                    "max": cfg.vmax,
                    "shape": cfg.shape.value,
                    "samples": samples,
                },
                "x": [float(x) for x in xs],
                "values": [float(v) for v in values],
            }
        )

    @app.post("/api/v1/analyze")
    async def analyze_endpoint(request: Request) -> Response:
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return _error(
                f"request body exceeds {MAX_BODY_BYTES} bytes", 413
            )
        try:
            payload = json.loads(body)
        except ValueError:
            return _error("request body is not valid JSON", 400)
        if not isinstance(payload, dict):
            return _error("request body must be a JSON object", 400)
        try:
            scheme, ranking_cfg, ci = _config_from_payload(payload)
        except ConfigError as exc:
            return _error(str(exc), 422)
        try:
            sample = _sample_from_payload(payload)
            bundle = report.analyze(sample, scheme, ranking_cfg, ci=ci)
        except InputError as exc:
            return _error(str(exc), 400, row=exc.row)
        except ConfigError as exc:
            return _error(str(exc), 422)
        return _json_response(report.bundle_to_dict(bundle))

    return app
