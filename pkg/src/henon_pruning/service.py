"""Stateless HTTP service exposing the compute operations.

Every response is a pure function of the request, so results are memoized in a
bounded per-process cache.  Malformed queries return 400; semantically invalid
ones (b = 0, excluded disk parameters, empty paths) return 422; verdict-bearing
payloads (FAIL, MISMATCH) still return 200 — the verdict is data.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .henon import HenonParams
from .sft import CountTable, PruningParams, is_valid_disk_params, sft_build
from .slices import SliceConfig, unstable_slice
from .verify import census_vs_sft

#: maximum |Delta a| between consecutive path points
PATH_STEP_BUDGET = 0.15
#: resolution used when estimating a path point's non-escaping fraction
PATH_PROBE_RESOLUTION = 64


class ComplexPoint(BaseModel):
    re: float
    im: float = 0.0


class PathDocument(BaseModel):
    b: float
    points: list[ComplexPoint]
    created: str


class DiskSpec(BaseModel):
    N: int = Field(ge=0)
    M: int = Field(ge=0)


class CensusRequest(BaseModel):
    a: float
    b: float
    disks: list[DiskSpec] = []
    n_max: int = Field(default=8, ge=1, le=10)


def _semantic_error(detail: str) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": detail})


@lru_cache(maxsize=256)
def _slice_pgm(are: float, aim: float, b: float, res: int, radius: float) -> bytes:
    cfg = SliceConfig(resolution=res, radius=radius)
    return unstable_slice(complex(are, aim), b, cfg).to_pgm()


@lru_cache(maxsize=256)
def _sft_payload(n_disk: int, m_disk: int, n: int) -> dict:
    sft = sft_build([PruningParams(n_disk, m_disk)])
    table = CountTable.for_sft(sft, n)
    return {
        "N": n_disk,
        "M": m_disk,
        "n": n,
        "points": table.points[n],
        "rows": table.rows(),
    }


@lru_cache(maxsize=64)
def _census_payload(a: float, b: float, disks: tuple, n_max: int) -> dict:
    report = census_vs_sft(a, b, [PruningParams(n, m) for n, m in disks], n_max)
    return report.to_json()


@lru_cache(maxsize=256)
def _nonescaping_fraction(are: float, aim: float, b: float) -> float:
    cfg = SliceConfig(resolution=PATH_PROBE_RESOLUTION)
    image = unstable_slice(complex(are, aim), b, cfg)
    return 1.0 - image.escaped_fraction()


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="pruned-horseshoe service")

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"detail": [str(err) for err in exc.errors()]},
        )

    @app.get("/api/classify")
    def classify_endpoint(a: float, b: float, aim: float = 0.0):
        if b == 0:
            return _semantic_error("b must be non-zero")
        value = complex(a, aim) if aim else a
        return {"a": a, "aim": aim, "b": b, **HenonParams(value, b).flags()}

    @app.get("/api/sft")
    def sft_endpoint(N: int, M: int, n: int):
        if not is_valid_disk_params(PruningParams(N, M)):
            return _semantic_error(f"({N},{M}) is an excluded parameter pair")
        if not 1 <= n <= 16:
            return _semantic_error("n must be between 1 and 16")
        return _sft_payload(N, M, n)

    @app.get("/api/slice")
    def slice_endpoint(are: float, aim: float = 0.0, b: float = 0.4,
                       res: int = 256, radius: float = 2.0):
        if b == 0:
            return _semantic_error("b must be non-zero")
        if not 2 <= res <= 1024 or radius <= 0:
            return _semantic_error("resolution must be in [2,1024] and radius positive")
        try:
            body = _slice_pgm(are, aim, b, res, radius)
        except ValueError as exc:
            return _semantic_error(str(exc))
        metadata = json.dumps(
            {"are": are, "aim": aim, "b": b, "res": res, "radius": radius}
        )
        return Response(
            content=body,
            media_type="image/x-portable-graymap",
            headers={"X-Slice-Metadata": metadata},
        )

    @app.post("/api/census")
    def census_endpoint(req: CensusRequest):
        if req.b == 0:
            return _semantic_error("b must be non-zero")
        disks = tuple((d.N, d.M) for d in req.disks)
        for n, m in disks:
            if not is_valid_disk_params(PruningParams(n, m)):
                return _semantic_error(f"({n},{m}) is an excluded parameter pair")
        return _census_payload(req.a, req.b, disks, req.n_max)

    @app.post("/api/path/validate")
    def path_validate(doc: PathDocument):
        if doc.b == 0:
            return _semantic_error("b must be non-zero")
        if not doc.points:
            return _semantic_error("path must contain at least one point")
        points = []
        for pt in doc.points:
            flags = HenonParams(complex(pt.re, pt.im), doc.b).flags()
            points.append(
                {
                    "a": {"re": pt.re, "im": pt.im},
                    **flags,
                    "nonescaping_fraction": _nonescaping_fraction(pt.re, pt.im, doc.b),
                }
            )
        segments = []
        for i in range(len(doc.points) - 1):
            p, q = doc.points[i], doc.points[i + 1]
            delta = abs(complex(q.re - p.re, q.im - p.im))
            segments.append({"from": i, "to": i + 1, "delta": delta,
                             "ok": delta <= PATH_STEP_BUDGET})
        first = doc.points[0]
        endpoint_dn = HenonParams(first.re, doc.b).in_dn
        valid = endpoint_dn and all(s["ok"] for s in segments)
        return {
            "valid": valid,
            "endpoint_dn": endpoint_dn,
            "step_budget": PATH_STEP_BUDGET,
            "points": points,
            "segments": segments,
        }

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
