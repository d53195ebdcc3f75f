"""FastAPI application exposing the report pipeline over HTTP.

Endpoints:
  GET  /health        liveness probe
  POST /report        full report for an input spec (JSON body)
  GET  /bounds        exact dimensions for (d, degree), optional sweep table
  GET  /example35     the symbolic two-generator worked example
  POST /fibre-count   enumerate a pseudo-character fibre over GF(q)
  GET  /selftest      run the built-in consistency checks

Validation problems come back as 422 with the offending field named;
declared size caps map to 413; everything else is a plain 500.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field as PField

from .. import dimension, genmatrix, pipeline, selftest
from ..errors import (CapExceededError, DefringError, InputValidationError,
                      SizeExceededError)
from ..ffalg import Field
from ..schemas import parse_input

app = FastAPI(title="defring", version="0.1.0",
              description="Dimension bounds and component data for mod-p "
                          "local deformation problems")


class BoundsResponse(BaseModel):
    d: int
    degree: int
    expected_dims: dict
    sweep: Optional[List[dict]] = None


class FibreCountRequest(BaseModel):
    q: int
    d: int
    target: List[List[List[int]]] = PField(min_length=1)
    arity: Optional[int] = None
    cap: Optional[int] = None


class FibreCountResponse(BaseModel):
    q: int
    d: int
    arity: int
    count: int
    tangent_dims: List[int]
    points: List[List[List[List[int]]]]
    csv: str


class SelftestResponse(BaseModel):
    ok: bool
    checks: dict


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/report")
def report(raw: dict) -> dict:
    try:
        spec = parse_input(raw)
        return pipeline.report(spec)
    except InputValidationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except (CapExceededError, SizeExceededError) as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc
    except DefringError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


@app.get("/bounds")
def bounds(d: int = Query(ge=1, le=8),
           degree: int = Query(ge=1),
           sweep: bool = False) -> BoundsResponse:
    try:
        table = dimension.sweep_table(d, degree) if sweep else None
        return BoundsResponse(d=d, degree=degree,
                              expected_dims=dimension.expected_dims(d, degree),
                              sweep=table)
    except DefringError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/example35")
def example35() -> dict:
    return genmatrix.verify_example_3_5()


@app.post("/fibre-count")
def fibre_count(req: FibreCountRequest) -> FibreCountResponse:
    try:
        q = req.q
        p, f = _factor_prime_power(q)
        F = Field(p, f)
        target = tuple(tuple(tuple(x % q for x in row) for row in m)
                       for m in req.target)
        for m in target:
            if len(m) != req.d or any(len(r) != req.d for r in m):
                raise InputValidationError(
                    f"target: expected {req.d}x{req.d} matrices")
        enum = genmatrix.fibre_enumerate(F, req.d, target,
                                         arity=req.arity, cap=req.cap)
        return FibreCountResponse(
            q=q, d=req.d, arity=enum.arity, count=enum.count,
            tangent_dims=list(enum.tangent_dims),
            points=[[[list(r) for r in m] for m in pt] for pt in enum.points],
            csv=enum.to_csv())
    except InputValidationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except (CapExceededError, SizeExceededError) as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc
    except DefringError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


@app.get("/selftest")
def run_selftest() -> SelftestResponse:
    res = selftest.run_selftest()
    return SelftestResponse(ok=res["ok"], checks=res["checks"])


def _factor_prime_power(q: int):
    """Write q = p^f for a prime p or reject the input."""
    if q < 2:
        raise InputValidationError(f"q: {q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            rest = q
            while rest % p == 0:
                rest //= p
                f += 1
            if rest != 1:
                raise InputValidationError(f"q: {q} is not a prime power")
            return p, f
    raise InputValidationError(f"q: {q} is not a prime power")
