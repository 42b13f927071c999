"""HTTP surface: the report builders behind a small JSON API.

Requests carry the quiver description inline (same shape as a quiver file);
responses are the machine reports from quivlat.reports, so a service round
trip and an in-process call produce identical documents.  Error mapping:
input errors 422, refusals 409, internal invariant breaches 500.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import reports
from .algebra import Quiver, validate_admissible
from .errors import InputError, InternalInvariantError, RefusalError
from .quiverfile import CatalogOptions, LoadedQuiverFile


class ArrowModel(BaseModel):
    name: str
    source: str
    target: str


class OptionsModel(BaseModel):
    field: Literal["q", "gf"] = "q"
    prime: int = 2
    dim_bound: int = 3


class QuiverPayload(BaseModel):
    name: str = ""
    vertices: list[str]
    arrows: list[ArrowModel]
    relations: list[list[str]] = Field(default_factory=list)
    options: OptionsModel = Field(default_factory=OptionsModel)

    def to_loaded(self) -> LoadedQuiverFile:
        quiver = Quiver(self.vertices, [(a.name, a.source, a.target) for a in self.arrows])
        algebra = validate_admissible(quiver, [tuple(r) for r in self.relations],
                                      name=self.name)
        opts = CatalogOptions(field=self.options.field, prime=self.options.prime,
                              dim_bound=self.options.dim_bound)
        return LoadedQuiverFile(name=self.name, algebra=algebra, options=opts)


class ClassifyRequest(BaseModel):
    quiver: QuiverPayload


class IndecsRequest(BaseModel):
    quiver: QuiverPayload


class LatticeRequest(BaseModel):
    quiver: QuiverPayload
    kind: Literal["pretorsion", "pretorsionfree", "torsion", "birkhoff-of-tors"] = "pretorsion"
    include_dot: bool = False


class TheoriesRequest(BaseModel):
    quiver: QuiverPayload
    audit: bool = False


def create_app() -> FastAPI:
    app = FastAPI(title="quivlat", version="0.1.0")

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return JSONResponse(status_code=422,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(RefusalError)
    async def _refusal(request: Request, exc: RefusalError):
        return JSONResponse(status_code=409,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(InternalInvariantError)
    async def _invariant(request: Request, exc: InternalInvariantError):
        return JSONResponse(status_code=500,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/classify")
    def classify_endpoint(req: ClassifyRequest) -> dict:
        return reports.classify_report(req.quiver.to_loaded())

    @app.post("/indecs")
    def indecs_endpoint(req: IndecsRequest) -> dict:
        loaded = req.quiver.to_loaded()
        return reports.indecs_report(loaded, reports.catalog_for(loaded))

    @app.post("/lattice")
    def lattice_endpoint(req: LatticeRequest) -> dict:
        loaded = req.quiver.to_loaded()
        doc = reports.lattice_report(loaded, reports.catalog_for(loaded), req.kind)
        if req.include_dot:
            doc["dot"] = reports.lattice_dot(doc)
        return doc

    @app.post("/theories")
    def theories_endpoint(req: TheoriesRequest) -> dict:
        loaded = req.quiver.to_loaded()
        return reports.theories_report(loaded, reports.catalog_for(loaded),
                                       audit=req.audit)

    return app


app = create_app()
