"""HTTP facade over the library: one endpoint per pipeline.

The app is plain ASGI; the bundled CLI drives it in-process, and it can be
served with any ASGI server (``uvicorn folcas.service:app``) for remote use.
All mathematical failures surface as a single structured error shape carrying
the library error code and the exit code a client should map it to.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, jsonio, schemas
from .corpus import KINDS, build_corpus, check_entry, entry_from_json, entry_to_json
from .errors import FolcasError, InvalidInput
from .foliation import make_foliation, pullback_foliation, singular_points_p2, tangency_degree
from .indices import bb_sum_p2
from .reduction import reduce as reduce_germ
from .structures import (
    INFINITY_SCALE,
    catalog_realize,
    mc_check,
    restrict_unfolding,
    riccati_triple,
    unfold,
)

app = FastAPI(title="folcas", version=__version__)


def _jsonable(value):
    if isinstance(value, Fraction):
        return jsonio.rational_to_json(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@app.exception_handler(FolcasError)
async def folcas_error_handler(request: Request, exc: FolcasError):
    status = 500 if exc.exit_code == 5 else 422
    info = schemas.ErrorInfo(
        code=exc.code,
        message=str(exc),
        exit_code=exc.exit_code,
        payload=_jsonable(exc.payload),
    )
    return JSONResponse(status_code=status, content={"error": info.model_dump()})


@app.get("/health", response_model=schemas.HealthResponse)
def health():
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/check", response_model=schemas.CheckResponse, response_model_exclude_none=True)
def check(req: schemas.CheckRequest):
    doc = req.document
    if isinstance(doc, dict) and doc.get("kind") in KINDS:
        report = check_entry(entry_from_json(doc))
        if not report["ok"]:
            raise InvalidInput(
                f"corpus entry {report['name']!r} failed its expectations",
                payload=report,
            )
        return schemas.CheckResponse(ok=True, kind=doc["kind"], entry=report)
    if not isinstance(doc, dict) or "omega" not in doc:
        raise InvalidInput("document is neither a foliation nor a corpus entry")
    omega = jsonio.diffform_from_json(doc["omega"])
    F = make_foliation(omega)
    for key, actual in (("ambient_dim", F.ambient_dim), ("degree", F.degree)):
        if key in doc and doc[key] != actual:
            raise InvalidInput(f"stated {key} {doc[key]} != computed {actual}")
    return schemas.CheckResponse(
        ok=True,
        kind="foliation",
        ambient_dim=F.ambient_dim,
        degree=F.degree,
        checks=schemas.FoliationChecks(
            homogeneous_equal_degree=True,
            euler_contraction_zero=True,
            integrable=True,
            gcd_input_normalized=F.omega == omega,
        ),
    )


@app.post("/degree", response_model=schemas.DegreeResponse)
def degree(req: schemas.DegreeRequest):
    F = jsonio.foliation_from_json(req.foliation)
    k = tangency_degree(F, trials=req.trials, seed=req.seed)
    return schemas.DegreeResponse(
        tangency_degree=k, declared_degree=F.degree, match=k == F.degree
    )


@app.post("/singular", response_model=schemas.SingularResponse)
def singular(req: schemas.FoliationRequest):
    F = jsonio.foliation_from_json(req.foliation)
    return schemas.SingularResponse(
        **jsonio.singular_report_to_json(singular_points_p2(F, seed=req.seed))
    )


@app.post("/bb", response_model=schemas.BBResponse, response_model_exclude_none=True)
def bb(req: schemas.FoliationRequest):
    F = jsonio.foliation_from_json(req.foliation)
    return schemas.BBResponse(**jsonio.bb_report_to_json(bb_sum_p2(F, seed=req.seed)))


@app.post("/reduce", response_model=schemas.ReduceResponse)
def reduce(req: schemas.ReduceRequest):
    tree = reduce_germ(jsonio.germ_from_json(req.germ), max_depth=req.max_depth)
    return schemas.ReduceResponse(**jsonio.tree_to_json(tree))


@app.post("/pullback", response_model=schemas.PullbackResponse)
def pullback(req: schemas.PullbackRequest):
    comps = [jsonio.poly_from_json(c) for c in req.components]
    G = jsonio.foliation_from_json(req.foliation)
    return schemas.PullbackResponse(
        **jsonio.foliation_to_json(pullback_foliation(comps, G))
    )


@app.post("/riccati", response_model=schemas.RiccatiResponse)
def riccati(req: schemas.RiccatiRequest):
    triple = riccati_triple(jsonio.riccati_from_json(req.ode))
    omega = unfold(triple)
    return schemas.RiccatiResponse(
        triple=jsonio.triple_to_json(triple),
        mc_zero=all(r.is_zero() for r in mc_check(triple)),
        unfolding=jsonio.diffform_to_json(omega),
        integrable=True,
        restrict_zero=jsonio.diffform_to_json(restrict_unfolding(triple, "zero")),
        restrict_infinity=jsonio.diffform_to_json(restrict_unfolding(triple, "infinity")),
        restrict_infinity_scale=jsonio.rational_to_json(INFINITY_SCALE),
    )


@app.post("/catalog", response_model=schemas.CatalogResponse)
def catalog(req: schemas.CatalogRequest):
    form = jsonio.catalog_from_json(req.catalog)
    realized = catalog_realize(form)
    return schemas.CatalogResponse(
        family=form.family, realized=jsonio.diffform_to_json(realized), closed=True
    )


@app.get("/corpus", response_model=schemas.CorpusResponse)
def corpus():
    entries = [entry_to_json(e) for e in build_corpus()]
    return schemas.CorpusResponse(count=len(entries), entries=entries)
