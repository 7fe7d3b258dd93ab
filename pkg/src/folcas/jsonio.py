"""JSON wire formats for folcas objects.

Encoders emit plain dict/list/str trees ready for :func:`json.dumps`;
decoders accept the same shapes with terms/coefficients in any order and
rebuild through the library constructors, which re-canonicalize.  Rationals
travel as strings ``"p/q"`` (just ``"p"`` when the denominator is 1).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra.poly import MultiPoly
from .algebra.ratfunc import RatFunc
from .errors import InvalidInput
from .foliation import AffineForm, ProjFoliation, SingularPointReport, make_foliation
from .forms import DiffForm
from .indices import BBEntry, BBReport
from .reduction import LinearPartClass, PlaneGerm, ReductionNode, ReductionTree
from .structures import CatalogForm, LogClosedForm, RiccatiODE, SL2Triple


def dumps(data) -> str:
    """Canonical serialization: 2-space indent, insertion order, newline EOF."""
    return json.dumps(data, indent=2) + "\n"


def loads(text: str):
    return json.loads(text)


def _expect(cond: bool, msg: str):
    if not cond:
        raise InvalidInput(msg)


def _field(d, key, msg=None):
    _expect(isinstance(d, dict), msg or f"expected an object with {key!r}")
    _expect(key in d, msg or f"missing field {key!r}")
    return d[key]


# -- rationals --------------------------------------------------------------


def rational_to_json(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_json(v) -> Fraction:
    if isinstance(v, bool):
        raise InvalidInput(f"not a rational: {v!r}")
    if isinstance(v, (int, str)):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad rational {v!r}: {exc}") from None
    raise InvalidInput(f"not a rational: {v!r}")


# -- polynomials and rational functions -------------------------------------


def poly_to_json(p: MultiPoly) -> dict:
    terms = [
        {"c": rational_to_json(c), "e": list(e)}
        for e, c in sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    ]
    return {"vars": list(p.vars), "terms": terms}


def poly_from_json(d) -> MultiPoly:
    vars_ = _field(d, "vars", "polynomial needs 'vars' and 'terms'")
    _expect(
        isinstance(vars_, list) and all(isinstance(v, str) for v in vars_),
        "'vars' must be a list of names",
    )
    raw = _field(d, "terms")
    _expect(isinstance(raw, list), "'terms' must be a list")
    acc: dict[tuple[int, ...], Fraction] = {}
    for t in raw:
        e = tuple(_field(t, "e", "each term needs 'c' and 'e'"))
        _expect(all(isinstance(k, int) and k >= 0 for k in e), f"bad exponents {e}")
        c = rational_from_json(_field(t, "c"))
        acc[e] = acc.get(e, Fraction(0)) + c
    return MultiPoly(vars_, acc)


def ratfunc_to_json(r: RatFunc) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfunc_from_json(d) -> RatFunc:
    return RatFunc(poly_from_json(_field(d, "num")), poly_from_json(_field(d, "den")))


# -- differential forms -----------------------------------------------------


def diffform_to_json(f: DiffForm) -> dict:
    coeffs = [
        {"idx": list(idx), "val": ratfunc_to_json(val)}
        for idx, val in sorted(f.coeffs.items())
    ]
    return {"vars": list(f.vars), "degree": f.degree, "coeffs": coeffs}


def diffform_from_json(d) -> DiffForm:
    vars_ = _field(d, "vars", "form needs 'vars', 'degree', 'coeffs'")
    degree = _field(d, "degree")
    _expect(isinstance(degree, int) and not isinstance(degree, bool), "bad degree")
    raw = _field(d, "coeffs")
    _expect(isinstance(raw, list), "'coeffs' must be a list")
    acc: dict[tuple[int, ...], RatFunc] = {}
    for c in raw:
        idx = tuple(_field(c, "idx", "each coefficient needs 'idx' and 'val'"))
        val = ratfunc_from_json(_field(c, "val"))
        acc[idx] = acc[idx] + val if idx in acc else val
    return DiffForm(vars_, degree, acc)


# -- chart forms, foliations, germs -----------------------------------------


def affineform_to_json(a: AffineForm) -> dict:
    return {"chart_index": a.chart_index, "omega": diffform_to_json(a.form)}


def affineform_from_json(d) -> AffineForm:
    j = d.get("chart_index", 0) if isinstance(d, dict) else 0
    _expect(isinstance(j, int) and not isinstance(j, bool), "bad chart_index")
    return AffineForm(diffform_from_json(_field(d, "omega")), chart_index=j)


def foliation_to_json(F: ProjFoliation) -> dict:
    return {
        "ambient_dim": F.ambient_dim,
        "omega": diffform_to_json(F.omega),
        "degree": F.degree,
    }


def foliation_from_json(d) -> ProjFoliation:
    """Rebuild and re-validate; stated ambient_dim/degree must agree."""
    omega = diffform_from_json(_field(d, "omega", "foliation needs 'omega'"))
    F = make_foliation(omega)
    n = d.get("ambient_dim")
    if n is not None and n != F.ambient_dim:
        raise InvalidInput(f"ambient_dim {n} != {F.ambient_dim} from omega")
    deg = d.get("degree")
    if deg is not None and deg != F.degree:
        raise InvalidInput(f"stated degree {deg} != computed degree {F.degree}")
    return F


def germ_to_json(g: PlaneGerm) -> dict:
    """A germ is shipped as its chart form A dx + B dy."""
    return affineform_to_json(AffineForm(g.form))


def germ_from_json(d) -> PlaneGerm:
    alpha = affineform_from_json(d)
    _expect(tuple(alpha.vars) == ("x", "y"), "germ variables must be (x, y)")
    comps = alpha.coefficients()
    return PlaneGerm(comps["x"], comps["y"])


# -- reports ----------------------------------------------------------------


def _bb_entry_to_json(e: BBEntry) -> dict:
    out: dict = {}
    if e.cell == "affine":
        out["pt"] = [rational_to_json(c) for c in e.point]
    else:
        out["cell"] = e.cell
        if e.at is not None:
            out["at"] = rational_to_json(e.at)
    if e.count != 1:
        out["count"] = e.count
    out["bb"] = rational_to_json(e.bb)
    return out


def _bb_entry_from_json(d) -> BBEntry:
    bb = rational_from_json(_field(d, "bb"))
    count = d.get("count", 1)
    if "pt" in d:
        x, y = (rational_from_json(c) for c in d["pt"])
        return BBEntry(cell="affine", bb=bb, point=(x, y), count=count)
    cell = _field(d, "cell")
    at = rational_from_json(d["at"]) if "at" in d else None
    return BBEntry(cell=cell, bb=bb, at=at, count=count)


def bb_report_to_json(r: BBReport) -> dict:
    out = {
        "per_point": [_bb_entry_to_json(e) for e in r.entries()],
        "total": rational_to_json(r.total),
        "expected": rational_to_json(r.expected),
        "complete": r.complete,
    }
    if r.diagnostics:
        out["diagnostics"] = list(r.diagnostics)
    return out


def bb_report_from_json(d) -> BBReport:
    entries = [_bb_entry_from_json(e) for e in _field(d, "per_point")]
    affine = [e for e in entries if e.cell.startswith("affine")]
    rest = [e for e in entries if not e.cell.startswith("affine")]
    return BBReport(
        per_point=affine,
        infinity_contributions=rest,
        expected=rational_from_json(_field(d, "expected")),
        total=rational_from_json(_field(d, "total")),
        complete=bool(_field(d, "complete")),
        diagnostics=list(d.get("diagnostics", [])),
    )


def singular_report_to_json(r: SingularPointReport) -> dict:
    return {
        "rational_points": [
            [rational_to_json(c) for c in p] for p in r.rational_points
        ],
        "residual_degree": r.residual_degree,
        "by_cell": {k: dict(v) for k, v in sorted(r.by_cell.items())},
    }


# -- reduction trees --------------------------------------------------------


def _class_to_json(c: LinearPartClass | None):
    if c is None:
        return None
    return {
        "trace": rational_to_json(c.trace),
        "det": rational_to_json(c.det),
        "classification": c.classification,
    }


def _class_from_json(d) -> LinearPartClass | None:
    if d is None:
        return None
    return LinearPartClass(
        trace=rational_from_json(_field(d, "trace")),
        det=rational_from_json(_field(d, "det")),
        classification=_field(d, "classification"),
    )


def tree_to_json(t: ReductionTree) -> dict:
    nodes = [
        {
            "id": n.id,
            "parent": n.parent,
            "chart_path": list(n.chart_path),
            "form": germ_to_json(n.germ),
            "status": n.status,
            "class": _class_to_json(n.linear_class),
        }
        for n in t.nodes
    ]
    return {"nodes": nodes, "depth": t.depth, "blowup_count": t.blowup_count}


def tree_from_json(d) -> ReductionTree:
    nodes = []
    for n in _field(d, "nodes"):
        nodes.append(
            ReductionNode(
                id=_field(n, "id"),
                parent=_field(n, "parent"),
                chart_path=tuple(_field(n, "chart_path")),
                germ=germ_from_json(_field(n, "form")),
                status=_field(n, "status"),
                linear_class=_class_from_json(n.get("class")),
            )
        )
    _expect(bool(nodes), "reduction tree needs at least one node")
    return ReductionTree(
        root=nodes[0].germ,
        nodes=tuple(nodes),
        depth=_field(d, "depth"),
        blowup_count=_field(d, "blowup_count"),
    )


# -- closed forms, triples, catalog -----------------------------------------


def logform_to_json(L: LogClosedForm) -> dict:
    return {
        "residues": [rational_to_json(r) for r in L.residues],
        "factors": [poly_to_json(f) for f in L.factors],
        "extra": ratfunc_to_json(L.extra),
    }


def logform_from_json(d) -> LogClosedForm:
    from .structures import log_build

    return log_build(
        [rational_from_json(r) for r in _field(d, "residues")],
        [poly_from_json(f) for f in _field(d, "factors")],
        ratfunc_from_json(_field(d, "extra")),
    )


def triple_to_json(t: SL2Triple) -> dict:
    return {
        "omega0": diffform_to_json(t.omega0),
        "omega1": diffform_to_json(t.omega1),
        "omega2": diffform_to_json(t.omega2),
    }


def triple_from_json(d) -> SL2Triple:
    return SL2Triple(
        omega0=diffform_from_json(_field(d, "omega0")),
        omega1=diffform_from_json(_field(d, "omega1")),
        omega2=diffform_from_json(_field(d, "omega2")),
    )


def riccati_to_json(r: RiccatiODE) -> dict:
    return {
        "a": ratfunc_to_json(r.a),
        "b": ratfunc_to_json(r.b),
        "c": ratfunc_to_json(r.c),
    }


def riccati_from_json(d) -> RiccatiODE:
    return RiccatiODE(
        a=ratfunc_from_json(_field(d, "a")),
        b=ratfunc_from_json(_field(d, "b")),
        c=ratfunc_from_json(_field(d, "c")),
    )


_INT_PARAMS = frozenset({"s", "p", "q", "r"})


def catalog_to_json(c: CatalogForm) -> dict:
    params = {}
    for k in sorted(c.params):
        v = c.params[k]
        params[k] = int(v) if k in _INT_PARAMS else rational_to_json(Fraction(v))
    return {"family": c.family, "params": params}


def catalog_from_json(d) -> CatalogForm:
    family = _field(d, "family", "catalog form needs 'family' and 'params'")
    raw = _field(d, "params")
    _expect(isinstance(raw, dict), "'params' must be an object")
    params = {}
    for k, v in raw.items():
        if k in _INT_PARAMS:
            _expect(isinstance(v, int) and not isinstance(v, bool), f"param {k} must be an integer")
            params[k] = v
        else:
            params[k] = rational_from_json(v)
    return CatalogForm(family=family, params=params)
