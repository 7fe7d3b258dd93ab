"""Bundled example inventory with frozen expectations.

Every entry is rebuilt deterministically from fixed data, so regenerating the
corpus twice yields byte-identical files.  The ``expectations`` blocks are
literal values recorded when the entry was first derived; ``check_entry``
re-runs the library against them, which is the regression contract.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from . import jsonio
from .algebra.poly import MultiPoly, variables
from .algebra.ratfunc import RatFunc
from .errors import InvalidInput
from .foliation import AffineForm, from_affine, singular_points_p2
from .forms import DiffForm
from .indices import bb_sum_p2
from .reduction import PlaneGerm, reduce
from .structures import (
    CatalogForm,
    RiccatiODE,
    catalog_realize,
    log_build,
    log_to_foliation,
    mc_check,
    riccati_triple,
    unfold,
)

KINDS = ("pencil", "degree1", "log-arrangement", "riccati", "catalog", "germ")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    payload: dict
    expectations: dict


def entry_to_json(e: CorpusEntry) -> dict:
    return {
        "name": e.name,
        "kind": e.kind,
        "payload": e.payload,
        "expectations": e.expectations,
    }


def entry_from_json(d) -> CorpusEntry:
    kind = d.get("kind")
    if kind not in KINDS:
        raise InvalidInput(f"unknown corpus kind {kind!r}")
    return CorpusEntry(
        name=d["name"], kind=kind, payload=d["payload"], expectations=d["expectations"]
    )


# -- builders ---------------------------------------------------------------

_X, _Y = variables("x", "y")


def _affine(ax: MultiPoly, ay: MultiPoly) -> AffineForm:
    return AffineForm(DiffForm.one_form(("x", "y"), {"x": ax, "y": ay}))


def _lambda_family(lam: Fraction) -> dict:
    scaled = MultiPoly.constant(lam, ("x", "y")) * _Y
    return jsonio.foliation_to_json(from_affine(_affine(scaled, -_X), 2))


def _arrangement(residues, lines) -> dict:
    L = log_build([Fraction(r) for r in residues], lines)
    return jsonio.foliation_to_json(log_to_foliation(L, 2))


def _germ_payload(a: MultiPoly, b: MultiPoly) -> dict:
    return jsonio.germ_to_json(PlaneGerm(a, b))


def _catalog(family: int, **params) -> dict:
    return jsonio.catalog_to_json(CatalogForm(family, params))


def _riccati(a, b, c) -> dict:
    return jsonio.riccati_to_json(RiccatiODE(a, b, c))


def build_corpus() -> tuple[CorpusEntry, ...]:
    """All entries, in a stable order."""
    entries: list[CorpusEntry] = []

    def add(name, kind, payload, **expectations):
        entries.append(CorpusEntry(name, kind, payload, expectations))

    # -- the pencil of lines through the origin (degree 0) ------------------
    add(
        "pencil-of-lines",
        "pencil",
        jsonio.foliation_to_json(from_affine(_affine(-_Y, _X), 2)),
        degree=0,
        seed=0,
        singular_rational=1,
        residual_degree=0,
        bb_degenerate=True,
    )

    # -- the one-parameter degree-1 family ----------------------------------
    for lam, tag in [
        (Fraction(2), "2"),
        (Fraction(3), "3"),
        (Fraction(5), "5"),
        (Fraction(-3), "m3"),
        (Fraction(7, 2), "7-2"),
    ]:
        add(
            f"degree1-lam-{tag}",
            "degree1",
            _lambda_family(lam),
            **{"lambda": jsonio.rational_to_json(lam)},
            degree=1,
            seed=0,
            singular_rational=3,
            residual_degree=0,
            bb_total="9",
        )

    # -- logarithmic line arrangements --------------------------------------
    add(
        "log-lines-deg2-res123",
        "log-arrangement",
        _arrangement([1, 2, 3], [_X, _Y, _X + _Y - 1]),
        degree=2,
        seed=1,
        singular_rational=7,
        residual_degree=0,
        bb_total="16",
    )
    add(
        "log-lines-deg2-res235",
        "log-arrangement",
        _arrangement([2, 3, 5], [_X, _Y, _X - _Y - 2]),
        degree=2,
        seed=1,
        singular_rational=7,
        residual_degree=0,
        bb_total="16",
    )
    add(
        "log-lines-deg3-res1235",
        "log-arrangement",
        _arrangement([1, 2, 3, 5], [_X, _Y, _X + _Y - 1, _X - _Y + 3]),
        degree=3,
        seed=1,
        singular_rational=10,
        residual_degree=3,
        bb_total="25",
    )
    add(
        "log-lines-deg3-res1123",
        "log-arrangement",
        _arrangement([1, 1, 2, 3], [_X, _Y, _X + _Y - 1, 2 * _X - _Y + 2]),
        degree=3,
        seed=1,
        singular_rational=10,
        residual_degree=3,
        bb_total="25",
    )

    # -- Riccati equations ---------------------------------------------------
    one = MultiPoly.constant(1, ("x",))
    ex = MultiPoly.variable("x")

    add("riccati-airy", "riccati", _riccati(one, 0 * one, -ex),
        mc_zero=True, unfold_integrable=True)
    add("riccati-constant", "riccati", _riccati(one, 0 * one, one),
        mc_zero=True, unfold_integrable=True)
    add("riccati-linear-coeff", "riccati", _riccati(ex, one, 0 * one),
        mc_zero=True, unfold_integrable=True)
    add("riccati-pole", "riccati", _riccati(one, RatFunc(one, ex), one),
        mc_zero=True, unfold_integrable=True)

    # -- catalog instances (two per family) ----------------------------------
    catalog_cases = [
        ("catalog-f1-a", _catalog(1, lam=Fraction(3)), 2),
        ("catalog-f1-b", _catalog(1, lam=Fraction(7, 2)), 2),
        ("catalog-f2-a", _catalog(2, eps=Fraction(1), s=1), 2),
        ("catalog-f2-b", _catalog(2, eps=Fraction(-2, 3), s=2), 2),
        ("catalog-f3-a", _catalog(3, eps=Fraction(1, 2), s=1, p=2, q=3), 2),
        ("catalog-f3-b", _catalog(3, eps=Fraction(0), s=2, p=1, q=1), 2),
        ("catalog-f4-a", _catalog(4, alpha=Fraction(2), beta=Fraction(3)), 3),
        ("catalog-f4-b", _catalog(4, alpha=Fraction(1, 2), beta=Fraction(5)), 3),
        ("catalog-f5-a", _catalog(5, beta=Fraction(1), eps=Fraction(2), s=1), 3),
        ("catalog-f5-b", _catalog(5, beta=Fraction(3, 2), eps=Fraction(0), s=2), 3),
        ("catalog-f6-a", _catalog(6, beta=Fraction(2), eps=Fraction(1), s=1, p=1, q=2), 3),
        ("catalog-f6-b", _catalog(6, beta=Fraction(1, 3), eps=Fraction(-1), s=2, p=3, q=2), 3),
        ("catalog-f7-a", _catalog(7, beta=Fraction(1), eps=Fraction(1), s=1, p=1, q=1, r=1), 3),
        ("catalog-f7-b", _catalog(7, beta=Fraction(2, 5), eps=Fraction(1, 3), s=2, p=2, q=3, r=1), 3),
    ]
    for name, payload, nvars in catalog_cases:
        add(name, "catalog", payload, closed=True, nvars=nvars)

    # -- plane germs with pinned reduction trees -----------------------------
    germ_cases = [
        ("germ-cusp", 3 * _X**2, -2 * _Y, 3, 3, 6),
        ("germ-radial", _Y, -_X, 1, 1, 3),
        ("germ-saddle-node", _Y, _X**2, 0, 0, 1),
        ("germ-resonant-2", -2 * _Y, _X, 2, 2, 5),
        ("germ-resonant-3", -3 * _Y, _X, 3, 3, 7),
        ("germ-resonant-4", -4 * _Y, _X, 4, 4, 9),
        ("germ-resonant-5", -5 * _Y, _X, 5, 5, 11),
    ]
    for name, a, b, depth, blowups, nodes in germ_cases:
        add(name, "germ", _germ_payload(a, b),
            depth=depth, blowup_count=blowups, node_count=nodes)

    return tuple(entries)


# -- the regression contract ------------------------------------------------


def check_entry(entry: CorpusEntry) -> dict:
    """Validate one entry against its expectations.

    Returns {"name", "kind", "ok", "failures": [...], "checks": {...}};
    structural problems in the payload raise the usual typed errors.
    """
    exp = entry.expectations
    failures: list[str] = []
    checks: dict = {}

    def expect(key, actual):
        checks[key] = actual if not isinstance(actual, Fraction) else str(actual)
        if key in exp:
            want = exp[key]
            got = jsonio.rational_to_json(actual) if isinstance(actual, Fraction) else actual
            if got != want:
                failures.append(f"{key}: expected {want!r}, got {got!r}")

    if entry.kind in ("pencil", "degree1", "log-arrangement"):
        F = jsonio.foliation_from_json(entry.payload)
        seed = exp.get("seed", 0)
        expect("degree", F.degree)
        rep = singular_points_p2(F, seed=seed)
        expect("singular_rational", len(rep.rational_points))
        expect("residual_degree", rep.residual_degree)
        bb = bb_sum_p2(F, seed=seed)
        if exp.get("bb_degenerate"):
            expect("bb_degenerate", not bb.complete)
        else:
            expect("bb_complete", bb.complete)
            expect("bb_total", bb.total)
    elif entry.kind == "riccati":
        ode = jsonio.riccati_from_json(entry.payload)
        triple = riccati_triple(ode)
        expect("mc_zero", all(r.is_zero() for r in mc_check(triple)))
        omega = unfold(triple)
        checks["unfold_vars"] = list(omega.vars)
        expect("unfold_integrable", True)
    elif entry.kind == "catalog":
        form = catalog_realize(jsonio.catalog_from_json(entry.payload))
        expect("closed", True)  # catalog_realize raises otherwise
        expect("nvars", len(form.vars))
    elif entry.kind == "germ":
        tree = reduce(jsonio.germ_from_json(entry.payload))
        expect("depth", tree.depth)
        expect("blowup_count", tree.blowup_count)
        expect("node_count", len(tree.nodes))
    else:
        raise InvalidInput(f"unknown corpus kind {entry.kind!r}")

    return {
        "name": entry.name,
        "kind": entry.kind,
        "ok": not failures,
        "failures": failures,
        "checks": checks,
    }


def write_corpus(out_dir: str) -> list[str]:
    """Write one <name>.json per entry; returns the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for entry in build_corpus():
        path = os.path.join(out_dir, f"{entry.name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(entry_to_json(entry)))
        paths.append(path)
    return paths
