"""Acceptance gate: the nine headline guarantees, one pass/fail line each.

Each test prints its verdict on a single line (visible through the captured
output of `pytest -v` as one PASSED/FAILED per criterion, and directly on the
terminal via capsys.disabled), and asserts the same condition, so a red line
here is a red test.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from folcas import jsonio
from folcas.algebra.poly import MultiPoly, div_exact, poly_gcd_list, variables
from folcas.algebra.ratfunc import RatFunc
from folcas.corpus import build_corpus
from folcas.errors import NeedsFieldExtension
from folcas.foliation import AffineForm, from_affine, tangency_degree, to_chart
from folcas.forms import (
    DiffForm,
    PolyVectorField,
    contract,
    exterior_d,
    lie_derivative,
    pullback,
    wedge,
)
from folcas.indices import bb_index, bb_sum_p2
from folcas.reduction import (
    HYPERBOLIC_REDUCED,
    STATUS_DICRITICAL,
    STATUS_INTERIOR,
    STATUS_REDUCED,
    STATUS_REGULAR,
    PlaneGerm,
    is_dicritical,
    reduce,
    strict_transform,
)
from folcas.structures import (
    INFINITY_SCALE,
    CatalogForm,
    RiccatiODE,
    catalog_realize,
    mc_check,
    restrict_unfolding,
    riccati_triple,
    unfold,
)

X, Y = variables("x", "y")


def _verdict(capsys, num, title, ok):
    with capsys.disabled():
        print(f"[criterion {num}] {title}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num}: {title}"


def _lambda_foliation(lam: Fraction):
    scaled = MultiPoly.constant(lam, ("x", "y")) * Y
    return from_affine(AffineForm(DiffForm.one_form(("x", "y"), {"x": scaled, "y": -X})), 2)


@pytest.fixture(scope="module")
def corpus_by_name():
    return {e.name: e for e in build_corpus()}


# -- 1: global Baum-Bott total on the degree-1 family -----------------------


def test_criterion_1_bb_total_on_degree1_family(capsys):
    ok = True
    for lam in (Fraction(2), Fraction(3), Fraction(5), Fraction(-3), Fraction(7, 2)):
        t0 = time.monotonic()
        rep = bb_sum_p2(_lambda_foliation(lam))
        elapsed = time.monotonic() - t0
        ok &= rep.complete and rep.total == 9 and rep.expected == 9
        ok &= elapsed < 1.0
    rep2 = bb_sum_p2(_lambda_foliation(Fraction(2)))
    ok &= sorted(e.bb for e in rep2.entries()) == [Fraction(0), Fraction(9, 2), Fraction(9, 2)]
    _verdict(capsys, 1, "degree-1 family: total (nu+2)^2 = 9, lam=2 residues {9/2, 0, 9/2}", ok)


# -- 2: arrangements of lines, trace path vs direct summation ----------------


def _direct_agrees(F, rep) -> bool:
    charts = {0: to_chart(F, 0), 1: to_chart(F, 1), 2: to_chart(F, 2)}
    ok = True
    for e in rep.entries():
        if e.cell == "affine":
            ok &= bb_index(charts[0], e.point) == e.bb
        elif e.cell == "inf":
            ok &= bb_index(charts[1], (Fraction(0), e.at)) == e.bb
        elif e.cell == "corner":
            ok &= bb_index(charts[2], (Fraction(0), Fraction(0))) == e.bb
    return ok


def test_criterion_2_bb_on_log_arrangements(capsys, corpus_by_name):
    ok = True
    for name, want in (("log-lines-deg2-res123", 16), ("log-lines-deg3-res1235", 25)):
        entry = corpus_by_name[name]
        F = jsonio.foliation_from_json(entry.payload)
        t0 = time.monotonic()
        rep = bb_sum_p2(F, seed=entry.expectations["seed"])
        elapsed = time.monotonic() - t0
        ok &= rep.complete and rep.total == want
        ok &= _direct_agrees(F, rep)
        ok &= elapsed < 10.0
    _verdict(capsys, 2, "log arrangements: totals 16 and 25, trace path == direct path", ok)


# -- 3: the hyperbolic index formula ----------------------------------------


def test_criterion_3_hyperbolic_index_formula(capsys):
    rng = random.Random(3)
    ok = True
    for _ in range(50):
        l1 = Fraction(rng.randint(1, 30), rng.randint(1, 9))
        l2 = Fraction(rng.randint(1, 30), rng.randint(1, 9))
        alpha = AffineForm(
            DiffForm.one_form(("x", "y"), {"x": -l2 * Y, "y": l1 * X})
        )
        ok &= bb_index(alpha, (0, 0)) == (l1 + l2) ** 2 / (l1 * l2)
    # Morse-type first integral d(xy)
    morse = AffineForm(DiffForm.one_form(("x", "y"), {"x": Y, "y": X}))
    ok &= bb_index(morse, (0, 0)) == 0
    # first integral x^p y^q:  p y dx + q x dy
    for p in range(1, 21):
        for q in range(1, 21):
            if math.gcd(p, q) != 1:
                continue
            alpha = AffineForm(DiffForm.one_form(("x", "y"), {"x": p * Y, "y": q * X}))
            val = bb_index(alpha, (0, 0))
            ok &= val == -Fraction((p - q) ** 2, p * q)
            ok &= (val < 0) == (p != q) and val <= 0
    _verdict(capsys, 3, "bb_index: (l1+l2)^2/(l1 l2), Morse contact 0, -(p-q)^2/pq <= 0", ok)


# -- 4: homogenization pipeline ---------------------------------------------


def _random_plane_form(rng) -> AffineForm | None:
    def poly():
        t = {}
        for _ in range(rng.randint(1, 3)):
            e = (rng.randint(0, 2), rng.randint(0, 2))
            t[e] = t.get(e, 0) + rng.randint(-5, 5)
        return MultiPoly(("x", "y"), {e: Fraction(c) for e, c in t.items() if c})

    A, B = poly(), poly()
    if A.is_zero() and B.is_zero():
        return None
    return AffineForm(DiffForm.one_form(("x", "y"), {"x": A, "y": B}))


def _content_one(polys) -> bool:
    g = poly_gcd_list(polys)
    if not (g.is_constant() and g.constant_value() == 1):
        return False
    nums = [c.numerator for p in polys for c in p.terms.values()]
    dens = [c.denominator for p in polys for c in p.terms.values()]
    return math.gcd(*nums) == 1 and math.lcm(*dens) == 1 if nums else False


def test_criterion_4_from_affine_invariants(capsys):
    from folcas.forms import contract as icontract

    rng = random.Random(4)
    checked = 0
    ok = True
    while checked < 500:
        alpha = _random_plane_form(rng)
        if alpha is None:
            continue
        F = from_affine(alpha, 2)
        polys = [p for p in F.coefficients().values() if not p.is_zero()]
        degs = {p.total_degree() for p in polys}
        ok &= all(p.is_homogeneous() for p in polys) and len(degs) == 1
        ok &= _content_one(polys)
        ok &= icontract(PolyVectorField.euler(F.vars), F.omega).is_zero()
        ok &= wedge(F.omega, exterior_d(F.omega)).is_zero()
        # chart roundtrip up to a rational scale
        back = to_chart(F, 0)
        cb = back.coefficients()
        ca = alpha.coefficients()
        g = poly_gcd_list([p for p in ca.values() if not p.is_zero()])
        cleared = {v: (div_exact(p, g) if not p.is_zero() else p) for v, p in ca.items()}
        scale = None
        for v in ("x", "y"):
            if not cleared[v].is_zero():
                scale = cb[v].leading_coeff() / cleared[v].leading_coeff()
                break
        ok &= scale is not None and scale != 0
        ok &= all(cb[v] == cleared[v] * scale for v in ("x", "y"))
        checked += 1
    _verdict(capsys, 4, "500 random plane forms: homogeneous, gcd 1, i_R=0, integrable, roundtrip", ok)


# -- 5: degree as a tangency count ------------------------------------------


def test_criterion_5_tangency_degree_on_corpus(capsys, corpus_by_name):
    ok = True
    for entry in corpus_by_name.values():
        if entry.kind not in ("pencil", "degree1", "log-arrangement"):
            continue
        F = jsonio.foliation_from_json(entry.payload)
        for seed in range(5):
            ok &= tangency_degree(F, seed=seed) == F.degree
    _verdict(capsys, 5, "tangency count == degree on all corpus foliations, seeds 0-4", ok)


# -- 6: reduction of singularities ------------------------------------------


def _transform_identities(g: PlaneGerm) -> bool:
    ok = True
    P, Q, k = strict_transform(g, "A")
    Au = g.A.compose({"x": X, "y": X * Y})
    Bu = g.B.compose({"x": X, "y": X * Y})
    ok &= P * X**k == Au + Y * Bu and Q * X**k == X * Bu
    qe = Q.subs({"x": Fraction(0)})
    ok &= (not qe.is_zero()) if is_dicritical(g) else qe.is_zero()
    P, Q, k = strict_transform(g, "B")
    Av = g.A.compose({"x": X * Y, "y": Y})
    Bv = g.B.compose({"x": X * Y, "y": Y})
    ok &= P * Y**k == Y * Av and Q * Y**k == X * Av + Bv
    return ok


def _tree_ok(g: PlaneGerm) -> bool:
    tree = reduce(g)
    ok = all(n.status in (STATUS_REDUCED, STATUS_REGULAR) for n in tree.leaves())
    for n in tree.nodes:
        if n.status in (STATUS_INTERIOR, STATUS_DICRITICAL):
            ok &= _transform_identities(n.germ)
    return ok


def _random_germ(rng) -> PlaneGerm | None:
    def poly():
        t = {}
        for e in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0)]:
            if rng.random() < 0.4:
                t[e] = Fraction(rng.randint(-4, 4))
        return MultiPoly(("x", "y"), {e: c for e, c in t.items() if c})

    A, B = poly(), poly()
    if A.is_zero() and B.is_zero():
        return None
    g = PlaneGerm(A, B)
    return g if g.is_singular() else None


def test_criterion_6_reduction_terminates_reduced(capsys):
    ok = True
    suite = [
        PlaneGerm(3 * X**2, -2 * Y),          # cusp
        PlaneGerm(Y, -X),                     # radial
    ] + [PlaneGerm(-n * Y, X) for n in (2, 3, 4, 5)]
    rng = random.Random(6)
    found = 0
    while found < 20:
        g = _random_germ(rng)
        if g is None:
            continue
        try:
            reduce(g, max_depth=24)
        except NeedsFieldExtension:
            continue
        suite.append(g)
        found += 1
    for g in suite:
        t0 = time.monotonic()
        ok &= _tree_ok(g)
        ok &= time.monotonic() - t0 < 5.0

    t = reduce(PlaneGerm(3 * X**2, -2 * Y))
    ok &= (t.depth, t.blowup_count, len(t.nodes)) == (3, 3, 6)
    ok &= [list(n.chart_path) for n in t.nodes] == [
        [], ["A@v=0"], ["A@v=0", "B@origin"],
        ["A@v=0", "B@origin", "A@v=0"],
        ["A@v=0", "B@origin", "A@v=1"],
        ["A@v=0", "B@origin", "B@origin"],
    ]
    ok &= [n.parent for n in t.nodes] == [None, 0, 1, 2, 2, 2]
    leaves = t.leaves()
    ok &= [n.linear_class.classification for n in leaves] == [HYPERBOLIC_REDUCED] * 3
    ok &= [(n.linear_class.trace, n.linear_class.det) for n in leaves] == [
        (Fraction(3), Fraction(-18)),
        (Fraction(-5), Fraction(-6)),
        (Fraction(4), Fraction(-12)),
    ]
    _verdict(capsys, 6, "reduce: all leaves reduced/regular, transform identities, pinned cusp tree", ok)


# -- 7: every catalog realization is closed ---------------------------------


def test_criterion_7_catalog_closedness_sweep(capsys):
    cases: list[CatalogForm] = []
    for lam in (Fraction(2), Fraction(3), Fraction(5, 2), Fraction(7)):
        cases.append(CatalogForm(1, {"lam": lam}))
    for eps in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        for s in (1, 2, 3):
            cases.append(CatalogForm(2, {"eps": eps, "s": s}))
    for eps in (Fraction(0), Fraction(1, 2)):
        for s in (1, 2):
            for p, q in ((1, 1), (2, 3), (1, 4)):
                cases.append(CatalogForm(3, {"eps": eps, "s": s, "p": p, "q": q}))
    for alpha in (Fraction(1), Fraction(5, 2)):
        for beta in (Fraction(2), Fraction(1, 3)):
            cases.append(CatalogForm(4, {"alpha": alpha, "beta": beta}))
    for beta in (Fraction(1), Fraction(4, 3)):
        for eps, s in ((Fraction(0), 1), (Fraction(2), 2), (Fraction(-1), 3)):
            cases.append(CatalogForm(5, {"beta": beta, "eps": eps, "s": s}))
    for beta, eps in ((Fraction(2), Fraction(1)), (Fraction(1, 3), Fraction(-1))):
        for s, p, q in ((1, 1, 2), (2, 3, 2), (1, 1, 1)):
            cases.append(CatalogForm(6, {"beta": beta, "eps": eps, "s": s, "p": p, "q": q}))
    for beta, eps in ((Fraction(1), Fraction(1)), (Fraction(2, 5), Fraction(1, 3))):
        for s, p, q, r in ((1, 1, 1, 1), (2, 2, 3, 1), (1, 2, 1, 2)):
            cases.append(CatalogForm(7, {"beta": beta, "eps": eps, "s": s, "p": p, "q": q, "r": r}))

    ok = len(cases) >= 40
    for c in cases:
        ok &= exterior_d(catalog_realize(c)).is_zero()
    _verdict(capsys, 7, f"catalog sweep: d(omega) = 0 on {len(cases)} realizations", ok)


# -- 8: Maurer-Cartan and the unfolding -------------------------------------


def _random_ratfunc_in_x(rng) -> RatFunc:
    def poly(allow_zero=True):
        t = {}
        for e in range(rng.randint(1, 3)):
            t[(e,)] = Fraction(rng.randint(-4, 4))
        p = MultiPoly(("x",), {e: c for e, c in t.items() if c})
        if p.is_zero() and not allow_zero:
            return MultiPoly.constant(rng.randint(1, 4), ("x",))
        return p

    num = poly()
    if rng.random() < 0.3:
        return RatFunc(num, poly(allow_zero=False))
    return RatFunc(num)


def test_criterion_8_maurer_cartan_suite(capsys):
    rng = random.Random(8)
    ok = True
    built = 0
    while built < 100:
        a = _random_ratfunc_in_x(rng)
        b = _random_ratfunc_in_x(rng)
        c = _random_ratfunc_in_x(rng)
        if a.is_zero() and b.is_zero() and c.is_zero():
            continue
        triple = riccati_triple(RiccatiODE(a, b, c))
        ok &= all(r.is_zero() for r in mc_check(triple))
        omega = unfold(triple)
        ok &= wedge(omega, exterior_d(omega)).is_zero()
        ok &= restrict_unfolding(triple, "zero") == triple.omega0
        inf = restrict_unfolding(triple, "infinity")
        ok &= inf == triple.omega2 * INFINITY_SCALE
        if not triple.omega2.is_zero():
            ok &= not inf.is_zero() and INFINITY_SCALE != 0
        built += 1
    _verdict(capsys, 8, "100 random ODEs: structure equations, integrable unfolding, slices", ok)


# -- 9: exterior-calculus property suite ------------------------------------


_CTX3 = ("x", "y", "z")


def _rand_poly(rng, ctx=_CTX3, deg=2):
    t = {}
    for _ in range(rng.randint(1, 2)):
        e = tuple(rng.randint(0, deg) for _ in ctx)
        t[e] = t.get(e, 0) + rng.randint(-3, 3)
    return MultiPoly(ctx, {e: Fraction(c) for e, c in t.items() if c})


def _rand_ratfunc(rng, ctx=_CTX3):
    num = _rand_poly(rng, ctx)
    if rng.random() < 0.25:
        den = _rand_poly(rng, ctx, deg=1)
        if not den.is_zero():
            return RatFunc(num, den)
    return RatFunc(num)


def _rand_form(rng, degree, ctx=_CTX3, rational=True):
    idxs = {
        0: [()],
        1: [(0,), (1,), (2,)],
        2: [(0, 1), (0, 2), (1, 2)],
    }[degree]
    coeffs = {}
    for idx in idxs:
        if rng.random() < 0.7:
            coeffs[idx] = _rand_ratfunc(rng, ctx) if rational else RatFunc(_rand_poly(rng, ctx))
    return DiffForm(ctx, degree, coeffs)


def _lie_direct(Xf: PolyVectorField, alpha: DiffForm) -> DiffForm:
    """Axiomatic Lie derivative of a 1-form: L_X(c dv) = X(c) dv + c d(X_v)."""
    vs = alpha.vars
    out = DiffForm.zero(vs, 1)
    comps = alpha.components()
    for v in vs:
        c = comps.get(v)
        if c is None or c.is_zero():
            c = RatFunc.zero(vs)
        xc = RatFunc.zero(vs)
        for j, u in enumerate(vs):
            xc = xc + RatFunc(Xf.component(u).in_context(vs)) * c.partial(u)
        out = out + DiffForm(vs, 1, {(vs.index(v),): xc})
        dxv = exterior_d(DiffForm.function(RatFunc(Xf.component(v).in_context(vs)), vs))
        out = out + dxv * c
    return out


def test_criterion_9_exterior_calculus_properties(capsys):
    rng = random.Random(9)
    t0 = time.monotonic()
    ok = True

    for _ in range(1000):  # d . d = 0
        alpha = _rand_form(rng, rng.choice((0, 1)))
        ok &= exterior_d(exterior_d(alpha)).is_zero()

    for _ in range(1000):  # graded Leibniz rule
        p = rng.choice((0, 1))
        q = rng.choice((0, 1)) if p == 1 else rng.choice((0, 1, 2))
        a = _rand_form(rng, p)
        b = _rand_form(rng, q)
        lhs = exterior_d(wedge(a, b))
        rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * Fraction((-1) ** p)
        ok &= lhs == rhs

    for _ in range(1000):  # graded anticommutativity
        p = rng.choice((0, 1))
        q = rng.choice((0, 1, 2))
        a = _rand_form(rng, p)
        b = _rand_form(rng, q)
        ok &= wedge(a, b) == wedge(b, a) * Fraction((-1) ** (p * q))

    for _ in range(1000):  # Cartan formula against the axiomatic derivative
        Xf = PolyVectorField(_CTX3, {v: _rand_poly(rng) for v in _CTX3})
        if rng.random() < 0.5:
            f = _rand_form(rng, 0)
            direct = RatFunc.zero(_CTX3)
            for j, u in enumerate(_CTX3):
                direct = direct + RatFunc(Xf.component(u)) * f.as_function().partial(u)
            ok &= lie_derivative(Xf, f) == DiffForm.function(direct, _CTX3)
        else:
            a = _rand_form(rng, 1)
            ok &= lie_derivative(Xf, a) == _lie_direct(Xf, a)
            ok &= lie_derivative(Xf, a) == contract(Xf, exterior_d(a)) + exterior_d(
                contract(Xf, a)
            )

    for _ in range(1000):  # pullback commutes with d
        comps = [_rand_poly(rng, ("u", "v"), deg=2) for _ in range(3)]
        a = _rand_form(rng, rng.choice((0, 1)), rational=False)
        ok &= pullback(comps, exterior_d(a)) == exterior_d(pullback(comps, a))

    elapsed = time.monotonic() - t0
    ok &= elapsed < 60.0
    _verdict(
        capsys, 9,
        f"5x1000 random cases (dd=0, Leibniz, anticomm, Cartan, pullback) in {elapsed:.1f}s",
        ok,
    )
