"""Projective foliations from homogeneous integrable 1-forms.

A foliation on P^n is stored through a homogeneous polynomial 1-form
omega = sum A_i dz_i with gcd(A_i) = 1, Euler contraction zero, and
omega ∧ d(omega) = 0.  The degree nu is (coefficient degree) - 1: it counts
tangencies of the foliation with a generic projective line.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .algebra import (
    MultiPoly,
    RatFunc,
    poly_gcd,
    poly_gcd_list,
    div_exact,
    rational_roots,
    resultant,
    subresultant_first,
    unify_contexts,
    univar,
)
from .errors import (
    AllLinesDegenerate,
    DegenerateSingularLocus,
    EulerContractionNonzero,
    InvalidInput,
    MapImageInSingularLocus,
    MixedDegrees,
    NonReducedPencil,
    NotIntegrable,
    ZeroForm,
)
from .forms import DiffForm, PolyVectorField, contract, exterior_d, pullback, wedge

AFFINE_NAMES = ("x", "y", "z")


def proj_vars(n: int) -> tuple[str, ...]:
    return tuple(f"z{i}" for i in range(n + 1))


def affine_vars(n: int) -> tuple[str, ...]:
    """Affine coordinate names for an n-dimensional chart."""
    if n <= len(AFFINE_NAMES):
        return AFFINE_NAMES[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def _rename_poly(p: MultiPoly, mapping: dict[str, str]) -> MultiPoly:
    return MultiPoly(tuple(mapping.get(v, v) for v in p.vars), p.terms)


def _rename_form(f: DiffForm, mapping: dict[str, str]) -> DiffForm:
    vs = tuple(mapping.get(v, v) for v in f.vars)
    coeffs = {
        idx: RatFunc(_rename_poly(c.num, mapping), _rename_poly(c.den, mapping))
        for idx, c in f.coeffs.items()
    }
    return DiffForm(vs, f.degree, coeffs)


def _content_gcd(polys) -> Fraction:
    """Common rational content: dividing by it leaves collectively primitive
    integer coefficients, without touching signs."""
    num, den = 0, 1
    for p in polys:
        s = abs(p.integer_scaled()[1])
        num = math.gcd(num, s.numerator)
        den = den * s.denominator // math.gcd(den, s.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _poly_coefficients(form: DiffForm) -> dict[str, MultiPoly]:
    out = {}
    for name, c in form.components().items():
        if not c.is_poly():
            raise InvalidInput(f"coefficient of d{name} is not polynomial: {c}")
        out[name] = c.as_poly().in_context(form.vars)
    return out


class AffineForm:
    """Polynomial 1-form in an affine chart, gcd-normalized."""

    __slots__ = ("chart_index", "form")

    def __init__(self, form: DiffForm, chart_index: int = 0):
        if form.degree != 1:
            raise InvalidInput("an affine chart form must have degree 1")
        coeffs = _poly_coefficients(form)
        polys = [p for p in coeffs.values() if not p.is_zero()]
        if not polys:
            raise ZeroForm("affine form is identically zero")
        g = poly_gcd_list(polys)
        if not (g.is_constant() and g.constant_value() == 1):
            form = DiffForm(
                form.vars,
                1,
                {
                    (form.vars.index(n),): div_exact(p, g)
                    for n, p in coeffs.items()
                    if not p.is_zero()
                },
            )
        object.__setattr__(self, "chart_index", chart_index)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name, value):
        raise AttributeError("AffineForm is immutable")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.form.vars

    def coefficients(self) -> dict[str, MultiPoly]:
        """All coefficients as polynomials, zero included."""
        coeffs = _poly_coefficients(self.form)
        zero = MultiPoly.zero(self.vars)
        return {v: coeffs.get(v, zero) for v in self.vars}

    def __eq__(self, other):
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self.chart_index == other.chart_index and self.form == other.form

    def __str__(self):
        return str(self.form)

    def __repr__(self):
        return f"AffineForm(chart {self.chart_index}: {self.form})"


class ProjFoliation:
    """Homogeneous integrable 1-form on C^(n+1) defining a foliation of P^n."""

    __slots__ = ("ambient_dim", "omega", "degree")

    def __init__(self, ambient_dim: int, omega: DiffForm, degree: int):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("ProjFoliation is immutable")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.omega.vars

    def coefficients(self) -> dict[str, MultiPoly]:
        coeffs = _poly_coefficients(self.omega)
        zero = MultiPoly.zero(self.vars)
        return {v: coeffs.get(v, zero) for v in self.vars}

    def __eq__(self, other):
        if not isinstance(other, ProjFoliation):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.degree == other.degree
            and self.omega == other.omega
        )

    def __str__(self):
        return f"degree-{self.degree} foliation of P^{self.ambient_dim}: {self.omega}"

    __repr__ = __str__


def make_foliation(omega: DiffForm) -> ProjFoliation:
    """Validate a homogeneous polynomial 1-form and wrap it as a foliation.

    Divides out the coefficient gcd, then checks equal-degree homogeneity,
    Euler contraction zero, and integrability.
    """
    if omega.degree != 1:
        raise InvalidInput("a foliation is defined by a 1-form")
    n = len(omega.vars) - 1
    if n < 2:
        raise InvalidInput("projective dimension must be at least 2")
    coeffs = _poly_coefficients(omega)
    polys = [p for p in coeffs.values() if not p.is_zero()]
    if not polys:
        raise ZeroForm("zero 1-form does not define a foliation")
    degs = set()
    for p in polys:
        if not p.is_homogeneous():
            raise MixedDegrees(f"coefficient {p} is not homogeneous")
        degs.add(p.total_degree())
    if len(degs) != 1:
        raise MixedDegrees(f"coefficients of mixed degrees {sorted(degs)}")
    g = poly_gcd_list(polys)
    content = _content_gcd(polys)
    if not (g.is_constant() and g.constant_value() == 1) or content != 1:
        coeffs = {
            v: div_exact(p, g) * (1 / content)
            for v, p in coeffs.items()
            if not p.is_zero()
        }
        omega = DiffForm(
            omega.vars, 1, {(omega.vars.index(v),): p for v, p in coeffs.items()}
        )
        degs = {next(iter(coeffs.values())).total_degree()}
    d = degs.pop()
    if d < 1:
        raise InvalidInput("coefficients must have degree >= 1 (nu >= 0)")
    euler = contract(PolyVectorField.euler(omega.vars), omega)
    if not euler.is_zero():
        raise EulerContractionNonzero(
            f"Euler contraction is {euler.as_function()}, not zero"
        )
    if not wedge(omega, exterior_d(omega)).is_zero():
        raise NotIntegrable("omega ∧ d(omega) ≠ 0")
    return ProjFoliation(n, omega, d - 1)


def from_affine(alpha: AffineForm, n: int) -> ProjFoliation:
    """Homogenize an affine chart form into a projective foliation.

    For chart 0 with x_i = z_i/z_0: homogenize every coefficient to the
    common degree d, then
       omega = -(sum z_i A_i) dz_0 + z_0 * sum A_i dz_i,
    followed by gcd normalization inside make_foliation.
    """
    if len(alpha.vars) != n:
        raise InvalidInput(f"chart form has {len(alpha.vars)} variables, expected {n}")
    j = alpha.chart_index
    if not 0 <= j <= n:
        raise InvalidInput(f"chart index {j} out of range")
    zs = proj_vars(n)
    # relabel so the computation is always the chart-0 one, then permute back
    others = [zs[i] for i in range(n + 1) if i != j]
    coeffs = alpha.coefficients()
    d = max(p.total_degree() for p in coeffs.values() if not p.is_zero())
    z0 = MultiPoly.variable(zs[j], zs)
    pos = [zs.index(v2) for v2 in others]
    homog: dict[str, MultiPoly] = {}
    for name, zname in zip(alpha.vars, others):
        p = coeffs[name]
        if p.is_zero():
            homog[zname] = MultiPoly.zero(zs)
            continue
        terms = {}
        for e, c in p.terms.items():
            new = [0] * (n + 1)
            for i, k in enumerate(e):
                new[pos[i]] = k
            new[j] = d - sum(e)
            terms[tuple(new)] = c
        homog[zname] = MultiPoly(zs, terms)
    radial = MultiPoly.zero(zs)
    for zname in others:
        radial = radial + MultiPoly.variable(zname, zs) * homog[zname]
    parts = {zs[j]: -radial}
    for zname in others:
        parts[zname] = z0 * homog[zname]
    omega = DiffForm(zs, 1, {(zs.index(v),): p for v, p in parts.items() if not p.is_zero()})
    return make_foliation(omega)


def to_chart(F: ProjFoliation, j: int) -> AffineForm:
    """Restrict to the affine chart z_j = 1, dropping dz_j and the gcd."""
    n = F.ambient_dim
    if not 0 <= j <= n:
        raise InvalidInput(f"chart index {j} out of range for P^{n}")
    zs = F.vars
    keep = [zs[i] for i in range(n + 1) if i != j]
    names = affine_vars(n)
    mapping = dict(zip(keep, names))
    coeffs = F.coefficients()
    parts = {}
    for zname, aname in mapping.items():
        p = coeffs[zname].subs({zs[j]: Fraction(1)}).in_context(keep)
        if not p.is_zero():
            parts[aname] = _rename_poly(p, mapping)
    form = DiffForm(names, 1, {(names.index(v),): p for v, p in parts.items()})
    if form.is_zero():
        raise ZeroForm(f"restriction to chart {j} is identically zero")
    return AffineForm(form, chart_index=j)


def tangency_degree(F: ProjFoliation, trials: int = 5, seed: int = 0) -> int:
    """Tangency count of the foliation with random rational lines.

    Parametrizes lines t -> p + t v in chart 0, pulls the chart form back to
    g(t) dt, and returns the maximum degree of g over the trials; for generic
    lines this equals the degree of the foliation.
    """
    if trials < 1:
        raise InvalidInput("need at least one trial line")
    rng = random.Random(seed)
    alpha = to_chart(F, 0)
    coeffs = alpha.coefficients()
    names = alpha.vars
    best = -1
    for _ in range(trials):
        p = [Fraction(rng.randint(-10, 10)) for _ in names]
        v = [Fraction(rng.randint(-10, 10)) for _ in names]
        if all(c == 0 for c in v):
            continue
        t = MultiPoly.variable("t")
        images = {
            name: MultiPoly.constant(pi, ("t",)) + vi * t
            for name, pi, vi in zip(names, p, v)
        }
        g = MultiPoly.zero(("t",))
        for name, vi in zip(names, v):
            if vi and not coeffs[name].is_zero():
                g = g + vi * coeffs[name].compose(images)
        if not g.is_zero():
            best = max(best, g.total_degree())
    if best < 0:
        raise AllLinesDegenerate("every sampled line was invariant or degenerate")
    return best


def pullback_foliation(components, G: ProjFoliation) -> ProjFoliation:
    """Pull a foliation back along a homogeneous rational map of projective
    spaces given by polynomial components (one per target coordinate)."""
    comps = [c if isinstance(c, MultiPoly) else MultiPoly.constant(c, ()) for c in components]
    if len(comps) != G.ambient_dim + 1:
        raise InvalidInput(
            f"map needs {G.ambient_dim + 1} components, got {len(comps)}"
        )
    ctx: tuple[str, ...] = ()
    for c in comps:
        ctx = unify_contexts(ctx, c.vars)
    if not ctx:
        raise InvalidInput("map components are all constant")
    comps = [c.in_context(ctx) for c in comps]
    degs = set()
    for c in comps:
        if c.is_zero():
            continue
        if not c.is_homogeneous():
            raise MixedDegrees(f"map component {c} is not homogeneous")
        degs.add(c.total_degree())
    if len(degs) != 1:
        raise MixedDegrees(f"map components of mixed degrees {sorted(degs)}")
    m = len(ctx) - 1
    # compute in temporary source names to avoid clashes with target names
    tmp = tuple(f"w{i}" for i in range(m + 1))
    mapping = dict(zip(ctx, tmp))
    comps_w = [RatFunc(_rename_poly(c, mapping)) for c in comps]
    pulled = pullback(comps_w, G.omega)
    if pulled.is_zero():
        raise MapImageInSingularLocus("pullback of the defining form is identically zero")
    back = dict(zip(tmp, proj_vars(m)))
    omega = _rename_form(pulled.in_context(tmp), back)
    # clear rational scale: coefficients are polynomial here (polynomial map)
    return make_foliation(omega)


# ---------------------------------------------------------------------------
# singular points on the projective plane
# ---------------------------------------------------------------------------


class SingularPointReport:
    """Rational singular points plus the count of non-rational ones."""

    __slots__ = ("rational_points", "residual_degree", "by_cell")

    def __init__(self, rational_points, residual_degree: int, by_cell: dict):
        object.__setattr__(self, "rational_points", list(rational_points))
        object.__setattr__(self, "residual_degree", residual_degree)
        object.__setattr__(self, "by_cell", dict(by_cell))

    def __setattr__(self, name, value):
        raise AttributeError("SingularPointReport is immutable")

    def count(self) -> int:
        return len(self.rational_points) + self.residual_degree

    def __repr__(self):
        pts = ", ".join(
            "(" + ":".join(str(c) for c in p) + ")" for p in self.rational_points
        )
        return f"SingularPointReport([{pts}], residual={self.residual_degree})"


def _root_free_cofactor(cs: list[Fraction]) -> int:
    """Degree of the rational-root-free part of a squarefree polynomial."""
    deg = univar.deg(cs)
    if deg <= 0:
        return 0
    found = rational_roots(cs)
    return deg - sum(m for _, m in found)


def chart_elimination(A: MultiPoly, B: MultiPoly):
    """Shape-position elimination data for the common zeros of (A, B).

    Returns (r, s1, s0): r the squarefree eliminant in x, and the degree-1
    subresultant pair giving y = -s0/s1 on the roots of r.  Raises
    DegenerateSingularLocus when the configuration is not in shape position
    (vertically aligned points, spurious leading-coefficient roots).
    """
    if not poly_gcd(A, B).is_constant():
        raise NonReducedPencil("chart coefficients share a common factor")
    res = resultant(A, B, "y")
    if res.is_zero():
        raise NonReducedPencil("chart coefficients share a common factor")
    if res.is_constant():
        return [], None, None
    r = univar.squarefree_part(univar.from_poly(res.in_context(("x",)), "x"))
    # spurious roots: x-values where both leading y-coefficients vanish
    lcs = []
    for p in (A, B):
        d = p.degree_in("y")
        i = p.vars.index("y")
        lead = MultiPoly(
            p.vars,
            {
                e[:i] + (0,) + e[i + 1 :]: c
                for e, c in p.terms.items()
                if e[i] == d
            },
        )
        lcs.append(univar.from_poly(lead.in_context(("x",)), "x"))
    common_lc = univar.gcd_u(lcs[0], lcs[1])
    if univar.deg(common_lc) > 0 and univar.deg(univar.gcd_u(r, common_lc)) > 0:
        raise DegenerateSingularLocus(
            "eliminant shares a root with both leading coefficients"
        )
    s1p, s0p = subresultant_first(A, B, "y")
    s1 = univar.from_poly(s1p.in_context(("x",)), "x")
    s0 = univar.from_poly(s0p.in_context(("x",)), "x")
    if univar.deg(univar.gcd_u(r, s1)) > 0:
        raise DegenerateSingularLocus("shape position fails: s1 vanishes on a root")
    return r, s1, s0


def _random_gl2(rng: random.Random):
    while True:
        a, b, c, d = (Fraction(rng.randint(-5, 5)) for _ in range(4))
        if a * d - b * c != 0:
            return a, b, c, d


def chart0_system(A: MultiPoly, B: MultiPoly, seed: int = 0):
    """Elimination data (r, s1, s0, A', B', change) for the common zeros of
    (A, B), retrying once under a random GL2 substitution on shape failure.

    r = [] means the system has no finite common zeros; change is None when
    the original coordinates already worked, else the substitution matrix
    (a, b, c, d) with original = (a x' + b y', c x' + d y')."""
    empty = ([], None, None, A, B, None)
    if A.is_zero() or B.is_zero():
        nz = A if B.is_zero() else B
        if not nz.is_constant():
            raise NonReducedPencil("a chart coefficient vanishes identically")
        return empty
    if A.is_constant() or B.is_constant():
        return empty
    if A.degree_in("y") == 0 and B.degree_in("y") == 0:
        if not poly_gcd(A, B).is_constant():
            raise NonReducedPencil("chart coefficients share a common factor")
        return empty
    try:
        r, s1, s0 = chart_elimination(A, B)
        return r, s1, s0, A, B, None
    except DegenerateSingularLocus:
        pass
    rng = random.Random(seed)
    a, b, c, d = _random_gl2(rng)
    x, y = MultiPoly.variable("x", ("x", "y")), MultiPoly.variable("y", ("x", "y"))
    sub = {"x": a * x + b * y, "y": c * x + d * y}
    A2, B2 = A.compose(sub), B.compose(sub)
    r, s1, s0 = chart_elimination(A2, B2)
    return r, s1, s0, A2, B2, (a, b, c, d)


def solve_rational(r, s1, s0, A: MultiPoly, B: MultiPoly):
    """Rational points from elimination data, each verified on (A, B)."""
    pts = []
    for x0, _ in rational_roots(r):
        y0 = -univar.eval_u(s0, x0) / univar.eval_u(s1, x0)
        if A.eval({"x": x0, "y": y0}) != 0 or B.eval({"x": x0, "y": y0}) != 0:
            raise DegenerateSingularLocus(
                f"recovered point ({x0},{y0}) fails verification"
            )
        pts.append((x0, y0))
    return pts


def chart0_points_with_retry(A: MultiPoly, B: MultiPoly, seed: int = 0):
    """Chart-0 solve with one retry under a random linear change of x, y."""
    r, s1, s0, A2, B2, change = chart0_system(A, B, seed=seed)
    if not r:
        return ([], 0), change
    pts = solve_rational(r, s1, s0, A2, B2)
    residual = _root_free_cofactor(r)
    if change is not None:
        a, b, c, d = change
        pts = [(a * x0 + b * y0, c * x0 + d * y0) for x0, y0 in pts]
    return (pts, residual), change


def line_cell(F: ProjFoliation):
    """Restriction of the singular system to the line z0 = 0 minus the corner.

    Returns (g, C, D): the monic squarefree eliminant g(y) whose roots are the
    singular y-coordinates in chart 1 with x = z0/z1 = 0, plus the full chart-1
    coefficients C, D for downstream linear-part work."""
    chart1 = to_chart(F, 1)
    c1 = chart1.coefficients()
    C, D = c1["x"], c1["y"]
    cu = univar.from_poly(C.subs({"x": Fraction(0)}).in_context(("y",)), "y")
    du = univar.from_poly(D.subs({"x": Fraction(0)}).in_context(("y",)), "y")
    if not cu and not du:
        raise NonReducedPencil("the line z0=0 lies in the singular set")
    if cu and du:
        g = univar.gcd_u(cu, du)
    else:
        g = univar.monic(cu or du)
    if univar.deg(g) > 1:
        g = univar.squarefree_part(g)
    return g, C, D


def singular_points_p2(F: ProjFoliation, seed: int = 0) -> SingularPointReport:
    """Singular set of a plane foliation by cells: chart 0, the line z0=0
    minus a point, and the corner (0:0:1)."""
    if F.ambient_dim != 2:
        raise InvalidInput("singular-point cells are implemented for P^2")
    by_cell = {}
    points = []
    residual = 0

    chart0 = to_chart(F, 0)
    c0 = chart0.coefficients()
    (pts0, res0), _ = chart0_points_with_retry(c0["x"], c0["y"], seed=seed)
    for x0, y0 in pts0:
        points.append((Fraction(1), x0, y0))
    residual += res0
    by_cell["affine"] = {"rational": len(pts0), "residual": res0}

    # line z0 = 0 away from (0:0:1): chart 1 coordinates (x, y) = (z0/z1, z2/z1)
    g, _, _ = line_cell(F)
    line_pts = []
    line_res = 0
    if univar.deg(g) > 0:
        for w0, _ in rational_roots(g):
            line_pts.append((Fraction(0), Fraction(1), w0))
        line_res = _root_free_cofactor(g)
    points.extend(line_pts)
    residual += line_res
    by_cell["line"] = {"rational": len(line_pts), "residual": line_res}

    # the corner (0:0:1) in chart 2 coordinates (x, y) = (z0/z2, z1/z2)
    chart2 = to_chart(F, 2)
    c2 = chart2.coefficients()
    origin = {"x": Fraction(0), "y": Fraction(0)}
    corner = c2["x"].eval(origin) == 0 and c2["y"].eval(origin) == 0
    if corner:
        points.append((Fraction(0), Fraction(0), Fraction(1)))
    by_cell["corner"] = {"rational": int(corner), "residual": 0}

    return SingularPointReport(points, residual, by_cell)
