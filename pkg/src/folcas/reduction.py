"""Seidenberg reduction of plane foliation germs by iterated point blow-ups.

A germ is a polynomial 1-form A dx + B dy with gcd(A, B) = 1, studied at the
origin.  Blowing up replaces the origin by an exceptional line E; dividing
the pulled-back form by the right power of the exceptional coordinate gives
the strict transform, and repeating at every singular point of E terminates
in germs that are regular or simple (saddle-node, hyperbolic, or irrational
eigenvalue ratio).  Everything runs over Q: a singular direction with an
irrational slope stops the process with its minimal polynomial attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .algebra import (
    MultiPoly,
    div_exact,
    is_rational_square,
    poly_gcd,
    rational_roots,
    univar,
)
from .errors import (
    InvalidInput,
    MaxDepthExceeded,
    NeedsFieldExtension,
    NonReducedPencil,
    NotSingularHere,
    ZeroForm,
)
from .forms import DiffForm

XY = ("x", "y")

NILPOTENT_OR_ZERO = "nilpotent_or_zero"
SADDLE_NODE = "saddle_node"
HYPERBOLIC_REDUCED = "hyperbolic_reduced"
RESONANT_NONREDUCED = "resonant_nonreduced"
IRRATIONAL_REDUCED = "irrational_reduced"

REDUCED_CLASSES = frozenset({SADDLE_NODE, HYPERBOLIC_REDUCED, IRRATIONAL_REDUCED})

STATUS_REDUCED = "reduced"
STATUS_REGULAR = "regular"
STATUS_DICRITICAL = "dicritical-resolved"
STATUS_INTERIOR = "interior"


class PlaneGerm:
    """1-form germ A dx + B dy at the origin of the (x, y) plane."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        A = A if isinstance(A, MultiPoly) else MultiPoly.constant(A, XY)
        B = B if isinstance(B, MultiPoly) else MultiPoly.constant(B, XY)
        A, B = A.in_context(XY), B.in_context(XY)
        if A.is_zero() and B.is_zero():
            raise ZeroForm("zero form does not define a germ")
        g = poly_gcd(A, B)
        if not g.is_constant():
            A = A if A.is_zero() else div_exact(A, g)
            B = B if B.is_zero() else div_exact(B, g)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneGerm is immutable")

    @property
    def form(self) -> DiffForm:
        coeffs = {}
        if not self.A.is_zero():
            coeffs["x"] = self.A
        if not self.B.is_zero():
            coeffs["y"] = self.B
        return DiffForm.one_form(XY, coeffs)

    def is_singular(self) -> bool:
        o = {"x": Fraction(0), "y": Fraction(0)}
        return self.A.eval(o) == 0 and self.B.eval(o) == 0

    def translate(self, x0, y0) -> "PlaneGerm":
        """Recenter the germ at (x0, y0)."""
        x = MultiPoly.variable("x", XY)
        y = MultiPoly.variable("y", XY)
        sub = {"x": x + Fraction(x0), "y": y + Fraction(y0)}
        return PlaneGerm(self.A.compose(sub), self.B.compose(sub))

    def __eq__(self, other):
        if not isinstance(other, PlaneGerm):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __str__(self):
        return f"({self.A}) dx + ({self.B}) dy"

    __repr__ = __str__


def multiplicity(g: PlaneGerm) -> int:
    """nu = min(ord A, ord B) at the origin."""
    if not g.is_singular():
        raise NotSingularHere("multiplicity is defined for singular germs")
    orders = [p.order_at_origin() for p in (g.A, g.B) if not p.is_zero()]
    return min(orders)


def _tangent_radial(g: PlaneGerm, nu: int) -> MultiPoly:
    x = MultiPoly.variable("x", XY)
    y = MultiPoly.variable("y", XY)
    return x * g.A.homogeneous_part(nu) + y * g.B.homogeneous_part(nu)


def is_dicritical(g: PlaneGerm) -> bool:
    """True iff x·A_nu + y·B_nu vanishes identically (tangent cone radial)."""
    return _tangent_radial(g, multiplicity(g)).is_zero()


# ---------------------------------------------------------------------------
# linear-part classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearPartClass:
    trace: Fraction
    det: Fraction
    classification: str

    @property
    def reduced(self) -> bool:
        return self.classification in REDUCED_CLASSES


def is_reduced(g: PlaneGerm) -> LinearPartClass:
    """Classify the linear part of the dual field (-B, A) at the origin.

    det = 0 with nonzero trace is a saddle-node (simple); a positive
    determinant with square discriminant means a positive rational eigenvalue
    ratio (not simple, blow-up continues); any other nonzero determinant is
    simple, split by whether the ratio is rational.
    """
    if not g.is_singular():
        raise NotSingularHere("classification applies to singular germs")
    o = {"x": Fraction(0), "y": Fraction(0)}
    m00 = -g.B.partial("x").eval(o)
    m01 = -g.B.partial("y").eval(o)
    m10 = g.A.partial("x").eval(o)
    m11 = g.A.partial("y").eval(o)
    tr = m00 + m11
    det = m00 * m11 - m01 * m10
    if det == 0:
        cls = SADDLE_NODE if tr != 0 else NILPOTENT_OR_ZERO
    else:
        square = is_rational_square(tr * tr - 4 * det) is not None
        if square:
            cls = RESONANT_NONREDUCED if det > 0 else HYPERBOLIC_REDUCED
        else:
            cls = IRRATIONAL_REDUCED
    return LinearPartClass(trace=tr, det=det, classification=cls)


# ---------------------------------------------------------------------------
# blow-up
# ---------------------------------------------------------------------------


def strict_transform(g: PlaneGerm, chart: str):
    """Raw strict transform in one chart: (P, Q, k) with the pullback equal
    to x^k (P dx + Q dy) in chart A, resp. y^k (P dx + Q dy) in chart B.

    Chart A is (x, y) = (u, uv) with coordinates renamed back to (x, y);
    chart B is (x, y) = (st, t).  k is nu, or nu + 1 in the dicritical case.
    """
    nu = multiplicity(g)
    k = nu + 1 if is_dicritical(g) else nu
    x = MultiPoly.variable("x", XY)
    y = MultiPoly.variable("y", XY)
    if chart == "A":
        Au = g.A.compose({"x": x, "y": x * y})
        Bu = g.B.compose({"x": x, "y": x * y})
        P, Q, e = Au + y * Bu, x * Bu, x
    elif chart == "B":
        Av = g.A.compose({"x": x * y, "y": y})
        Bv = g.B.compose({"x": x * y, "y": y})
        P, Q, e = y * Av, x * Av + Bv, y
    else:
        raise InvalidInput(f"unknown chart {chart!r}")
    ek = e**k
    return div_exact(P, ek), div_exact(Q, ek), k


def _restrict_to_e(p: MultiPoly):
    """Dense coefficients in y of p(0, y)."""
    q = p.subs({"x": Fraction(0)}).in_context(("y",))
    return univar.from_poly(q, "y")


def _irreducible_factors(dense) -> list[MultiPoly]:
    """Irreducible factors over Q of a squarefree dense polynomial, returned
    as primitive integer polynomials in the direction variable v."""
    v = sympy.Symbol("v")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * v**i
        for i, c in enumerate(dense)
    )
    out = []
    for fac, _ in sympy.factor_list(sympy.Poly(expr, v))[1]:
        terms = {}
        for i, c in enumerate(reversed(sympy.Poly(fac, v).all_coeffs())):
            c = sympy.Rational(c)
            if c != 0:
                terms[(i,)] = Fraction(int(c.p), int(c.q))
        p = MultiPoly(("v",), terms)
        if p.total_degree() >= 1:
            out.append(p.primitive_normalized())
    return out


@dataclass(frozen=True)
class BlowUpResult:
    chart_a: PlaneGerm
    chart_b: PlaneGerm
    exceptional_singularities: list
    extension_obstructions: list
    dicritical: bool
    nu: int


def blow_up(g: PlaneGerm) -> BlowUpResult:
    """One point blow-up: gcd-normalized strict transforms in both charts,
    the rational singular points on the exceptional line, and the minimal
    polynomials of any non-rational singular directions.

    Chart A sees every direction of slope v; chart B contributes only its
    origin (the vertical direction), so points are never double-counted.
    """
    if not g.is_singular():
        raise NotSingularHere("blow-up needs a singular germ")
    dic = is_dicritical(g)
    PA, QA, k = strict_transform(g, "A")
    PB, QB, _ = strict_transform(g, "B")
    ga, gb = PlaneGerm(PA, QA), PlaneGerm(PB, QB)

    pa, qa = _restrict_to_e(ga.A), _restrict_to_e(ga.B)
    if not pa and not qa:
        raise NonReducedPencil("exceptional line lies in the singular set")
    if pa and qa:
        ge = univar.gcd_u(pa, qa)
    else:
        ge = univar.monic(pa or qa)
    points = []
    obstructions = []
    if univar.deg(ge) > 0:
        if univar.deg(ge) > 1:
            ge = univar.squarefree_part(ge)
        roots = rational_roots(ge)
        points = [("A", v0) for v0, _ in roots]
        rest = ge
        for v0, _ in roots:
            rest, rem = univar.divmod_u(rest, [-v0, Fraction(1)])
            assert not rem
        if univar.deg(rest) > 0:
            obstructions = _irreducible_factors(rest)
    o = {"x": Fraction(0), "y": Fraction(0)}
    if gb.A.eval(o) == 0 and gb.B.eval(o) == 0:
        points.append(("B", Fraction(0)))
    return BlowUpResult(
        chart_a=ga,
        chart_b=gb,
        exceptional_singularities=points,
        extension_obstructions=obstructions,
        dicritical=dic,
        nu=multiplicity(g),
    )


# ---------------------------------------------------------------------------
# reduction trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionNode:
    id: int
    parent: int | None
    chart_path: tuple[str, ...]
    germ: PlaneGerm
    status: str
    linear_class: LinearPartClass | None


@dataclass(frozen=True)
class ReductionTree:
    root: PlaneGerm
    nodes: tuple[ReductionNode, ...]
    depth: int
    blowup_count: int

    def leaves(self):
        internal = {n.parent for n in self.nodes if n.parent is not None}
        return [n for n in self.nodes if n.id not in internal]

    def node(self, node_id: int) -> ReductionNode:
        return self.nodes[node_id]


def reduce(g: PlaneGerm, max_depth: int = 64) -> ReductionTree:
    """Full Seidenberg reduction by a deterministic worklist.

    Children of a blown-up node are the singular points of the exceptional
    line: chart A points ordered by slope, then the chart B origin.  A
    dicritical blow-up with no singular point leaves the two (regular) chart
    transforms as leaves.  Irrational singular directions abort with
    NeedsFieldExtension carrying their minimal polynomials.
    """
    nodes: list[ReductionNode] = []

    def visit(germ: PlaneGerm, parent: int | None, path: tuple[str, ...]):
        if len(path) > max_depth:
            raise MaxDepthExceeded(
                f"reduction exceeded {max_depth} blow-ups along {list(path)}"
            )
        nid = len(nodes)
        if not germ.is_singular():
            nodes.append(
                ReductionNode(nid, parent, path, germ, STATUS_REGULAR, None)
            )
            return
        cls = is_reduced(germ)
        if cls.reduced:
            nodes.append(
                ReductionNode(nid, parent, path, germ, STATUS_REDUCED, cls)
            )
            return
        res = blow_up(germ)
        if res.extension_obstructions:
            raise NeedsFieldExtension(
                "singular direction not rational",
                payload={
                    "obstructions": [str(p) for p in res.extension_obstructions],
                    "chart_path": list(path),
                },
            )
        status = STATUS_DICRITICAL if res.dicritical else STATUS_INTERIOR
        nodes.append(ReductionNode(nid, parent, path, germ, status, cls))
        kids = sorted(
            (p for p in res.exceptional_singularities if p[0] == "A"),
            key=lambda p: p[1],
        )
        kids += [p for p in res.exceptional_singularities if p[0] == "B"]
        if kids:
            for chart, v0 in kids:
                if chart == "A":
                    child = res.chart_a.translate(0, v0)
                    label = f"A@v={v0}"
                else:
                    child = res.chart_b
                    label = "B@origin"
                visit(child, nid, path + (label,))
        else:
            visit(res.chart_a, nid, path + ("A@E",))
            visit(res.chart_b, nid, path + ("B@E",))

    visit(g, None, ())
    depth = max(len(n.chart_path) for n in nodes)
    internal = {n.parent for n in nodes if n.parent is not None}
    return ReductionTree(
        root=g, nodes=tuple(nodes), depth=depth, blowup_count=len(internal)
    )
