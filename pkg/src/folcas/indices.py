"""Baum-Bott indices of plane foliations and the exact global sum on P².

The index at a nondegenerate singular point is tr(M)²/det(M) for M the
linear part of the dual vector field; summing over every singular point of a
degree-nu foliation of P² gives (nu+2)².  Contributions of non-rational
points are summed exactly as traces in the quotient algebra Q[x]/(r), so the
global identity is verified over Q without ever leaving exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MultiPoly, rational_roots, univar
from .errors import (
    DegenerateLinearPart,
    FolcasError,
    InvalidInput,
    MultiplePoint,
    NotSingularHere,
)
from .foliation import (
    AffineForm,
    ProjFoliation,
    chart0_system,
    line_cell,
    solve_rational,
    to_chart,
)
from .forms import PolyVectorField


def dual_vector_field(alpha: AffineForm) -> PolyVectorField:
    """The vector field X = (-B, A) annihilated by omega = A dx + B dy."""
    if len(alpha.vars) != 2:
        raise InvalidInput("dual vector field needs a 2-variable chart form")
    c = alpha.coefficients()
    u, v = alpha.vars
    return PolyVectorField(alpha.vars, {u: -c[v], v: c[u]})


@dataclass(frozen=True)
class PlanePointData:
    """Linear-part data of the dual field at a singular point."""

    point: tuple[Fraction, Fraction]
    linear_part: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    trace: Fraction
    det: Fraction

    def is_radial(self) -> bool:
        m = self.linear_part
        return m[0][1] == 0 and m[1][0] == 0 and m[0][0] == m[1][1]


def _jacobian_polys(A: MultiPoly, B: MultiPoly, u: str = "x", v: str = "y"):
    """Entries of the Jacobian of the dual field (-B, A) in the (u, v) chart."""
    return (-B.partial(u), -B.partial(v), A.partial(u), A.partial(v))


def linear_part_at(alpha: AffineForm, point) -> PlanePointData:
    if len(alpha.vars) != 2:
        raise InvalidInput("linear part needs a 2-variable chart form")
    x0, y0 = (Fraction(c) for c in point)
    u, v = alpha.vars
    at = {u: x0, v: y0}
    c = alpha.coefficients()
    A, B = c[u], c[v]
    if A.eval(at) != 0 or B.eval(at) != 0:
        raise NotSingularHere(f"({x0}, {y0}) is not a singular point")
    m = [p.eval(at) for p in _jacobian_polys(A, B, u, v)]
    return PlanePointData(
        point=(x0, y0),
        linear_part=((m[0], m[1]), (m[2], m[3])),
        trace=m[0] + m[3],
        det=m[0] * m[3] - m[1] * m[2],
    )


def bb_index(alpha: AffineForm, point) -> Fraction:
    """tr(M)²/det(M) at a nondegenerate singular point."""
    data = linear_part_at(alpha, point)
    if data.det == 0:
        raise DegenerateLinearPart(
            f"linear part at {_fmt_pt(data.point)} has zero determinant"
        )
    return data.trace**2 / data.det


# ---------------------------------------------------------------------------
# global sum on P^2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BBEntry:
    """One contribution: a rational point, or an aggregate over the conjugate
    roots of a rational-root-free factor (count > 1, bb already summed)."""

    cell: str  # "affine" | "inf" | "corner" | "affine-residual" | "inf-residual"
    bb: Fraction
    point: tuple[Fraction, Fraction] | None = None
    at: Fraction | None = None
    count: int = 1


@dataclass
class BBReport:
    per_point: list[BBEntry] = field(default_factory=list)
    infinity_contributions: list[BBEntry] = field(default_factory=list)
    expected: Fraction = Fraction(0)
    total: Fraction = Fraction(0)
    complete: bool = True
    diagnostics: list[str] = field(default_factory=list)

    def entries(self) -> list[BBEntry]:
        return [*self.per_point, *self.infinity_contributions]


def _fail(report: BBReport, where: str, err):
    report.complete = False
    code = err.code if isinstance(err, FolcasError) else "DegenerateLinearPart"
    report.diagnostics.append(f"{where}: {code}: {err}")


def _fmt_pt(p) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"


def _entry(cell: str, bb: Fraction, point=None, at=None) -> BBEntry:
    if cell == "affine":
        return BBEntry(cell=cell, bb=bb, point=point)
    if cell == "inf":
        return BBEntry(cell=cell, bb=bb, at=at)
    return BBEntry(cell=cell, bb=bb)


def _direct_entries(alpha: AffineForm, pts, report, where, cell):
    """Per-point bb values at rational points, with degeneracy screening."""
    out = []
    for p in pts:
        data = linear_part_at(alpha, p)
        if data.det == 0:
            _fail(report, where, f"zero determinant at {_fmt_pt(p)}")
            continue
        if data.is_radial():
            _fail(report, where, f"radial linear part at {_fmt_pt(p)}")
            continue
        out.append(_entry(cell, data.trace**2 / data.det, p, at=p[1]))
    return out


def _compose_mod(p, U, r):
    """p(U(x)) mod r(x) by Horner evaluation in the quotient algebra."""
    out: list[Fraction] = []
    for c in reversed(p):
        out = univar.mod_u(univar.add(univar.mul_mod(out, U, r), [c]), r)
    return out


def _reduce_bivariate(P: MultiPoly, U, V, r):
    """P(U(x), V(x)) mod r(x): a dense polynomial in x."""
    if P.is_zero():
        return []
    ix = P.vars.index("x")
    iy = P.vars.index("y")
    by_y: dict[int, list[Fraction]] = {}
    for e, cval in P.terms.items():
        row = by_y.setdefault(e[iy], [])
        if len(row) <= e[ix]:
            row.extend([Fraction(0)] * (e[ix] + 1 - len(row)))
        row[e[ix]] += cval
    out: list[Fraction] = []
    for ey in range(max(by_y), -1, -1):
        out = univar.mul_mod(out, V, r)
        if ey in by_y:
            out = univar.mod_u(
                univar.add(out, _compose_mod(univar.trim(by_y[ey]), U, r)), r
            )
    return out


def _deflate(r, roots):
    """Divide out the linear factor of each rational root."""
    for x0 in roots:
        r, rem = univar.divmod_u(r, [-x0, Fraction(1)])
        assert not rem
    return r


def _trace_entry(jac, reduce, r, cell, report, where):
    """Aggregate bb over the roots of r via the quotient-algebra trace."""
    m00, m01, m10, m11 = jac
    detp = reduce(m00 * m11 - m01 * m10)
    if univar.deg(univar.gcd_u(detp, r)) > 0:
        _fail(report, where, "zero determinant on a conjugate root cluster")
        return None
    radial = univar.gcd_u(reduce(m01), reduce(m10))
    radial = univar.gcd_u(radial, reduce(m00 - m11))
    if univar.deg(univar.gcd_u(radial, r)) > 0:
        _fail(report, where, "radial linear part on a conjugate root cluster")
        return None
    trp = reduce(m00 + m11)
    rep = univar.mul_mod(
        univar.mul_mod(trp, trp, r), univar.inverse_mod(detp, r), r
    )
    return BBEntry(cell=cell, bb=univar.trace_mod(rep, r), count=univar.deg(r))


def bb_sum_p2(F: ProjFoliation, n: int = 2, seed: int = 0) -> BBReport:
    """Exact Baum-Bott sum over all singular points of a plane foliation.

    Rational points are listed individually; conjugate clusters of
    non-rational points enter as one aggregated trace entry.  A cell with a
    degenerate (zero-determinant or radial) point lands in diagnostics and
    flips complete to False instead of corrupting the sum; when every cell
    succeeds, the number of distinct points is re-verified against
    nu² + nu + 1.
    """
    if n != 2 or F.ambient_dim != 2:
        raise InvalidInput("the global Baum-Bott sum is implemented for P^2")
    nu = F.degree
    report = BBReport(expected=Fraction((nu + 2) ** 2))
    counted = 0

    # affine cell (chart 0)
    alpha0 = to_chart(F, 0)
    c0 = alpha0.coefficients()
    r = None
    try:
        r, s1, s0, A2, B2, change = chart0_system(c0["x"], c0["y"], seed=seed)
    except FolcasError as e:
        _fail(report, "affine", e)
    if r:
        counted += univar.deg(r)
        rat = solve_rational(r, s1, s0, A2, B2)
        if change is not None:
            a, b, c, d = change
            pts = [(a * x0 + b * y0, c * x0 + d * y0) for x0, y0 in rat]
        else:
            pts = rat
        report.per_point.extend(
            _direct_entries(alpha0, pts, report, "affine", "affine")
        )
        r_irr = _deflate(r, [x0 for x0, _ in rat])
        if univar.deg(r_irr) > 0:
            # original coordinates as functions of the eliminant parameter
            Y = univar.mul_mod(
                univar.neg(s0), univar.inverse_mod(s1, r_irr), r_irr
            )
            ident = univar.mod_u([Fraction(0), Fraction(1)], r_irr)
            if change is not None:
                a, b, c, d = change
                U = univar.add(univar.scale(ident, a), univar.scale(Y, b))
                V = univar.add(univar.scale(ident, c), univar.scale(Y, d))
            else:
                U, V = ident, Y

            def red0(p):
                return _reduce_bivariate(p, U, V, r_irr)

            entry = _trace_entry(
                _jacobian_polys(c0["x"], c0["y"]), red0, r_irr,
                "affine-residual", report, "affine",
            )
            if entry:
                report.per_point.append(entry)

    # line at infinity minus the corner (chart 1 restricted to x = 0)
    g = []
    try:
        g, C, D = line_cell(F)
    except FolcasError as e:
        _fail(report, "line", e)
    if univar.deg(g) > 0:
        counted += univar.deg(g)
        alpha1 = to_chart(F, 1)
        rat = [(Fraction(0), w0) for w0, _ in rational_roots(g)]
        report.infinity_contributions.extend(
            _direct_entries(alpha1, rat, report, "line", "inf")
        )
        g_irr = _deflate(g, [w0 for _, w0 in rat])
        if univar.deg(g_irr) > 0:

            def red1(p):
                u = p.subs({"x": Fraction(0)}).in_context(("y",))
                return univar.mod_u(univar.from_poly(u, "y"), g_irr)

            entry = _trace_entry(
                _jacobian_polys(C, D), red1, g_irr,
                "inf-residual", report, "line",
            )
            if entry:
                report.infinity_contributions.append(entry)

    # the corner (0:0:1) in chart 2
    alpha_c = to_chart(F, 2)
    c2 = alpha_c.coefficients()
    origin = (Fraction(0), Fraction(0))
    if c2["x"].eval(dict(zip(("x", "y"), origin))) == 0 and c2["y"].eval(
        dict(zip(("x", "y"), origin))
    ) == 0:
        counted += 1
        report.infinity_contributions.extend(
            _direct_entries(alpha_c, [origin], report, "corner", "corner")
        )

    report.total = sum((e.bb for e in report.entries()), Fraction(0))
    if report.complete and counted != nu * nu + nu + 1:
        raise MultiplePoint(
            f"found {counted} distinct singular points, expected "
            f"{nu * nu + nu + 1} for degree {nu}"
        )
    return report
