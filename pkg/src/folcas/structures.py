"""Closed logarithmic 1-forms, the seven-family catalog of simple local
models, and transversally projective structures.

A closed rational 1-form decomposes as sum(lambda_i df_i/f_i) + dh; clearing
poles turns it into a projective foliation.  A transversally projective
structure is a triple (omega0, omega1, omega2) satisfying the Maurer-Cartan
identities; every Riccati equation dy/dx = a y^2 + b y + c produces one, and
any valid triple unfolds to an integrable 1-form dt + omega0 + t omega1 +
(t^2/2) omega2 whose t=0 and t=infinity slices recover omega0 and omega2/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MultiPoly, RatFunc, poly_lcm, unify_contexts
from .errors import (
    ClosednessViolated,
    InvalidInput,
    NotIntegrable,
    ParamDomain,
    ZeroForm,
)
from .foliation import AffineForm, ProjFoliation, from_affine
from .forms import DiffForm, PolyVectorField, exterior_d, lie_derivative, wedge

XY = ("x", "y")
XYZ = ("x", "y", "z")

# the t=infinity slice of an unfolding is exactly this multiple of omega2
INFINITY_SCALE = Fraction(1, 2)


def dlog(f: MultiPoly) -> DiffForm:
    """df/f as a rational 1-form."""
    if f.is_zero() or f.is_constant():
        raise InvalidInput("dlog needs a nonconstant polynomial")
    fr = RatFunc(f)
    comps = {v: RatFunc(f.partial(v)) / fr for v in f.vars}
    return DiffForm.one_form(f.vars, {v: c for v, c in comps.items() if not c.is_zero()})


# ---------------------------------------------------------------------------
# closed logarithmic forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogClosedForm:
    """sum(lambda_i df_i/f_i) + dh with rational residues lambda_i."""

    residues: tuple
    factors: tuple
    extra: RatFunc

    def as_rational_1form(self) -> DiffForm:
        ctx = self.extra.vars
        for f in self.factors:
            ctx = unify_contexts(ctx, f.vars)
        total = exterior_d(DiffForm.function(self.extra, ctx))
        for lam, f in zip(self.residues, self.factors):
            total = total + dlog(f.in_context(ctx)) * lam
        return total


def log_build(residues, factors, extra=0) -> LogClosedForm:
    """Assemble sum(lambda_i df_i/f_i) + dh and verify it is closed."""
    residues = tuple(Fraction(r) for r in residues)
    factors = tuple(factors)
    if len(residues) != len(factors):
        raise InvalidInput("one residue per factor")
    for f in factors:
        if not isinstance(f, MultiPoly) or f.is_constant() or f.is_zero():
            raise InvalidInput("factors must be nonconstant polynomials")
    normalized = [f.primitive_normalized() for f in factors]
    for i in range(len(normalized)):
        for j in range(i + 1, len(normalized)):
            if normalized[i] == normalized[j]:
                raise InvalidInput(
                    f"factors {factors[i]} and {factors[j]} are proportional"
                )
    ctx = ()
    for f in factors:
        ctx = unify_contexts(ctx, f.vars)
    extra = RatFunc.of(extra, ctx)
    L = LogClosedForm(residues=residues, factors=factors, extra=extra)
    if not exterior_d(L.as_rational_1form()).is_zero():
        raise ClosednessViolated("logarithmic decomposition is not closed")
    return L


def log_to_foliation(L: LogClosedForm, n: int) -> ProjFoliation:
    """Clear the poles of a closed logarithmic form and projectivize.

    Multiplies by the lcm of the coefficient denominators, divides out the
    gcd, and homogenizes through chart 0.  Integrability is automatic for a
    closed form and re-checked downstream.
    """
    omega = L.as_rational_1form()
    dens = [c.den for c in omega.components().values() if not c.is_zero()]
    if not dens:
        raise ZeroForm("logarithmic form is identically zero")
    lcm = dens[0]
    for d in dens[1:]:
        lcm = poly_lcm(lcm, d)
    comps = {}
    for v, c in omega.components().items():
        if c.is_zero():
            continue
        cleared = c * RatFunc(lcm)
        comps[v] = cleared.as_poly()
    alpha = AffineForm(DiffForm.one_form(omega.vars, comps))
    return from_affine(alpha, n)


# ---------------------------------------------------------------------------
# sl(2) triples, Riccati equations, unfolding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SL2Triple:
    omega0: DiffForm
    omega1: DiffForm
    omega2: DiffForm


def mc_check(T: SL2Triple):
    """The three Maurer-Cartan residuals; all zero iff the triple is valid.

    Returns (d omega0 - omega0^omega1, d omega1 - omega0^omega2,
    d omega2 - omega1^omega2).  Nonzero residuals are data, not errors.
    """
    return (
        exterior_d(T.omega0) - wedge(T.omega0, T.omega1),
        exterior_d(T.omega1) - wedge(T.omega0, T.omega2),
        exterior_d(T.omega2) - wedge(T.omega1, T.omega2),
    )


@dataclass(frozen=True)
class RiccatiODE:
    """dy/dx = a(x) y^2 + b(x) y + c(x) with rational-function coefficients."""

    a: RatFunc
    b: RatFunc
    c: RatFunc

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = RatFunc.of(getattr(self, name), ("x",))
            used = set(v.num.used_vars()) | set(v.den.used_vars())
            if not used <= {"x"}:
                raise InvalidInput(f"coefficient {name} must depend on x only")
            object.__setattr__(self, name, v)
        if self.a.is_zero() and self.b.is_zero() and self.c.is_zero():
            raise InvalidInput("a Riccati equation needs a nonzero right-hand side")


def _lift(f: RatFunc, ctx) -> RatFunc:
    return RatFunc(f.num.in_context(ctx), f.den.in_context(ctx))


def riccati_triple(R: RiccatiODE) -> SL2Triple:
    """The projective triple of a Riccati equation, built by Lie derivatives.

    omega'_0 = dy - (a y^2 + b y + c) dx, omega'_1 and omega'_2 its first and
    second Lie derivatives along d/dy; the triple is
    (dz + omega'_0 + z omega'_1 + (z^2/2) omega'_2, omega'_1 + z omega'_2,
    omega'_2).
    """
    a, b, c = (_lift(f, XYZ) for f in (R.a, R.b, R.c))
    y = RatFunc(MultiPoly.variable("y", XYZ))
    z = RatFunc(MultiPoly.variable("z", XYZ))
    rhs = a * y**2 + b * y + c
    w0p = DiffForm.d_var("y", XYZ) - DiffForm.one_form(XYZ, {"x": rhs})
    dy = PolyVectorField.partial("y", XYZ)
    w1p = lie_derivative(dy, w0p)
    w2p = lie_derivative(dy, w1p)
    omega0 = DiffForm.d_var("z", XYZ) + w0p + w1p * z + w2p * (z**2 * Fraction(1, 2))
    T = SL2Triple(omega0=omega0, omega1=w1p + w2p * z, omega2=w2p)
    assert all(r.is_zero() for r in mc_check(T))
    return T


def unfold(T: SL2Triple) -> DiffForm:
    """Omega = dt + omega0 + t omega1 + (t^2/2) omega2, verified integrable."""
    if not all(r.is_zero() for r in mc_check(T)):
        raise NotIntegrable("triple fails the Maurer-Cartan identities")
    ctx = T.omega0.vars
    for w in (T.omega1, T.omega2):
        ctx = unify_contexts(ctx, w.vars)
    if "t" in ctx:
        raise InvalidInput("variable t is reserved for the unfolding")
    ctx = ctx + ("t",)
    t = RatFunc(MultiPoly.variable("t", ctx))
    w0, w1, w2 = (w.in_context(ctx) for w in (T.omega0, T.omega1, T.omega2))
    omega = DiffForm.d_var("t", ctx) + w0 + w1 * t + w2 * (t**2 * Fraction(1, 2))
    assert wedge(omega, exterior_d(omega)).is_zero()
    return omega


def restrict_unfolding(T: SL2Triple, at: str) -> DiffForm:
    """Slice of the unfolding at t=0 or t=infinity.

    t=0 gives omega0 back.  For t=infinity substitute t = 1/s, rescale by
    s^2 and set s = 0: every term but (1/2) omega2 dies, so the slice is
    omega2/2 -- a nonzero rational multiple of omega2 unless omega2 = 0, in
    which case the returned form is identically zero (degenerate, not an
    error).
    """
    if at == "zero":
        return T.omega0
    if at == "infinity":
        return T.omega2 * INFINITY_SCALE
    raise InvalidInput(f"restriction point must be 'zero' or 'infinity', got {at!r}")


# ---------------------------------------------------------------------------
# the seven-family catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogForm:
    family: int
    params: dict


_FAMILY_PARAMS = {
    1: ("lam",),
    2: ("eps", "s"),
    3: ("eps", "s", "p", "q"),
    4: ("alpha", "beta"),
    5: ("beta", "eps", "s"),
    6: ("beta", "eps", "s", "p", "q"),
    7: ("beta", "eps", "s", "p", "q", "r"),
}


def _rat(params, key) -> Fraction:
    try:
        return Fraction(params[key])
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"parameter {key} must be rational: {exc}") from exc


def _nat(params, key) -> int:
    v = params[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ParamDomain(f"parameter {key} must be a positive integer, got {v!r}")
    return v


def _not_negative_rational(value: Fraction, what: str):
    if value < 0:
        raise ParamDomain(f"{what} = {value} lies in the excluded negative rationals")


def catalog_realize(C: CatalogForm) -> DiffForm:
    """The closed meromorphic normal form of one catalog family.

    Families 1-3 live in (x, y), families 4-7 in (x, y, z).  Every returned
    form is exactly closed; this is asserted.  The family-6 pole divisor is
    realized as (y^p z^q)^s, matching the (x^p y^q)^s and (x^p y^q z^r)^s
    pattern of families 3 and 7 -- the only reading that keeps the form
    closed alongside its p dy/y + q dz/z factor.
    """
    if C.family not in _FAMILY_PARAMS:
        raise InvalidInput(f"catalog family must be 1..7, got {C.family}")
    expected = _FAMILY_PARAMS[C.family]
    if set(C.params) != set(expected):
        raise InvalidInput(
            f"family {C.family} takes parameters {expected}, got {tuple(C.params)}"
        )
    fam = C.family
    ctx = XY if fam <= 3 else XYZ
    x, yy, *rest = (MultiPoly.variable(v, ctx) for v in ctx)
    zz = rest[0] if rest else None

    if fam == 1:
        lam = _rat(C.params, "lam")
        _not_negative_rational(lam, "lambda")
        form = dlog(x) + dlog(yy) * lam
    elif fam == 2:
        eps, s = _rat(C.params, "eps"), _nat(C.params, "s")
        u = RatFunc(MultiPoly.constant(1, ctx), yy**s) + eps
        form = dlog(x) + dlog(yy) * u
    elif fam == 3:
        eps, s = _rat(C.params, "eps"), _nat(C.params, "s")
        p, q = _nat(C.params, "p"), _nat(C.params, "q")
        if math.gcd(p, q) != 1:
            raise ParamDomain(f"family 3 needs gcd(p, q) = 1, got ({p}, {q})")
        m = x**p * yy**q
        u = RatFunc(MultiPoly.constant(1, ctx), m**s) + eps
        form = dlog(x) + dlog(m) * u
    elif fam == 4:
        alpha, beta = _rat(C.params, "alpha"), _rat(C.params, "beta")
        if alpha == 0 or beta == 0:
            raise ParamDomain("family 4 needs alpha * beta != 0")
        _not_negative_rational(alpha, "alpha")
        _not_negative_rational(beta, "beta")
        _not_negative_rational(alpha / beta, "alpha/beta")
        form = dlog(x) * alpha + dlog(yy) * beta + dlog(zz)
    elif fam == 5:
        beta, eps, s = _rat(C.params, "beta"), _rat(C.params, "eps"), _nat(C.params, "s")
        if beta == 0:
            raise ParamDomain("family 5 needs beta != 0")
        _not_negative_rational(beta, "beta")
        u = RatFunc(MultiPoly.constant(1, ctx), zz**s) + eps
        # the last summand is (eps + z^-s) dz, not dz/z
        form = dlog(x) + dlog(yy) * beta + DiffForm.one_form(ctx, {"z": u})
    elif fam == 6:
        beta, eps, s = _rat(C.params, "beta"), _rat(C.params, "eps"), _nat(C.params, "s")
        p, q = _nat(C.params, "p"), _nat(C.params, "q")
        if math.gcd(p, q) != 1:
            raise ParamDomain(f"family 6 needs gcd(p, q) = 1, got ({p}, {q})")
        m = yy**p * zz**q
        u = RatFunc(MultiPoly.constant(1, ctx), m**s) + eps
        form = dlog(x) + dlog(yy) * beta + dlog(m) * u
    else:
        beta, eps, s = _rat(C.params, "beta"), _rat(C.params, "eps"), _nat(C.params, "s")
        p, q, r = _nat(C.params, "p"), _nat(C.params, "q"), _nat(C.params, "r")
        if math.gcd(math.gcd(p, q), r) != 1:
            raise ParamDomain(
                f"family 7 needs gcd(p, q, r) = 1, got ({p}, {q}, {r})"
            )
        m = x**p * yy**q * zz**r
        u = RatFunc(MultiPoly.constant(1, ctx), m**s) + eps
        form = dlog(x) + dlog(yy) * beta + dlog(m) * u

    if not exterior_d(form).is_zero():
        raise ClosednessViolated(f"catalog family {fam} realization is not closed")
    return form
