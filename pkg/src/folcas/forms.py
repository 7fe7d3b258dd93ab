"""Graded exterior calculus in degrees 0..3 with rational-function coefficients.

A k-form is stored as a map from strictly increasing k-tuples of variable
positions to nonzero RatFunc coefficients.  All operations are exact; signs
come from sorting index tuples into canonical order.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import MultiPoly, RatFunc, unify_contexts
from .errors import InvalidInput, UnsupportedDegree

MAX_DEGREE = 3


def _sort_idx(idx: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sort an index tuple, returning (sorted, sign) or None if repeated."""
    if len(set(idx)) != len(idx):
        return None
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


class DiffForm:
    """Alternating differential form of degree 0..3."""

    __slots__ = ("vars", "degree", "coeffs")

    def __init__(self, vars, degree: int, coeffs: dict):
        vs = tuple(vars)
        if not 0 <= degree <= MAX_DEGREE:
            raise UnsupportedDegree(f"form degree {degree} outside 0..{MAX_DEGREE}")
        clean: dict[tuple[int, ...], RatFunc] = {}
        for idx, val in coeffs.items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise InvalidInput(f"index tuple {idx} has length != degree {degree}")
            if any(not 0 <= i < len(vs) for i in idx):
                raise InvalidInput(f"index tuple {idx} out of range for {vs}")
            srt = _sort_idx(idx)
            if srt is None:
                continue
            key, sign = srt
            v = RatFunc.of(val, vs)
            if v.vars != vs:
                v = RatFunc(v.num.in_context(vs), v.den.in_context(vs))
            if sign < 0:
                v = -v
            if key in clean:
                v = clean[key] + v
            if v.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = v
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffForm is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars, degree: int = 1) -> "DiffForm":
        return cls(vars, degree, {})

    @classmethod
    def function(cls, f, vars=None) -> "DiffForm":
        """Degree-0 form from a RatFunc / MultiPoly / Fraction."""
        if vars is None:
            if isinstance(f, (RatFunc, MultiPoly)):
                vars = f.vars
            else:
                raise InvalidInput("vars required for constant functions")
        return cls(vars, 0, {(): RatFunc.of(f, tuple(vars))})

    @classmethod
    def one_form(cls, vars, components: dict) -> "DiffForm":
        """1-form from {variable name: coefficient}."""
        vs = tuple(vars)
        coeffs = {}
        for name, val in components.items():
            if name not in vs:
                raise InvalidInput(f"unknown differential d{name}")
            coeffs[(vs.index(name),)] = val
        return cls(vs, 1, coeffs)

    @classmethod
    def d_var(cls, name: str, vars) -> "DiffForm":
        """The basis 1-form d<name>."""
        return cls.one_form(vars, {name: Fraction(1)})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, *names: str) -> RatFunc:
        """Coefficient of d<n1>∧d<n2>..., with the sign of the given order."""
        idx = tuple(self.vars.index(n) for n in names)
        if len(idx) != self.degree:
            raise InvalidInput("wrong number of differentials")
        srt = _sort_idx(idx)
        if srt is None:
            return RatFunc.zero(self.vars)
        key, sign = srt
        val = self.coeffs.get(key)
        if val is None:
            return RatFunc.zero(self.vars)
        return val if sign > 0 else -val

    def as_function(self) -> RatFunc:
        if self.degree != 0:
            raise InvalidInput("not a 0-form")
        return self.coeffs.get((), RatFunc.zero(self.vars))

    def components(self) -> dict[str, RatFunc]:
        """For 1-forms: {variable name: coefficient}."""
        if self.degree != 1:
            raise InvalidInput("components() applies to 1-forms")
        return {self.vars[i]: c for (i,), c in self.coeffs.items()}

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.coeffs.values())

    # -- context ------------------------------------------------------

    def in_context(self, vars) -> "DiffForm":
        vs = tuple(vars)
        if vs == self.vars:
            return self
        pos = {}
        for v in self.vars:
            if v not in vs:
                raise InvalidInput(f"variable {v!r} missing from new context")
            pos[v] = vs.index(v)
        coeffs = {}
        for idx, c in self.coeffs.items():
            new_idx = tuple(pos[self.vars[i]] for i in idx)
            coeffs[new_idx] = RatFunc(c.num.in_context(vs), c.den.in_context(vs))
        return DiffForm(vs, self.degree, coeffs)

    def _aligned(self, other: "DiffForm"):
        if self.vars == other.vars:
            return self.vars, self, other
        vs = unify_contexts(self.vars, other.vars)
        return vs, self.in_context(vs), other.in_context(vs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.degree != other.degree:
            raise InvalidInput(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        vs, a, b = self._aligned(other)
        coeffs = dict(a.coeffs)
        for idx, c in b.coeffs.items():
            s = coeffs.get(idx, RatFunc.zero(vs)) + c
            if s.is_zero():
                coeffs.pop(idx, None)
            else:
                coeffs[idx] = s
        return DiffForm(vs, self.degree, coeffs)

    def __neg__(self):
        return DiffForm(self.vars, self.degree, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        """Multiplication by a function (RatFunc / MultiPoly / Fraction / int)."""
        if isinstance(scalar, DiffForm):
            return NotImplemented
        s = RatFunc.of(scalar, self.vars)
        if s.is_zero():
            return DiffForm.zero(self.vars, self.degree)
        return DiffForm(self.vars, self.degree, {i: c * s for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = RatFunc.of(scalar, self.vars)
        if s.is_zero():
            raise InvalidInput("division of a form by zero")
        return self * s.inverse()

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.degree != other.degree:
            return False
        _, a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(
            (tuple(self.vars[i] for i in idx), c) for idx, c in self.coeffs.items()
        )))

    # -- printing -----------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            basis = "∧".join(f"d{self.vars[i]}" for i in idx)
            cs = str(c)
            if self.degree == 0:
                parts.append(cs)
                continue
            if cs == "1":
                parts.append(basis)
            elif cs == "-1":
                parts.append(f"-{basis}")
            else:
                if " " in cs and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs} {basis}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"DiffForm({self})"


class PolyVectorField:
    """Polynomial vector field: one MultiPoly component per context variable."""

    __slots__ = ("vars", "components")

    def __init__(self, vars, components):
        vs = tuple(vars)
        if isinstance(components, dict):
            comp = []
            for v in vs:
                c = components.get(v, 0)
                p = c if isinstance(c, MultiPoly) else MultiPoly.constant(c, vs)
                comp.append(p.in_context(vs))
            comp = tuple(comp)
        else:
            comp = tuple(components)
            if len(comp) != len(vs):
                raise InvalidInput("component count != #variables")
            comp = tuple(
                (c if isinstance(c, MultiPoly) else MultiPoly.constant(c, vs)).in_context(vs)
                for c in comp
            )
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "components", comp)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    @classmethod
    def euler(cls, vars) -> "PolyVectorField":
        """The radial field: each component is its own coordinate."""
        vs = tuple(vars)
        return cls(vs, tuple(MultiPoly.variable(v, vs) for v in vs))

    @classmethod
    def partial(cls, name: str, vars) -> "PolyVectorField":
        """The coordinate field along one variable."""
        vs = tuple(vars)
        return cls(vs, {name: MultiPoly.constant(1, vs)})

    def component(self, name: str) -> MultiPoly:
        return self.components[self.vars.index(name)]

    def __str__(self):
        parts = [f"({c})∂{v}" for v, c in zip(self.vars, self.components) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyVectorField({self})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def exterior_d(alpha: DiffForm) -> DiffForm:
    """Exterior derivative, degree k -> k+1."""
    if alpha.degree >= MAX_DEGREE:
        raise UnsupportedDegree(f"cannot differentiate a degree-{alpha.degree} form")
    vs = alpha.vars
    out = DiffForm.zero(vs, alpha.degree + 1)
    for idx, c in alpha.coeffs.items():
        part: dict[tuple[int, ...], RatFunc] = {}
        for j, v in enumerate(vs):
            dc = c.partial(v)
            if not dc.is_zero():
                part[(j,) + idx] = dc
        if part:
            out = out + DiffForm(vs, alpha.degree + 1, part)
    return out


def wedge(alpha: DiffForm, beta: DiffForm) -> DiffForm:
    """Exterior product; the graded sign lives in index sorting."""
    total = alpha.degree + beta.degree
    if total > MAX_DEGREE:
        raise UnsupportedDegree(f"wedge of degrees {alpha.degree}+{beta.degree} exceeds {MAX_DEGREE}")
    vs, a, b = alpha._aligned(beta)
    coeffs: dict[tuple[int, ...], RatFunc] = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            srt = _sort_idx(ia + ib)
            if srt is None:
                continue
            key, sign = srt
            term = ca * cb
            if sign < 0:
                term = -term
            if key in coeffs:
                term = coeffs[key] + term
            if term.is_zero():
                coeffs.pop(key, None)
            else:
                coeffs[key] = term
    return DiffForm(vs, total, coeffs)


def contract(X: PolyVectorField, alpha: DiffForm) -> DiffForm:
    """Interior product i_X, degree k -> k-1."""
    if alpha.degree == 0:
        raise UnsupportedDegree("cannot contract a 0-form")
    vs = unify_contexts(X.vars, alpha.vars)
    a = alpha.in_context(vs)
    comp = {v: X.component(v).in_context(vs) for v in X.vars}
    zero = MultiPoly.zero(vs)
    xs = [comp.get(v, zero) for v in vs]
    out = DiffForm.zero(vs, alpha.degree - 1)
    for idx, c in a.coeffs.items():
        part: dict[tuple[int, ...], RatFunc] = {}
        for t, i in enumerate(idx):
            if xs[i].is_zero():
                continue
            term = c * xs[i]
            if t % 2:
                term = -term
            rest = idx[:t] + idx[t + 1 :]
            if rest in part:
                term = part[rest] + term
            part[rest] = term
        part = {k: v for k, v in part.items() if not v.is_zero()}
        if part:
            out = out + DiffForm(vs, alpha.degree - 1, part)
    return out


def lie_derivative(X: PolyVectorField, alpha: DiffForm) -> DiffForm:
    """Lie derivative along X via i_X dα + d(i_X α)."""
    if alpha.degree > MAX_DEGREE - 1:
        raise UnsupportedDegree("Lie derivative needs degree ≤ 2 here")
    first = contract(X, exterior_d(alpha))
    if alpha.degree == 0:
        return first
    return first + exterior_d(contract(X, alpha))


def pullback(F, alpha: DiffForm) -> DiffForm:
    """Pullback of α along the map with components F (one per variable of α).

    Components may be RatFunc or MultiPoly in any source variables;
    substitution uses the exact chain rule dF_i = Σ ∂F_i/∂u_j du_j.
    """
    comps = list(F)
    if len(comps) != len(alpha.vars):
        raise InvalidInput(
            f"map has {len(comps)} components but the form lives on {len(alpha.vars)} variables"
        )
    comps = [f if isinstance(f, RatFunc) else RatFunc.of(f, ()) for f in comps]
    src: tuple[str, ...] = ()
    for f in comps:
        src = unify_contexts(src, f.vars)
    if not src:
        raise InvalidInput("pullback map has no source variables")
    comps = [RatFunc(f.num.in_context(src), f.den.in_context(src)) for f in comps]
    images = dict(zip(alpha.vars, comps))
    dF = [
        DiffForm(src, 1, {(j,): f.partial(u) for j, u in enumerate(src)})
        for f in comps
    ]
    out = DiffForm.zero(src, alpha.degree)
    for idx, c in alpha.coeffs.items():
        pulled_c = c.compose(images)
        if pulled_c.is_zero():
            continue
        if alpha.degree == 0:
            out = out + DiffForm.function(pulled_c)
            continue
        w = dF[idx[0]]
        for i in idx[1:]:
            w = wedge(w, dF[i])
        out = out + w * pulled_c
    return out
