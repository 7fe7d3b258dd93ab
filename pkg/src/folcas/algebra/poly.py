"""Sparse multivariate polynomials over the rationals.

Terms are stored as a map from exponent tuples to nonzero ``Fraction``
coefficients.  The canonical term order is graded lexicographic (total degree
first, ties broken left-to-right on the exponent tuple), which fixes leading
coefficients, sign normalization, and printing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from ..errors import DegenerateSingularLocus, InvalidInput

Exponents = tuple[int, ...]


def _grlex_key(e: Exponents):
    return (sum(e), e)


def unify_contexts(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    """Merge two variable contexts by name union.

    If one context already contains every name of the other it wins;
    otherwise the union is sorted alphabetically.
    """
    if a == b:
        return a
    sa, sb = set(a), set(b)
    if sb <= sa:
        return a
    if sa <= sb:
        return b
    return tuple(sorted(sa | sb))


class MultiPoly:
    """Immutable sparse polynomial with an ordered variable context."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: dict):
        vs = tuple(vars)
        clean: dict[Exponents, Fraction] = {}
        for e, c in terms.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                e = tuple(e)
                if len(e) != len(vs):
                    raise InvalidInput("exponent tuple length != #variables")
                clean[e] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str] = ()) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def constant(cls, c, vars: Iterable[str] = ()) -> "MultiPoly":
        vs = tuple(vars)
        return cls(vs, {(0,) * len(vs): Fraction(c)})

    @classmethod
    def variable(cls, name: str, vars: Iterable[str] | None = None) -> "MultiPoly":
        vs = tuple(vars) if vars is not None else (name,)
        if name not in vs:
            raise InvalidInput(f"variable {name!r} not in context {vs}")
        e = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {e: Fraction(1)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise InvalidInput("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self.terms:
            raise InvalidInput("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    # -- context handling ---------------------------------------------

    def in_context(self, vars: Iterable[str]) -> "MultiPoly":
        vs = tuple(vars)
        if vs == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vs)}
        n = len(vs)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for old_i, k in enumerate(e):
                if k:
                    v = self.vars[old_i]
                    if v not in pos:
                        raise InvalidInput(f"variable {v!r} missing from new context")
                    new[pos[v]] = k
            terms[tuple(new)] = c
        return MultiPoly(vs, terms)

    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self, other
        vs = unify_contexts(self.vars, other.vars)
        return vs, self.in_context(vs), other.in_context(vs)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.vars)
        return None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(vs, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.vars)
            f = Fraction(other)
            return MultiPoly(self.vars, {e: c * f for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vs, a, b = self._aligned(other)
        terms: dict[Exponents, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(e, 0) + ca * cb
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(vs, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InvalidInput("polynomial power must be a non-negative integer")
        result = MultiPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    # -- equality / hashing -------------------------------------------

    def _canonical(self):
        used = self.used_vars()
        if used == self.vars:
            p = self
        else:
            pos = [self.vars.index(v) for v in used]
            p = MultiPoly(used, {tuple(e[i] for i in pos): c for e, c in self.terms.items()})
        return p.vars, p.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        va, ta = self._canonical()
        vb, tb = other._canonical()
        if set(va) != set(vb):
            return False
        if va == vb:
            return ta == tb
        return self._eq_reordered(va, ta, vb, tb)

    @staticmethod
    def _eq_reordered(va, ta, vb, tb):
        perm = [vb.index(v) for v in va]
        if len(ta) != len(tb):
            return False
        remapped = {tuple(e[i] for i in perm): c for e, c in tb.items()}
        return ta == remapped

    def __hash__(self):
        if self._hash is None:
            va, ta = self._canonical()
            items = frozenset(
                (frozenset((va[i], k) for i, k in enumerate(e) if k), c)
                for e, c in ta.items()
            )
            object.__setattr__(self, "_hash", hash(items))
        return self._hash

    # -- calculus / structure -----------------------------------------

    def partial(self, var: str) -> "MultiPoly":
        """Exact formal partial derivative."""
        if var not in self.vars:
            raise InvalidInput(f"unknown variable {var!r}")
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                terms[e2] = terms.get(e2, 0) + c * k
        return MultiPoly(self.vars, terms)

    def homogeneous_part(self, k: int) -> "MultiPoly":
        """Sum of the terms of total degree exactly ``k``."""
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def order_at_origin(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def subs(self, values: dict[str, Fraction]) -> "MultiPoly":
        """Substitute rational values for some variables (partial evaluation).

        The substituted variables are removed from the context.
        """
        for v in values:
            if v not in self.vars:
                raise InvalidInput(f"unknown variable {v!r}")
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        new_vars = tuple(self.vars[i] for i in keep)
        terms: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            f = c
            for i, v in enumerate(self.vars):
                if v in values and e[i]:
                    f *= Fraction(values[v]) ** e[i]
            if f:
                e2 = tuple(e[i] for i in keep)
                s = terms.get(e2, 0) + f
                if s:
                    terms[e2] = s
                else:
                    terms.pop(e2, None)
        return MultiPoly(new_vars, terms)

    def eval(self, values: dict[str, Fraction]) -> Fraction:
        return self.subs(values).constant_value()

    def compose(self, images: dict[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables; unmapped variables stay fixed."""
        ctx = self.vars
        for img in images.values():
            ctx = unify_contexts(ctx, img.vars)
        img_at: dict[int, MultiPoly] = {}
        powers: dict[int, list[MultiPoly]] = {}
        for i, v in enumerate(self.vars):
            if v in images:
                img_at[i] = images[v].in_context(ctx)
                powers[i] = [MultiPoly.constant(1, ctx), img_at[i]]
        result = MultiPoly.zero(ctx)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, ctx)
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in img_at:
                    plist = powers[i]
                    while len(plist) <= k:
                        plist.append(plist[-1] * img_at[i])
                    term = term * plist[k]
                else:
                    mono = MultiPoly.variable(self.vars[i], ctx) ** k
                    term = term * mono
            result = result + term
        return result

    # -- normalization helpers ----------------------------------------

    def integer_scaled(self) -> tuple["MultiPoly", Fraction]:
        """Return (primitive integer polynomial p0, scale s) with self = s * p0.

        ``p0`` has integer coefficients with content 1 and positive leading
        coefficient; the zero polynomial returns (0, 1).
        """
        if not self.terms:
            return self, Fraction(1)
        den_lcm = 1
        for c in self.terms.values():
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        scale = Fraction(num_gcd, den_lcm)
        p0 = MultiPoly(self.vars, {e: c / scale for e, c in self.terms.items()})
        if p0.leading_coeff() < 0:
            p0 = -p0
            scale = -scale
        return p0, scale

    def primitive_normalized(self) -> "MultiPoly":
        """Primitive integer form with positive leading coefficient."""
        return self.integer_scaled()[0]

    # -- printing ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            if not factors:
                body = str(abs(c))
            else:
                mono = "*".join(factors)
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def variables(*names: str) -> tuple[MultiPoly, ...]:
    """Generators for a shared polynomial context: ``x, y = variables("x", "y")``."""
    return tuple(MultiPoly.variable(n, names) for n in names)


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------


def div_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact polynomial division; raises InvalidInput when q does not divide p."""
    if q.is_zero():
        raise InvalidInput("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero(p.vars)
    if q.is_constant():
        inv = Fraction(1) / q.constant_value()
        return p * inv
    vs, a, b = p._aligned(q)
    eq, cq = b.leading()
    rem = dict(a.terms)
    quo: dict[Exponents, Fraction] = {}
    while rem:
        ep = max(rem, key=_grlex_key)
        cp = rem[ep]
        diff = tuple(x - y for x, y in zip(ep, eq))
        if any(d < 0 for d in diff):
            raise InvalidInput("inexact polynomial division")
        c = cp / cq
        quo[diff] = quo.get(diff, 0) + c
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(diff, eb))
            s = rem.get(e, 0) - c * cb
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return MultiPoly(vs, quo)


# ---------------------------------------------------------------------------
# gcd (primitive PRS over Z, recursing on the coefficient ring)
# ---------------------------------------------------------------------------


def _int_content(p: MultiPoly) -> int:
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, abs(c.numerator))
        if g == 1:
            break
    return g


def _as_univar(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Dense coefficient list in ``var`` (index = power), coefficients keep the
    full context with ``var`` zeroed out."""
    i = p.vars.index(var)
    d = p.degree_in(var)
    coeffs = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1 :]
        coeffs[k][e2] = c
    return [MultiPoly(p.vars, t) for t in coeffs]


def _from_univar(coeffs: list[MultiPoly], var: str, vars: tuple[str, ...]) -> MultiPoly:
    i = vars.index(var)
    terms: dict[Exponents, Fraction] = {}
    for k, coef in enumerate(coeffs):
        for e, c in coef.terms.items():
            e2 = e[:i] + (k,) + e[i + 1 :]
            terms[e2] = terms.get(e2, 0) + c
    return MultiPoly(vars, terms)


def _utrim(cs: list[MultiPoly]) -> list[MultiPoly]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder of coefficient lists: lc(b)^(da-db+1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    d = b[-1]
    r = list(a)
    e = da - db + 1
    while r and len(r) - 1 >= db:
        lead = r[-1]
        r = [c * d for c in r[:-1]]
        shift = len(r) - db
        for j, cb in enumerate(b[:-1]):
            r[shift + j] = r[shift + j] - lead * cb
        _utrim(r)
        e -= 1
    if e > 0:
        f = d ** e
        r = [c * f for c in r]
    return r


def _gcd_z(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd of two integer-coefficient polynomials in a shared context."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        g = math.gcd(_int_content(p), _int_content(q))
        return MultiPoly.constant(g, p.vars)
    shared = [v for v in p.vars if p.degree_in(v) > 0 and q.degree_in(v) > 0]
    if not shared:
        g = math.gcd(_int_content(p), _int_content(q))
        return MultiPoly.constant(g, p.vars)
    var = shared[0]

    def content_and_pp(u: list[MultiPoly]) -> tuple[MultiPoly, list[MultiPoly]]:
        cont = u[0]
        for c in u[1:]:
            if cont.is_constant() and cont.constant_value() in (1, -1):
                cont = MultiPoly.constant(1, cont.vars)
                break
            cont = _gcd_z(cont, c)
        if cont.is_constant() and cont.constant_value() == 1:
            return cont, u
        return cont, [div_exact(c, cont) for c in u]

    a = _as_univar(p, var)
    b = _as_univar(q, var)
    cont_a, pa = content_and_pp(a)
    cont_b, pb = content_and_pp(b)
    cont = _gcd_z(cont_a, cont_b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while True:
        if len(pb) - 1 == 0:
            pp = [MultiPoly.constant(1, p.vars)]
            break
        r = _prem(pa, pb)
        if not r:
            pp = pb
            break
        _, r = content_and_pp(r)
        pa, pb = pb, r
    g = _from_univar(pp, var, p.vars)
    return cont * g


def _balanced_digits(p: MultiPoly, xi: int) -> MultiPoly:
    """Coefficient-wise balanced residue of an integer polynomial modulo xi."""
    half = xi // 2
    terms = {}
    for e, c in p.terms.items():
        r = c.numerator % xi
        if r > half:
            r -= xi
        if r:
            terms[e] = Fraction(r)
    return MultiPoly(p.vars, terms)


def _heu_gcd(a: MultiPoly, b: MultiPoly, depth: int = 0) -> MultiPoly | None:
    """Evaluation/reconstruction gcd heuristic for integer-coefficient inputs.

    Extracts the common integer content, evaluates one variable at a large
    integer, recurses, lifts the primitive gcd back through balanced base-xi
    digits, verifies by exact division, and reattaches the content.  Returns
    None when the heuristic gives up (caller falls back to the PRS).
    """
    if depth > 12:
        return None
    content = math.gcd(_int_content(a), _int_content(b))
    if content > 1:
        a = a * Fraction(1, content)
        b = b * Fraction(1, content)
    live = [v for v in a.vars if a.degree_in(v) > 0 or b.degree_in(v) > 0]
    if not live:
        return MultiPoly.constant(content, a.vars)
    var = live[-1]
    na = max(abs(c.numerator) for c in a.terms.values())
    nb = max(abs(c.numerator) for c in b.terms.values())
    xi = 2 * min(na, nb) + 29
    dcap = min(a.degree_in(var), b.degree_in(var)) + 1
    for _ in range(6):
        if xi.bit_length() * (max(a.degree_in(var), b.degree_in(var)) + 1) > 24000:
            return None
        av = a.subs({var: Fraction(xi)}).in_context(a.vars)
        bv = b.subs({var: Fraction(xi)}).in_context(a.vars)
        if av.is_zero() or bv.is_zero():
            xi = 73794 * xi * math.isqrt(math.isqrt(xi)) // 27011
            continue
        g0 = _heu_gcd(av, bv, depth + 1)
        if g0 is None:
            return None
        # lift through balanced digits of g0 in base xi
        digits = []
        cur = g0
        while not cur.is_zero() and len(digits) <= dcap:
            d = _balanced_digits(cur, xi)
            digits.append(d)
            cur = (cur - d) * Fraction(1, xi)
        if not cur.is_zero():
            xi = 73794 * xi * math.isqrt(math.isqrt(xi)) // 27011
            continue
        mono = MultiPoly.variable(var, a.vars)
        cand = MultiPoly.zero(a.vars)
        power = MultiPoly.constant(1, a.vars)
        for d in digits:
            cand = cand + d * power
            power = power * mono
        if cand.is_zero():
            xi = 73794 * xi * math.isqrt(math.isqrt(xi)) // 27011
            continue
        cand = cand.primitive_normalized()
        try:
            div_exact(a, cand)
            div_exact(b, cand)
        except InvalidInput:
            xi = 73794 * xi * math.isqrt(math.isqrt(xi)) // 27011
            continue
        return cand * content
    return None


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd normalized to a primitive integer polynomial with positive leading
    coefficient; constants are coprime (gcd 1)."""
    if p.is_zero() and q.is_zero():
        raise InvalidInput("gcd of two zero polynomials")
    if p.is_zero():
        return q.primitive_normalized()
    if q.is_zero():
        return p.primitive_normalized()
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(1, unify_contexts(p.vars, q.vars))
    vs, a, b = p._aligned(q)
    n = len(vs)
    min_a = [min(e[i] for e in a.terms) for i in range(n)]
    min_b = [min(e[i] for e in b.terms) for i in range(n)]
    mono = tuple(min(x, y) for x, y in zip(min_a, min_b))
    if any(mono):
        a = MultiPoly(vs, {tuple(x - m for x, m in zip(e, mono)): c for e, c in a.terms.items()})
        b = MultiPoly(vs, {tuple(x - m for x, m in zip(e, mono)): c for e, c in b.terms.items()})
    a = a.primitive_normalized()
    b = b.primitive_normalized()
    if a.is_constant() or b.is_constant():
        g = MultiPoly.constant(1, vs)
    elif a == b:
        g = a
    else:
        g = _heu_gcd(a, b)
        if g is None:
            g = _gcd_z(a, b)
        g = g.primitive_normalized()
    if any(mono):
        g = g * MultiPoly(vs, {mono: Fraction(1)})
    return g


def poly_gcd_list(ps: Iterable[MultiPoly]) -> MultiPoly:
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        raise InvalidInput("gcd of an empty/zero family")
    g = ps[0].primitive_normalized()
    for p in ps[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g if not g.is_constant() else MultiPoly.constant(1, g.vars)


def poly_lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.is_zero() or q.is_zero():
        raise InvalidInput("lcm with zero polynomial")
    g = poly_gcd(p, q)
    return div_exact(p * q, g).primitive_normalized()


# ---------------------------------------------------------------------------
# resultant / subresultant chain
# ---------------------------------------------------------------------------


def _subresultant_walk(p: MultiPoly, q: MultiPoly, var: str):
    """Subresultant PRS driver.

    Runs the classical pseudo-division chain with the g/h divisor bookkeeping
    (Brown-Traub / Collins), collecting the chain elements and the sign and
    scale data needed to read off the true Sylvester resultant at the end.
    Returns (chain, resultant) where chain is a list of coefficient lists.
    """
    vs, a0, b0 = p._aligned(q)
    if var not in vs:
        raise InvalidInput(f"elimination variable {var!r} not in context {vs}")
    A = _utrim(_as_univar(a0, var))
    B = _utrim(_as_univar(b0, var))
    if not A or not B:
        raise InvalidInput("resultant/subresultants of a zero polynomial")
    da, db = len(A) - 1, len(B) - 1
    if da == 0 and db == 0:
        raise InvalidInput("both inputs have degree 0 in the elimination variable")
    sign = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if (da & 1) and (db & 1):
            sign = -sign
    chain = [A, B]
    one = MultiPoly.constant(1, vs)
    if db == 0:
        res = B[0] ** da
        return chain, (res if sign == 1 else -res), vs
    g = one
    h = one
    while True:
        delta = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        R = _prem(chain[-2], chain[-1])
        if not R:
            return chain, MultiPoly.zero(vs), vs
        divisor = g * (h ** delta)
        R = [div_exact(c, divisor) for c in R]
        chain.append(R)
        g = chain[-2][-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = div_exact(g ** delta, h ** (delta - 1))
        da, db = db, len(R) - 1
        if db == 0:
            if da == 1:
                res = R[0]
            else:
                res = div_exact(R[0] ** da, h ** (da - 1))
            return chain, (res if sign == 1 else -res), vs
        # otherwise loop with the last two chain elements


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant with respect to ``var``, computed through the
    subresultant PRS."""
    _, res, _ = _subresultant_walk(p, q, var)
    return res


def subresultant_prs(p: MultiPoly, q: MultiPoly, var: str) -> list[MultiPoly]:
    """The subresultant polynomial remainder sequence, inputs included."""
    chain, _, vs = _subresultant_walk(p, q, var)
    return [_from_univar(cs, var, vs) for cs in chain]


def subresultant_first(p: MultiPoly, q: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    """The degree-1 element s1*var + s0 of the subresultant chain.

    Used for shape-position recovery: on the common zeros of (p, q) the
    eliminated variable satisfies var = -s0/s1.  Raises
    DegenerateSingularLocus when the chain has no degree-1 element.
    """
    chain, _, vs = _subresultant_walk(p, q, var)
    for cs in reversed(chain):
        if len(cs) - 1 == 1:
            return cs[1], cs[0]
    raise DegenerateSingularLocus(
        "subresultant chain has no degree-1 element (shape position fails)"
    )
