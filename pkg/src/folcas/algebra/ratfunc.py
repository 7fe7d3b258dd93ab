"""Rational functions as reduced fractions of sparse polynomials.

Canonical form: numerator and denominator share no factor, the denominator
is a primitive integer polynomial with positive leading coefficient, and
zero is always 0/1.  This makes equality and hashing structural.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidInput, PullbackUndefined
from .poly import MultiPoly, div_exact, poly_gcd, unify_contexts


def _as_poly(x, ctx: tuple[str, ...]) -> MultiPoly | None:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.constant(x, ctx)
    return None


class RatFunc:
    """Quotient of two MultiPoly values, kept in reduced canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.constant(1, num.vars)
        if den.is_zero():
            raise InvalidInput("rational function with zero denominator")
        ctx = unify_contexts(num.vars, den.vars)
        num = num.in_context(ctx)
        den = den.in_context(ctx)
        if num.is_zero():
            num = MultiPoly.zero(ctx)
            den = MultiPoly.constant(1, ctx)
        elif den.is_constant():
            num = num * (Fraction(1) / den.constant_value())
            den = MultiPoly.constant(1, ctx)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = div_exact(num, g)
                den = div_exact(den, g)
            den0, s = den.integer_scaled()
            num = num * (Fraction(1) / s)
            den = den0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def zero(cls, vars=()) -> "RatFunc":
        return cls(MultiPoly.zero(vars))

    @classmethod
    def constant(cls, c, vars=()) -> "RatFunc":
        return cls(MultiPoly.constant(c, vars))

    @classmethod
    def of(cls, x, ctx=()) -> "RatFunc":
        """Coerce a RatFunc / MultiPoly / int / Fraction."""
        if isinstance(x, RatFunc):
            return x
        p = _as_poly(x, tuple(ctx))
        if p is None:
            raise InvalidInput(f"cannot interpret {type(x).__name__} as a rational function")
        return cls(p)

    # -- queries ------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_poly():
            raise InvalidInput(f"not a polynomial: {self}")
        return self.num * (Fraction(1) / self.den.constant_value())

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        p = _as_poly(other, self.vars)
        return RatFunc(p) if p is not None else None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        object.__setattr__(r, "num", -self.num)
        object.__setattr__(r, "den", self.den)
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise InvalidInput("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise InvalidInput("rational function power must be an integer")
        if n < 0:
            if self.is_zero():
                raise InvalidInput("negative power of zero")
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def inverse(self) -> "RatFunc":
        return self ** -1

    # -- equality -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            o = self._coerce(other)
            return self.num == o.num and self.den == o.den
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus -----------------------------------------------------

    def partial(self, var: str) -> "RatFunc":
        if var not in self.vars:
            raise InvalidInput(f"unknown variable {var!r}")
        n, d = self.num, self.den
        return RatFunc(n.partial(var) * d - n * d.partial(var), d * d)

    def compose(self, images: dict[str, "RatFunc | MultiPoly"]) -> "RatFunc":
        """Substitute rational functions for variables.

        Raises PullbackUndefined when the substituted denominator vanishes
        identically.
        """
        imgs = {v: RatFunc.of(f, self.vars) for v, f in images.items()}
        ctx = self.vars
        for f in imgs.values():
            ctx = unify_contexts(ctx, f.vars)
        num = _compose_poly(self.num, imgs, ctx)
        den = _compose_poly(self.den, imgs, ctx)
        if den.is_zero():
            raise PullbackUndefined("substitution sends the denominator to zero")
        return num / den

    def subs(self, values: dict[str, Fraction]) -> "RatFunc":
        n = self.num.subs(values)
        d = self.den.subs(values)
        if d.is_zero():
            raise PullbackUndefined("substitution lands on a pole")
        return RatFunc(n, d)

    def eval(self, values: dict[str, Fraction]) -> Fraction:
        dv = self.den.eval(values)
        if not dv:
            raise PullbackUndefined("evaluation at a pole")
        return self.num.eval(values) / dv

    # -- printing -----------------------------------------------------

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        ns = str(self.num)
        if " " in ns:
            ns = f"({ns})"
        ds = str(self.den)
        if " " in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


def _compose_poly(p: MultiPoly, images: dict[str, RatFunc], ctx) -> RatFunc:
    """Evaluate a polynomial on rational-function arguments."""
    result = RatFunc.zero(ctx)
    powers: dict[str, list[RatFunc]] = {}
    for e, c in p.terms.items():
        term = RatFunc.constant(c, ctx)
        for i, k in enumerate(e):
            if not k:
                continue
            v = p.vars[i]
            if v in images:
                plist = powers.setdefault(v, [RatFunc.constant(1, ctx), images[v]])
                while len(plist) <= k:
                    plist.append(plist[-1] * plist[1])
                term = term * plist[k]
            else:
                term = term * (MultiPoly.variable(v, ctx) ** k)
        result = result + term
    return result
