"""Dense univariate helpers over ``Fraction``.

A univariate polynomial is a list of Fractions indexed by power, with no
trailing zeros ([] is the zero polynomial).  These are the workhorses for
eliminant post-processing: squarefree parts, modular arithmetic, and
power-sum traces over the root multiset of a monic modulus.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidInput
from .poly import MultiPoly

Coeffs = list[Fraction]


def trim(c: Coeffs) -> Coeffs:
    while c and not c[-1]:
        c.pop()
    return c


def deg(c: Coeffs) -> int:
    return len(c) - 1


def from_poly(p: MultiPoly, var: str) -> Coeffs:
    """Dense coefficients of a polynomial that depends on ``var`` alone."""
    extra = [v for v in p.used_vars() if v != var]
    if extra:
        raise InvalidInput(f"polynomial also involves {extra}")
    if p.is_zero():
        return []
    if var in p.vars:
        i = p.vars.index(var)
    else:
        i = None
    n = p.degree_in(var) if i is not None else 0
    out = [Fraction(0)] * (n + 1)
    for e, coef in p.terms.items():
        out[e[i] if i is not None else 0] += coef
    return trim(out)


def to_poly(c: Coeffs, var: str) -> MultiPoly:
    return MultiPoly((var,), {(k,): v for k, v in enumerate(c) if v})


def add(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return trim(out)


def neg(a: Coeffs) -> Coeffs:
    return [-v for v in a]


def sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return add(a, neg(b))


def scale(a: Coeffs, s: Fraction) -> Coeffs:
    if not s:
        return []
    return [v * s for v in a]


def mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if not va:
            continue
        for j, vb in enumerate(b):
            out[i + j] += va * vb
    return trim(out)


def divmod_u(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise InvalidInput("univariate division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(r) >= len(b):
        f = r[-1] / lb
        k = len(r) - len(b)
        q[k] = f
        for j, vb in enumerate(b):
            r[k + j] -= f * vb
        trim(r)
    return trim(q), trim(r)


def mod_u(a: Coeffs, m: Coeffs) -> Coeffs:
    return divmod_u(a, m)[1]


def mul_mod(a: Coeffs, b: Coeffs, m: Coeffs) -> Coeffs:
    return mod_u(mul(a, b), m)


def monic(a: Coeffs) -> Coeffs:
    if not a:
        return []
    return scale(a, Fraction(1) / a[-1])


def derivative(a: Coeffs) -> Coeffs:
    return trim([a[k] * k for k in range(1, len(a))])


def gcd_u(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = list(a), list(b)
    while b:
        a, b = b, mod_u(a, b)
    return monic(a)


def xgcd_u(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs, Coeffs]:
    """Monic extended gcd: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_u(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        raise InvalidInput("xgcd of two zero polynomials")
    inv = Fraction(1) / r0[-1]
    return monic(r0), scale(s0, inv), scale(t0, inv)


def inverse_mod(a: Coeffs, m: Coeffs) -> Coeffs:
    """Inverse of ``a`` in Q[x]/(m); requires gcd(a, m) = 1."""
    g, s, _ = xgcd_u(mod_u(a, m), m)
    if deg(g) != 0:
        raise InvalidInput("element is not invertible modulo the given modulus")
    return mod_u(s, m)


def squarefree_part(a: Coeffs) -> Coeffs:
    """Monic radical: product of the distinct irreducible factors of ``a``."""
    if deg(a) <= 0:
        raise InvalidInput("squarefree part needs positive degree")
    g = gcd_u(a, derivative(a))
    q, _ = divmod_u(a, g)
    return monic(q)


def eval_u(a: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power_sums(m: Coeffs, count: int) -> list[Fraction]:
    """Newton power sums p_0..p_{count-1} of the root multiset of monic ``m``.

    p_k = sum of k-th powers of the roots of m (with multiplicity), computed
    from the coefficients alone, so the roots themselves are never needed.
    """
    n = deg(m)
    if n < 1:
        raise InvalidInput("modulus must have positive degree")
    if m[-1] != 1:
        m = monic(m)
    a = [m[n - i] for i in range(1, n + 1)]  # a[i-1] = coeff of x^(n-i)
    p: list[Fraction] = [Fraction(n)]
    for k in range(1, count):
        if k <= n:
            acc = -k * a[k - 1]
            for i in range(1, k):
                acc -= a[i - 1] * p[k - i]
        else:
            acc = Fraction(0)
            for i in range(1, n + 1):
                acc -= a[i - 1] * p[k - i]
        p.append(acc)
    return p


def trace_mod(b: Coeffs, m: Coeffs) -> Fraction:
    """Sum of b(root) over the root multiset of monic ``m``."""
    b = mod_u(b, m)
    ps = power_sums(m, max(len(b), 1))
    return sum((c * ps[k] for k, c in enumerate(b)), Fraction(0))
