"""Exact rational root finding for univariate polynomials.

Candidates p/q are generated from divisors of the trailing and leading
coefficients of the primitive integer model, pruned by the classical
f(1) / f(-1) divisibility tests, then confirmed by exact evaluation and
peeled off by exact deflation to get multiplicities.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from ..errors import InvalidInput
from .poly import MultiPoly
from . import univar

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(2, n - 1)
        c = rng.randrange(1, n - 1)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1."""
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(0xF01CA5)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def _divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    divs = [1]
    for p, k in _factorint(n).items():
        pk = 1
        new = []
        for _ in range(k):
            pk *= p
            new.extend(d * pk for d in divs)
        divs.extend(new)
    return sorted(divs)


def is_rational_square(q) -> Fraction | None:
    """The exact non-negative square root of ``q`` if it is a square in Q."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def rational_roots(p, var: str | None = None) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, ascending by root.

    Accepts a MultiPoly depending on one variable (or a dense coefficient
    list).  Raises InvalidInput for the zero polynomial.
    """
    if isinstance(p, MultiPoly):
        if var is None:
            used = p.used_vars()
            if len(used) > 1:
                raise InvalidInput(f"polynomial involves several variables: {used}")
            var = used[0] if used else (p.vars[0] if p.vars else "x")
        cs = univar.from_poly(p, var)
    else:
        cs = univar.trim([Fraction(c) for c in p])
    if not cs:
        raise InvalidInput("rational roots of the zero polynomial")
    if len(cs) == 1:
        return []

    # integer model
    den_lcm = 1
    for c in cs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    zs = [c.numerator * (den_lcm // c.denominator) for c in cs]
    g = 0
    for z in zs:
        g = math.gcd(g, z)
    zs = [z // g for z in zs]

    roots: list[tuple[Fraction, int]] = []

    # root at 0 = power of x dividing the polynomial
    k0 = 0
    while not zs[k0]:
        k0 += 1
    if k0:
        roots.append((Fraction(0), k0))
        zs = zs[k0:]
    if len(zs) == 1:
        return roots

    f1 = sum(zs)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(zs))
    candidates: list[Fraction] = []
    for num in _divisors(abs(zs[0])):
        for den in _divisors(abs(zs[-1])):
            if math.gcd(num, den) != 1:
                continue
            for s in (1, -1):
                # if r = s*num/den is a root then (den - s*num) | f(1)
                # and (den + s*num) | f(-1)
                d1 = den - s * num
                if f1 and (d1 == 0 or f1 % d1):
                    continue
                d2 = den + s * num
                if fm1 and (d2 == 0 or fm1 % d2):
                    continue
                candidates.append(Fraction(s * num, den))
    candidates.sort()

    work = [Fraction(z) for z in zs]
    for cand in candidates:
        if len(work) == 1:
            break
        mult = 0
        while len(work) > 1:
            # synthetic division by (x - cand)
            quo = [Fraction(0)] * (len(work) - 1)
            acc = Fraction(0)
            for i in range(len(work) - 1, 0, -1):
                acc = acc * cand + work[i]
                quo[i - 1] = acc
            rem = acc * cand + work[0]
            if rem:
                break
            mult += 1
            work = quo
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda t: t[0])
    return roots
