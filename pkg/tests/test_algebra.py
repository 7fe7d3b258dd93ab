"""Exact polynomial arithmetic: ring axioms, gcd/resultant against
independent oracles, root finding, and the univariate modular toolkit."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from folcas.algebra import (
    MultiPoly,
    RatFunc,
    div_exact,
    is_rational_square,
    poly_gcd,
    poly_lcm,
    rational_roots,
    resultant,
    subresultant_first,
    univar,
    variables,
)
from folcas.errors import DegenerateSingularLocus, InvalidInput

X, Y = variables("x", "y")


def rand_poly(rng, vars=("x", "y"), max_deg=3, terms=4, coeff=6):
    """Random sparse polynomial with small Fraction coefficients."""
    n = len(vars)
    t = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(n))
        c = Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3))
        t[e] = t.get(e, Fraction(0)) + c
    return MultiPoly(vars, t)


def nonzero_poly(rng, **kw):
    while True:
        p = rand_poly(rng, **kw)
        if not p.is_zero():
            return p


# ---------------------------------------------------------------------------
# oracle: resultant as the determinant of the Sylvester matrix, computed by
# Bareiss elimination (exact division only), fully independent of the PRS code
# ---------------------------------------------------------------------------


def coeff_list(p: MultiPoly, var: str):
    i = p.vars.index(var)
    d = p.degree_in(var)
    out = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        out[e[i]][e[:i] + (0,) + e[i + 1 :]] = c
    return [MultiPoly(p.vars, t) for t in out]


def sylvester_resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    ctx = p.vars if p.vars == q.vars else tuple(sorted(set(p.vars) | set(q.vars)))
    p, q = p.in_context(ctx), q.in_context(ctx)
    a, b = coeff_list(p, var), coeff_list(q, var)
    da, db = len(a) - 1, len(b) - 1
    n = da + db
    zero = MultiPoly.zero(ctx)
    m = [[zero] * n for _ in range(n)]
    for i in range(db):
        for j, c in enumerate(reversed(a)):
            m[i][i + j] = c
    for i in range(da):
        for j, c in enumerate(reversed(b)):
            m[db + i][i + j] = c
    # Bareiss fraction-free elimination
    sign = 1
    prev = MultiPoly.constant(1, ctx)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = div_exact(num, prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# MultiPoly basics
# ---------------------------------------------------------------------------


def test_ring_axioms_random_sweep():
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == MultiPoly.zero(("x", "y"))


def test_context_merge_is_by_name():
    z = MultiPoly.variable("z")
    p = X * z + Y
    assert set(p.vars) == {"x", "y", "z"}
    # same polynomial built in different contexts compares equal
    q = MultiPoly.variable("z", ("z",)) * MultiPoly.variable("x", ("x",)) + Y
    assert p == q


def test_degrees_and_parts():
    p = X**3 * Y + 2 * X * Y - 5
    assert p.total_degree() == 4
    assert p.degree_in("x") == 3
    assert p.homogeneous_part(2) == 2 * X * Y
    assert not p.is_homogeneous()
    assert (X**2 + X * Y).is_homogeneous()


def test_partial_derivative_product_rule():
    rng = random.Random(7)
    for _ in range(40):
        a, b = rand_poly(rng), rand_poly(rng)
        lhs = (a * b).partial("x")
        rhs = a.partial("x") * b + a * b.partial("x")
        assert lhs == rhs


def test_compose_and_subs():
    p = X**2 + Y
    assert p.subs({"x": Fraction(2)}) == Y + 4
    assert p.eval({"x": Fraction(1, 2), "y": Fraction(3)}) == Fraction(13, 4)
    q = p.compose({"x": X + Y, "y": X * Y})
    assert q == X**2 + 2 * X * Y + Y**2 + X * Y


def test_div_exact_roundtrip_and_failure():
    rng = random.Random(23)
    for _ in range(40):
        a = rand_poly(rng)
        b = nonzero_poly(rng)
        assert div_exact(a * b, b) == a
    with pytest.raises(InvalidInput):
        div_exact(X**2 + 1, X)


# ---------------------------------------------------------------------------
# gcd / lcm
# ---------------------------------------------------------------------------


def test_gcd_pinned_cases():
    assert poly_gcd(X**2 * Y, X * Y**2) == X * Y
    assert poly_gcd(X**2 - 1, X - 1) == X - 1
    assert poly_gcd(X + Y, X - Y).is_constant()


def test_gcd_divides_both_and_contains_common_factor():
    rng = random.Random(31)
    for _ in range(30):
        g = nonzero_poly(rng, max_deg=2, terms=3)
        a = nonzero_poly(rng, max_deg=2, terms=3)
        b = nonzero_poly(rng, max_deg=2, terms=3)
        G = poly_gcd(g * a, g * b)
        # G divides both products, and the common factor g divides G
        div_exact(g * a, G)
        div_exact(g * b, G)
        div_exact(G, g.primitive_normalized())


def test_gcd_normalization():
    g = poly_gcd(Fraction(-2, 3) * (X - 1) * (X + Y), Fraction(4, 5) * (X - 1) * (X - Y))
    assert g == X - 1  # primitive, positive leading coefficient


def test_lcm_times_gcd_is_product():
    rng = random.Random(37)
    for _ in range(20):
        a = nonzero_poly(rng, max_deg=2, terms=2)
        b = nonzero_poly(rng, max_deg=2, terms=2)
        g, l = poly_gcd(a, b), poly_lcm(a, b)
        lhs = (g * l).primitive_normalized()
        rhs = (a * b).primitive_normalized()
        assert lhs == rhs


# ---------------------------------------------------------------------------
# resultants and subresultants
# ---------------------------------------------------------------------------


def test_resultant_pinned_cases():
    assert resultant(Y - X**2, Y + X, "y") == X**2 + X
    assert resultant(X**2 + 1, X - 1, "x") == MultiPoly.constant(2, ("x",))
    assert resultant(Y, Y, "y").is_zero()


def test_resultant_matches_sylvester_determinant():
    rng = random.Random(41)
    checked = 0
    while checked < 25:
        p = rand_poly(rng, max_deg=3, terms=4)
        q = rand_poly(rng, max_deg=3, terms=4)
        if p.degree_in("y") < 1 or q.degree_in("y") < 1:
            continue
        assert resultant(p, q, "y") == sylvester_resultant(p, q, "y")
        checked += 1


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(43)
    for _ in range(15):
        f = nonzero_poly(rng, max_deg=2, terms=3)
        if f.degree_in("y") < 1:
            continue
        a = nonzero_poly(rng, max_deg=1, terms=2)
        b = nonzero_poly(rng, max_deg=1, terms=2)
        assert resultant(f * a, f * b, "y").is_zero()


def test_resultant_multiplicativity():
    rng = random.Random(47)
    done = 0
    while done < 10:
        p1 = rand_poly(rng, max_deg=2, terms=3)
        p2 = rand_poly(rng, max_deg=2, terms=3)
        q = rand_poly(rng, max_deg=2, terms=3)
        if min(p1.degree_in("y"), p2.degree_in("y"), q.degree_in("y")) < 1:
            continue
        lhs = resultant(p1 * p2, q, "y")
        rhs = resultant(p1, q, "y") * resultant(p2, q, "y")
        assert lhs == rhs
        done += 1


def test_subresultant_first_pinned():
    s1, s0 = subresultant_first(Y - X**2, Y + X, "y")
    assert (s1, s0) == (MultiPoly.constant(1, ("x", "y")), X.in_context(("x", "y")))
    s1, s0 = subresultant_first(Y**2 - X, Y, "y")
    assert s1 == 1 and s0.is_zero()
    s1, s0 = subresultant_first(Y - 1, Y - 1, "y")
    assert s1 == 1 and s0 == -1


def test_subresultant_first_recovers_y_on_common_zeros():
    # common zeros of (y - x^2, y - x - 2) sit at x = -1, 2 with y = x + 2
    p, q = Y - X**2, Y - X - 2
    s1, s0 = subresultant_first(p, q, "y")
    r = resultant(p, q, "y")
    for xv, _ in rational_roots(r, "x"):
        yv = -s0.eval({"x": xv, "y": Fraction(0)}) / s1.eval({"x": xv, "y": Fraction(0)})
        assert p.eval({"x": xv, "y": yv}) == 0
        assert q.eval({"x": xv, "y": yv}) == 0


def test_subresultant_first_degenerate():
    with pytest.raises(DegenerateSingularLocus):
        subresultant_first(Y**2 - X, Y**2 - X, "y")


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------


def test_rational_roots_constructed_sweep():
    rng = random.Random(53)
    x = MultiPoly.variable("x")
    for _ in range(20):
        roots = {}
        p = MultiPoly.constant(1, ("x",))
        for _ in range(rng.randint(1, 3)):
            num = rng.randint(-9, 9)
            den = rng.randint(1, 7)
            g = Fraction(num, den)
            m = rng.randint(1, 3)
            roots[g] = roots.get(g, 0) + m
            p = p * (den * x - num) ** m
        if rng.random() < 0.5:
            p = p * (x**2 + 1)  # no rational roots contributed
        found = rational_roots(p, "x")
        assert found == sorted(roots.items())


def test_rational_roots_large_coefficients():
    # forces the divisor enumeration through nontrivial factoring
    p1, p2 = 1000003, 999983
    x = MultiPoly.variable("x")
    poly = (x - p1) * (x - p2) * (3 * x + 1)
    assert rational_roots(poly, "x") == [
        (Fraction(-1, 3), 1),
        (Fraction(p2), 1),
        (Fraction(p1), 1),
    ]


def test_rational_roots_none():
    x = MultiPoly.variable("x")
    assert rational_roots(x**2 + 1, "x") == []
    assert rational_roots(x**2 - 2, "x") == []


def test_is_rational_square():
    assert is_rational_square(Fraction(49, 4)) == Fraction(7, 2)
    assert is_rational_square(Fraction(0)) == 0
    assert is_rational_square(Fraction(2)) is None
    assert is_rational_square(Fraction(-4)) is None
    assert is_rational_square(Fraction(225, 64)) == Fraction(15, 8)


# ---------------------------------------------------------------------------
# univariate toolkit
# ---------------------------------------------------------------------------


def rand_coeffs(rng, max_deg=5):
    c = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, max_deg + 1))]
    return univar.trim(c)


def test_univar_divmod():
    rng = random.Random(61)
    for _ in range(50):
        a = rand_coeffs(rng)
        b = rand_coeffs(rng)
        if not b:
            continue
        q, r = univar.divmod_u(a, b)
        assert univar.add(univar.mul(q, b), r) == a
        assert univar.deg(r) < univar.deg(b) or not r


def test_univar_xgcd_bezout():
    rng = random.Random(67)
    for _ in range(50):
        a, b = rand_coeffs(rng), rand_coeffs(rng)
        if not a and not b:
            continue
        g, s, t = univar.xgcd_u(a, b)
        assert univar.add(univar.mul(s, a), univar.mul(t, b)) == g
        if a:
            assert not univar.mod_u(a, g)
        if b:
            assert not univar.mod_u(b, g)


def test_univar_inverse_mod():
    rng = random.Random(71)
    done = 0
    while done < 30:
        a, m = rand_coeffs(rng), rand_coeffs(rng, max_deg=4)
        if univar.deg(m) < 1 or not a:
            continue
        if univar.deg(univar.gcd_u(a, m)) != 0:
            continue
        inv = univar.inverse_mod(a, m)
        assert univar.mul_mod(a, inv, m) == [Fraction(1)]
        done += 1


def test_squarefree_part():
    x = MultiPoly.variable("x")
    p = univar.from_poly((x - 1) ** 3 * (x + 2) ** 2 * (x - 5), "x")
    sf = univar.squarefree_part(p)
    expect = univar.monic(univar.from_poly((x - 1) * (x + 2) * (x - 5), "x"))
    assert sf == expect


def test_power_sums_match_explicit_roots():
    rng = random.Random(73)
    for _ in range(25):
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))]
        m = [Fraction(1)]
        for r in roots:
            m = univar.mul(m, [-r, Fraction(1)])
        ps = univar.power_sums(m, 8)
        for k in range(8):
            assert ps[k] == sum(r**k for r in roots)


def test_trace_mod_is_sum_over_roots():
    rng = random.Random(79)
    for _ in range(25):
        roots = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        m = [Fraction(1)]
        for r in roots:
            m = univar.mul(m, [-r, Fraction(1)])
        b = rand_coeffs(rng, max_deg=6)
        expect = sum((univar.eval_u(b, r) for r in roots), Fraction(0))
        assert univar.trace_mod(b, m) == expect


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def test_ratfunc_reduction_and_normal_form():
    f = RatFunc(X**2 - 1, X - 1)
    assert f.is_poly() and f.as_poly() == X + 1
    g = RatFunc(2 * X, 4 * Y)
    assert g.den == Y.in_context(("x", "y"))
    assert g.num == X.in_context(("x", "y")) / 2


def test_ratfunc_field_axioms():
    rng = random.Random(83)
    for _ in range(30):
        a = RatFunc(rand_poly(rng, max_deg=2, terms=2), nonzero_poly(rng, max_deg=2, terms=2))
        b = RatFunc(rand_poly(rng, max_deg=2, terms=2), nonzero_poly(rng, max_deg=2, terms=2))
        c = RatFunc(rand_poly(rng, max_deg=1, terms=2), nonzero_poly(rng, max_deg=1, terms=2))
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a
        if not b.is_zero():
            assert (a / b) * b == a
            assert b * b.inverse() == RatFunc.constant(1, b.vars)


def test_ratfunc_partial_quotient_rule():
    f = RatFunc(X.in_context(("x", "y")), (X + Y))
    df = f.partial("x")
    assert df == RatFunc(Y.in_context(("x", "y")), (X + Y) ** 2)


def test_ratfunc_eval_and_poles():
    from folcas.errors import PullbackUndefined

    f = RatFunc(X + 1, X - 1)
    assert f.eval({"x": Fraction(3)}) == 2
    with pytest.raises(PullbackUndefined):
        f.eval({"x": Fraction(1)})


def test_ratfunc_compose():
    f = RatFunc(MultiPoly.constant(1, ("x",)), MultiPoly.variable("x"))
    g = f.compose({"x": RatFunc(X + Y)})
    assert g == RatFunc(MultiPoly.constant(1, ("x", "y")), X + Y)
