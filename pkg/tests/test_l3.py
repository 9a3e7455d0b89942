from fractions import Fraction

import mpmath as mp
import pytest
import sympy as sp
from hypothesis import assume, given, settings, strategies as st

from splitjac.algebra import MPoly, QuadraticAlg, discriminant, rational_roots
from splitjac.invariants import Sextic, absolute, igusa
from splitjac.l3 import (THETA_CRITICAL, L3Params, L3Point, LocusError, cubic_pair, cubics,
                         degenerate_relation, degenerate_solutions, e3_estimate, iso2_poly,
                         isomorphic_subfields_locus, j_difference_numerator, l3_cubic_pair,
                         l3_curve, l3_j_pair, l3_membership, l3_r_invariants, l3_subcover1,
                         l3_subcover2, l3_TN, nu, resultant_form, subcover_parameters,
                         theta_critical, uv_form)

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def params_or_skip(a, b) -> L3Params:
    try:
        return L3Params(a, b)
    except LocusError:
        assume(False)


def legendre_j(cubic):
    mp.mp.dps = 50
    cs = [Fraction(c) for c in cubic]
    e1, e2, e3 = mp.polyroots([mp.mpf(c.numerator) / c.denominator for c in cs],
                              maxsteps=200, extraprec=200)
    lam = (e3 - e1) / (e2 - e1)
    return 256 * (lam ** 2 - lam + 1) ** 3 / (lam ** 2 * (lam - 1) ** 2)


def sympy_identity(a, b, m, FG_coeffs):
    """c * F G * V_factor^2 - target(U), rebuilt in sympy from the printed forms."""
    Xs = sp.Symbol("X")
    U = sp.sympify(str(m.U).replace("^", "**"), locals={"X": Xs})
    Vf = sp.sympify(str(m.V_factor).replace("^", "**"), locals={"X": Xs})
    FG = sum(sp.Rational(c.numerator, c.denominator) * Xs ** (6 - k)
             for k, c in enumerate(FG_coeffs))
    c3, c2, c1, c0 = (sp.Rational(Fraction(t).numerator, Fraction(t).denominator) for t in m.target)
    c = sp.Rational(Fraction(m.c).numerator, Fraction(m.c).denominator)
    return sp.cancel(c * FG * Vf ** 2 - (c3 * U ** 3 + c2 * U ** 2 + c1 * U + c0))


# -- the family --------------------------------------------------------------------------

def test_curve_examples():
    assert l3_curve(L3Params(1, 1)).coeffs == (4, 5, 7, 8, 4, 3, 1)
    assert l3_curve(L3Params(0, 0)).coeffs == (4, 0, 0, 5, 0, 0, 1)


def test_degenerate_parameters():
    with pytest.raises(LocusError, match="b\\^3 - 27"):
        L3Params(0, 3)
    # F and G share the root X = -1 when a = b = -1
    assert resultant_form(-1, -1) == 0
    with pytest.raises(LocusError, match="R ="):
        L3Params(-1, -1)
    with pytest.raises(LocusError):
        L3Point(9, 27)


def test_cubic_pair_invariants():
    cp = l3_cubic_pair(L3Params(1, 1))
    assert cp.R == 16
    assert cp.DF == -16
    assert cp.DG == -416
    # H = a3 b0 - a2 b1 / 3 + a1 b2 / 3 - a0 b3 for F = X^3 + X^2 + X + 1, G = 4X^3 + X^2 + 2X + 1
    assert cp.H == Fraction(1) - Fraction(2, 3) + Fraction(1, 3) - 4


def test_cubic_pair_symbolic():
    a, b = MPoly.gens("a", "b")
    cp = cubic_pair(*cubics(a, b))
    assert cp.R == resultant_form(a, b)
    assert cp.DF == -cp.R
    assert cp.DG == 16 * (b ** 3 - 27)
    FG = cp.F * cp.G
    assert discriminant(FG, "X") == cp.DF * cp.DG * cp.R ** 2


def test_uv_form_is_v_times_R():
    a, b = MPoly.gens("a", "b")
    assert uv_form(a * b, b ** 3) == b ** 3 * resultant_form(a, b)


# -- subcover maps ----------------------------------------------------------------------------

def test_subcover1_target_at_one():
    m = l3_subcover1(L3Params(1, 1))
    assert m.target == (1, Fraction(1, 2), Fraction(11, 16), Fraction(-1, 4))
    assert m.j_invariant() == Fraction(780448, 2197)


def test_subcover2_branches():
    assert subcover_parameters(L3Params(1, 1)) == {"s": -3, "t": Fraction(1, 3)}
    m = l3_subcover2(L3Params(1, 0))
    assert m.branch == "b=0"
    X = MPoly.var("X")
    assert str(m.U) == "(X - 1/3) / (4*X^3 + 1)"
    m = l3_subcover2(L3Params(Fraction(5, 2), 1))
    assert m.branch == "b^3-4ab+9=0"
    _, G = cubics(Fraction(5, 2), 1)
    assert m.U.num * G == (X + 3) ** 2 * m.U.den


@pytest.mark.parametrize("ab", [(1, 1), (1, 0), (Fraction(5, 2), 1), (-2, Fraction(3, 2)),
                                (Fraction(7, 3), -1), (0, 2)])
def test_subcover_identities_with_sympy(ab):
    p = L3Params(*ab)
    FG = l3_curve(p).coeffs
    for m in (l3_subcover1(p), l3_subcover2(p)):
        assert sympy_identity(p.a, p.b, m, FG) == 0


@settings(max_examples=25, deadline=None)
@given(small, small)
def test_subcover_identities_random(a, b):
    p = params_or_skip(a, b)
    FG = l3_curve(p).as_poly()
    assert l3_subcover1(p).identity_holds(FG)
    assert l3_subcover2(p).identity_holds(FG)


@settings(max_examples=15, deadline=None)
@given(small, small)
def test_subcover_j_matches_display(a, b):
    p = params_or_skip(a, b)
    assume(p.v != 0 and uv_form(p.u, p.v) != 0)
    j1, j2 = l3_j_pair(p.point())
    assert l3_subcover1(p).j_invariant() == j1
    assert l3_subcover2(p).j_invariant() == j2
    # independent numerical j from the roots of the target cubic
    jj = legendre_j(l3_subcover1(p).target)
    assert abs(jj - mp.mpf(j1.numerator) / j1.denominator) < 1e-20 * (1 + abs(j1))


# -- j, r and nu -----------------------------------------------------------------------------

def test_jpair_examples():
    assert l3_j_pair(L3Point(1, 1)) == (Fraction(780448, 2197), 128)
    assert l3_j_pair(L3Point(Fraction(17, 13), 2)) == (128, Fraction(780448, 2197))
    with pytest.raises(LocusError, match="v=0"):
        l3_j_pair(L3Point(1, 0))


def test_r_invariants_examples():
    r = l3_r_invariants(L3Point(1, 1))
    assert (r.r1, r.r2) == (Fraction(-3375, 2), Fraction(405000, 13))
    assert l3_r_invariants(L3Point(Fraction(17, 13), 2)) == r
    # definitional forms H^3 / R and H^4 / (DF DG)
    cp = l3_cubic_pair(L3Params(1, 1))
    assert r.definitional() == (cp.H ** 3 / cp.R, cp.H ** 4 / (cp.DF * cp.DG))


def test_nu_examples():
    p = L3Point(1, 1)
    assert nu(p) == L3Point(Fraction(17, 13), 2)
    assert nu(nu(p)) == p


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_nu_properties(u, v):
    assume(v not in (0, 27) and uv_form(u, v) != 0)
    p = L3Point(u, v)
    try:
        q = nu(p)
        q._require_generic()
        r = l3_r_invariants(p)
        rq = l3_r_invariants(q)
    except (LocusError, ZeroDivisionError):
        assume(False)
    assume(r.r1 != 0 and r.r2 != 0)
    assert nu(q) == p
    j1, j2 = l3_j_pair(p)
    assert l3_j_pair(q) == (j2, j1)
    assert r == rq
    tn = l3_TN(r)
    assert (tn.sum, tn.product) == (j1 + j2, j1 * j2)


def test_tn_example():
    q = l3_TN(l3_r_invariants(L3Point(1, 1)))
    assert q == QuadraticAlg(Fraction(1061664, 2197), Fraction(99897344, 2197))
    assert q.rational_roots() == [128, Fraction(780448, 2197)]


# -- membership ----------------------------------------------------------------------------------

def test_membership_of_family_curve():
    inv = absolute(igusa(l3_curve(L3Params(1, 1))))
    assert l3_membership(inv) == [L3Point(1, 1), L3Point(Fraction(17, 13), 2)]
    assert e3_estimate(inv) == 2


def test_membership_generic_curve():
    inv = absolute(igusa(Sextic((1, 0, 0, 0, 0, 1, 1))))
    assert l3_membership(inv) == []
    assert e3_estimate(inv) == 0


@settings(max_examples=8, deadline=None)
@given(small, small)
def test_membership_fibres_are_nu_orbits(a, b):
    p = params_or_skip(a, b)
    assume(p.v != 0)
    J = igusa(l3_curve(p))
    assume(J.J2 != 0 and uv_form(p.u, p.v) != 0)
    pt = p.point()
    try:
        orbit = {pt, nu(pt)}
    except (LocusError, ZeroDivisionError):
        assume(False)
    assume(all(q.v not in (0, 27) for q in orbit))
    assert set(l3_membership(absolute(J))) == orbit


def test_membership_sign_corrected_table_row():
    # the published row has i3 = +531441/100000; the points it names have i3 negative
    from splitjac.invariants import AbsoluteInvariants
    inv = AbsoluteInvariants(Fraction(-8019, 20), Fraction(-1240029, 200), Fraction(-531441, 100000))
    assert l3_membership(inv) == [L3Point(Fraction(-775, 8), Fraction(125, 36)),
                                  L3Point(Fraction(25, 2), Fraction(250, 9))]


# -- special loci -------------------------------------------------------------------------------

def test_theta_critical_examples():
    assert not theta_critical(L3Point(1, 1))
    assert THETA_CRITICAL.evaluate({"u": 9, "v": 27}) == 0
    assert not isomorphic_subfields_locus(L3Point(1, 1))


def test_j_difference_divisible_by_both_branches():
    N = j_difference_numerator()
    assert THETA_CRITICAL.divides(N)
    assert iso2_poly().divides(N)


def test_points_on_theta_locus_have_equal_j():
    # THETA_CRITICAL is quadratic in u for fixed v; sample rational points
    found = 0
    for v in range(1, 80):
        if v == 27:
            continue
        poly = THETA_CRITICAL.subs({"v": v})
        for u in set(rational_roots(poly)) if not poly.is_constant() else ():
            p = L3Point(u, v)
            if uv_form(u, v) == 0:
                continue
            j1, j2 = l3_j_pair(p)
            assert j1 == j2
            assert theta_critical(p) and isomorphic_subfields_locus(p)
            found += 1
    assert found > 0


# -- degenerate case ----------------------------------------------------------------------------

def test_degenerate_relation():
    assert degenerate_relation(1728, 1728)
    assert degenerate_relation(0, 432)
    assert not degenerate_relation(1, 1)


def test_degenerate_solutions():
    d = degenerate_solutions()
    j = MPoly.var("j")
    assert d.diagonal_cubic == (j - 1728) * (j ** 2 - 297 * j + 46656)
    assert d.diagonal_roots[0] == 1728
    q = d.diagonal_roots[1]
    # (297 +- 81 sqrt(-15)) / 2
    assert q.sum == 297 and q.product == (297 ** 2 + 81 ** 2 * 15) / 4
    assert d.mixed_count == 6
    assert d.final_system_count == 6
    assert d.total_count == 9


def test_degenerate_count_with_groebner_basis():
    j1, j2 = sp.symbols("j1 j2")
    G = sp.groebner([729 * j1 * j2 - (j1 - 432) ** 3, 729 * j1 * j2 - (j2 - 432) ** 3],
                    j2, j1, order="lex")
    last = sp.Poly(G.exprs[-1], j1)
    # shape position: j2 is a polynomial in j1, so solutions = distinct roots of the last element
    assert any(sp.Poly(g, j2).degree() == 1 for g in G.exprs[:-1])
    assert sp.degree(sp.gcd(last, last.diff(j1)), j1) == 0
    assert last.degree() == 9
