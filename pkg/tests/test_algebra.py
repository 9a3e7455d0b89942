from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from splitjac.algebra import (EliminationError, MPoly, QuadraticAlg, RatFunc, discriminant,
                              rational_roots, rational_sqrt, resultant, symmetric_reduce)
from splitjac.algebra import textformat
from splitjac.algebra.parse import parse_poly
from splitjac.modular import modular_polynomial

X, A, B, C, D = MPoly.gens("X", "a", "b", "c", "d")
x, y = MPoly.gens("x", "y")

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def to_sympy(p: MPoly):
    syms = sp.symbols(p.vars) if p.vars else ()
    if len(p.vars) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    out = sp.Integer(0)
    for exps, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        out += term
    return sp.expand(out)


def from_coeffs(cs, var="X"):
    return MPoly.from_univariate(list(cs), var)


# -- resultants ---------------------------------------------------------------

def test_resultant_of_canonical_cubics_matches_R_up_to_sign():
    F = X ** 3 + A * X ** 2 + B * X + 1
    G = 4 * X ** 3 + B ** 2 * X ** 2 + 2 * B * X + 1
    R = 4 * A ** 3 + 27 - 18 * A * B - A ** 2 * B ** 2 + 4 * B ** 3
    assert resultant(F, G, "X") in (R, -R)
    assert resultant(G, F, "X") == R


def test_resultant_linear():
    assert resultant(X - C, X - D, "X") == C - D


def test_resultant_numeric_example():
    F = X ** 3 + X ** 2 + X + 1
    G = 4 * X ** 3 + X ** 2 + 2 * X + 1
    assert abs(resultant(F, G, "X").constant_value()) == 16


def test_resultant_missing_variable():
    with pytest.raises(EliminationError, match="variable not present"):
        resultant(A + 1, B + 1, "X")


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=2, max_size=5), st.lists(small, min_size=2, max_size=5))
def test_resultant_matches_sympy(fc, gc):
    if fc[-1] == 0 or gc[-1] == 0:
        return
    F, G = from_coeffs(fc), from_coeffs(gc)
    ours = resultant(F, G, "X")
    ours = ours.constant_value() if not ours.is_zero() else 0
    Xs = sp.Symbol("X")
    # determinant of the Sylvester matrix; sympy's resultant() has sign slips
    # when trailing coefficients vanish
    assert sp.Rational(ours) == sylvester(to_sympy(F), to_sympy(G), Xs).det()


def test_bivariate_resultant_matches_sympy():
    p = parse_poly("u^2v - 3uv + v^2 - 7", "uv")
    q = parse_poly("u^3 + 2uv^2 - v + 1", "uv")
    u, v = sp.symbols("u v")
    ours = to_sympy(resultant(p, q, "u"))
    assert sp.expand(ours - sylvester(to_sympy(p), to_sympy(q), u).det()) == 0


# -- discriminants ---------------------------------------------------------------

def test_discriminant_examples():
    assert discriminant(X ** 3 + X ** 2 + X + 1, "X") == MPoly.const(-16)
    assert discriminant(4 * X ** 3 + X ** 2 + 2 * X + 1, "X") == MPoly.const(-416)
    assert discriminant(X ** 2 - 1, "X") == MPoly.const(4)


def test_discriminant_generic_cubic():
    a, b, c, d = MPoly.gens("p", "q", "r", "s")
    f = a * X ** 3 + b * X ** 2 + c * X + d
    want = 18 * a * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2 - 4 * a * c ** 3 - 27 * a ** 2 * d ** 2
    assert discriminant(f, "X") == want


def test_discriminant_needs_degree_two():
    with pytest.raises(EliminationError):
        discriminant(X + 1, "X")


@settings(max_examples=40, deadline=None)
@given(small, small, small, small)
def test_discriminant_of_product(a, b, p, q):
    # D(FG) = D(F) D(G) Res(F, G)^2
    F = X ** 3 + a * X ** 2 + b * X + 1
    G = 4 * X ** 3 + p * X ** 2 + q * X + 1
    lhs = discriminant(F * G, "X")
    rhs = discriminant(F, "X") * discriminant(G, "X") * resultant(F, G, "X") ** 2
    assert lhs == rhs


# -- rational roots ------------------------------------------------------------

def test_rational_roots_examples():
    cubic = X ** 3 - 2025 * X ** 2 + 559872 * X - 80621568
    assert rational_roots(cubic) == [1728]
    assert rational_roots(X ** 2 + 1) == []
    assert rational_roots(6 * X ** 2 - 5 * X + 1) == [Fraction(1, 3), Fraction(1, 2)]


def test_rational_roots_multiplicity():
    assert rational_roots((X - 1) ** 2 * (X + 2)) == [-2, 1, 1]


def test_rational_roots_zero_polynomial():
    with pytest.raises(EliminationError):
        rational_roots(MPoly.const(0))


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=3))
def test_rational_roots_recovers_planted_roots(roots, extra):
    # planted roots times an arbitrary polynomial; compare with sympy's root set
    p = MPoly.const(1)
    for r in roots:
        p = p * (X - r)
    q = from_coeffs(extra + [1])
    p = p * q
    Xs = sp.Symbol("X")
    want = sorted(r for r, m in sp.roots(sp.Poly(to_sympy(p), Xs), filter="Q").items()
                  for _ in range(m))
    got = rational_roots(p)
    assert [sp.Rational(r) for r in got] == want
    for r in roots:
        assert r in got


# -- symmetric reduction ----------------------------------------------------------

def test_symmetric_reduce_examples():
    e1, e2 = MPoly.gens("e1", "e2")
    assert symmetric_reduce(x ** 2 + y ** 2) == e1 ** 2 - 2 * e2
    assert symmetric_reduce(x ** 3 + y ** 3) == e1 ** 3 - 3 * e1 * e2


def test_symmetric_reduce_rejects_asymmetric():
    with pytest.raises(EliminationError, match="not symmetric"):
        symmetric_reduce(x ** 2 + y)


@pytest.mark.parametrize("level", [2, 3])
def test_symmetric_reduce_round_trip_modular(level):
    phi = modular_polynomial(level)
    q = symmetric_reduce(phi)
    assert q.subs({"e1": x + y, "e2": x * y}) == phi


# -- rational functions ------------------------------------------------------------

def test_ratfunc_canonical_form():
    r1 = RatFunc(x ** 2 - 1, x - 1)
    r2 = RatFunc(2 * x + 2, 2)
    assert (r1.num, r1.den) == (r2.num, r2.den)
    r3 = RatFunc(x, -2 * y - 4)
    assert r3.den.leading_coefficient() > 0
    assert RatFunc(2 * x + 2, -4).den == MPoly.const(1)


@settings(max_examples=30, deadline=None)
@given(small, small, small)
def test_ratfunc_two_constructions_agree(a, b, c):
    f = RatFunc(x + a, y - b)
    g = RatFunc((x + a) * (x - c), (y - b) * (x - c))
    assert f == g
    assert (f.num, f.den) == (g.num, g.den)


def test_ratfunc_arithmetic_against_sympy():
    f = RatFunc(x ** 2 + y, x - y)
    g = RatFunc(y, x + 1)
    h = (f * g - f / g + g).reduced()
    xs, ys = sp.symbols("x y")
    F = (xs ** 2 + ys) / (xs - ys)
    G = ys / (xs + 1)
    assert sp.simplify(to_sympy(h.num) / to_sympy(h.den) - (F * G - F / G + G)) == 0


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(x, 0)


# -- polynomials ----------------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4))
def test_mpoly_ring_ops_against_sympy(pc, qc):
    p = from_coeffs(pc, "x") + y * pc[0]
    q = from_coeffs(qc, "x") - y ** 2 * qc[-1]
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sp.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
    if not q.is_zero():
        quo, rem = (p * q).divmod(q)
        assert rem.is_zero() and quo == p


def test_no_zero_coefficients_stored():
    p = x + y - x
    assert all(c != 0 for c in p.terms.values())
    assert p == y


def test_parse_poly():
    p = parse_poly("2x^2y-3/4", "xy")
    assert p == 2 * x ** 2 * y - Fraction(3, 4)


def test_textformat_round_trip(tmp_path):
    p = parse_poly("6i_1^2i_3 - 4i_2 + 2", ["i_1", "i_2", "i_3"], {"i_1": "i1", "i_2": "i2", "i_3": "i3"})
    text = textformat.dumps(p)
    assert text.startswith(textformat.HEADER)
    assert textformat.loads(text) == p.primitive()
    path = textformat.write(-p, tmp_path / "p.poly")
    assert textformat.read(path) == p.primitive()
    # leading coefficient positive, content removed
    assert textformat.dumps(-p) == text


# -- quadratics ------------------------------------------------------------------------

def test_quadratic_roots():
    q = QuadraticAlg(5, 6)
    assert q.rational_roots() == [2, 3]
    assert QuadraticAlg(0, 1).rational_roots() == []
    assert QuadraticAlg.from_roots(Fraction(1, 2), 7) == QuadraticAlg(Fraction(15, 2), Fraction(7, 2))
    assert q.to_json() == {"sum": "5", "product": "6", "rational_roots": ["2", "3"]}


@given(small, small)
def test_quadratic_from_roots_round_trip(r1, r2):
    assert QuadraticAlg.from_roots(r1, r2).rational_roots() == sorted([r1, r2])


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-1) is None
