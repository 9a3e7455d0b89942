"""Genus-2 curves with a degree-3 elliptic subcover.

Such a curve has a model ``Y^2 = F(X) G(X)`` with

    F = X^3 + a X^2 + b X + 1,   G = 4 X^3 + b^2 X^2 + 2 b X + 1,

and the pair ``u = ab``, ``v = b^3`` parameterises the locus up to the
involution ``nu`` that swaps the two elliptic subcovers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (MPoly, QuadraticAlg, RatFunc, as_rational, discriminant,
                      rational_roots, resultant, substitute_poly)
from .algebra.elimination import ugcd
from .algebra.parse import parse_poly
from .invariants import (AbsoluteInvariants, IgusaInvariants, Sextic, clebsch_forms,
                         igusa_from_clebsch)
from .modular import _c4_disc, j_invariant_cubic, j_invariant_cubic_expr

U, V = MPoly.gens("u", "v")
A, B, X = MPoly.gens("a", "b", "X")


class LocusError(ValueError):
    """Raised for degenerate parameters or points."""


def _q(x) -> Fraction:
    return Fraction(as_rational(x))


def resultant_form(a, b):
    """R = 4a^3 + 27 - 18ab - a^2 b^2 + 4b^3."""
    return a ** 3 * 4 + 27 - a * b * 18 - a ** 2 * b ** 2 + b ** 3 * 4


def uv_form(u, v):
    """4v^2 + 27v + 4u^3 - 18uv - u^2 v, which equals v * R at u = ab, v = b^3."""
    return v ** 2 * 4 + v * 27 + u ** 3 * 4 - u * v * 18 - u ** 2 * v


@dataclass(frozen=True)
class L3Params:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _q(self.a))
        object.__setattr__(self, "b", _q(self.b))
        if resultant_form(self.a, self.b) == 0:
            raise LocusError("singular curve: R = 4a^3+27-18ab-a^2b^2+4b^3 vanishes")
        if self.b ** 3 == 27:
            raise LocusError("singular curve: b^3 - 27 vanishes")

    @property
    def u(self) -> Fraction:
        return self.a * self.b

    @property
    def v(self) -> Fraction:
        return self.b ** 3

    def point(self) -> "L3Point":
        return L3Point(self.u, self.v)


@dataclass(frozen=True)
class L3Point:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _q(self.u))
        object.__setattr__(self, "v", _q(self.v))
        if self.v == 27:
            raise LocusError("v = 27 is excluded")

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.u, self.v)

    def _require_generic(self):
        if self.v == 0:
            raise LocusError("v=0: use the map-based route (l3_subcover on (a, b))")
        if uv_form(self.u, self.v) == 0:
            raise LocusError("4v^2+27v+4u^3-18uv-u^2v vanishes: use the map-based route "
                             "(l3_subcover on (a, b))")


# -- the two cubics -----------------------------------------------------------

def cubics(a, b) -> tuple[MPoly, MPoly]:
    """F and G in the variable X; ``a``, ``b`` may be numbers or polynomials."""
    F = X ** 3 + X ** 2 * a + X * b + 1
    G = X ** 3 * 4 + X ** 2 * b ** 2 + X * b * 2 + 1
    return F, G


@dataclass(frozen=True)
class CubicPair:
    F: MPoly
    G: MPoly
    H: object
    R: object
    DF: object
    DG: object


def cubic_pair(F: MPoly, G: MPoly, var: str = "X") -> CubicPair:
    """Joint invariants of two cubics.

    R is Res(G, F) in the Sylvester convention, which is the sign that makes
    it equal to 4a^3 + 27 - ... for the canonical pair.
    """
    fa = F.coeffs_in(var)
    gb = G.coeffs_in(var)
    fa = fa + [MPoly.const(0)] * (4 - len(fa))
    gb = gb + [MPoly.const(0)] * (4 - len(gb))
    H = fa[3] * gb[0] - fa[2] * gb[1] * Fraction(1, 3) + fa[1] * gb[2] * Fraction(1, 3) - fa[0] * gb[3]
    R = resultant(G, F, var)
    DF = discriminant(F, var)
    DG = discriminant(G, var)
    return CubicPair(F, G, _simplify(H), _simplify(R), _simplify(DF), _simplify(DG))


def _simplify(p):
    if isinstance(p, MPoly):
        p = p.trim()
        return Fraction(p.constant_value()) if p.is_constant() else p
    return p


def l3_cubic_pair(p: L3Params) -> CubicPair:
    return cubic_pair(*cubics(p.a, p.b))


def l3_curve(p: L3Params) -> Sextic:
    F, G = cubics(p.a, p.b)
    return Sextic.from_poly(F * G, "X")


# -- subcover maps ---------------------------------------------------------------

@dataclass(frozen=True)
class SubcoverMap:
    """An elliptic subcover ``(X, Y) -> (U, V)`` with ``V = sqrt(c) * Y * V_factor(X)``.

    ``target`` holds (c3, c2, c1, c0) of ``V^2 = c3 U^3 + c2 U^2 + c1 U + c0``.
    Entries are Fractions for numeric parameters or RatFuncs otherwise.
    """

    branch: str
    U: RatFunc
    V_factor: RatFunc
    c: object
    target: tuple

    def target_at(self, U):
        c3, c2, c1, c0 = self.target
        return U ** 3 * c3 + U ** 2 * c2 + U * c1 + c0

    def identity_residue(self, FG) -> RatFunc:
        """``c * F G * V_factor^2 - target(U)``; zero iff the map is correct.

        Replacing Y^2 by F G is exactly reduction modulo Y^2 - F G, since V^2
        only involves Y^2.
        """
        lhs = RatFunc._lift(FG) * self.V_factor ** 2 * self.c
        return lhs - self.target_at(self.U)

    def identity_holds(self, FG) -> bool:
        return self.identity_residue(FG) == 0

    def j_invariant(self):
        if all(isinstance(t, Fraction) for t in self.target):
            return j_invariant_cubic(*self.target)
        return j_invariant_cubic_expr(*(RatFunc._lift(t) for t in self.target)).reduced()


def _rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc(MPoly.const(x), 1, reduce=False)
    return RatFunc(x)


def _num(x):
    """Collapse a constant RatFunc to a Fraction; leave the rest reduced."""
    r = _rf(x).reduced()
    if r.num.is_constant() and r.den.is_constant():
        return Fraction(r.num.constant_value()) / r.den.constant_value() if not r.num.is_zero() else Fraction(0)
    return r


def _cubics_rf(a, b):
    a, b = _rf(a), _rf(b)
    x = RatFunc.var("X")
    F = x ** 3 + x ** 2 * a + x * b + 1
    G = x ** 3 * 4 + x ** 2 * b ** 2 + x * b * 2 + 1
    return F, G


def subcover1(a, b) -> SubcoverMap:
    """U1 = X^2/F, V1 = Y (X^3 - bX - 2)/F^2 onto a monic Weierstrass cubic."""
    a, b = _rf(a), _rf(b)
    F, G = _cubics_rf(a, b)
    x = RatFunc.var("X")
    R = resultant_form(a, b)
    target = (1, (a * b ** 2 - a ** 2 * 6 + b * 9) * 2 / R, (a * 12 - b ** 2) / R, -4 / R)
    # V1 as displayed squares to -R times the monic target
    return SubcoverMap("U1", (x ** 2 / F).reduced(), ((x ** 3 - x * b - 2) / F ** 2).reduced(),
                       _num(-1 / R), tuple(_num(t) for t in target))


def subcover2_generic(a, b) -> SubcoverMap:
    """Branch b(b^3 - 4ab + 9) != 0."""
    a, b = _rf(a), _rf(b)
    F, G = _cubics_rf(a, b)
    x = RatFunc.var("X")
    w = b ** 3 - a * b * 4 + 9
    s = -3 / b
    t = (a * 3 - b ** 2) / w
    Umap = (x - s) ** 2 * (x - t) / G
    P = (a * b * 4 - 8 - b ** 3) * x ** 3 + (a * 4 - b ** 2) * x ** 2 + b * x + 1
    d = b ** 3 - 27
    d2 = d ** 2
    c3 = -(b ** 6) * w ** 3 / d2
    c2 = -(b ** 4) * w ** 2 * (a * b ** 3 + a * 54 - b ** 2 * 27) / d2
    c1 = -(b ** 2) * w * (a ** 2 * b ** 3 * 54 + a ** 2 * 729 - a * b ** 5 * 18 - a * b ** 2 * 972
                          + b ** 7 + b ** 4 * 189 + b * 729) / d2
    c0 = -((a * b * 9 - b ** 3 * 2 - 27) ** 3) / d2
    return SubcoverMap("generic", Umap.reduced(), (P / G ** 2).reduced(), _num(27 - b ** 3),
                       tuple(_num(c) for c in (c3, c2, c1, c0)))


def subcover2_b0(a) -> SubcoverMap:
    """Branch b = 0."""
    a = _rf(a)
    x = RatFunc.var("X")
    g = x ** 3 * 4 + 1
    Umap = (x * 3 - a) / (g * 3)
    Vf = (x ** 3 * 8 - a * x ** 2 * 4 - 1) / g ** 2
    target = (-27, a * -18, a ** 2 * -3, 1)
    return SubcoverMap("b=0", Umap.reduced(), Vf.reduced(), Fraction(1),
                       tuple(_num(t) for t in target))


def subcover2_third(b) -> SubcoverMap:
    """Branch b^3 - 4ab + 9 = 0 (so a = (b^3 + 9)/(4b))."""
    b = _rf(b)
    _, G = _cubics_rf(0, b)
    x = RatFunc.var("X")
    Umap = (b * x + 3) ** 2 / (b ** 2 * G)
    Vf = (b * x ** 3 + x ** 2 * 9 + b ** 2 * x + b) / G ** 2
    target = (b ** 4, b ** 2 * (b ** 3 - 18), 81 - b ** 3 * 2, b)
    return SubcoverMap("b^3-4ab+9=0", Umap.reduced(), Vf.reduced(), _num(64 / b),
                       tuple(_num(t) for t in target))


def l3_subcover1(p: L3Params) -> SubcoverMap:
    return subcover1(p.a, p.b)


def l3_subcover2(p: L3Params) -> SubcoverMap:
    if p.b == 0:
        return subcover2_b0(p.a)
    if p.b ** 3 - 4 * p.a * p.b + 9 == 0:
        return subcover2_third(p.b)
    return subcover2_generic(p.a, p.b)


def subcover_parameters(p: L3Params) -> dict:
    """s and t of the generic branch (None elsewhere)."""
    w = p.b ** 3 - 4 * p.a * p.b + 9
    if p.b == 0 or w == 0:
        return {"s": None, "t": None}
    return {"s": -3 / p.b, "t": (3 * p.a - p.b ** 2) / w}


# -- j-invariants, r-invariants and nu --------------------------------------------

@lru_cache(maxsize=None)
def j_ratfuncs() -> tuple[RatFunc, RatFunc]:
    d = uv_form(U, V)
    P = V * U ** 2 + 216 * U ** 2 - 126 * V * U - 972 * U + 12 * V ** 2 + 405 * V
    j1 = RatFunc(16 * V * P ** 3, (V - 27) ** 3 * d ** 2)
    j2 = RatFunc(-256 * (U ** 2 - 3 * V) ** 3, V * d)
    return j1, j2


def l3_j_pair(p: L3Point) -> tuple[Fraction, Fraction]:
    p._require_generic()
    pt = {"u": p.u, "v": p.v}
    return tuple(j.evaluate(pt) for j in j_ratfuncs())


@dataclass(frozen=True)
class RInvariants:
    """r1, r2 in the displayed normalisation (729 H^3/R and 1296^2 H^4/(DF DG))."""

    r1: Fraction
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r1", _q(self.r1))
        object.__setattr__(self, "r2", _q(self.r2))

    def definitional(self) -> tuple[Fraction, Fraction]:
        """H^3/R and H^4/(DF DG)."""
        return self.r1 / R1_SCALE, self.r2 / R2_SCALE


R1_SCALE = 729
R2_SCALE = 1679616


@lru_cache(maxsize=None)
def r_ratfuncs() -> tuple[RatFunc, RatFunc]:
    """Displayed r1, r2 as rational functions of (u, v)."""
    d = uv_form(U, V)
    h = V - 9 - 2 * U
    return (RatFunc(27 * V * h ** 3, d),
            RatFunc(-1296 * V * h ** 4, (V - 27) * d))


@lru_cache(maxsize=None)
def r_definitional_ratfuncs() -> tuple[RatFunc, RatFunc]:
    """H^3/R and H^4/(DF DG) with H = (v - 9 - 2u)/3, R = d/v, DF = -R, DG = 16(v - 27)."""
    r1, r2 = r_ratfuncs()
    return r1 * Fraction(1, R1_SCALE), r2 * Fraction(1, R2_SCALE)


def l3_r_invariants(p: L3Point) -> RInvariants:
    pt = {"u": p.u, "v": p.v}
    try:
        return RInvariants(*(r.evaluate(pt) for r in r_ratfuncs()))
    except ZeroDivisionError:
        raise LocusError("r-invariants have a vanishing denominator here") from None


def r_invariants_from_pair(pair: CubicPair) -> tuple:
    """Definitional (H^3/R, H^4/(DF DG)) of any cubic pair."""
    return pair.H ** 3 / pair.R, pair.H ** 4 / (pair.DF * pair.DG)


@lru_cache(maxsize=None)
def nu_ratfuncs() -> tuple[RatFunc, RatFunc]:
    d = uv_form(U, V)
    nu_u = RatFunc((V - 3 * U) * (324 * U ** 2 + 15 * U ** 2 * V - 378 * U * V - 4 * U * V ** 2
                                  + 243 * V + 72 * V ** 2), (V - 27) * d)
    nu_v = RatFunc(-4 * (V - 3 * U) ** 3, d)
    return nu_u, nu_v


def nu(p: L3Point) -> L3Point:
    pt = {"u": p.u, "v": p.v}
    if (p.v - 27) * uv_form(p.u, p.v) == 0:
        raise LocusError("nu is undefined: (v-27)(4u^3+27v-18uv-u^2v+4v^2) = 0")
    nu_u, nu_v = nu_ratfuncs()
    return L3Point(nu_u.evaluate(pt), nu_v.evaluate(pt))


# -- T, N and the u/v quadratics -------------------------------------------------

_REN = {"r_1": "r1", "r_2": "r2"}

T_TEXT = (
    "1712282664960r_2^3r_1^6+1528823808r_2^4r_1^6+49941577728r_2^4r_1^5"
    "-38928384r_2^5r_1^5-258048r_2^6r_1^4+12386304r_2^6r_1^3+901736973729792r_2r_1^10"
    "+966131712r_2^5r_1^4+16231265527136256r_1^10+480r_2^8r_1+101376r_2^7r_1^2+479047767293952r_2r_1^8"
    "+7247757312r_2^3r_1^8+7827577896960r_2^2r_1^9+2705210921189376r_1^9+619683250176r_2^3r_1^7"
    "+21641687369515008r_1^12+32462531054272512r_1^11+r_2^9+37572373905408r_2^2r_1^7"
    "+1408964021452800r_2r_1^9+45595641249792r_2^2r_1^8"
)
N_TEXT = ("84934656r_1^5+1179648r_1^4r_2-5308416r_1^4-442368r_1^3r_2"
          "-13824r_1^2r_2^2-192r_1r_2^3-r_2^4")
EQ_U_TEXT = (
    "65536r_1r_2^3u^2+42467328r_2^4u+21233664r_2^4r_1u+480r_2r_1^4u+2r_1^5u+41472r_2^2r_1^3u"
    "+1548288r_2^3r_1^2u-294912r_2^3r_1u-382205952r_2^4+238878720r_2^4r_1-2654208r_2^3r_1"
    "+13934592r_2^3r_1^2+285696r_2^2r_1^3+2400r_2r_1^4+7r_1^5"
)
EQ_V_TEXT = (
    "16384v^2r_2^3+221184r_2^3r_1v+r_1^4v+11520r_2^2r_1^2v-442368r_2^3v+192r_2r_1^3v"
    "-5971968r_2^3r_1-864r_2r_1^3-124416r_2^2r_1^2-2r_1^4"
)


@lru_cache(maxsize=None)
def tn_polys() -> tuple[MPoly, MPoly]:
    """Numerators of the displayed T and N in (r1, r2)."""
    return (parse_poly(T_TEXT, ["r_1", "r_2"], _REN),
            parse_poly(N_TEXT, ["r_1", "r_2"], _REN))


@lru_cache(maxsize=None)
def uv_quadratics() -> tuple[MPoly, MPoly]:
    return (parse_poly(EQ_U_TEXT, ["r_1", "r_2", "u"], _REN),
            parse_poly(EQ_V_TEXT, ["r_1", "r_2", "v"], _REN))


def tn_display(rho1, rho2):
    """The displayed closed forms of T and N evaluated at (rho1, rho2).

    They agree with the subcover j-invariants when rho are the reciprocals of
    the definitional r-invariants, and then T_display = -(j1 + j2).
    """
    Tn, Nn = tn_polys()
    if isinstance(rho1, RatFunc) or isinstance(rho2, RatFunc):
        Tv = substitute_poly(Tn, {"r1": rho1, "r2": rho2})
        Nv = substitute_poly(Nn, {"r1": rho1, "r2": rho2})
    else:
        pt = {"r1": rho1, "r2": rho2}
        Tv, Nv = Tn.evaluate(pt), Nn.evaluate(pt)
    T = Tv / (rho2 ** 3 * rho1 ** 8 * 16777216)
    N = -(Nv ** 3) / (rho1 ** 12 * rho2 ** 3 * 68719476736)
    return T, N


def l3_TN(r: RInvariants) -> QuadraticAlg:
    """The quadratic over k(r1, r2) whose roots are j1 and j2."""
    if r.r1 == 0 or r.r2 == 0:
        raise LocusError("T and N need r1 and r2 nonzero")
    d1, d2 = r.definitional()
    T, N = tn_display(1 / d1, 1 / d2)
    return QuadraticAlg(-T, N)


def tn_ratfuncs() -> tuple[RatFunc, RatFunc]:
    """Sum and product of the j's obtained through (r1, r2)(u, v)."""
    d1, d2 = r_definitional_ratfuncs()
    T, N = tn_display(1 / d1, 1 / d2)
    return -T, N


def verify_uv_quadratics() -> dict[str, bool]:
    """eq_u, eq_v vanish at (u, v) and their second roots are nu(u), nu(v)."""
    d1, d2 = r_definitional_ratfuncs()
    Eu, Ev = uv_quadratics()
    nu_u, nu_v = nu_ratfuncs()
    out = {}
    for name, E, var, other in (("eq_u", Eu, "u", nu_u), ("eq_v", Ev, "v", nu_v)):
        vanish = substitute_poly(E, {"r1": d1, "r2": d2}).is_zero()
        coeffs = [substitute_poly(c, {"r1": d1, "r2": d2}) for c in E.coeffs_in(var)]
        c0, c1, c2 = coeffs
        own = RatFunc.var(var)
        out[f"{name} vanishes"] = vanish
        out[f"{name} root sum"] = (own + other) * c2 + c1 == 0
        out[f"{name} root product"] = own * other * c2 - c0 == 0
    return out


def verify_coherence() -> dict[str, bool]:
    """Symbolic T/N, nu and r-invariant identities."""
    j1, j2 = j_ratfuncs()
    nu_u, nu_v = nu_ratfuncs()
    s, p = tn_ratfuncs()
    nu_map = {"u": nu_u, "v": nu_v}
    r1, r2 = r_ratfuncs()
    out = {
        "T = j1 + j2": s == j1 + j2,
        "N = j1 * j2": p == j1 * j2,
        "nu^2 = id (u)": nu_u.subs(nu_map) == RatFunc.var("u"),
        "nu^2 = id (v)": nu_v.subs(nu_map) == RatFunc.var("v"),
        "nu(j1) = j2": j1.subs(nu_map) == j2,
        "nu(j2) = j1": j2.subs(nu_map) == j1,
        "nu fixes r1": r1.subs(nu_map) == r1,
        "nu fixes r2": r2.subs(nu_map) == r2,
    }
    out.update(verify_uv_quadratics())
    return out


def verify_r_normalisation() -> dict[str, bool]:
    """Displayed r's against H^3/R and H^4/(DF DG) of the symbolic cubic pair."""
    pair = cubic_pair(*cubics(A, B))
    h3r = RatFunc(pair.H ** 3, pair.R)
    h4d = RatFunc(pair.H ** 4, pair.DF * pair.DG)
    r1, r2 = r_ratfuncs()
    ab = {"u": A * B, "v": B ** 3}
    return {
        "R = 4a^3+27-18ab-a^2b^2+4b^3": pair.R == resultant_form(A, B),
        "DF = -R": pair.DF == -resultant_form(A, B),
        "DG = 16(b^3-27)": pair.DG == 16 * (B ** 3 - 27),
        "r1 = 729 H^3/R": r1.subs(ab) == h3r * R1_SCALE,
        "r2 = 1679616 H^4/(DF DG)": r2.subs(ab) == h4d * R2_SCALE,
        "D(FG) = DF DG R^2": discriminant(pair.F * pair.G, "X") == pair.DF * pair.DG * pair.R ** 2,
    }


def verify_subcovers() -> dict[str, bool]:
    """Substitution identities for all subcover maps with symbolic parameters."""
    a, b = RatFunc.var("a"), RatFunc.var("b")
    F, G = _cubics_rf(a, b)
    out = {
        "U1/V1": subcover1(a, b).identity_residue(F * G) == 0,
        "U2/V2 generic": subcover2_generic(a, b).identity_residue(F * G) == 0,
    }
    F0, G0 = _cubics_rf(a, 0)
    out["U2/V2 b=0"] = subcover2_b0(a).identity_residue(F0 * G0) == 0
    a3 = (b ** 3 + 9) / (b * 4)
    F3, G3 = _cubics_rf(a3, b)
    out["U2/V2 b^3-4ab+9=0"] = subcover2_third(b).identity_residue(F3 * G3) == 0
    return out


def verify_subcover_j() -> dict[str, bool]:
    """j of each target equals the closed-form j1, j2 at (u, v) = (ab, b^3)."""
    a, b = RatFunc.var("a"), RatFunc.var("b")
    j1, j2 = j_ratfuncs()
    ab = {"u": A * B, "v": B ** 3}
    out = {}
    for name, sc, j in (("j(E1) = j1", subcover1(a, b), j1),
                        ("j(E2) = j2", subcover2_generic(a, b), j2)):
        c4, disc = _c4_disc(*(RatFunc._lift(t) for t in sc.target))
        out[name] = c4.reduced() ** 3 / disc.reduced() == j.subs(ab)
    return out


def verify_all() -> dict[str, bool]:
    out = {}
    out.update(verify_subcovers())
    out.update(verify_subcover_j())
    out.update(verify_r_normalisation())
    out.update(verify_coherence())
    return out


# -- invariants along the family and membership ------------------------------------

def _to_uv(p: MPoly) -> RatFunc:
    """Rewrite a polynomial in a, b invariant under (a, b) -> (xi a, xi^2 b).

    a^i b^j with i = j mod 3 becomes u^i v^((j - i)/3); negative powers of v
    are collected into the denominator.
    """
    p = p.trim()
    ia = p.vars.index("a") if "a" in p.vars else None
    ib = p.vars.index("b") if "b" in p.vars else None
    mons = []
    for exps, c in p.terms.items():
        i = exps[ia] if ia is not None else 0
        j = exps[ib] if ib is not None else 0
        if (j - i) % 3:
            raise LocusError("invariant does not factor through (u, v)")
        mons.append((i, (j - i) // 3, c))
    shift = max([0] + [-e for _, e, _ in mons])
    num = MPoly.const(0)
    for i, e, c in mons:
        num = num + U ** i * V ** (e + shift) * c
    return RatFunc(num, V ** shift)


@lru_cache(maxsize=None)
def igusa_ratfuncs() -> tuple[RatFunc, ...]:
    """(J2, J4, J6, J10) of the family as rational functions of (u, v)."""
    x, z = MPoly.gens("x", "z")
    F = x ** 3 + A * x ** 2 * z + B * x * z ** 2 + z ** 3
    G = 4 * x ** 3 + B ** 2 * x ** 2 * z + 2 * B * x * z ** 2 + z ** 3
    Js = igusa_from_clebsch(*clebsch_forms(F * G))
    return tuple(_to_uv(J) for J in Js)


def l3_igusa(p: L3Point) -> IgusaInvariants:
    pt = {"u": p.u, "v": p.v}
    try:
        return IgusaInvariants(*(J.evaluate(pt) for J in igusa_ratfuncs()))
    except ZeroDivisionError:
        raise LocusError("v=0: invariants are not functions of (u, v) there") from None


def _absolute_at(p: L3Point) -> tuple[Fraction, ...] | None:
    J2, J4, J6, J10 = l3_igusa(p).as_tuple()
    if J2 == 0 or J10 == 0:
        return None
    return (144 * J4 / J2 ** 2, -1728 * (J2 * J4 - 3 * J6) / J2 ** 3, 486 * J10 / J2 ** 5)


def membership_polys(i1, i2, i3) -> tuple[MPoly, MPoly, MPoly]:
    """Numerators of 144 J4 - i1 J2^2, -1728(J2 J4 - 3 J6) - i2 J2^3, 486 J10 - i3 J2^5."""
    J2, J4, J6, J10 = igusa_ratfuncs()
    exprs = (J4 * 144 - J2 ** 2 * i1,
             (J2 * J4 - J6 * 3) * -1728 - J2 ** 3 * i2,
             J10 * 486 - J2 ** 5 * i3)
    return tuple(e.reduced().num for e in exprs)


def _univariate(p: MPoly, var: str) -> list[Fraction]:
    p = p.trim()
    if p.is_zero():
        return []
    if p.is_constant():
        return [Fraction(p.constant_value())]
    return [Fraction(c) for c in p.univariate_coeffs(var)]


def l3_membership(inv: AbsoluteInvariants) -> list[L3Point]:
    """All rational (u, v), v != 0, whose curve has absolute invariants ``inv``.

    v is found among rational roots of Res_u of two of the three equations,
    then u among common rational roots after back-substitution, and every
    candidate is confirmed by recomputing its invariants exactly.
    """
    target = inv.as_tuple()
    p1, p2, p3 = membership_polys(*target)
    res = MPoly.const(0)
    for f, g in ((p1, p2), (p1, p3), (p2, p3)):
        res = resultant(f, g, "u")
        if not res.is_zero():
            break
    if res.is_zero():
        raise LocusError("membership equations share a component")
    out = set()
    for v in set(rational_roots(res)) if not res.is_constant() else ():
        if v == 0 or v == 27:
            continue
        g = []
        for f in (p1, p2, p3):
            c = _univariate(f.subs({"v": v}), "u")
            g = ugcd(g, c) if g else c
        if len(g) < 2:
            continue
        for u in set(rational_roots(g)):
            if uv_form(u, v) == 0:
                continue
            p = L3Point(u, v)
            if _absolute_at(p) == target:
                out.add(p)
    return sorted(out, key=lambda p: (p.u, p.v))


# -- special loci -------------------------------------------------------------------

THETA_CRITICAL = (8 * V ** 3 + 27 * V ** 2 - 54 * U * V ** 2 - U ** 2 * V ** 2
                  + 108 * U ** 2 * V + 4 * U ** 3 * V - 108 * U ** 3)

ISO2_TEXT = (
    "324v^4u^2-5832v^4u+37908v^4-314928v^3u-81v^3u^4+255879v^3+30618v^3u^2"
    "-864v^3u^3-6377292uv^2+8503056v^2-324u^5v^2+2125764u^2v^2-215784u^3v^2"
    "+14580u^4v^2+16u^6v^2+78732u^3v+8748u^5v-864u^6v-157464u^4v+11664u^6"
)


@lru_cache(maxsize=None)
def iso2_poly() -> MPoly:
    return parse_poly(ISO2_TEXT, ["u", "v"])


def theta_critical(p: L3Point) -> bool:
    """Whether (u, v) lies on the curve where the Jacobian of (u, v) -> (i1, i2, i3) degenerates."""
    return THETA_CRITICAL.evaluate({"u": p.u, "v": p.v}) == 0


def isomorphic_subfields_locus(p: L3Point) -> bool:
    """Whether (u, v) lies on one of the two components of j1 = j2."""
    pt = {"u": p.u, "v": p.v}
    return THETA_CRITICAL.evaluate(pt) == 0 or iso2_poly().evaluate(pt) == 0


def j_difference_numerator() -> MPoly:
    j1, j2 = j_ratfuncs()
    return (j1 - j2).reduced().num


# -- degenerate subcovers ----------------------------------------------------------

J1, J2V = MPoly.gens("j1", "j2")


def degenerate_relation(j1, j2) -> bool:
    """729 j1 j2 - (j2 - 432)^3 = 0."""
    j1, j2 = _q(j1), _q(j2)
    return 729 * j1 * j2 - (j2 - 432) ** 3 == 0


@dataclass(frozen=True)
class DegenerateSolutions:
    diagonal_cubic: MPoly
    diagonal_roots: tuple  # Fractions and QuadraticAlg factors
    mixed_minpoly: MPoly
    mixed_count: int
    final_system_minpoly: MPoly
    final_system_count: int

    @property
    def total_count(self) -> int:
        return sum(1 if isinstance(r, Fraction) else 2 for r in self.diagonal_roots) + self.mixed_count


def degenerate_solutions() -> DegenerateSolutions:
    """Solve 729 j1 j2 = (j1 - 432)^3 = (j2 - 432)^3 over the algebraic closure.

    Solutions are counted as ordered pairs (j1, j2) with multiplicity one;
    both equations define j2 as a function of j1 away from j1 = 0.
    """
    e1 = 729 * J1 * J2V - (J1 - 432) ** 3
    e2 = 729 * J1 * J2V - (J2V - 432) ** 3
    j = MPoly.var("j")
    diag = (-(e1.subs({"j1": j, "j2": j}))).primitive()
    roots = []
    lin = []
    for r in sorted(set(rational_roots(diag))):
        roots.append(r)
        lin.append(j - r)
    rest = diag
    for f in lin:
        rest = rest.exquo(f)
    if rest.total_degree() == 2:
        c = _univariate(rest, "j")
        roots.append(QuadraticAlg(-c[1] / c[2], c[0] / c[2]))
    full = resultant(e1, e2, "j2").primitive()
    mixed = full
    for _ in range(full.degree("j1")):
        q = diag.subs({"j": J1})
        if q.divides(mixed):
            mixed = mixed.exquo(q)
        else:
            break
    mixed = _squarefree(mixed.primitive())
    quad = J1 ** 2 + J2V ** 2 - 1296 * (J1 + J2V) + J1 * J2V + 559872
    final = _squarefree(resultant(e1, quad, "j2").primitive())
    return DegenerateSolutions(diag, tuple(roots), mixed, mixed.degree("j1"),
                               final, final.degree("j1"))


def _squarefree(p: MPoly) -> MPoly:
    var = p.used_vars()[0]
    c = _univariate(p, var)
    from .algebra.elimination import udivmod, uderiv
    g = ugcd(c, uderiv(c))
    if len(g) > 1:
        c = udivmod(c, g)[0]
    return MPoly.from_univariate(c, var).primitive()


# -- e3 estimate -----------------------------------------------------------------------

def e3_estimate(inv: AbsoluteInvariants) -> int:
    """Heuristic count of degree-3 elliptic subfields from the rational fibre."""
    pts = l3_membership(inv)
    if not pts:
        return 0
    if any(theta_critical(p) for p in pts):
        return 1
    if len(pts) >= 3:
        return 4
    return 2
