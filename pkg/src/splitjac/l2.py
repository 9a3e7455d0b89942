"""Genus-2 curves with a degree-2 elliptic subcover.

Every such curve has a model ``Y^2 = X^6 - s1 X^4 + s2 X^2 - 1``; the pair
``u = s1 s2``, ``v = s1^3 + s2^3`` is invariant under the residual symmetries
and parameterises the locus.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .algebra import (MPoly, QuadraticAlg, RatFunc, as_rational, rational_roots,
                      resultant, substitute_poly, symmetric_reduce)
from .algebra.elimination import ugcd
from .algebra.parse import parse_poly
from .algebra import textformat
from .invariants import AbsoluteInvariants, IgusaInvariants, Sextic
from .modular import modular_polynomial

U, V = MPoly.gens("u", "v")


class LocusError(ValueError):
    """Raised for degenerate parameters (singular curves, poles)."""


def _q(x) -> Fraction:
    return Fraction(as_rational(x))


def l2_nondegeneracy(u, v) -> Fraction:
    return 27 - 18 * u - u * u + 4 * v


@dataclass(frozen=True)
class L2NormalForm:
    s1: Fraction
    s2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s1", _q(self.s1))
        object.__setattr__(self, "s2", _q(self.s2))
        u, v = self.s1 * self.s2, self.s1 ** 3 + self.s2 ** 3
        if l2_nondegeneracy(u, v) == 0:
            raise LocusError("singular curve")


@dataclass(frozen=True)
class L2Point:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _q(self.u))
        object.__setattr__(self, "v", _q(self.v))
        if l2_nondegeneracy(self.u, self.v) == 0:
            raise LocusError("singular curve: 27 - 18u - u^2 + 4v = 0")

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.u, self.v)


class GroupLabel(str, Enum):
    V4 = "V4"
    D8 = "D8"
    D12 = "D12"
    Z3_D8 = "Z3:D8"
    GL2_3 = "GL2(3)"
    Z10 = "Z10"
    Z2 = "Z2"


def l2_curve(nf: L2NormalForm) -> Sextic:
    return Sextic((1, 0, -nf.s1, 0, nf.s2, 0, -1))


def l2_uv(nf: L2NormalForm) -> L2Point:
    return L2Point(nf.s1 * nf.s2, nf.s1 ** 3 + nf.s2 ** 3)


# -- invariants along the family ---------------------------------------------

def igusa_polys() -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """(J2, J4, J6, J10) of the normal form as polynomials in u, v."""
    J2 = 240 + U * 16
    J4 = V * 48 + U ** 2 * 4 + 1620 - U * 504
    J6 = -U * 20664 + V * 96 - U ** 2 * 424 + U ** 3 * 24 + U * V * 160 + 119880
    J10 = (27 - U * 18 - U ** 2 + V * 4) ** 2 * 64
    return J2, J4, J6, J10


def l2_igusa(p: L2Point) -> IgusaInvariants:
    pt = {"u": p.u, "v": p.v}
    return IgusaInvariants(*(Fraction(J.evaluate(pt)) for J in igusa_polys()))


def absolute_ratfuncs() -> tuple[RatFunc, RatFunc, RatFunc]:
    """i1, i2, i3 as rational functions of (u, v)."""
    J2, J4, J6, J10 = igusa_polys()
    return (RatFunc(J4 * 144, J2 ** 2),
            RatFunc((J2 * J4 - J6 * 3) * -1728, J2 ** 3),
            RatFunc(J10 * 486, J2 ** 5))


# -- membership ----------------------------------------------------------------

def _membership_polys(i1, i2, i3) -> tuple[MPoly, MPoly, MPoly]:
    """Eliminate v using the i1 relation (J4 is linear in v).

    Returns (v(u), P2(u), P3(u)); common roots u of P2 and P3 give candidate
    points (u, v(u)).  Arguments may be numbers or polynomials.
    """
    J2 = 240 + U * 16
    vu = (J2 ** 2 * i1 * Fraction(1, 144) - U ** 2 * 4 - 1620 + U * 504) * Fraction(1, 48)
    sub = {"v": vu}
    J2_, J4_, J6_, J10_ = (J.subs(sub) for J in igusa_polys())
    P2 = (J2_ * J4_ - J6_ * 3) * -1728 - J2_ ** 3 * i2
    P3 = J10_ * 486 - J2_ ** 5 * i3
    return vu, P2, P3


@dataclass(frozen=True)
class MembershipResult:
    points: tuple[L2Point, ...]
    status: str  # "rational parameters", "irrational parameters" or "off locus"
    locus_value: Fraction | None = None

    @property
    def on_locus(self) -> bool:
        return self.status != "off locus"


def l2_membership(inv: AbsoluteInvariants) -> list[L2Point]:
    """All rational (u, v) whose absolute invariants equal ``inv``."""
    i1, i2, i3 = inv.as_tuple()
    vu, P2, P3 = _membership_polys(i1, i2, i3)
    c2 = _ucoeffs(P2)
    c3 = _ucoeffs(P3)
    if c2 and c3:
        g = ugcd(c2, c3)
    else:
        g = c2 or c3
    if not g:
        raise LocusError("membership equations vanish identically")
    out = []
    for u in sorted(set(rational_roots(g))):
        v = Fraction(vu.evaluate({"u": u}))
        if l2_nondegeneracy(u, v) == 0 or u == -15:
            continue
        p = L2Point(u, v)
        if _absolute_at(p) == (i1, i2, i3):
            out.append(p)
    return out


def _ucoeffs(p: MPoly) -> list[Fraction]:
    if p.is_zero():
        return []
    if p.is_constant():
        return [p.constant_value()]
    return p.univariate_coeffs("u")


def _absolute_at(p: L2Point) -> tuple[Fraction, ...]:
    J2, J4, J6, J10 = l2_igusa(p).as_tuple()
    return (144 * J4 / J2 ** 2, -1728 * (J2 * J4 - 3 * J6) / J2 ** 3, 486 * J10 / J2 ** 5)


def l2_check(inv: AbsoluteInvariants) -> MembershipResult:
    """Membership together with the verdict of the implicit locus equation."""
    pts = tuple(l2_membership(inv))
    value = l2_locus_polynomial().evaluate(dict(zip(("i1", "i2", "i3"), inv.as_tuple())))
    if pts:
        status = "rational parameters"
    elif value == 0:
        status = "irrational parameters"
    else:
        status = "off locus"
    return MembershipResult(pts, status, Fraction(value))


# -- the implicit locus equation ---------------------------------------------

DISPLAYED_L2_EQUATION = (
    "-27i_1^6+9i_1^7+161243136i_3i_1^3-12441600i_3i_2^3+2i_2^5+107495424i_3i_1^2i_2+54i_1^3i_2^2"
    "-52254720i_3i_1i_2^2-47278080i_3i_1^3i_2-8294400i_3i_1^2i_2^2-9459597312000i_3^2i_1^2-18i_1^4i_2^2"
    "-240734712102912i_3^2+111451255603200i_3^2i_1+20639121408000i_3^2i_2-55240704i_3i_1^4"
    "+2i_1^6i_2-4i_1^3i_2^3+331776i_3i_1^5-27i_2^4-2866544640000i_3^2i_1i_2+161243136i_3i_2^2+9i_1i_2^4"
    "-264180754022400000i_3^3"
)


def displayed_l2_equation() -> MPoly:
    return parse_poly(DISPLAYED_L2_EQUATION, ["i_1", "i_2", "i_3"],
                      {"i_1": "i1", "i_2": "i2", "i_3": "i3"})


def derive_l2_locus() -> MPoly:
    """Implicit equation of the locus in (i1, i2, i3), by elimination.

    v is eliminated linearly through i1, then u by a resultant of the i2 and
    i3 relations.  The result is made primitive with positive leading term.
    """
    i1, i2, i3 = MPoly.gens("i1", "i2", "i3")
    _, P2, P3 = _membership_polys(i1, i2, i3)
    R = resultant(P2, P3, "u")
    return _strip_monomial_factors(R).primitive()


def _strip_monomial_factors(p: MPoly) -> MPoly:
    p = p.trim()
    if not p.terms:
        return p
    mins = [min(e[k] for e in p.terms) for k in range(len(p.vars))]
    if any(mins):
        p = MPoly._raw({tuple(a - b for a, b in zip(e, mins)): c for e, c in p.terms.items()},
                       p.vars)
    return p


def artifact_dir() -> Path:
    return Path(os.environ.get("SPLITJAC_WORKDIR", Path.cwd() / "artifacts"))


@lru_cache(maxsize=None)
def l2_locus_polynomial() -> MPoly:
    """The derived locus equation, cached in memory (and on disk when present)."""
    path = artifact_dir() / "l2_locus_v1.poly"
    if path.exists():
        return textformat.read(path)
    return derive_l2_locus()


def write_l2_locus_artifact(path: Path | None = None) -> Path:
    path = path or artifact_dir() / "l2_locus_v1.poly"
    return textformat.write(derive_l2_locus(), path)


def locus_substitution_vanishes(locus: MPoly) -> bool:
    """Whether ``locus(i1(u,v), i2(u,v), i3(u,v))`` is identically zero."""
    a1, a2, a3 = absolute_ratfuncs()
    return substitute_poly(locus, {"i1": a1, "i2": a2, "i3": a3}).num.is_zero()


# -- automorphism groups -------------------------------------------------------

D6_FACTOR = 4 * V - U ** 2 + 110 * U - 1125


def l2_group(p: L2Point) -> GroupLabel:
    """Automorphism group from (u, v), testing the special loci in order.

    The u-exclusions usually quoted with the D12 and D8 conditions refer to
    points that are either singular or already caught by an earlier case.
    Taken literally on u alone they would split fibers such as
    {(1, 2), (49, 686)} of one curve between V4 and D8, so they are applied
    only through the case order.
    """
    u, v = p.u, p.v
    if (u, v) in ((0, 0), (225, 6750)):
        return GroupLabel.Z3_D8
    if (u, v) == (25, -250):
        return GroupLabel.GL2_3
    if 4 * v - u * u + 110 * u - 1125 == 0:
        return GroupLabel.D12
    if v * v == 4 * u ** 3:
        return GroupLabel.D8
    return GroupLabel.V4


# -- elliptic subcovers --------------------------------------------------------

def j_eq_sum_product() -> tuple[RatFunc, RatFunc]:
    """Sum and product of the two subcover j-invariants as rational functions.

    The product carries the cube of u^2 + 9u - 3v; this is what the two
    cubic quotients of the normal form give directly, and it is the form for
    which the diagonal v = 9(u - 3) has the double root 256(9 - u).
    """
    den = U ** 2 + 18 * U - 4 * V - 27
    s = RatFunc((2 * U ** 3 - 54 * U ** 2 + 9 * U * V - V ** 2 + 27 * V) * -256, den)
    p = RatFunc((U ** 2 + 9 * U - 3 * V) ** 3 * 65536, den ** 2)
    return s, p


def l2_j_pair(p: L2Point) -> QuadraticAlg:
    s, q = j_eq_sum_product()
    pt = {"u": p.u, "v": p.v}
    return QuadraticAlg(s.evaluate(pt), q.evaluate(pt))


ISOMORPHIC_LOCUS = (V ** 2 - 4 * U ** 3) * (V - 9 * U + 27)


def l2_isomorphic(p: L2Point) -> bool:
    return ISOMORPHIC_LOCUS.evaluate({"u": p.u, "v": p.v}) == 0


# -- isogenies -----------------------------------------------------------------

F1_TEXT = ("-16v^3-81216v^2-892296v-2460375+3312uv^2+707616vu+3805380u"
           "+18360vu^2-1296162u^2-1744u^3v-140076u^3+801u^4+256u^5")
F2_TEXT = ("4096u^7+256016u^6-45824u^5v+4736016u^5-2126736vu^4+23158143u^4"
           "-25451712u^3v-119745540u^3+5291136v^2u^2-48166488vu^2-2390500350u^2"
           "-179712uv^3+35831808uv^2+1113270480vu+9300217500u-4036608v^3"
           "-1791153000v-8303765625-1024v^4+163840u^3v^2-122250384v^2+256u^2v^3")
G1_TEXT = ("-27008u^6+256u^7-2432u^5v+v^4+7296u^3v^2-6692v^3u-1755067500u"
           "+2419308v^3-34553439u^4+127753092vu^2+16274844vu^3-1720730u^2v^2"
           "-1941120u^5+381631500v+1018668150u^2-116158860u^3+52621974v^2"
           "+387712u^4v-483963660vu-33416676v^2u+922640625")
G2_TEXT = ("291350448u^6-v^4u^2-998848u^6v-3456u^7v+4749840u^4v^2+17032u^5v^2"
           "+4v^5+80368u^8+256u^9+6848224u^7-10535040v^3u^2-35872v^3u^3+26478v^4u"
           "-77908736u^5v+9516699v^4+307234984u^3v^2-419583744v^3u-826436736v^3"
           "+27502903296u^4+28808773632vu^2-23429955456vu^3+5455334016u^2v^2"
           "-41278242816v+82556485632u^2-108737593344u^3-12123095040v^2"
           "+41278242816vu+3503554560v^2u+5341019904u^5-2454612480u^4v")


@dataclass(frozen=True)
class IsogenyLocusPolys:
    f1: MPoly
    f2: MPoly
    g1: MPoly
    g2: MPoly
    d6_factor: MPoly


@lru_cache(maxsize=None)
def isogeny_polys() -> IsogenyLocusPolys:
    return IsogenyLocusPolys(
        parse_poly(F1_TEXT, "uv"), parse_poly(F2_TEXT, "uv"),
        parse_poly(G1_TEXT, "uv"), parse_poly(G2_TEXT, "uv"), D6_FACTOR)


@dataclass(frozen=True)
class IsogenyVerdict:
    degree: int
    isogenous: bool
    factors: tuple[str, ...]


def l2_isogeny(p: L2Point, degree: int) -> IsogenyVerdict:
    polys = isogeny_polys()
    if degree == 2:
        names = ("f1", "f2")
    elif degree == 3:
        names = ("d6_factor", "g1", "g2")
    else:
        raise ValueError("only degrees 2 and 3 are supported")
    pt = {"u": p.u, "v": p.v}
    hits = tuple(n for n in names if getattr(polys, n).evaluate(pt) == 0)
    return IsogenyVerdict(degree, bool(hits), hits)


def modular_numerator(level: int) -> MPoly:
    """Numerator of Phi_level(j1, j2) as a polynomial in (u, v).

    Phi is rewritten in e1 = j1 + j2, e2 = j1 j2 and the sum and product of
    the subcover j-invariants are substituted over their common denominator.
    """
    q = symmetric_reduce(modular_polynomial(level), "x", "y", "e1", "e2")
    s, p = j_eq_sum_product()
    return substitute_poly(q, {"e1": s, "e2": p}).num


@dataclass
class FactorCheck:
    level: int
    divisible: dict[str, bool] = field(default_factory=dict)
    cofactor_ok: bool = False
    cofactor: MPoly | None = None

    @property
    def ok(self) -> bool:
        return all(self.divisible.values()) and self.cofactor_ok

    def failing(self) -> list[str]:
        out = [k for k, ok in self.divisible.items() if not ok]
        if not self.cofactor_ok:
            out.append("cofactor")
        return out


def verify_isogeny_locus(level: int) -> FactorCheck:
    """Check the displayed factors divide the Phi_level numerator exactly.

    What remains after removing them must be a constant times a power of the
    degenerate-locus polynomial u^2 + 18u - 4v - 27.
    """
    polys = isogeny_polys()
    names = ("f1", "f2") if level == 2 else ("d6_factor", "g1", "g2")
    num = modular_numerator(level)
    report = FactorCheck(level)
    for n in names:
        f = getattr(polys, n)
        q, r = num.divmod(f)
        report.divisible[n] = r.is_zero()
        if r.is_zero():
            num = q
    deg = U ** 2 + 18 * U - 4 * V - 27
    while not num.is_constant():
        q, r = num.divmod(deg)
        if not r.is_zero():
            break
        num = q
    report.cofactor = num
    report.cofactor_ok = num.is_constant() and not num.is_zero()
    return report


def verify_isogeny_loci() -> dict[int, FactorCheck]:
    return {n: verify_isogeny_locus(n) for n in (2, 3)}


# -- the D8 sublocus ------------------------------------------------------------

def d4_isogeny_pair(s) -> tuple[Fraction, Fraction]:
    """Subcover j-invariants (j, j') on the sublocus s1 = s2 = s.

    ``j`` is the double root of the subcover quadratic at (u, v) = (s^2, 2 s^3)
    and ``j'`` belongs to the subcovers fixed by X -> -1/X.  The two are
    2-isogenous.  At s = 3 the curve degenerates; the common limit values are
    returned there.
    """
    s = _q(s)
    if s == -1:
        raise LocusError("pole at s = -1")
    j = 256 * s ** 3 / (s + 1)
    jprime = -16 * (s - 15) ** 3 / (s + 1) ** 2
    return j, jprime
