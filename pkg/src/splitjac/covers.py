"""Ramification types of the covers of P^1 induced by genus-2 elliptic subcovers.

A degree-n subcover C -> E descends, through the two hyperelliptic
projections, to a cover P^1 -> P^1 of the same degree.  Its ramification is
one of a short list of templates depending on the parity of n.  A
partition such as ``(4, 2, 2)`` lists ramification indices above one branch
point; unramified points are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product


class CoverTypeError(ValueError):
    pass


@dataclass(frozen=True)
class RamificationType:
    degree: int
    branch_points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pts = []
        for part in self.branch_points:
            part = tuple(sorted((int(e) for e in part if e != 1), reverse=True))
            if any(e < 1 for e in part):
                raise CoverTypeError("ramification indices must be positive")
            if part:
                pts.append(part)
        object.__setattr__(self, "branch_points", tuple(pts))

    def fits(self) -> bool:
        """Every partition fits into the degree."""
        return all(sum(p) <= self.degree for p in self.branch_points)

    def __str__(self) -> str:
        return ",".join("[" + ".".join(_power_str(p)) + "]" for p in self.branch_points)


def _power_str(part: tuple[int, ...]) -> list[str]:
    out = []
    for e in sorted(set(part), reverse=True):
        k = part.count(e)
        out.append(f"{e}^{k}" if k > 1 else f"{e}")
    return out


@dataclass(frozen=True)
class CoverCase:
    label: str


# A slot is a list of (index, exponent) pairs; the exponent is a function of n.
# Odd degree.


def _e(a, b):
    """Exponent (a*n + b)/2 as a callable."""
    return lambda n: Fraction(a * n + b, 2)


def _slot(*pairs):
    return tuple(pairs)


_ODD = {
    "I": [_slot((2, _e(1, -1))), _slot((2, _e(1, -1))), _slot((2, _e(1, -1))),
          _slot((2, _e(1, -3))), _slot((2, lambda n: 1))],
    "II.i": [_slot((2, _e(1, -1))), _slot((2, _e(1, -1))), _slot((2, _e(1, -1))),
             _slot((4, lambda n: 1), (2, _e(1, -7)))],
    "II.ii": [_slot((2, _e(1, -1)))] * 4,
    "II.iii": [_slot((2, _e(1, -1))), _slot((2, _e(1, -1))),
               _slot((4, lambda n: 1), (2, _e(1, -5))), _slot((2, _e(1, -3)))],
    "III.i": [_slot((2, _e(1, -1))), _slot((2, _e(1, -1))), _slot((2, _e(1, -1))),
              _slot((3, lambda n: 1), (2, _e(1, -5)))],
    "III.ii": [_slot((2, _e(1, -1))), _slot((2, _e(1, -1))),
               _slot((3, lambda n: 1), (2, _e(1, -3))), _slot((2, _e(1, -3)))],
}


def _p(k):
    """(2)^((n + k)/2)."""
    return _slot((2, _e(1, k)))


def _with(e, k):
    """(e)(2)^((n + k)/2)."""
    return _slot((e, lambda n: 1), (2, _e(1, k)))


_ONE = _slot((2, lambda n: 1))

_EVEN = {
    "I": [_p(-2), _p(-2), _p(-2), _p(0), _ONE],
    "II": [_p(-4), _p(-2), _p(0), _p(0), _ONE],
    "III": [_p(-6), _p(0), _p(0), _p(0), _ONE],
    "I.1": [_p(0), _p(-2), _p(-2), _p(0)],
    "I.2": [_p(-2), _p(-2), _with(4, -6), _p(0)],
    "I.3": [_p(-2), _p(-2), _p(-2), _with(4, -4)],
    "I.4": [_with(3, -4), _p(-2), _p(-2), _p(0)],
    "II.1": [_p(-2), _p(-2), _p(0), _p(0)],
    "II.2": [_p(-4), _p(0), _p(0), _p(0)],
    "II.3": [_with(4, -8), _p(-2), _p(0), _p(0)],
    "II.4": [_p(-4), _with(4, -6), _p(0), _p(0)],
    "II.5": [_p(-4), _p(-2), _p(-4), _p(0)],
    "II.6": [_with(3, -6), _p(-2), _with(4, 0), _p(0)],
    "II.7": [_p(-4), _with(3, -4), _p(0), _p(0)],
    "III.1": [_p(-4), _p(0), _p(0), _with(4, 0)],
    "III.2": [_p(-6), _with(4, -4), _p(0), _p(0)],
    "III.3": [_p(0), _p(0), _p(0), _with(4, -10)],
    "III.4": [_with(3, -8), _p(0), _p(0), _p(0)],
}


@dataclass(frozen=True)
class TemplateNote:
    """Why a template was not emitted for a given degree."""

    label: str
    degree: int
    reason: str


def _instantiate(n: int, slots) -> RamificationType | None:
    parts = []
    for slot in slots:
        part = []
        for e, f in slot:
            k = f(n)
            if k < 0 or k.denominator != 1:
                return None
            part.extend([e] * int(k))
        parts.append(tuple(part))
    return RamificationType(n, tuple(parts))


def _emit(n: int, table: dict, notes: list | None):
    out = []
    for label, slots in table.items():
        t = _instantiate(n, slots)
        if t is None:
            if notes is not None:
                notes.append(TemplateNote(label, n, "negative exponent"))
            continue
        if not t.fits() or not rh_check(t):
            if notes is not None:
                notes.append(TemplateNote(label, n, "fails Riemann-Hurwitz"))
            continue
        out.append((CoverCase(label), t))
    return sorted(out, key=lambda ct: (ct[0].label, ct[1].branch_points))


def ram_types_odd(n: int, notes: list | None = None) -> list[tuple[CoverCase, RamificationType]]:
    if n < 3 or n % 2 == 0:
        raise CoverTypeError("odd degree n >= 3 expected")
    return _emit(n, _ODD, notes)


def ram_types_even(n: int, notes: list | None = None) -> list[tuple[CoverCase, RamificationType]]:
    if n < 4 or n % 2:
        raise CoverTypeError("even degree n >= 4 expected")
    return _emit(n, _EVEN, notes)


def ram_types(n: int, notes: list | None = None):
    return ram_types_odd(n, notes) if n % 2 else ram_types_even(n, notes)


def rh_check(t: RamificationType) -> bool:
    """Riemann-Hurwitz for a degree-n cover of P^1 by P^1."""
    return sum(e - 1 for part in t.branch_points for e in part) == 2 * t.degree - 2


# -- Weierstrass distribution ----------------------------------------------------

def _fiber_options(part: tuple[int, ...], n: int) -> set[tuple[int, int]]:
    """Possible (W count, contribution to psi's ramification) above one 2-torsion image.

    A point of index m is either the image of a Weierstrass point (one point
    of C above it, psi-index m) or, for even m only, of a pair of points
    swapped by the involution (psi-index m/2 each).
    """
    ones = n - sum(part)
    opts = {(ones, 0)}
    for m in part:
        nxt = set()
        for w, r in opts:
            nxt.add((w + 1, r + m - 1))
            if m % 2 == 0:
                nxt.add((w, r + 2 * (m // 2 - 1)))
        opts = nxt
    return opts


def weierstrass_parity_check(t: RamificationType, parity: str | None = None) -> bool:
    """Whether the six Weierstrass points can be placed consistently.

    Four fibers lie above the images of the 2-torsion points (stored or
    fully unramified); each carries an odd (odd n) or even (even n) number
    of Weierstrass points, six in total.  The remaining branch points lie
    above no 2-torsion image and carry none.  The genus-2 to genus-1 cover
    must have total ramification exactly 2.
    """
    n = t.degree
    if parity is None:
        parity = "odd" if n % 2 else "even"
    want = 1 if parity == "odd" else 0
    slots = t.branch_points
    for k in range(min(4, len(slots)) + 1):
        for chosen in combinations(range(len(slots)), k):
            rest = [slots[i] for i in range(len(slots)) if i not in chosen]
            base = sum(2 * (e - 1) for part in rest for e in part)
            if base > 2:
                continue
            fibers = [slots[i] for i in chosen] + [()] * (4 - k)
            options = [[o for o in _fiber_options(f, n) if o[0] % 2 == want] for f in fibers]
            for combo in product(*options):
                if sum(w for w, _ in combo) == 6 and base + sum(r for _, r in combo) == 2:
                    return True
    return False
