"""Branch-cycle tuples, Nielsen classes and braid orbits.

Permutations act on ``0..n-1`` from the right: ``p * q`` applies ``p`` first.
A tuple ``(s1, ..., sr)`` is a tuple of branch cycles when ``s1 * ... * sr``
is the identity and the generated group is transitive.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

MAX_DEGREE = 7


class HurwitzError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise HurwitzError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from 1-based cycles, e.g. ``[(1, 2), (3, 4)]``."""
        img = list(range(n))
        for c in cycles:
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm(tuple(o[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(tuple(inv))

    def conjugate(self, g: "Perm") -> "Perm":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        n = len(self.images)
        seen = [False] * n
        out = []
        for i in range(n):
            if not seen[i]:
                c = []
                j = i
                while not seen[j]:
                    seen[j] = True
                    c.append(j)
                    j = self.images[j]
                out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles() if len(c) > 1), reverse=True))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cs = [c for c in self.cycles() if len(c) > 1]
        if not cs:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


def _product(perms: Sequence[Perm]) -> Perm:
    out = Perm.identity(perms[0].degree)
    for p in perms:
        out = out * p
    return out


def is_transitive(perms: Sequence[Perm]) -> bool:
    n = perms[0].degree
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p.images[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


@dataclass(frozen=True)
class PermTuple:
    entries: tuple[Perm, ...]

    def __post_init__(self):
        es = tuple(self.entries)
        if not es:
            raise HurwitzError("empty tuple")
        if len({p.degree for p in es}) != 1:
            raise HurwitzError("entries of different degree")
        object.__setattr__(self, "entries", es)

    @property
    def degree(self) -> int:
        return self.entries[0].degree

    def product_one(self) -> bool:
        return _product(self.entries).is_identity()

    def transitive(self) -> bool:
        return is_transitive(self.entries)

    def cycle_types(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.cycle_type() for p in self.entries)

    def conjugate(self, g: Perm) -> "PermTuple":
        return PermTuple(tuple(p.conjugate(g) for p in self.entries))

    def braid(self, i: int, inverse: bool = False) -> "PermTuple":
        """Q_i: (s_i, s_i+1) -> (s_i s_i+1 s_i^-1, s_i), or its inverse (0-based i)."""
        e = list(self.entries)
        a, b = e[i], e[i + 1]
        if inverse:
            e[i], e[i + 1] = b, b.inverse() * a * b
        else:
            e[i], e[i + 1] = a * b * a.inverse(), a
        return PermTuple(tuple(e))

    def key(self) -> tuple:
        return tuple(p.images for p in self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(str(p) for p in self.entries) + "]"


# -- canonical forms ------------------------------------------------------------

def _all_perms(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(n))]


def canonical(t: PermTuple, conjugators: Sequence[Perm] | None = None) -> PermTuple:
    """Lexicographically least simultaneous conjugate."""
    gs = conjugators if conjugators is not None else _all_perms(t.degree)
    return min((t.conjugate(g) for g in gs), key=PermTuple.key)


def parse_types(text: str) -> tuple[tuple[int, ...], ...]:
    """``"2.2,2.2,4,2"`` -> ((2, 2), (2, 2), (4,), (2,))."""
    out = []
    for slot in text.split(","):
        slot = slot.strip()
        if not slot:
            raise HurwitzError("empty slot in cycle-type list")
        try:
            part = tuple(sorted((int(x) for x in slot.split(".")), reverse=True))
        except ValueError:
            raise HurwitzError(f"bad cycle type {slot!r}") from None
        out.append(tuple(e for e in part if e > 1))
    return tuple(out)


def conjugacy_class(n: int, ctype: tuple[int, ...]) -> list[Perm]:
    ctype = tuple(sorted((e for e in ctype if e > 1), reverse=True))
    return [p for p in _all_perms(n) if p.cycle_type() == ctype]


@dataclass
class NielsenClass:
    degree: int
    types: tuple[tuple[int, ...], ...]
    representatives: list[PermTuple] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.representatives)


def nielsen_enumerate(n: int, types: Sequence[Sequence[int]]) -> NielsenClass:
    """Product-one transitive tuples with slotwise cycle types, up to conjugation.

    The first entry is pinned to one element of its class, so only its
    centraliser is left to act; representatives are least under all of S_n.
    """
    if n > MAX_DEGREE:
        raise HurwitzError(f"degree {n} exceeds the exhaustive bound {MAX_DEGREE}; "
                           "use orbit closure from a known tuple instead")
    types = tuple(tuple(sorted((e for e in t if e > 1), reverse=True)) for t in types)
    if not types:
        raise HurwitzError("no cycle types given")
    if any(sum(t) > n for t in types):
        return NielsenClass(n, types, [])
    classes = {t: conjugacy_class(n, t) for t in set(types)}
    first = classes[types[0]][0]
    centraliser = [g for g in _all_perms(n) if first.conjugate(g) == first]
    everything = _all_perms(n)
    found: dict[tuple, PermTuple] = {}
    last_type = types[-1]

    def extend(prefix: list[Perm], prod: Perm):
        k = len(prefix)
        if k == len(types) - 1:
            last = prod.inverse()
            if last.cycle_type() != last_type:
                return
            t = PermTuple(tuple(prefix) + (last,))
            if not t.transitive():
                return
            c = canonical(t, centraliser)
            if c.key() not in found:
                found[c.key()] = c
            return
        for p in classes[types[k]]:
            prefix.append(p)
            extend(prefix, prod * p)
            prefix.pop()

    if len(types) == 1:
        t = PermTuple((first,))
        reps = [t] if first.is_identity() and n == 1 else []
    else:
        extend([first], first)
        reps = [canonical(t, everything) for t in found.values()]
    reps = sorted({r.key(): r for r in reps}.values(), key=PermTuple.key)
    return NielsenClass(n, types, reps)


def _slot_orderings(types):
    return sorted(set(permutations(types)))


def full_nielsen_class(n: int, types) -> NielsenClass:
    """Nielsen class with the cycle types in every slot order (closed under braids)."""
    types = tuple(tuple(t) for t in types)
    reps = {}
    for order in _slot_orderings(types):
        for r in nielsen_enumerate(n, order).representatives:
            reps[r.key()] = r
    return NielsenClass(n, types, sorted(reps.values(), key=PermTuple.key))


@dataclass
class BraidOrbit:
    members: list[PermTuple]

    @property
    def size(self) -> int:
        return len(self.members)


def braid_orbits(nc: NielsenClass, progress: bool = False) -> list[BraidOrbit]:
    """Partition a braid-closed class into orbits of the Hurwitz braid group.

    Pass the output of :func:`full_nielsen_class`; a fixed-order class is
    closed only when all slots share one cycle type.
    """
    if not nc.representatives:
        raise HurwitzError("empty Nielsen class")
    everything = _all_perms(nc.degree)
    index = {r.key(): r for r in nc.representatives}
    left = set(index)
    out = []
    while left:
        start = min(left)
        orbit = {start}
        stack = [index[start]]
        while stack:
            t = stack.pop()
            for i in range(len(t.entries) - 1):
                for inv in (False, True):
                    c = canonical(t.braid(i, inv), everything)
                    k = c.key()
                    if k not in orbit:
                        if k not in index:
                            raise HurwitzError("class is not closed under braid moves")
                        orbit.add(k)
                        stack.append(c)
        left -= orbit
        out.append(BraidOrbit([index[k] for k in sorted(orbit)]))
        if progress:
            print(f"orbit of size {len(orbit)}, {len(left)} classes left", file=sys.stderr)
    return sorted(out, key=lambda o: -o.size)


# -- group orders ---------------------------------------------------------------------

def _sift(g: Perm, base: list[int], transversals: list[dict], start: int = 0) -> tuple[Perm, int]:
    for i in range(start, len(base)):
        x = g.images[base[i]]
        if x not in transversals[i]:
            return g, i
        g = g * transversals[i][x].inverse()
    return g, len(base)


def _orbit_transversal(point: int, gens: Sequence[Perm], n: int) -> dict:
    trans = {point: Perm.identity(n)}
    queue = [point]
    for x in queue:
        for s in gens:
            y = s.images[x]
            if y not in trans:
                trans[y] = trans[x] * s
                queue.append(y)
    return trans


def _moved_point(g: Perm) -> int:
    return next(i for i, x in enumerate(g.images) if x != i)


def schreier_sims(gens: Sequence[Perm]) -> tuple[list[int], list[dict]]:
    """Base and transversals of a stabiliser chain (deterministic Schreier-Sims)."""
    n = gens[0].degree
    strong = [g for g in gens if not g.is_identity()]
    base: list[int] = []
    for g in strong:
        if all(g.images[b] == b for b in base):
            base.append(_moved_point(g))

    def level_gens(i: int) -> list[Perm]:
        return [g for g in strong if all(g.images[b] == b for b in base[:i])]

    transversals = [_orbit_transversal(base[i], level_gens(i), n) for i in range(len(base))]
    i = len(base) - 1
    while i >= 0:
        restart = False
        trans = transversals[i]
        for u in list(trans.values()):
            for s in level_gens(i):
                us = u * s
                sch = us * trans[us.images[base[i]]].inverse()
                h, j = _sift(sch, base, transversals, i + 1)
                if j == len(base) and h.is_identity():
                    continue
                if j == len(base):
                    base.append(_moved_point(h))
                    transversals.append({})
                strong.append(h)
                for lvl in range(i + 1, j + 1):
                    transversals[lvl] = _orbit_transversal(base[lvl], level_gens(lvl), n)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return base, transversals


def group_elements(gens: Sequence[Perm]) -> set[tuple[int, ...]]:
    """All elements by closure; only sensible for small degree."""
    n = gens[0].degree
    seen = {Perm.identity(n).images}
    queue = [Perm.identity(n)]
    for g in queue:
        for s in gens:
            h = g * s
            if h.images not in seen:
                seen.add(h.images)
                queue.append(h)
    return seen


def group_order(gens: Sequence[Perm]) -> int:
    gens = list(gens)
    if not gens or all(g.is_identity() for g in gens):
        return 1
    _, transversals = schreier_sims(gens)
    order = 1
    for t in transversals:
        order *= len(t)
    return order


@dataclass(frozen=True)
class GroupInfo:
    order: int
    label: str
    transitive: bool


def group_info(t: PermTuple) -> GroupInfo:
    n = t.degree
    order = group_order(t.entries)
    trans = t.transitive()
    even = all(p.sign() == 1 for p in t.entries)
    if order == factorial(n) and n > 1:
        label = f"S_{n}"
    elif order == factorial(n) // 2 and even and n > 2:
        label = f"A_{n}"
    else:
        label = f"other({order})"
    return GroupInfo(order, label, trans)


# -- the table audit --------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    degree: int
    case: str
    types: tuple[tuple[int, ...], ...]
    count: int
    group: str


def _t(text):
    return parse_types(text)


TABULATED = (
    TableRow(3, "generic", _t("2.2,2.2,2.2,2,2"), 40, "S_3"),
    TableRow(3, "1", _t("2.2,2.2,4,2"), 8, "S_5"),
    TableRow(3, "2", _t("2.2,2.2,3.2,2"), 6, "S_5"),
    TableRow(3, "3", _t("2.2,2.2,2.2,3"), 9, "A_5"),
    TableRow(5, "generic", _t("2.2,2.2,2.2,2,2"), 40, "S_5"),
    TableRow(5, "1", _t("2.2,2.2,4,2"), 8, "S_5"),
    TableRow(5, "2", _t("2.2,2.2,3.2,2"), 6, "S_5"),
    TableRow(5, "3", _t("2.2,2.2,2.2,3"), 9, "A_5"),
    TableRow(7, "generic", _t("2.2,2.2,2.2,2,2"), 168, "S_7"),
)


def _rh_sum(types) -> int:
    return sum(e - 1 for t in types for e in t)


def count_report(n: int, types, orbits: bool = False, progress: bool = False) -> dict:
    """Class count, braid orbits and monodromy groups for one type list."""
    types = tuple(tuple(sorted((e for e in t if e > 1), reverse=True)) for t in types)
    nc = nielsen_enumerate(n, types)
    groups = sorted({group_info(r).label for r in nc.representatives})
    report = {
        "degree": n,
        "types": [list(t) for t in types],
        "class_count": nc.count,
        "groups": groups,
        "orbits": [],
        "discrepancies": [],
    }
    if orbits and nc.count:
        full = full_nielsen_class(n, types)
        keys = {r.key() for r in nc.representatives}
        for o in braid_orbits(full, progress=progress):
            report["orbits"].append({
                "size": o.size,
                "in_slot_order": sum(1 for m in o.members if m.key() in keys),
            })
        report["full_class_count"] = full.count
    return report


def audit_table(progress: bool = False, max_degree: int = 5) -> list[dict]:
    """Compare each table row with an exhaustive count.

    Rows whose types cannot occur in degree n (a part exceeds n, or the
    Riemann-Hurwitz count is not 2n - 2) are reported without enumeration;
    rows above ``max_degree`` are checked for feasibility only.
    """
    out = []
    for row in TABULATED:
        entry = {"degree": row.degree, "case": row.case,
                 "types": [list(t) for t in row.types],
                 "tabulated_count": row.count, "tabulated_group": row.group}
        problems = []
        if any(sum(t) > row.degree for t in row.types):
            problems.append("cycle type does not fit in S_%d" % row.degree)
        if _rh_sum(row.types) != 2 * row.degree - 2:
            problems.append("Riemann-Hurwitz: sum of (e-1) is %d, expected %d"
                            % (_rh_sum(row.types), 2 * row.degree - 2))
        if problems:
            entry.update(status="erratum", count=None, groups=[], problems=problems)
        elif row.degree > max_degree:
            entry.update(status="not enumerated", count=None, groups=[], problems=[])
        else:
            if progress:
                print(f"enumerating degree {row.degree} case {row.case}", file=sys.stderr)
            rep = count_report(row.degree, row.types)
            entry.update(count=rep["class_count"], groups=rep["groups"])
            if rep["class_count"] != row.count:
                problems.append(f"count {rep['class_count']} != {row.count}")
            if rep["groups"] != [row.group]:
                problems.append(f"groups {rep['groups']} != {row.group}")
            entry.update(status="agrees" if not problems else "disagrees", problems=problems)
        out.append(entry)
    return out


def discrepancies(audit: list[dict]) -> list[dict]:
    return [e for e in audit if e["status"] not in ("agrees",)]
