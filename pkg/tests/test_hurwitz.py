import random
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from splitjac.hurwitz import (MAX_DEGREE, HurwitzError, NielsenClass, Perm, PermTuple,
                              audit_table, braid_orbits, canonical, conjugacy_class,
                              count_report, discrepancies, full_nielsen_class, group_elements,
                              group_info, group_order, nielsen_enumerate, parse_types)


# -- an independent brute-force count ------------------------------------------------

def _mul(p, q):
    return tuple(q[i] for i in p)


def _ctype(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        if k > 1:
            out.append(k)
    return tuple(sorted(out, reverse=True))


def brute_force_classes(n, types):
    """All product-one transitive tuples, then orbits under conjugation."""
    perms = list(permutations(range(n)))
    pools = [[p for p in perms if _ctype(p) == tuple(t)] for t in types]
    ident = tuple(range(n))
    tuples = []
    for combo in product(*pools):
        acc = ident
        for p in combo:
            acc = _mul(acc, p)
        if acc != ident:
            continue
        reach, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for p in combo:
                if p[x] not in reach:
                    reach.add(p[x])
                    stack.append(p[x])
        if len(reach) == n:
            tuples.append(combo)
    inv = {g: tuple(sorted(range(n), key=lambda i: g[i])) for g in perms}
    classes = {min(tuple(_mul(_mul(inv[g], p), g) for p in t) for g in perms) for t in tuples}
    return len(tuples), len(classes)


# -- permutations ------------------------------------------------------------------------

def test_perm_basics():
    p = Perm.from_cycles(3, [(1, 2)])
    q = Perm.from_cycles(3, [(2, 3)])
    # p * q applies p first: 1 -> 2 -> 3
    assert (p * q).images[0] == 2
    assert str(p * q) == "(1,3,2)"
    assert (p * p).is_identity()
    assert q.inverse() == q
    assert Perm.from_cycles(5, [(1, 2), (3, 4, 5)]).cycle_type() == (3, 2)
    assert Perm.from_cycles(4, [(1, 2, 3, 4)]).sign() == -1
    with pytest.raises(HurwitzError):
        Perm((0, 0, 1))


def test_parse_types():
    assert parse_types("2.2,2.2,4,2") == ((2, 2), (2, 2), (4,), (2,))
    assert parse_types("2.3, 2") == ((3, 2), (2,))
    with pytest.raises(HurwitzError):
        parse_types("2,,2")
    with pytest.raises(HurwitzError):
        parse_types("2,x")


def test_conjugacy_class_sizes():
    assert len(conjugacy_class(5, (2, 2))) == 15
    assert len(conjugacy_class(5, (3,))) == 20
    assert len(conjugacy_class(4, (4,))) == 6


# -- Nielsen classes ----------------------------------------------------------------------

def test_degree_two():
    assert nielsen_enumerate(2, ((2,), (2,))).count == 1


def test_degree_three_four_transpositions():
    # 27 product-one tuples of transpositions (the last is forced by the first three, 3^3
    # choices, and it is always a transposition); 3 of them are the same transposition
    # four times and are intransitive, leaving 24; S3 acts freely on those (its centraliser
    # in S3 of a transitive tuple is trivial), so 24 / 6 = 4 classes.
    n_tuples, n_classes = brute_force_classes(3, [(2,)] * 4)
    assert n_tuples == 24
    assert n_classes == 4
    assert 24 // factorial(3) == 4
    nc = nielsen_enumerate(3, ((2,),) * 4)
    assert nc.count == 4
    assert nielsen_enumerate(3, ((2,),) * 4).representatives == nc.representatives


@pytest.mark.parametrize("n,types", [
    (3, "2,2,3"),
    (4, "2,2,2,2,2,2"),
    (4, "3,2.2,2.2"),
    (4, "2.2,2,2,2.2"),
    (4, "4,2,2,2"),
    (5, "2.2,2.2,4,2"),
    (5, "2.2,2.2,2.2,3"),
])
def test_counts_match_brute_force(n, types):
    ts = parse_types(types)
    assert nielsen_enumerate(n, ts).count == brute_force_classes(n, ts)[1]


def test_degree_five_table_counts():
    assert nielsen_enumerate(5, parse_types("2.2,2.2,4,2")).count == 8
    assert nielsen_enumerate(5, parse_types("2.2,2.2,3.2,2")).count == 6
    assert nielsen_enumerate(5, parse_types("2.2,2.2,2.2,3")).count == 9


def test_representatives_are_canonical_and_valid():
    nc = nielsen_enumerate(4, parse_types("2,2,2,2,2,2"))
    for r in nc.representatives:
        assert r.product_one() and r.transitive()
        assert r.cycle_types() == ((2,),) * 6
        assert canonical(r) == r


def test_degree_bound():
    with pytest.raises(HurwitzError, match="orbit closure"):
        nielsen_enumerate(MAX_DEGREE + 1, ((2,), (2,)))


# -- braid action --------------------------------------------------------------------------

def _random_tuple(rng, n, types):
    nc = nielsen_enumerate(n, types)
    return rng.choice(nc.representatives)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(3, "2,2,2,2"), (4, "2,2,2,2,2,2"),
                                                   (4, "2.2,2,2,2.2"), (5, "2.2,2.2,4,2")]))
def test_braid_moves_preserve_structure(seed, case):
    rng = random.Random(seed)
    n, types = case
    t = _random_tuple(rng, n, parse_types(types))
    i = rng.randrange(len(t.entries) - 1)
    s = t.braid(i)
    assert s.braid(i, inverse=True) == t
    assert t.braid(i, inverse=True).braid(i) == t
    assert s.product_one() and s.transitive()
    assert sorted(s.cycle_types()) == sorted(t.cycle_types())
    assert group_order(s.entries) == group_order(t.entries)


def _closure(seed: PermTuple, everything):
    seen = {canonical(seed, everything).key()}
    stack = [seed]
    while stack:
        t = stack.pop()
        for i in range(len(t.entries) - 1):
            for inv in (False, True):
                c = canonical(t.braid(i, inv), everything)
                if c.key() not in seen:
                    seen.add(c.key())
                    stack.append(c)
    return seen


def test_orbits_independent_of_seed():
    full = full_nielsen_class(4, parse_types("4,2,2,2"))
    orbits = braid_orbits(full)
    everything = [Perm(p) for p in permutations(range(4))]
    rng = random.Random(5)
    for _ in range(5):
        seed = rng.choice(full.representatives)
        got = _closure(seed, everything)
        owner = [o for o in orbits if seed.key() in {m.key() for m in o.members}]
        assert len(owner) == 1
        assert got == {m.key() for m in owner[0].members}


def test_degree_three_single_orbit():
    nc = nielsen_enumerate(3, ((2,),) * 4)
    orbits = braid_orbits(nc)
    assert [o.size for o in orbits] == [4]


def test_orbits_partition_class():
    full = full_nielsen_class(4, parse_types("2.2,2,2,2.2"))
    orbits = braid_orbits(full)
    keys = [m.key() for o in orbits for m in o.members]
    assert sorted(keys) == sorted(r.key() for r in full.representatives)
    sizes = [o.size for o in orbits]
    assert sizes == sorted(sizes, reverse=True)


def test_open_class_is_rejected():
    nc = nielsen_enumerate(5, parse_types("2.2,2.2,4,2"))
    with pytest.raises(HurwitzError, match="not closed"):
        braid_orbits(nc)


def test_empty_class_is_rejected():
    with pytest.raises(HurwitzError):
        braid_orbits(NielsenClass(3, ((3,),), []))


# -- groups -------------------------------------------------------------------------------

def test_group_info_examples():
    t = nielsen_enumerate(3, ((2,),) * 4).representatives[0]
    g = group_info(t)
    assert (g.order, g.label) == (6, "S_3")
    a5 = nielsen_enumerate(5, parse_types("2.2,2.2,2.2,3")).representatives[0]
    assert (group_info(a5).order, group_info(a5).label) == (60, "A_5")
    ident = PermTuple((Perm.identity(3), Perm.identity(3)))
    g = group_info(ident)
    assert g.order == 1 and not g.transitive


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_group_order_matches_sympy_and_closure(n, k, seed):
    rng = random.Random(seed)
    gens = [Perm(tuple(rng.sample(range(n), n))) for _ in range(k)]
    want = PermutationGroup([SymPerm(list(g.images)) for g in gens]).order()
    assert group_order(gens) == want
    if n <= 5:
        assert len(group_elements(gens)) == want


# -- table audit ------------------------------------------------------------------------------

def test_audit_table():
    audit = audit_table()
    rows = {(e["degree"], e["case"]): e for e in audit}
    for case, count in (("generic", 40), ("1", 8), ("2", 6), ("3", 9)):
        assert rows[(5, case)]["status"] == "agrees"
        assert rows[(5, case)]["count"] == count
        assert rows[(3, case)]["status"] == "erratum"
    assert rows[(5, "3")]["groups"] == ["A_5"]
    assert rows[(7, "generic")]["status"] == "erratum"
    flagged = {(e["degree"], e["case"]) for e in discrepancies(audit)}
    assert flagged == {(3, "generic"), (3, "1"), (3, "2"), (3, "3"), (7, "generic")}


def test_count_report_with_orbits():
    rep = count_report(5, parse_types("2.2,2.2,4,2"), orbits=True)
    assert rep["class_count"] == 8
    assert rep["groups"] == ["S_5"]
    assert rep["full_class_count"] == 96
    assert rep["orbits"] == [{"size": 96, "in_slot_order": 8}]
