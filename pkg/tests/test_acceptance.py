"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import itertools
import time

import pytest

import oracle
from helpers import load, orthogroupoids, vformations
from orthokit.amalgam import amalgamate, verify_strong
from orthokit.axioms import axiom_e_lhs, check_d_iff_one_top, check_orthogroupoid, dot
from orthokit.church import center, is_central_congruence, is_central_equational
from orthokit.decomp import (
    full_decompose,
    interval,
    interval_algebra,
    meet_with,
    relative_algebra,
    relative_carrier,
)
from orthokit.enumeration import (
    SearchSpec,
    canonical_form,
    enumerate_orthogroupoids,
    enumerate_orthosystems,
    equational_models,
)
from orthokit.induce import induce_groupoids, induce_min, induced_relation
from orthokit.model import Carrier, Groupoid
from orthokit.relsys import check_orthogonal_system, relation_flags

EXAMPLE1 = [
    ["0", "a", "a'", "1"],
    ["a", "a'", "a'", "1"],
    ["a'", "a", "a", "1"],
    ["1", "1", "1", "1"],
]
EXAMPLE1_ORDER = ["0", "a", "a'", "1"]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, started):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail}; {time.perf_counter() - started:.2f}s)"
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


def test_criterion_1_fixtures(report):
    t0 = time.perf_counter()
    s1 = load("example1.txt")
    g1 = induce_min(s1)
    nm, ix = g1.carrier.name, g1.carrier.index
    table = [[nm(g1.table[ix(x)][ix(y)]) for y in EXAMPLE1_ORDER] for x in EXAMPLE1_ORDER]
    c_fail = check_orthogroupoid(g1)["axiom_c"]
    ok_i = (
        table == EXAMPLE1
        and not c_fail.passed
        and c_fail.witnesses[0] == (("x", "a"),)
        and nm(g1.table[ix("a")][ix("a'")]) == "a'"
    )

    s2 = load("example2.txt")
    ind = induce_groupoids(s2, "enumerate-all")
    ix2 = s2.carrier.index
    a, b, c_ = ix2("a"), ix2("b"), ix2("c'")
    ok_ii = len(ind.groupoids) > 0 and all(
        not check_orthogroupoid(g)["axiom_e"].passed
        # z = a, y = c', x = b: (((a+c')'+(a+b))'+(a+c')')+a' = 1 while a' != 1
        and axiom_e_lhs(g, b, c_, a) == g.top != g.inv[a]
        for g in ind.groupoids
    )

    r = load("remark.txt")
    verdict = check_orthogroupoid(r)
    ra, rz = r.carrier.index("a"), r.zero
    ok_iii = all(ch.passed for ch in verdict.report.checks) and r.table[ra][rz] != ra
    elapsed = time.perf_counter() - t0
    ok = ok_i and ok_ii and ok_iii and elapsed < 1.0
    detail = f"example1={ok_i} example2={ok_ii} over {len(ind.groupoids)} groupoids remark={ok_iii}"
    assert report(1, ok, detail, t0)


def test_criterion_2_induced_systems(report):
    t0 = time.perf_counter()
    total = bad = 0
    for g in orthogroupoids(5):
        s = induced_relation(g)
        total += 1
        if not (check_orthogonal_system(s).ok and relation_flags(s).reflexive):
            bad += 1
    elapsed = time.perf_counter() - t0
    assert report(2, bad == 0 and elapsed < 120, f"{total} models, {bad} failures", t0)


def test_criterion_3_induced_groupoids(report):
    t0 = time.perf_counter()
    systems = groupoids = bad = 0
    for n in range(1, 5):
        spec = SearchSpec(n, {"relsys-orthogonal", "reflexive", "transitive"})
        for s in enumerate_orthosystems(spec):
            systems += 1
            for g in induce_groupoids(s, "enumerate-all").groupoids:
                groupoids += 1
                v = check_orthogroupoid(g)
                if not (v.ok and v["axiom_d"].passed):
                    bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and systems > 0 and elapsed < 300
    assert report(3, ok, f"{systems} systems, {groupoids} groupoids, {bad} failures", t0)


def test_criterion_4_quasi_identity(report):
    t0 = time.perf_counter()
    total = disagree = 0
    for n in range(1, 5):
        for g in equational_models(n):
            q = check_d_iff_one_top(g)
            assert q.precondition_met
            total += 1
            disagree += q.d_holds != q.one_top_holds
    assert report(4, disagree == 0 and total > 0, f"{total} tables, {disagree} disagreements", t0)


ZC_MODELS = list(orthogroupoids(6, zero_comm=True))


def test_criterion_5_centrality_oracles(report):
    t0 = time.perf_counter()
    pairs = disagree = 0
    for g in ZC_MODELS:
        for e in range(g.n):
            pairs += 1
            disagree += is_central_equational(g, e)[0] != is_central_congruence(g, e)
    ok = disagree == 0 and time.perf_counter() - t0 < 600
    assert report(5, ok, f"{len(ZC_MODELS)} models, {pairs} elements, {disagree} disagreements", t0)


def boolean_identities(g, els):
    j = lambda x, y: g.table[x][y]
    m = lambda x, y: dot(g, x, y)
    c = lambda x: g.inv[x]
    zero, one = g.zero, g.top
    s = set(els)
    if zero not in s or one not in s:
        return False
    for x, y, z in itertools.product(els, repeat=3):
        if not (
            j(x, y) in s and m(x, y) in s and c(x) in s
            and j(x, y) == j(y, x) and m(x, y) == m(y, x)
            and j(j(x, y), z) == j(x, j(y, z)) and m(m(x, y), z) == m(x, m(y, z))
            and j(x, m(x, y)) == x and m(x, j(x, y)) == x
            and m(x, j(y, z)) == j(m(x, y), m(x, z))
            and j(x, zero) == x and m(x, one) == x
            and j(x, c(x)) == one and m(x, c(x)) == zero
        ):
            return False
    return True


def test_criterion_6_boolean_center(report):
    t0 = time.perf_counter()
    bad = 0
    sizes = set()
    for g in ZC_MODELS:
        els = center(g).elements
        k = len(els)
        sizes.add(k)
        if not boolean_identities(g, els) or k & (k - 1):
            bad += 1
    assert report(6, bad == 0, f"{len(ZC_MODELS)} centers, sizes {sorted(sizes)}, {bad} failures", t0)


def split_is_isomorphism(g, e):
    """Check b ↦ (e∧b, e'∧b) directly against the interval operations."""
    ec = g.inv[e]
    left, right = interval(g, e), interval(g, ec)
    phi = [(meet_with(g, e, b), meet_with(g, ec, b)) for b in range(g.n)]
    if len(set(phi)) != g.n or len(left) * len(right) != g.n:
        return False
    if any(p[0] not in left or p[1] not in right for p in phi):
        return False
    comp = lambda f, x: dot(g, f, g.inv[x])
    for x in range(g.n):
        if phi[g.inv[x]] != (comp(e, phi[x][0]), comp(ec, phi[x][1])):
            return False
        for y in range(g.n):
            s = phi[g.table[x][y]]
            if s != (g.table[phi[x][0]][phi[y][0]], g.table[phi[x][1]][phi[y][1]]):
                return False
    return phi[g.top] == (e, ec)


def test_criterion_7_decomposition(report):
    t0 = time.perf_counter()
    splits = bad = 0
    for g in ZC_MODELS:
        for e in center(g).elements:
            splits += 1
            if not split_is_isomorphism(g, e):
                bad += 1
            elif interval(g, e) != relative_carrier(g, e):
                bad += 1
            elif interval_algebra(g, e) != relative_algebra(g, e):
                bad += 1
        d = full_decompose(g)
        size = 1
        for f in d.factors:
            size *= f.n
            bad += len(center(f).elements) != 2
        bad += size != g.n
    assert report(7, bad == 0, f"{splits} central splits over {len(ZC_MODELS)} models, {bad} failures", t0)


def test_criterion_8_strong_amalgamation(report):
    t0 = time.perf_counter()
    models = list(orthogroupoids(4))
    total = bad = 0
    for v in vformations(models):
        total += 1
        m = amalgamate(v)
        if not (check_orthogroupoid(m.D).ok and verify_strong(v, m)):
            bad += 1
    assert report(8, bad == 0 and total > 0, f"{total} V-formations, {bad} failures", t0)


def oracle_form(t, inv, top):
    n = len(t)
    names = tuple(f"x{i}" for i in range(n))
    return canonical_form(Groupoid(Carrier(names, top), t, tuple(inv)))


def test_criterion_9_enumeration_completeness(report):
    t0 = time.perf_counter()
    ok = True
    parts = []
    for n in range(1, 5):
        ours = {canonical_form(g) for g in enumerate_orthogroupoids(SearchSpec(n, {"orthogroupoid"}))}
        ref = {oracle_form(t, inv, 0 if n == 1 else 1) for t, inv in oracle.generate_and_filter(n)}
        ok &= ours == ref
        parts.append(f"n={n}:{len(ours)}/{len(ref)}")
    c2 = sum(1 for _ in enumerate_orthogroupoids(SearchSpec(2, {"orthogroupoid"})))
    c3 = sum(1 for _ in enumerate_orthogroupoids(SearchSpec(3, {"orthogroupoid"})))
    ok = ok and c2 == 1 and c3 == 0
    assert report(9, ok, f"classes ours/oracle {' '.join(parts)}; size2={c2} size3={c3}", t0)
