"""V-formations of orthogroupoids and their strong amalgam."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .axioms import axiom_e_lhs, check_orthogroupoid
from .induce import induced_relation
from .model import (
    MAX_SIZE,
    Carrier,
    Check,
    CheckReport,
    Groupoid,
    OrthokitError,
    SemanticError,
    make_check,
)


class AmalgamError(RuntimeError):
    pass


@dataclass(frozen=True)
class VFormation:
    A: Groupoid
    B1: Groupoid
    B2: Groupoid
    i: tuple
    j: tuple


@dataclass(frozen=True)
class Amalgam:
    D: Groupoid
    h: tuple
    k: tuple


def embedding_failures(f: Sequence[int], src: Groupoid, dst: Groupoid) -> Iterator[tuple]:
    name = src.carrier.name
    if len(f) != src.n or any(not 0 <= v < dst.n for v in f):
        yield (("map", "domain"),)
        return
    if len(set(f)) != len(f):
        yield (("map", "injective"),)
    if f[src.top] != dst.top:
        yield (("map", "top"), ("x", name(src.top)))
    for x in range(src.n):
        if f[src.inv[x]] != dst.inv[f[x]]:
            yield (("map", "involution"), ("x", name(x)))
    for x in range(src.n):
        for y in range(src.n):
            if f[src.table[x][y]] != dst.table[f[x]][f[y]]:
                yield (("map", "plus"), ("x", name(x)), ("y", name(y)))


def is_embedding(f: Sequence[int], src: Groupoid, dst: Groupoid) -> bool:
    return next(embedding_failures(f, src, dst), None) is None


def embeddings(src: Groupoid, dst: Groupoid) -> Iterator[tuple]:
    """All embeddings src → dst, by backtracking over injective maps fixing the top."""
    n = src.n
    order = sorted(range(n), key=lambda x: x != src.top)
    f = [-1] * n

    def consistent():
        for x in range(n):
            if f[x] < 0:
                continue
            ix = src.inv[x]
            if f[ix] >= 0 and f[ix] != dst.inv[f[x]]:
                return False
            for y in range(n):
                if f[y] < 0:
                    continue
                s = src.table[x][y]
                if f[s] >= 0 and f[s] != dst.table[f[x]][f[y]]:
                    return False
        return True

    def go(k):
        if k == n:
            yield tuple(f)
            return
        x = order[k]
        used = set(f)
        cands = [dst.top] if x == src.top else range(dst.n)
        for v in cands:
            if v in used:
                continue
            f[x] = v
            if consistent():
                yield from go(k + 1)
            f[x] = -1

    yield from go(0)


def validate_vformation(v: VFormation) -> CheckReport:
    checks = [
        Check("nonempty", v.A.n > 0),
        make_check("embedding_i", embedding_failures(v.i, v.A, v.B1), limit=1),
        make_check("embedding_j", embedding_failures(v.j, v.A, v.B2), limit=1),
    ]
    for label, g in (("A", v.A), ("B1", v.B1), ("B2", v.B2)):
        verdict = check_orthogroupoid(g)
        failed = [c.name for c in verdict.report.checks if not c.passed and c.name != "axiom_d"]
        checks.append(Check(f"orthogroupoid_{label}", not failed, tuple((("axiom", a),) for a in failed)))
    return CheckReport(tuple(checks))


def amalgamate(v: VFormation) -> Amalgam:
    """Glue B1 and B2 along the images of A; cross sums are 1."""
    report = validate_vformation(v)
    if not report.ok:
        bad = ", ".join(c.name for c in report.checks if not c.passed)
        raise OrthokitError(f"invalid V-formation: {bad}")
    B1, B2 = v.B1, v.B2
    shared = {v.j[a]: v.i[a] for a in range(v.A.n)}  # B2 index -> B1 index
    extra = [y for y in range(B2.n) if y not in shared]
    if B1.n + len(extra) > MAX_SIZE:
        raise OrthokitError(f"amalgam has {B1.n + len(extra)} elements, limit is {MAX_SIZE}")

    h = tuple(range(B1.n))
    kmap = {}
    for y in range(B2.n):
        kmap[y] = shared[y] if y in shared else B1.n + extra.index(y)
    k = tuple(kmap[y] for y in range(B2.n))

    names = list(B1.carrier.names)
    taken = set(names)
    for y in extra:
        base = B2.carrier.name(y)
        nm, suffix = base, 2
        while nm in taken:
            nm = f"{base}_{suffix}"
            suffix += 1
        taken.add(nm)
        names.append(nm)

    size = len(names)
    in1 = [True] * B1.n + [False] * len(extra)
    in2 = [False] * size
    back2 = [-1] * size
    for y in range(B2.n):
        in2[k[y]] = True
        back2[k[y]] = y
    one = h[B1.top]

    def plus(x, y):
        if in1[x] and in1[y]:
            return B1.table[x][y]
        if in2[x] and in2[y]:
            return k[B2.table[back2[x]][back2[y]]]
        return one

    inv = tuple(B1.inv[x] if in1[x] else k[B2.inv[back2[x]]] for x in range(size))
    table = tuple(tuple(plus(x, y) for y in range(size)) for x in range(size))
    try:
        D = Groupoid(Carrier(tuple(names), one), table, inv)
    except SemanticError as exc:
        raise AmalgamError(str(exc)) from None

    verdict = check_orthogroupoid(D)
    if not verdict.ok:
        raise AmalgamError(_diagnose(D, in1, in2, verdict))
    return Amalgam(D, h, k)


def _diagnose(D: Groupoid, in1, in2, verdict) -> str:
    failed = [c for c in verdict.report.checks if not c.passed and c.name != "axiom_d"]
    msg = "amalgam is not an orthogroupoid: " + ", ".join(c.line() for c in failed)
    for x, y, z in itertools.product(range(D.n), repeat=3):
        if axiom_e_lhs(D, x, y, z) != D.inv[z]:
            side = lambda a: "A" if in1[a] and in2[a] else ("B1" if in1[a] else "B2")
            msg += f"; axiom (e) fails with x in {side(x)}, y in {side(y)}, z in {side(z)}"
            break
    return msg


def verify_strong(v: VFormation, m: Amalgam) -> bool:
    if any(m.k[v.j[a]] != m.h[v.i[a]] for a in range(v.A.n)):
        return False
    glued = {m.h[v.i[a]] for a in range(v.A.n)}
    return set(m.h) & set(m.k) == glued


def relations_embed(v: VFormation, m: Amalgam) -> bool:
    """Induced relations of B1, B2 are carried into the induced relation of D."""
    RD = induced_relation(m.D)
    for B, f in ((v.B1, m.h), (v.B2, m.k)):
        RB = induced_relation(B)
        for x in range(B.n):
            for y in range(B.n):
                if RB.related(x, y) != RD.related(f[x], f[y]):
                    return False
    return True
