"""Interval and relative algebras, and direct decompositions along central elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .axioms import dot
from .church import _central_failure, atoms, center, require_zero_commutative
from .model import MAX_SIZE, Carrier, Groupoid, OrthokitError


class NotCentral(OrthokitError):
    pass


class VerificationFailed(RuntimeError):
    pass


def _require_central(g: Groupoid, e: int) -> None:
    require_zero_commutative(g)
    if _central_failure(g, e) is not None:
        raise NotCentral(f"{g.carrier.name(e)} is not central")


def meet_with(g: Groupoid, e: int, b: int) -> int:
    """e ∧ b = q(e, b, 0) = (e + 0)·(e' + b)."""
    return dot(g, g.table[e][g.zero], g.table[g.inv[e]][b])


def interval(g: Groupoid, e: int) -> list[int]:
    """[0, e]: elements x with x + e = e = e + x, in carrier order."""
    t = g.table
    return [x for x in range(g.n) if t[x][e] == e and t[e][x] == e]


def _subalgebra(g: Groupoid, members: Sequence[int], top: int, add, unary) -> Groupoid:
    pos = {x: i for i, x in enumerate(members)}
    try:
        table = tuple(tuple(pos[add(x, y)] for y in members) for x in members)
        inv = tuple(pos[unary(x)] for x in members)
    except KeyError as exc:
        raise VerificationFailed(f"operation leaves the subset at {exc}") from None
    names = tuple(g.carrier.name(x) for x in members)
    return Groupoid(Carrier(names, pos[top]), table, inv)


def interval_algebra(g: Groupoid, e: int) -> Groupoid:
    """[0, e] with the restricted +, unary x ↦ e·x' and top e."""
    _require_central(g, e)
    return _subalgebra(g, interval(g, e), e, g.add, lambda x: dot(g, e, g.inv[x]))


def relative_carrier(g: Groupoid, e: int) -> list[int]:
    return sorted({meet_with(g, e, b) for b in range(g.n)})


def relative_algebra(g: Groupoid, e: int) -> Groupoid:
    """A_e = {e∧b}: every operation followed by meet with e."""
    _require_central(g, e)
    return _subalgebra(
        g,
        relative_carrier(g, e),
        meet_with(g, e, g.top),
        lambda x, y: meet_with(g, e, g.table[x][y]),
        lambda x: meet_with(g, e, g.inv[x]),
    )


@dataclass(frozen=True)
class Decomposition:
    factors: tuple
    iso: tuple  # iso[b] = tuple of factor-element indices
    center_atoms: tuple

    def iso_names(self, g: Groupoid) -> list[tuple[str, tuple]]:
        return [
            (g.carrier.name(b), tuple(f.carrier.name(i) for f, i in zip(self.factors, img)))
            for b, img in enumerate(self.iso)
        ]


def direct_product(gs: Sequence[Groupoid]) -> Groupoid:
    size = 1
    for g in gs:
        size *= g.n
    if size > MAX_SIZE:
        raise OrthokitError(f"product has {size} elements, limit is {MAX_SIZE}")
    tuples = list(itertools.product(*(range(g.n) for g in gs)))
    index = {tup: i for i, tup in enumerate(tuples)}
    if len(gs) == 1:
        names = tuple(gs[0].carrier.names)
    else:
        names = tuple(
            "(" + ",".join(g.carrier.name(i) for g, i in zip(gs, tup)) + ")" for tup in tuples
        )
    table = tuple(
        tuple(index[tuple(g.table[a][b] for g, a, b in zip(gs, s, u))] for u in tuples)
        for s in tuples
    )
    inv = tuple(index[tuple(g.inv[a] for g, a in zip(gs, s))] for s in tuples)
    top = index[tuple(g.top for g in gs)]
    return Groupoid(Carrier(names, top), table, inv)


def verify_isomorphism(g: Groupoid, factors: Sequence[Groupoid], iso: Sequence[tuple]) -> list[str]:
    """Problems with iso as a map g → ∏ factors (empty list when it is an isomorphism)."""
    problems = []
    size = 1
    for f in factors:
        size *= f.n
    if len(set(iso)) != g.n or size != g.n:
        problems.append("not a bijection")
    if tuple(iso[g.top]) != tuple(f.top for f in factors):
        problems.append("top not preserved")
    for x in range(g.n):
        if tuple(iso[g.inv[x]]) != tuple(f.inv[i] for f, i in zip(factors, iso[x])):
            problems.append(f"involution at {g.carrier.name(x)}")
            break
    for x in range(g.n):
        for y in range(g.n):
            want = tuple(f.table[i][j] for f, i, j in zip(factors, iso[x], iso[y]))
            if tuple(iso[g.table[x][y]]) != want:
                problems.append(f"+ at ({g.carrier.name(x)},{g.carrier.name(y)})")
                return problems
    return problems


def binary_decompose(g: Groupoid, e: int) -> Decomposition:
    _require_central(g, e)
    ec = g.inv[e]
    left, right = interval_algebra(g, e), interval_algebra(g, ec)
    lpos = {x: i for i, x in enumerate(interval(g, e))}
    rpos = {x: i for i, x in enumerate(interval(g, ec))}
    try:
        iso = tuple((lpos[meet_with(g, e, b)], rpos[meet_with(g, ec, b)]) for b in range(g.n))
    except KeyError as exc:
        raise VerificationFailed(f"e∧b outside the interval: {exc}") from None
    problems = verify_isomorphism(g, (left, right), iso)
    if problems:
        raise VerificationFailed("; ".join(problems))
    return Decomposition((left, right), iso, (e,))


def full_decompose(g: Groupoid) -> Decomposition:
    """Split off one atom at a time, smallest carrier index first."""
    require_zero_commutative(g)
    if g.n == 1:
        return Decomposition((), ((),) * 1, ())
    found = atoms(center(g))
    factors: list[Groupoid] = []
    iso: list[tuple] = [() for _ in range(g.n)]
    # track[b] = index of b's image in the current remainder
    rest, track = g, list(range(g.n))
    remaining = [g.carrier.name(a) for a in found]
    while True:
        rest_atoms = [rest.carrier.name(a) for a in atoms(center(rest))]
        if sorted(rest_atoms) != sorted(remaining):
            raise VerificationFailed(
                f"atoms of remainder {rest_atoms} differ from expected {remaining}"
            )
        if len(rest_atoms) <= 1:
            factors.append(rest)
            iso = [img + (track[b],) for b, img in enumerate(iso)]
            break
        e = rest.carrier.index(remaining[0])
        split = binary_decompose(rest, e)
        head, tail = split.factors
        if len(center(head).elements) != 2:
            raise VerificationFailed(f"factor below {remaining[0]} is decomposable")
        factors.append(head)
        iso = [img + (split.iso[track[b]][0],) for b, img in enumerate(iso)]
        track = [split.iso[track[b]][1] for b in range(g.n)]
        rest = tail
        remaining = remaining[1:]
    problems = verify_isomorphism(g, factors, iso)
    if problems:
        raise VerificationFailed("; ".join(problems))
    return Decomposition(tuple(factors), tuple(iso), found)
