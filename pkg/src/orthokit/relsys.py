"""Upper cones, orthogonality and relation properties of relational systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Check, CheckReport, OrthokitError, RelationalSystem, make_check


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ConeResult:
    members: frozenset
    supremals: frozenset


def cone_mask(s: RelationalSystem, a: int, b: int) -> int:
    return s.rows[a] & s.rows[b]


def supremal_mask(s: RelationalSystem, members: int) -> int:
    # w is supremal iff every other member z has (w, z) in R
    out = 0
    for w in bits(members):
        others = members & ~(1 << w)
        if others & ~s.rows[w] == 0:
            out |= 1 << w
    return out


def upper_cone(s: RelationalSystem, a: int, b: int) -> ConeResult:
    members = cone_mask(s, a, b)
    return ConeResult(frozenset(bits(members)), frozenset(bits(supremal_mask(s, members))))


def orthogonal(s: RelationalSystem, a: int, b: int) -> bool:
    return s.related(a, s.inv[b])


def orthogonal_pairs(s: RelationalSystem) -> set:
    """All unordered pairs {a, b} with a ⊥ b (singletons when a = b)."""
    out = set()
    for a in range(s.n):
        for b in range(a, s.n):
            ab = orthogonal(s, a, b)
            if ab != orthogonal(s, b, a):
                x, y = (a, b) if ab else (b, a)
                raise OrthokitError(
                    f"involution incompatibility: ({s.carrier.name(x)},"
                    f"{s.carrier.name(s.inv[y])}) in R but "
                    f"({s.carrier.name(y)},{s.carrier.name(s.inv[x])}) not in R"
                )
            if ab:
                out.add(frozenset((a, b)))
    return out


def check_orthogonal_system(s: RelationalSystem) -> CheckReport:
    n, top, zero, inv = s.n, s.top, s.zero, s.inv
    name = s.carrier.name

    def cone_a():
        for x in range(n):
            if cone_mask(s, x, inv[x]) != 1 << top:
                yield (("x", name(x)),)

    def cone_b():
        for x in range(n):
            if x == zero:
                continue
            for y in range(n):
                if y == zero or not orthogonal(s, x, y):
                    continue
                if not supremal_mask(s, cone_mask(s, x, y)):
                    yield (("x", name(x)), ("y", name(y)))

    return CheckReport((make_check("orthogonal_a", cone_a()), make_check("orthogonal_b", cone_b())))


@dataclass(frozen=True)
class RelationFlags:
    reflexive: bool
    symmetric: bool
    transitive: bool
    antisymmetric: bool
    witnesses: dict

    def checks(self) -> CheckReport:
        out = []
        for flag in ("reflexive", "symmetric", "transitive", "antisymmetric"):
            w = self.witnesses.get(flag)
            out.append(Check(flag, getattr(self, flag), (w,) if w else ()))
        return CheckReport(tuple(out))


def relation_flags(s: RelationalSystem) -> RelationFlags:
    n, rows = s.n, s.rows
    name = s.carrier.name
    wit: dict[str, Optional[tuple]] = {}

    refl = next((x for x in range(n) if not rows[x] >> x & 1), None)
    if refl is not None:
        wit["reflexive"] = (("x", name(refl)),)

    for x in range(n):
        for y in bits(rows[x]):
            if not rows[y] >> x & 1 and "symmetric" not in wit:
                wit["symmetric"] = (("x", name(x)), ("y", name(y)))
            if x != y and rows[y] >> x & 1 and "antisymmetric" not in wit:
                wit["antisymmetric"] = (("x", name(x)), ("y", name(y)))
            missing = rows[y] & ~rows[x]
            if missing and "transitive" not in wit:
                z = next(bits(missing))
                wit["transitive"] = (("x", name(x)), ("y", name(y)), ("z", name(z)))

    return RelationFlags(
        reflexive="reflexive" not in wit,
        symmetric="symmetric" not in wit,
        transitive="transitive" not in wit,
        antisymmetric="antisymmetric" not in wit,
        witnesses=wit,
    )
