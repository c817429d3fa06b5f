"""Orthogroupoid axioms and derived laws, checked by exhaustive scan."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Check, CheckReport, Groupoid, make_check

EQUATIONAL = ("axiom_a", "axiom_b", "axiom_c", "axiom_e", "axiom_f", "one_top")


def axiom_e_lhs(g: Groupoid, x: int, y: int, z: int) -> int:
    """(((z+y)' + (z+x))' + (z+y)') + z'"""
    t, inv = g.table, g.inv
    zy_c = inv[t[z][y]]
    return t[t[inv[t[zy_c][t[z][x]]]][zy_c]][inv[z]]


@dataclass(frozen=True)
class AxiomVerdict:
    report: CheckReport

    @property
    def ok(self) -> bool:
        """Equational presentation: (a),(b),(c),(e),(f) and 1+x=1; (d) is separate."""
        return all(self.report[name].passed for name in EQUATIONAL)

    def __getitem__(self, name: str) -> Check:
        return self.report[name]

    def lines(self) -> list[str]:
        return self.report.lines()


def check_orthogroupoid(g: Groupoid) -> AxiomVerdict:
    n, t, inv, top = g.n, g.table, g.inv, g.top
    zero = inv[top]
    name = g.carrier.name
    r = range(n)

    a = make_check("axiom_a", ((("x", name(x)),) for x in r if inv[inv[x]] != x))
    b = make_check(
        "axiom_b", ((("x", name(x)),) for x in r if t[zero][x] != x or t[x][top] != top)
    )
    c = make_check("axiom_c", ((("x", name(x)),) for x in r if t[x][inv[x]] != top))
    d = make_check(
        "axiom_d",
        (
            (("x", name(x)), ("z", name(z)))
            for x in r
            for z in r
            if t[x][z] == z and t[inv[x]][z] == z and z != top
        ),
    )
    e = make_check(
        "axiom_e",
        (
            (("x", name(x)), ("y", name(y)), ("z", name(z)))
            for x in r
            for y in r
            for z in r
            if axiom_e_lhs(g, x, y, z) != inv[z]
        ),
    )
    f = make_check(
        "axiom_f",
        (
            (("x", name(x)), ("y", name(y)))
            for x in r
            for y in r
            if t[x][t[x][y]] != t[x][y] or t[y][t[x][y]] != t[x][y]
        ),
    )
    one = make_check("one_top", ((("x", name(x)),) for x in r if t[top][x] != top))
    return AxiomVerdict(CheckReport((a, b, c, d, e, f, one)))


def is_orthogroupoid(g: Groupoid) -> bool:
    return check_orthogroupoid(g).ok


@dataclass(frozen=True)
class QuasiIdentity:
    d_holds: bool
    one_top_holds: bool
    precondition_met: bool


def check_d_iff_one_top(g: Groupoid) -> QuasiIdentity:
    v = check_orthogroupoid(g)
    pre = all(v[k].passed for k in ("axiom_a", "axiom_b", "axiom_c", "axiom_e", "axiom_f"))
    return QuasiIdentity(v["axiom_d"].passed, v["one_top"].passed, pre)


def lemma_suite(g: Groupoid) -> CheckReport:
    n, t, inv, top = g.n, g.table, g.inv, g.top
    zero = inv[top]
    name = g.carrier.name
    r = range(n)
    checks = [
        Check("zero_complement", inv[zero] == top),
        make_check(
            "complement_absorption",
            ((("x", name(x)), ("y", name(y))) for x in r for y in r if t[inv[t[inv[x]][y]]][x] != x),
        ),
        make_check(
            "bounds",
            ((("x", name(x)),) for x in r if t[zero][x] != x or t[x][top] != top),
        ),
        make_check(
            "involution_reverses",
            (
                (("x", name(x)), ("y", name(y)))
                for x in r
                for y in r
                if t[x][y] == y and t[inv[y]][inv[x]] != inv[x]
            ),
        ),
        make_check("idempotent", ((("x", name(x)),) for x in r if t[x][x] != x)),
    ]
    if n > 1:
        checks.append(make_check("fixpoint_free", ((("x", name(x)),) for x in r if inv[x] == x)))
    else:
        checks.append(Check("fixpoint_free", True))
    return CheckReport(tuple(checks))


def is_zero_commutative(g: Groupoid) -> tuple[bool, Optional[int]]:
    z = g.zero
    for x in range(g.n):
        if g.table[x][z] != g.table[z][x]:
            return False, x
    return True, None


def dot(g: Groupoid, x: int, y: int) -> int:
    """De Morgan product x·y = (x' + y')'."""
    return g.inv[g.table[g.inv[x]][g.inv[y]]]
