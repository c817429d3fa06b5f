"""Central elements of 0-commutative orthogroupoids.

The witness term is q(x, y, z) = (x + z)·(x' + y).  Centrality is decided
two ways: by the equational conditions on q, and directly by testing
whether θ(e,0), θ(e,1) form a pair of factor congruences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .axioms import dot, is_zero_commutative
from .model import Groupoid, OrthokitError

log = logging.getLogger(__name__)


class NotZeroCommutative(OrthokitError):
    pass


class CenterNotBoolean(RuntimeError):
    pass


def require_zero_commutative(g: Groupoid) -> None:
    ok, x = is_zero_commutative(g)
    if not ok:
        nm = g.carrier.name
        raise NotZeroCommutative(
            f"not 0-commutative: {nm(x)}+{nm(g.zero)} != {nm(g.zero)}+{nm(x)}"
        )


def _q(g: Groupoid, x: int, y: int, z: int) -> int:
    t, inv = g.table, g.inv
    return dot(g, t[x][z], t[inv[x]][y])


def q(g: Groupoid, x: int, y: int, z: int) -> int:
    require_zero_commutative(g)
    return _q(g, x, y, z)


def _central_failure(g: Groupoid, e: int) -> Optional[tuple]:
    n, t, inv, top = g.n, g.table, g.inv, g.top
    zero = inv[top]
    r = range(n)
    name = g.carrier.name
    qe = [[_q(g, e, a, b) for b in r] for a in r]

    def w(cond, **kw):
        return (cond, tuple((k, name(v)) for k, v in kw.items()))

    for a in r:
        if qe[a][a] != a:
            return w("a", a=a)
    for a in r:
        for b in r:
            qab = qe[a][b]
            for c in r:
                lhs = qe[qab][c]
                mid = qe[a][c]
                rhs = qe[a][qe[b][c]]
                if lhs != mid or mid != rhs:
                    return w("b", a=a, b=b, c=c)
    if qe[top][top] != top:
        return w("c_one")
    for a in r:
        for b in r:
            if qe[inv[a]][inv[b]] != inv[qe[a][b]]:
                return w("c_involution", a=a, b=b)
    for a1 in r:
        for a2 in r:
            s = t[a1][a2]
            for b1 in r:
                q1 = qe[a1][b1]
                row = t[q1]
                for b2 in r:
                    if qe[s][t[b1][b2]] != row[qe[a2][b2]]:
                        return w("c_plus", a1=a1, a2=a2, b1=b1, b2=b2)
    if qe[top][zero] != e:
        return w("d")
    return None


def is_central_equational(g: Groupoid, e: int) -> tuple[bool, Optional[tuple]]:
    """Returns (central, witness); witness is (condition, assignment) on failure."""
    require_zero_commutative(g)
    fail = _central_failure(g, e)
    return fail is None, fail


# --- congruences -----------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Equivalence relation as block labels; labels are canonical (first seen)."""

    blocks_of: tuple

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        seen: dict = {}
        return cls(tuple(seen.setdefault(v, len(seen)) for v in labels))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    def related(self, x: int, y: int) -> bool:
        return self.blocks_of[x] == self.blocks_of[y]

    def blocks(self) -> list[list[int]]:
        out: dict = {}
        for x, b in enumerate(self.blocks_of):
            out.setdefault(b, []).append(x)
        return list(out.values())

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(zip(self.blocks_of, other.blocks_of))

    def compose(self, other: "Partition") -> list[int]:
        """Rows of self∘other as bitmasks: x (self) z (other) y."""
        n = len(self.blocks_of)
        block_mask: dict = {}
        for y in range(n):
            block_mask[other.blocks_of[y]] = block_mask.get(other.blocks_of[y], 0) | 1 << y
        rows = []
        for x in range(n):
            m = 0
            for z in range(n):
                if self.related(x, z):
                    m |= block_mask[other.blocks_of[z]]
            rows.append(m)
        return rows


def principal_congruence(g: Groupoid, a: int, b: int) -> Partition:
    """Smallest congruence of (D, +, ') identifying a and b."""
    n, t, inv = g.n, g.table, g.inv
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = [(a, b)]
    while work:
        u, v = work.pop()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[max(ru, rv)] = min(ru, rv)
        work.append((inv[u], inv[v]))
        for c in range(n):
            work.append((t[u][c], t[v][c]))
            work.append((t[c][u], t[c][v]))
    return Partition.from_labels(find(x) for x in range(n))


def is_factor_pair(p1: Partition, p2: Partition) -> bool:
    n = len(p1.blocks_of)
    if p1.meet(p2) != Partition.identity(n):
        return False
    full = (1 << n) - 1
    forward = all(row == full for row in p1.compose(p2))
    backward = all(row == full for row in p2.compose(p1))
    if forward != backward:
        log.warning("factor-pair compositions disagree (forward=%s)", forward)
    return forward


def is_central_congruence(g: Groupoid, e: int) -> bool:
    return is_factor_pair(principal_congruence(g, e, g.zero), principal_congruence(g, e, g.top))


# --- the Boolean center ----------------------------------------------------


@dataclass(frozen=True)
class BooleanCenter:
    groupoid: Groupoid
    elements: tuple

    def join(self, x: int, y: int) -> int:
        return self.groupoid.table[x][y]

    def meet(self, x: int, y: int) -> int:
        return dot(self.groupoid, x, y)

    def complement(self, x: int) -> int:
        return self.groupoid.inv[x]

    @property
    def bottom(self) -> int:
        return self.groupoid.zero

    @property
    def top(self) -> int:
        return self.groupoid.top

    def leq(self, x: int, y: int) -> bool:
        return self.meet(x, y) == x


def boolean_failures(c: BooleanCenter) -> list[str]:
    """Names of Boolean-algebra laws violated on the center (empty when Boolean)."""
    els = c.elements
    elset = set(els)
    j, m, neg = c.join, c.meet, c.complement
    zero, one = c.bottom, c.top
    bad = []
    if zero not in elset or one not in elset:
        bad.append("bounds")
    if any(j(x, y) not in elset or m(x, y) not in elset for x in els for y in els) or any(
        neg(x) not in elset for x in els
    ):
        bad.append("closure")
        return bad
    laws = {
        "join_commutative": lambda x, y, z: j(x, y) == j(y, x),
        "meet_commutative": lambda x, y, z: m(x, y) == m(y, x),
        "join_associative": lambda x, y, z: j(j(x, y), z) == j(x, j(y, z)),
        "meet_associative": lambda x, y, z: m(m(x, y), z) == m(x, m(y, z)),
        "absorption": lambda x, y, z: j(x, m(x, y)) == x and m(x, j(x, y)) == x,
        "distributive": lambda x, y, z: m(x, j(y, z)) == j(m(x, y), m(x, z))
        and j(x, m(y, z)) == m(j(x, y), j(x, z)),
        "identities": lambda x, y, z: j(x, zero) == x and m(x, one) == x,
        "complement": lambda x, y, z: j(x, neg(x)) == one and m(x, neg(x)) == zero,
    }
    for law, holds in laws.items():
        if not all(holds(x, y, z) for x in els for y in els for z in els):
            bad.append(law)
    return bad


def center(g: Groupoid) -> BooleanCenter:
    require_zero_commutative(g)
    els = tuple(e for e in range(g.n) if _central_failure(g, e) is None)
    c = BooleanCenter(g, els)
    bad = boolean_failures(c)
    if bad:
        raise CenterNotBoolean(f"center violates {', '.join(bad)}")
    return c


def atoms(c: BooleanCenter) -> tuple:
    nonzero = [e for e in c.elements if e != c.bottom]
    return tuple(
        e for e in nonzero if not any(f != e and c.leq(f, e) for f in nonzero)
    )
