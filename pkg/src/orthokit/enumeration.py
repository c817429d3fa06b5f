"""Exhaustive search for orthogroupoids and orthogonal relational systems.

Tables live in a flat list with -1 for unknown cells.  Forced cells are set
first; the remaining cells are filled depth first, always picking the cell
with the fewest locally consistent values (row-major on ties).  Axiom (f)
is enforced on every assignment, axiom (e) on every instance whose five
lookups are already known.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .model import Carrier, Groupoid, RelationalSystem, validate
from .relsys import check_orthogonal_system, relation_flags

GROUPOID_CONSTRAINTS = {"orthogroupoid", "zero-commutative"}
SYSTEM_CONSTRAINTS = {"relsys-orthogonal", "reflexive", "transitive"}
SOFT_LIMIT = 8


@dataclass(frozen=True)
class SearchSpec:
    size: int
    constraints: frozenset = field(default_factory=lambda: frozenset({"orthogroupoid"}))
    dedup: str = "labelled"

    def __post_init__(self):
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        unknown = self.constraints - GROUPOID_CONSTRAINTS - SYSTEM_CONSTRAINTS
        if unknown:
            raise ValueError(f"unknown constraints {sorted(unknown)}")
        if self.dedup not in ("labelled", "up-to-iso"):
            raise ValueError(f"unknown dedup mode {self.dedup!r}")
        if not 1 <= self.size <= 64:
            raise ValueError("size must be between 1 and 64")


def carrier_of(n: int) -> Carrier:
    """The fixed search carrier {0, 1, e2, e3, ...}."""
    if n == 1:
        return Carrier(("1",), 0)
    return Carrier(("0", "1") + tuple(f"e{i}" for i in range(2, n)), 1)


def involutions(n: int, fixpoint_free: bool = True) -> list[tuple]:
    """Involutions of the search carrier swapping 0 and 1."""
    if n == 1:
        return [(0,)]

    def matchings(rest):
        if not rest:
            yield []
            return
        first, others = rest[0], rest[1:]
        if not fixpoint_free:
            for m in matchings(others):
                yield [(first, first)] + m
        for k, partner in enumerate(others):
            for m in matchings(others[:k] + others[k + 1 :]):
                yield [(first, partner)] + m

    out = []
    for m in matchings(list(range(2, n))):
        inv = [0] * n
        inv[0], inv[1] = 1, 0
        for a, b in m:
            inv[a], inv[b] = b, a
        out.append(tuple(inv))
    return out


# --- the table search kernel -------------------------------------------------


class _Search:
    def __init__(self, n, inv, top, one_top=True, zero_comm=False):
        self.n, self.inv, self.top = n, inv, top
        self.zero = inv[top]
        self.T = [-1] * (n * n)
        self.ok = self._force(one_top, zero_comm) and self._consistent()
        self.free = [i for i, v in enumerate(self.T) if v < 0]

    def _set(self, x, y, v):
        i = x * self.n + y
        if self.T[i] >= 0 and self.T[i] != v:
            return False
        self.T[i] = v
        return True

    def _force(self, one_top, zero_comm):
        n, inv, top, zero = self.n, self.inv, self.top, self.zero
        ok = True
        for x in range(n):
            ok &= self._set(zero, x, x)
            ok &= self._set(x, top, top)
            ok &= self._set(x, inv[x], top)
            ok &= self._set(x, x, x)  # from (b) and (f)
            if one_top:
                ok &= self._set(top, x, top)
            if zero_comm:
                ok &= self._set(x, zero, x)
        return ok

    def _consistent(self):
        n, T = self.n, self.T
        for x in range(n):
            for y in range(n):
                r = T[x * n + y]
                if r < 0:
                    continue
                a, b = T[x * n + r], T[y * n + r]
                if (a >= 0 and a != r) or (b >= 0 and b != r):
                    return False
        return self._e_holds()

    def _e_holds(self):
        n, T, inv = self.n, self.T, self.inv
        for z in range(n):
            zc = inv[z]
            base = z * n
            for y in range(n):
                u = T[base + y]
                if u < 0:
                    continue
                uc = inv[u]
                for x in range(n):
                    w = T[base + x]
                    if w < 0:
                        continue
                    s = T[uc * n + w]
                    if s < 0:
                        continue
                    t = T[inv[s] * n + uc]
                    if t < 0:
                        continue
                    r = T[t * n + zc]
                    if r >= 0 and r != zc:
                        return False
        return True

    def _allowed(self, x, y, v):
        n, T = self.n, self.T
        a = T[x * n + v]
        if a >= 0 and a != v:
            return False
        b = T[y * n + v]
        if b >= 0 and b != v:
            return False
        if v != y:
            for q in range(n):
                if T[x * n + q] == y:
                    return False
                if T[q * n + x] == y:
                    return False
        return True

    def _candidates(self, i):
        x, y = divmod(i, self.n)
        return [v for v in range(self.n) if self._allowed(x, y, v)]

    def run(self, first: Optional[int] = None) -> Iterator[tuple]:
        """Yield completed tables; ``first`` pins the first free cell (partitioning)."""
        if not self.ok:
            return
        if first is not None and self.free:
            i = self.free[0]
            x, y = divmod(i, self.n)
            if not self._allowed(x, y, first):
                return
            self.T[i] = first
            if self._e_holds():
                yield from self._dfs([c for c in self.free if c != i])
            self.T[i] = -1
            return
        yield from self._dfs(list(self.free))

    def _dfs(self, free):
        if not free:
            n = self.n
            yield tuple(tuple(self.T[x * n : (x + 1) * n]) for x in range(n))
            return
        best, best_c = None, None
        for i in free:
            c = self._candidates(i)
            if best is None or len(c) < len(best_c):
                best, best_c = i, c
                if not c:
                    return
        rest = [c for c in free if c != best]
        T = self.T
        for v in best_c:
            T[best] = v
            if self._e_holds():
                yield from self._dfs(rest)
        T[best] = -1


def search_tables(n, inv, top, *, one_top=True, zero_comm=False, first=None) -> Iterator[tuple]:
    return _Search(n, inv, top, one_top, zero_comm).run(first)


def free_cell_count(n, inv, top, *, one_top=True, zero_comm=False) -> int:
    s = _Search(n, inv, top, one_top, zero_comm)
    return len(s.free) if s.ok else 0


def _partition(args) -> list[tuple]:
    n, inv, top, zero_comm, first = args
    return list(search_tables(n, inv, top, zero_comm=zero_comm, first=first))


def _partitions(n: int, zero_comm: bool) -> list[tuple]:
    carrier = carrier_of(n)
    parts = []
    for inv in involutions(n):
        if free_cell_count(n, inv, carrier.top, zero_comm=zero_comm):
            parts.extend((n, inv, carrier.top, zero_comm, v) for v in range(n))
        else:
            parts.append((n, inv, carrier.top, zero_comm, None))
    return parts


def enumerate_orthogroupoids(spec: SearchSpec, jobs: int = 1) -> Iterator[Groupoid]:
    bad = spec.constraints - GROUPOID_CONSTRAINTS
    if bad:
        raise ValueError(f"constraints {sorted(bad)} do not apply to groupoids")
    n = spec.size
    carrier = carrier_of(n)
    zero_comm = "zero-commutative" in spec.constraints
    parts = _partitions(n, zero_comm)
    seen: set = set()

    def emit(part, tables):
        inv = part[1]
        for table in tables:
            g = Groupoid(carrier, table, inv)
            if spec.dedup == "up-to-iso":
                key = canonical_form(g)
                if key in seen:
                    continue
                seen.add(key)
            yield g

    if jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part, tables in zip(parts, pool.map(_partition, parts)):
                yield from emit(part, tables)
    else:
        for part in parts:
            n_, inv, top, zc, first = part
            yield from emit(part, search_tables(n_, inv, top, zero_comm=zc, first=first))


def equational_models(n: int) -> Iterator[Groupoid]:
    """Tables satisfying (a),(b),(c),(e),(f) with top at index 1, any involution.

    Neither the quasi-identity (d) nor 1+x=1 is imposed.
    """
    carrier = carrier_of(n)
    if n == 1:
        invs = [(0,)]
    else:
        invs = [p for p in itertools.permutations(range(n)) if all(p[p[x]] == x for x in range(n))]
    for inv in invs:
        for table in search_tables(n, inv, carrier.top, one_top=False):
            yield Groupoid(carrier, table, inv)


# --- orthogonal relational systems -----------------------------------------


def system_matches(s: RelationalSystem, spec: SearchSpec) -> bool:
    """Membership test: does ``s`` satisfy every constraint of ``spec``?"""
    if s.n != spec.size or not validate(s).ok:
        return False
    if not check_orthogonal_system(s).ok:
        return False
    flags = relation_flags(s)
    if "reflexive" in spec.constraints and not flags.reflexive:
        return False
    if "transitive" in spec.constraints and not flags.transitive:
        return False
    return True


def _system_orbits(n: int, inv: Sequence[int], reflexive: bool):
    top, zero = 1, 0
    rows = [0] * n
    fixed = set()
    for x in range(n):
        for y in range(n):
            if y == top or x == zero or (reflexive and x == y):
                rows[x] |= 1 << y
                fixed.add((x, y))
            elif x == top or y == zero:
                # U(0,1) = {1} rules these out
                fixed.add((x, y))
    orbits = []
    seen = set(fixed)
    for x in range(n):
        for y in range(n):
            if (x, y) in seen:
                continue
            mate = (inv[y], inv[x])
            orbit = {(x, y), mate}
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
    return rows, orbits


def enumerate_orthosystems(spec: SearchSpec) -> Iterator[RelationalSystem]:
    bad = spec.constraints - SYSTEM_CONSTRAINTS
    if bad:
        raise ValueError(f"constraints {sorted(bad)} do not apply to relational systems")
    n = spec.size
    carrier = carrier_of(n)
    reflexive = "reflexive" in spec.constraints
    seen: set = set()
    for inv in involutions(n, fixpoint_free=False):
        base, orbits = _system_orbits(n, inv, reflexive)
        for pick in itertools.product((False, True), repeat=len(orbits)):
            rows = list(base)
            for on, orbit in zip(pick, orbits):
                if on:
                    for x, y in orbit:
                        rows[x] |= 1 << y
            s = RelationalSystem(carrier, tuple(rows), inv)
            if not system_matches(s, spec):
                continue
            if spec.dedup == "up-to-iso":
                key = canonical_form(s)
                if key in seen:
                    continue
                seen.add(key)
            yield s


# --- canonical forms -----------------------------------------------------------


def _orders(n: int, top: int, zero: int):
    """Bijections old -> new sending top to 0 and zero to 1."""
    head = [top] if zero == top else [top, zero]
    rest = [x for x in range(n) if x not in head]
    for tail in itertools.permutations(rest):
        perm = [0] * n
        for new, old in enumerate(head + list(tail)):
            perm[old] = new
        yield perm


def canonical_form(s) -> bytes:
    """Lexicographically least encoding over all relabelings fixing the top."""
    n, inv = s.n, s.inv
    best = None
    for perm in _orders(n, s.top, inv[s.top]):
        back = [0] * n
        for old, new in enumerate(perm):
            back[new] = old
        code = [perm[inv[back[a]]] for a in range(n)]
        if isinstance(s, Groupoid):
            for a in range(n):
                row = s.table[back[a]]
                code.extend(perm[row[back[b]]] for b in range(n))
        else:
            for a in range(n):
                code.extend(int(s.related(back[a], back[b])) for b in range(n))
        enc = bytes(code)
        if best is None or enc < best:
            best = enc
    kind = b"G" if isinstance(s, Groupoid) else b"R"
    return kind + bytes([n]) + best
