"""Groupoids induced by relational systems, and relations induced by groupoids."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .model import Groupoid, OrthokitError, RelationalSystem
from .relsys import bits, cone_mask, orthogonal, supremal_mask

MAX_CHOICES = 2**20


class EmptyConeError(OrthokitError):
    pass


class NoSupremalError(OrthokitError):
    pass


@dataclass(frozen=True)
class ChoicePoint:
    pair: tuple  # (x, y) with x <= y
    candidates: tuple
    rule: str  # "cone-choice" or "supremal-choice"


@dataclass(frozen=True)
class Induction:
    groupoids: tuple
    choice_points: tuple
    choice_vectors: tuple
    overrides: tuple  # pairs where x ⊥ y, x != 0 != y, but rule (i)/(ii) decided


def _plan(s: RelationalSystem):
    """Fixed entries, choice points and precedence overrides."""
    n, zero = s.n, s.zero
    fixed = [[-1] * n for _ in range(n)]
    points = []
    overrides = []
    for x in range(n):
        for y in range(x, n):
            xy, yx = s.related(x, y), s.related(y, x)
            special = x != zero and y != zero and orthogonal(s, x, y)
            if xy or yx:
                fixed[x][y] = y if xy else x
                fixed[y][x] = x if yx else y
                if special:
                    overrides.append((x, y))
                continue
            members = cone_mask(s, x, y)
            if special:
                cands = supremal_mask(s, members)
                if not cands:
                    raise NoSupremalError(
                        f"no supremal element for {s.carrier.name(x)}, {s.carrier.name(y)}"
                    )
                rule = "supremal-choice"
            else:
                cands = members
                if not cands:
                    raise EmptyConeError(
                        f"empty upper cone for {s.carrier.name(x)}, {s.carrier.name(y)}"
                    )
                rule = "cone-choice"
            points.append(ChoicePoint((x, y), tuple(bits(cands)), rule))
    return fixed, points, overrides


def _fill(fixed, points, choice) -> tuple:
    table = [row[:] for row in fixed]
    for p, k in zip(points, choice):
        x, y = p.pair
        table[x][y] = table[y][x] = p.candidates[k]
    return tuple(tuple(row) for row in table)


def choice_count(s: RelationalSystem) -> int:
    _, points, _ = _plan(s)
    total = 1
    for p in points:
        total *= len(p.candidates)
    return total


def iter_induced(s: RelationalSystem) -> Iterator[tuple[tuple, Groupoid]]:
    """Stream (choice vector, groupoid) over every admissible choice."""
    fixed, points, _ = _plan(s)
    total = 1
    for p in points:
        total *= len(p.candidates)
    if total > MAX_CHOICES:
        raise OrthokitError(f"{total} induced groupoids exceed the cap of {MAX_CHOICES}")
    for choice in itertools.product(*(range(len(p.candidates)) for p in points)):
        yield choice, Groupoid(s.carrier, _fill(fixed, points, choice), s.inv)


def induce_groupoids(s: RelationalSystem, policy: str = "min-index") -> Induction:
    fixed, points, overrides = _plan(s)
    if policy == "min-index":
        vectors = [tuple(0 for _ in points)]
        groupoids = [Groupoid(s.carrier, _fill(fixed, points, vectors[0]), s.inv)]
    elif policy == "enumerate-all":
        pairs = list(iter_induced(s))
        vectors = [v for v, _ in pairs]
        groupoids = [g for _, g in pairs]
    else:
        raise ValueError(f"unknown policy {policy!r}")
    return Induction(tuple(groupoids), tuple(points), tuple(vectors), tuple(overrides))


def induce_min(s: RelationalSystem) -> Groupoid:
    return induce_groupoids(s).groupoids[0]


def induced_relation(g: Groupoid) -> RelationalSystem:
    rows = []
    for x in range(g.n):
        row = 0
        for y, v in enumerate(g.table[x]):
            if v == y:
                row |= 1 << y
        rows.append(row)
    return RelationalSystem(g.carrier, tuple(rows), g.inv)
