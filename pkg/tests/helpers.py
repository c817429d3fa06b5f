"""Shared builders for the test suite."""

from __future__ import annotations

import itertools
from pathlib import Path

from orthokit.decomp import direct_product
from orthokit.enumeration import SearchSpec, enumerate_orthogroupoids
from orthokit.model import Groupoid, parse

DATA = Path(__file__).parent / "data"


def load(name: str):
    return parse((DATA / name).read_bytes())


def boolean2() -> Groupoid:
    return Groupoid.build(["0", "1"], "1", [[0, 1], [1, 1]], [1, 0])


def trivial() -> Groupoid:
    return Groupoid.build(["1"], "1", [[0]], [0])


def power(k: int) -> Groupoid:
    return direct_product([boolean2()] * k)


def idx(g, name: str) -> int:
    return g.carrier.index(name)


def orthogroupoids(max_size: int, *, zero_comm: bool = False, dedup: str = "labelled"):
    cons = {"orthogroupoid"} | ({"zero-commutative"} if zero_comm else set())
    for n in range(1, max_size + 1):
        yield from enumerate_orthogroupoids(SearchSpec(n, cons, dedup))


def all_partitions(n: int):
    """Every equivalence relation on range(n), as block-label tuples."""
    def go(i, labels, k):
        if i == n:
            yield tuple(labels)
            return
        for b in range(k + 1):
            yield from go(i + 1, labels + [b], max(k, b + 1))
    yield from go(0, [], 0)


def is_congruence(g: Groupoid, labels) -> bool:
    n = g.n
    for x, y in itertools.product(range(n), repeat=2):
        if labels[x] != labels[y]:
            continue
        if labels[g.inv[x]] != labels[g.inv[y]]:
            return False
        for c in range(n):
            if labels[g.table[x][c]] != labels[g.table[y][c]]:
                return False
            if labels[g.table[c][x]] != labels[g.table[c][y]]:
                return False
    return True


def vformations(models):
    """Every V-formation A → B1, A → B2 over the given models and all embeddings."""
    from orthokit.amalgam import VFormation, embeddings

    for A in models:
        for B1 in models:
            ij = list(embeddings(A, B1))
            if not ij:
                continue
            for B2 in models:
                for i in ij:
                    for j in embeddings(A, B2):
                        yield VFormation(A, B1, B2, i, j)
