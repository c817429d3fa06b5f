"""Carriers, relational systems and groupoids with involution.

Elements are positional indices into a :class:`Carrier`; names only matter
when reading or writing the text format.  Relation rows are stored as int
bitmasks (bit ``y`` of ``rows[x]`` is set iff ``(x, y)`` is in the relation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

MAX_SIZE = 64
HEADER = "%orthokit v1"


class OrthokitError(ValueError):
    """Base class for input errors (CLI exit code 2)."""


class FormatError(OrthokitError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SemanticError(OrthokitError):
    pass


Witness = tuple  # tuple of (variable, element name) pairs


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witnesses: tuple = ()

    def line(self) -> str:
        if self.passed:
            return f"{self.name} PASS"
        if not self.witnesses:
            return f"{self.name} FAIL"
        first = " ".join(f"{var}={elem}" for var, elem in self.witnesses[0])
        return f"{self.name} FAIL {first}"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": [dict(w) for w in self.witnesses],
        }


@dataclass(frozen=True)
class CheckReport:
    checks: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __add__(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.checks + other.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def make_check(name: str, failures: Iterable[Witness], limit: int | None = None) -> Check:
    found = []
    for w in failures:
        found.append(tuple(w))
        if limit is not None and len(found) >= limit:
            break
    return Check(name, not found, tuple(found))


@dataclass(frozen=True)
class Carrier:
    names: tuple
    top: int

    def __post_init__(self):
        if not self.names:
            raise SemanticError("carrier must be non-empty")
        if len(self.names) > MAX_SIZE:
            raise SemanticError(f"carrier has {len(self.names)} elements, limit is {MAX_SIZE}")
        if len(set(self.names)) != len(self.names):
            dup = next(n for n in self.names if self.names.count(n) > 1)
            raise SemanticError(f"duplicate element name {dup!r}")
        for n in self.names:
            if not n or any(ch.isspace() for ch in n) or "#" in n:
                raise SemanticError(f"bad element name {n!r}")
        if not 0 <= self.top < len(self.names):
            raise SemanticError("top index out of range")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SemanticError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]


@dataclass(frozen=True)
class RelationalSystem:
    """The quadruple (A, R, ', 1) with R stored as bitmask rows."""

    carrier: Carrier
    rows: tuple
    inv: tuple

    @property
    def n(self) -> int:
        return len(self.carrier)

    @property
    def top(self) -> int:
        return self.carrier.top

    @property
    def zero(self) -> int:
        return self.inv[self.carrier.top]

    def related(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in range(self.n) if self.related(x, y)]

    @classmethod
    def from_pairs(cls, carrier: Carrier, pairs: Iterable[tuple[int, int]], inv: Sequence[int]):
        rows = [0] * len(carrier)
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(carrier, tuple(rows), tuple(inv))


@dataclass(frozen=True)
class Groupoid:
    """An algebra (D, +, ', 1); ``table[x][y]`` is ``x + y``."""

    carrier: Carrier
    table: tuple
    inv: tuple

    @property
    def n(self) -> int:
        return len(self.carrier)

    @property
    def top(self) -> int:
        return self.carrier.top

    @property
    def zero(self) -> int:
        return self.inv[self.carrier.top]

    def add(self, x: int, y: int) -> int:
        return self.table[x][y]

    def names(self) -> tuple:
        return self.carrier.names

    @classmethod
    def build(cls, names: Sequence[str], top: int | str, table, inv) -> "Groupoid":
        if isinstance(top, str):
            top = list(names).index(top)
        return cls(Carrier(tuple(names), top), tuple(tuple(r) for r in table), tuple(inv))


Structure = Union[RelationalSystem, Groupoid]


def zero_of(s: Structure) -> int:
    return s.inv[s.carrier.top]


def _witness(s: Structure, **assignment: int) -> Witness:
    return tuple((var, s.carrier.name(i)) for var, i in assignment.items())


def validate(s: Structure) -> CheckReport:
    """Structural checks; failures are reported, never raised."""
    n = s.n
    inv = s.inv
    in_range = len(inv) == n and all(0 <= v < n for v in inv)
    if in_range:
        involution = make_check(
            "involution", (_witness(s, x=x) for x in range(n) if inv[inv[x]] != x)
        )
        images = set(inv)
        bijective = make_check(
            "bijective", (_witness(s, y=y) for y in range(n) if y not in images)
        )
    else:
        involution = Check("involution", False, ())
        bijective = Check("bijective", False, ())
    checks = [involution, bijective]
    if isinstance(s, RelationalSystem):
        top = s.top
        checks.append(
            make_check("top", (_witness(s, x=x) for x in range(n) if not s.related(x, top)))
        )
        if in_range:
            checks.append(
                make_check(
                    "compatible",
                    (
                        _witness(s, x=x, y=y)
                        for x in range(n)
                        for y in range(n)
                        if s.related(x, y) and not s.related(inv[y], inv[x])
                    ),
                )
            )
    else:
        bad = []
        if len(s.table) != n:
            bad.append((("rows", str(len(s.table))),))
        for x, row in enumerate(s.table):
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    bad.append(_witness(s, x=x, y=y))
            if len(row) != n and x < n:
                bad.append(_witness(s, x=x))
        checks.append(make_check("closure", bad))
    return CheckReport(tuple(checks))


# --- text format -----------------------------------------------------------


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse(text: Union[bytes, str]) -> Structure:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [(i + 1, _strip(raw)) for i, raw in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines or lines[0][1] != HEADER:
        no = lines[0][0] if lines else 1
        raise FormatError(no, f"expected header {HEADER!r}")

    kind = names = inv_names = None
    table_rows: list[tuple[int, list[str]]] = []
    pair_rows: list[tuple[int, list[str]]] = []
    section = None
    for no, ln in lines[1:]:
        words = ln.split()
        key = words[0]
        if key == "kind":
            if len(words) != 2 or words[1] not in ("groupoid", "relsys"):
                raise FormatError(no, "kind must be 'groupoid' or 'relsys'")
            kind, section = words[1], None
        elif key == "elements":
            if len(words) < 2:
                raise FormatError(no, "no elements listed")
            names, section = (no, words[1:]), None
        elif key == "involution":
            inv_names, section = (no, words[1:]), None
        elif key == "table" and len(words) == 1:
            section = "table"
        elif key == "pairs" and len(words) == 1:
            section = "pairs"
        elif section == "table":
            table_rows.append((no, words))
        elif section == "pairs":
            if len(words) != 2:
                raise FormatError(no, "pair lines hold exactly two elements")
            pair_rows.append((no, words))
        else:
            raise FormatError(no, f"unexpected line {ln!r}")

    if kind is None:
        raise FormatError(lines[0][0], "missing 'kind' line")
    if names is None:
        raise FormatError(lines[0][0], "missing 'elements' line")
    if inv_names is None:
        raise FormatError(lines[0][0], "missing 'involution' line")
    elem = names[1]
    if len(elem) > MAX_SIZE:
        raise SemanticError(f"carrier has {len(elem)} elements, limit is {MAX_SIZE}")
    if "1" not in elem:
        raise SemanticError("no element named '1'")
    carrier = Carrier(tuple(elem), elem.index("1"))
    n = len(carrier)

    def lookup(no: int, name: str) -> int:
        if name not in carrier.names:
            raise SemanticError(f"line {no}: unknown element {name!r}")
        return carrier.names.index(name)

    no, words = inv_names
    if len(words) != n:
        raise FormatError(no, f"involution lists {len(words)} images for {n} elements")
    inv = tuple(lookup(no, w) for w in words)
    for x in range(n):
        if inv[inv[x]] != x:
            raise SemanticError(f"involution is not involutive at {carrier.name(x)!r}")
    if "0" in carrier.names and carrier.index("0") != inv[carrier.top]:
        raise SemanticError("element '0' must be the image of '1'")

    if kind == "groupoid":
        if pair_rows:
            raise FormatError(pair_rows[0][0], "pairs are not allowed in a groupoid file")
        if len(table_rows) != n:
            at = table_rows[-1][0] if table_rows else names[0]
            raise FormatError(at, f"table has {len(table_rows)} rows, expected {n}")
        table = []
        for no, row in table_rows:
            if len(row) != n:
                raise FormatError(no, f"table row has {len(row)} entries, expected {n}")
            table.append(tuple(lookup(no, w) for w in row))
        return Groupoid(carrier, tuple(table), inv)

    if table_rows:
        raise FormatError(table_rows[0][0], "a table is not allowed in a relsys file")
    rows = [0] * n
    for no, (a, b) in pair_rows:
        rows[lookup(no, a)] |= 1 << lookup(no, b)
    return RelationalSystem(carrier, tuple(rows), inv)


def file_names(carrier: Carrier) -> tuple:
    """Names as written to a file: the top element is always called '1'."""
    names = list(carrier.names)
    if names[carrier.top] != "1":
        if "1" in names:
            raise SemanticError("element '1' is not the top and cannot be renamed")
        names[carrier.top] = "1"
    return tuple(names)


def serialize(s: Structure) -> str:
    names = file_names(s.carrier)
    zero = s.inv[s.carrier.top]
    if "0" in names and names.index("0") != zero:
        raise SemanticError("element '0' is not the image of the top")
    kind = "groupoid" if isinstance(s, Groupoid) else "relsys"
    out = [
        HEADER,
        f"kind {kind}",
        "elements " + " ".join(names),
        "involution " + " ".join(names[v] for v in s.inv),
    ]
    if isinstance(s, Groupoid):
        out.append("table")
        out.extend(" ".join(names[v] for v in row) for row in s.table)
    else:
        out.append("pairs")
        out.extend(f"{names[x]} {names[y]}" for x, y in s.pairs())
    return "\n".join(out) + "\n"


def normalize(text: str) -> str:
    """Canonical whitespace: comments and blank lines dropped, single spaces."""
    kept = (" ".join(_strip(ln).split()) for ln in text.splitlines())
    return "\n".join(ln for ln in kept if ln) + "\n"


def relabel(g: Groupoid, perm: Sequence[int], names: Sequence[str] | None = None) -> Groupoid:
    """Isomorphic copy where old element ``x`` becomes new element ``perm[x]``."""
    n = g.n
    back = [0] * n
    for old, new in enumerate(perm):
        back[new] = old
    if names is None:
        names = [g.carrier.name(back[i]) for i in range(n)]
    table = tuple(tuple(perm[g.table[back[a]][back[b]]] for b in range(n)) for a in range(n))
    inv = tuple(perm[g.inv[back[a]]] for a in range(n))
    return Groupoid(Carrier(tuple(names), perm[g.top]), table, inv)

