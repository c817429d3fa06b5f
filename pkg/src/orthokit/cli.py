"""Command-line front end.

Exit codes: 0 success or passing check, 1 negative verdict on valid input,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import amalgam as am
from .axioms import check_orthogroupoid, lemma_suite
from .church import NotZeroCommutative, atoms, center
from .decomp import Decomposition, binary_decompose, full_decompose
from .enumeration import SearchSpec, enumerate_orthogroupoids, enumerate_orthosystems
from .induce import induce_groupoids, induced_relation
from .model import (
    CheckReport,
    Groupoid,
    OrthokitError,
    RelationalSystem,
    file_names,
    parse,
    serialize,
    validate,
)
from .relsys import check_orthogonal_system, relation_flags


class UsageError(OrthokitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse(data)


def _read_groupoid(path: str) -> Groupoid:
    s = _read(path)
    if not isinstance(s, Groupoid):
        raise UsageError(f"{path}: expected a groupoid file")
    return s


def _read_system(path: str) -> RelationalSystem:
    s = _read(path)
    if not isinstance(s, RelationalSystem):
        raise UsageError(f"{path}: expected a relsys file")
    return s


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit_report(report: CheckReport, args, out, **extra) -> int:
    if args.json:
        doc = {"command": args.command, **extra, **report.as_dict()}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write("\n".join(report.lines()) + "\n")
    return 0 if report.ok else 1


def cmd_check(args, out) -> int:
    s = _read(args.file)
    report = validate(s)
    ok = report.ok
    if ok and isinstance(s, Groupoid):
        verdict = check_orthogroupoid(s)
        report = report + verdict.report
        ok = verdict.ok
        if args.lemmas:
            lemmas = lemma_suite(s)
            report = report + lemmas
            ok = ok and lemmas.ok
    elif ok:
        report = report + check_orthogonal_system(s)
        ok = report.ok
    _emit_report(report, args, out, file=args.file)
    return 0 if ok else 1


def cmd_props(args, out) -> int:
    s = _read(args.file)
    if isinstance(s, Groupoid):
        s = induced_relation(s)
    _emit_report(relation_flags(s).checks(), args, out, file=args.file)
    return 0


def _choice_name(vector) -> str:
    return "induced" + ("_" + "-".join(str(v) for v in vector) if vector else "") + ".txt"


def cmd_induce(args, out) -> int:
    s = _read_system(args.file)
    ind = induce_groupoids(s, "enumerate-all" if args.all else "min-index")
    nm = s.carrier.name
    info = [f"# choice_points {len(ind.choice_points)}"]
    for p in ind.choice_points:
        x, y = p.pair
        cands = " ".join(nm(c) for c in p.candidates)
        info.append(f"# choice {nm(x)} {nm(y)} {p.rule} {cands}")
    for x, y in ind.overrides:
        info.append(f"# override {nm(x)} {nm(y)}")
    info.append(f"# groupoids {len(ind.groupoids)}")
    if args.out:
        d = _outdir(args.out)
        for vec, g in zip(ind.choice_vectors, ind.groupoids):
            (d / _choice_name(vec)).write_text(serialize(g))
            info.append(f"# wrote {_choice_name(vec)}")
        out.write("\n".join(info) + "\n")
    else:
        out.write("\n".join(info) + "\n")
        for vec, g in zip(ind.choice_vectors, ind.groupoids):
            out.write(f"# vector {' '.join(map(str, vec))}\n" if vec else "")
            out.write(serialize(g))
    return 0


def cmd_relate(args, out) -> int:
    text = serialize(induced_relation(_read_groupoid(args.file)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return 0


def _cayley(title: str, els, op, name) -> list[str]:
    lines = [title, " ".join(["."] + [name(e) for e in els])]
    for x in els:
        lines.append(" ".join([name(x)] + [name(op(x, y)) for y in els]))
    return lines


def cmd_center(args, out) -> int:
    g = _read_groupoid(args.file)
    try:
        c = center(g)
    except NotZeroCommutative as exc:
        out.write(f"center FAIL {exc}\n")
        return 1
    name = g.carrier.name
    at = atoms(c)
    if args.json:
        doc = {
            "command": "center",
            "file": args.file,
            "center": [name(e) for e in c.elements],
            "atoms": [name(e) for e in at],
            "join": [[name(c.join(x, y)) for y in c.elements] for x in c.elements],
            "meet": [[name(c.meet(x, y)) for y in c.elements] for x in c.elements],
            "complement": {name(x): name(c.complement(x)) for x in c.elements},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    lines = ["center " + " ".join(name(e) for e in c.elements)]
    lines.append("atoms " + " ".join(name(e) for e in at))
    lines += _cayley("join", c.elements, c.join, name)
    lines += _cayley("meet", c.elements, c.meet, name)
    lines.append("complement " + " ".join(f"{name(x)}:{name(c.complement(x))}" for x in c.elements))
    out.write("\n".join(lines) + "\n")
    return 0


def _iso_rows(g: Groupoid, d: Decomposition) -> list[list[str]]:
    fnames = [file_names(f.carrier) for f in d.factors]
    return [
        [g.carrier.name(b)] + [fn[i] for fn, i in zip(fnames, img)] for b, img in enumerate(d.iso)
    ]


def cmd_decompose(args, out) -> int:
    g = _read_groupoid(args.file)
    try:
        if args.at is not None:
            d = binary_decompose(g, g.carrier.index(args.at))
        else:
            d = full_decompose(g)
    except NotZeroCommutative as exc:
        out.write(f"decompose FAIL {exc}\n")
        return 1
    rows = _iso_rows(g, d)
    if args.out:
        dd = _outdir(args.out)
        for k, f in enumerate(d.factors, 1):
            (dd / f"factor_{k}.txt").write_text(serialize(f))
        (dd / "iso.txt").write_text("\n".join(" ".join(r) for r in rows) + "\n")
    if args.json:
        doc = {
            "command": "decompose",
            "file": args.file,
            "atoms": [g.carrier.name(e) for e in d.center_atoms],
            "factor_sizes": [f.n for f in d.factors],
            "factors": [serialize(f) for f in d.factors],
            "iso": {r[0]: r[1:] for r in rows},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    lines = ["atoms " + " ".join(g.carrier.name(e) for e in d.center_atoms)]
    lines.append("factors " + " ".join(str(f.n) for f in d.factors))
    lines += [" ".join(r) for r in rows]
    out.write("\n".join(lines) + "\n")
    return 0


def _read_map(path: str, src: Groupoid, dst: Groupoid) -> tuple:
    f = [-1] * src.n
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    for no, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if len(words) != 2:
            raise UsageError(f"{path}: line {no}: expected 'element image'")
        f[src.carrier.index(words[0])] = dst.carrier.index(words[1])
    if -1 in f:
        raise UsageError(f"{path}: map is not total")
    return tuple(f)


def _write_map(path: Path, f, src: Groupoid, dst: Groupoid) -> None:
    sn, dn = file_names(src.carrier), file_names(dst.carrier)
    path.write_text("".join(f"{sn[x]} {dn[y]}\n" for x, y in enumerate(f)))


def cmd_amalgamate(args, out) -> int:
    A, B1, B2 = (_read_groupoid(p) for p in (args.a, args.b1, args.b2))
    v = am.VFormation(A, B1, B2, _read_map(args.i, A, B1), _read_map(args.j, A, B2))
    report = am.validate_vformation(v)
    if not report.ok:
        out.write("\n".join(report.lines()) + "\n")
        return 1
    m = am.amalgamate(v)
    strong = am.verify_strong(v, m)
    d = _outdir(args.out)
    (d / "amalgam.txt").write_text(serialize(m.D))
    _write_map(d / "h.map", m.h, B1, m.D)
    _write_map(d / "k.map", m.k, B2, m.D)
    lines = report.lines() + check_orthogroupoid(m.D).lines()
    lines.append(f"strong {'PASS' if strong else 'FAIL'}")
    lines.append(f"size {m.D.n}")
    out.write("\n".join(lines) + "\n")
    return 0 if strong else 1


def cmd_enumerate(args, out) -> int:
    if args.size < 1 or args.size > 64:
        raise UsageError("--size must be between 1 and 64")
    dedup = "up-to-iso" if args.up_to_iso else "labelled"
    if args.relsys:
        cons = {"relsys-orthogonal"}
        if args.reflexive:
            cons.add("reflexive")
        if args.transitive:
            cons.add("transitive")
        stream = enumerate_orthosystems(SearchSpec(args.size, cons, dedup))
    else:
        if args.reflexive or args.transitive:
            raise UsageError("--reflexive/--transitive need --relsys")
        cons = {"orthogroupoid"} | ({"zero-commutative"} if args.zero_comm else set())
        stream = enumerate_orthogroupoids(SearchSpec(args.size, cons, dedup), jobs=args.jobs)
    if args.count_only:
        out.write(f"{sum(1 for _ in stream)}\n")
        return 0
    d = _outdir(args.out) if args.out else None
    count = 0
    for count, s in enumerate(stream, 1):
        if d is not None:
            (d / f"model_{count:05d}.txt").write_text(serialize(s))
        else:
            out.write(("\n" if count > 1 else "") + serialize(s))
    if d is not None:
        out.write(f"{count}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthokit", description="orthogonal relational systems and orthogroupoids")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="validate and check axioms")
    c.add_argument("file")
    c.add_argument("--lemmas", action="store_true")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("props", help="relation properties")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("induce", help="groupoids induced by a relational system")
    c.add_argument("file")
    c.add_argument("--all", action="store_true")
    c.add_argument("--out")

    c = sub.add_parser("relate", help="relation induced by a groupoid")
    c.add_argument("file")
    c.add_argument("--out")

    c = sub.add_parser("center", help="central elements of a 0-commutative orthogroupoid")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("decompose", help="direct decomposition along central elements")
    c.add_argument("file")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--at", metavar="E")
    mode.add_argument("--full", action="store_true")
    c.add_argument("--out")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("amalgamate", help="strong amalgam of a V-formation")
    for flag in ("--a", "--b1", "--b2", "--i", "--j", "--out"):
        c.add_argument(flag, required=True)

    c = sub.add_parser("enumerate", help="exhaustive model search")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--relsys", action="store_true")
    c.add_argument("--zero-comm", action="store_true")
    c.add_argument("--reflexive", action="store_true")
    c.add_argument("--transitive", action="store_true")
    c.add_argument("--up-to-iso", action="store_true")
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--out")
    c.add_argument("--jobs", type=int, default=1)
    return p


COMMANDS = {
    "check": cmd_check,
    "props": cmd_props,
    "induce": cmd_induce,
    "relate": cmd_relate,
    "center": cmd_center,
    "decompose": cmd_decompose,
    "amalgamate": cmd_amalgamate,
    "enumerate": cmd_enumerate,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except OrthokitError as exc:
        err.write(f"orthokit: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
