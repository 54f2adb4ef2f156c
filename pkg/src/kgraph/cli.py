"""Command-line interface: ``kgraph <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
parse errors.  File arguments may be ``gallery:NAME`` for a bundled example.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import gallery
from .cells import (
    build_complex,
    classify_surface,
    complex_to_json,
    euler_characteristic,
    export_complex,
    is_closed_surface,
)
from .constructions import AutomorphismAction, Tower, crossed_cube_census, crossed_product, tower_sigma
from .core import KGraph, Morphism
from .coset import Finite, coset_enumerate
from .coverings import FiniteGroup, GroupLabeling, deck_group, fiber, is_regular, relative_skew_product, skew_product
from .coverings import verify_covering
from .errors import KGraphError, ParseError
from .fileio import parse_action, parse_group_table, parse_kgraph, parse_labels, parse_map, print_kgraph
from .pi1 import pi1_presentation
from .presentation import tietze_simplify
from .smith import abelianize

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(arg: str) -> str:
    if arg.startswith("gallery:"):
        name = arg.split(":", 1)[1]
        if name not in gallery.NAMES:
            raise UsageError(f"unknown gallery example '{name}' (have {', '.join(gallery.NAMES)})")
        return gallery.text(name)
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}") from None


def _load(arg: str) -> KGraph:
    try:
        return parse_kgraph(_read_text(arg))
    except ParseError as exc:
        raise UsageError(f"{arg}: {exc}") from None


def _load_valid(arg: str) -> KGraph:
    g = _load(arg)
    g.require_valid()
    return g


def _morphism(dom: KGraph, cod: KGraph, map_arg: str) -> Morphism:
    pairs = parse_map(_read_text(map_arg))
    vmap, emap = {}, {}
    for a, b in pairs.items():
        if dom.has_vertex(a):
            vmap[a] = b
        elif dom.has_edge(a):
            emap[a] = b
        else:
            raise UsageError(f"{map_arg}: '{a}' is not a vertex or edge of the domain")
    return Morphism(dom, cod, vmap, emap)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif text:
        print(text)


# -- commands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    g = _load(args.file)
    report = g.report
    _emit(args, {"ok": report.ok, "violations": [{"kind": v.kind, "detail": v.detail} for v in report.violations]},
          str(report))
    return OK if report.ok else FAIL


def cmd_cells(args) -> int:
    c = build_complex(_load_valid(args.file))
    if args.json not in (None, "-"):
        export_complex(c, args.json)
        print(f"wrote {args.json}")
        return OK
    if args.json == "-":
        print(json.dumps(complex_to_json(c), indent=2))
        return OK
    print(" ".join(f"{r}-cells: {n}" for r, n in enumerate(c.counts)))
    return OK


def cmd_euler(args) -> int:
    c = build_complex(_load_valid(args.file))
    chi = euler_characteristic(c)
    _emit(args, {"euler_characteristic": chi, "counts": list(c.counts)}, str(chi))
    return OK


def cmd_classify(args) -> int:
    c = build_complex(_load_valid(args.file))
    if not is_closed_surface(c):
        _emit(args, {"closed_surface": False}, "not a closed surface")
        return FAIL
    s = classify_surface(c)
    _emit(args, {"closed_surface": True, "kind": s.kind, "genus": s.genus, "orientable": s.orientable,
                 "euler_characteristic": euler_characteristic(c)}, str(s))
    return OK


def cmd_pi1(args) -> int:
    g = _load_valid(args.file)
    if not g.has_vertex(args.base):
        raise UsageError(f"no vertex '{args.base}'")
    p = pi1_presentation(g, args.base)
    if args.simplify:
        p = tietze_simplify(p)
    payload = {"generators": list(p.generators), "relators": [p.format_word(r) for r in p.relators]}
    lines = []
    if args.abelianize:
        ab = abelianize(p)
        payload["abelianization"] = {"rank": ab.rank, "torsion": list(ab.torsion)}
        lines.append(str(ab))
    if args.order is not None:
        result = coset_enumerate(p, args.order)
        payload["order"] = result.order if isinstance(result, Finite) else None
        payload["order_bound"] = args.order
        lines.append(str(result))
    if not lines:
        lines.append(str(p).rstrip("\n"))
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_skew(args) -> int:
    g = _load_valid(args.file)
    try:
        group = FiniteGroup(tuple(map(tuple, parse_group_table(_read_text(args.group)))))
    except ValueError as exc:
        raise UsageError(f"{args.group}: {exc}") from None
    lab = GroupLabeling(g, group, parse_labels(_read_text(args.labels)))
    if args.subgroup is not None:
        cover, proj = relative_skew_product(lab, args.subgroup)
    else:
        cover, proj = skew_product(lab)
    report = verify_covering(proj)
    text = print_kgraph(cover).rstrip("\n")
    _emit(args, {"kgraph": print_kgraph(cover), "valid": cover.validated, "covering": report.ok}, text)
    return OK if cover.validated and report.ok else FAIL


def cmd_check_cover(args) -> int:
    dom, cod = _load_valid(args.domain), _load_valid(args.codomain)
    p = _morphism(dom, cod, args.map)
    report = verify_covering(p)
    _emit(args, {"ok": report.ok, "failures": [
        {"kind": f.kind, "vertex": f.vertex, "detail": f.detail} for f in report.failures]}, str(report))
    return OK if report.ok else FAIL


def cmd_deck(args) -> int:
    dom, cod = _load_valid(args.domain), _load_valid(args.codomain)
    p = _morphism(dom, cod, args.map)
    report = verify_covering(p)
    if not report.ok:
        _emit(args, {"ok": False, "failures": [str(f) for f in report.failures]}, str(report))
        return FAIL
    deck = deck_group(p)
    regular = is_regular(p)
    base = dom.vertices[0]
    fib = fiber(p, p.vertex_map[base])
    lines = [f"deck group order {len(deck)}", f"fiber size {len(fib)}", f"regular {str(regular).lower()}"]
    for n, gamma in enumerate(deck):
        moved = ", ".join(f"{v}->{w}" for v, w in gamma.vertex_map.items() if v != w) or "identity"
        lines.append(f"  [{n}] {moved}")
    _emit(args, {"order": len(deck), "fiber_size": len(fib), "regular": regular,
                 "elements": [dict(gamma.vertex_map) for gamma in deck]}, "\n".join(lines))
    return OK


def cmd_tower(args) -> int:
    levels = [_load_valid(f) for f in args.files]
    if len(args.maps) != len(levels) - 1:
        raise UsageError(f"{len(levels)} levels need {len(levels) - 1} --maps files")
    maps = tuple(_morphism(levels[n], levels[n - 1], m) for n, m in enumerate(args.maps, start=1))
    sigma = tower_sigma(Tower(tuple(levels), maps))
    text = print_kgraph(sigma)
    _emit(args, {"kgraph": text, "valid": sigma.validated}, text.rstrip("\n"))
    return OK if sigma.validated else FAIL


def _action(args) -> AutomorphismAction:
    g = _load_valid(args.file)
    return AutomorphismAction.from_perms(g, parse_action(_read_text(args.action)))


def cmd_crossed(args) -> int:
    cross = crossed_product(_action(args))
    text = print_kgraph(cross)
    _emit(args, {"kgraph": text, "valid": cross.validated}, text.rstrip("\n"))
    return OK if cross.validated else FAIL


def cmd_census(args) -> int:
    rows = crossed_cube_census(_action(args))
    fmt = lambda d: "(" + ",".join(map(str, d)) + ")"  # noqa: E731
    lines = [f"{fmt(r.m)} {fmt(r.n)} {r.count} {r.expected} {'ok' if r.ok else 'MISMATCH'}" for r in rows]
    _emit(args, {"ok": all(r.ok for r in rows), "rows": [
        {"m": list(r.m), "n": list(r.n), "count": r.count, "expected": r.expected} for r in rows]},
        "m n count expected\n" + "\n".join(lines))
    return OK if all(r.ok for r in rows) else FAIL


def cmd_gallery(args) -> int:
    if args.name not in gallery.NAMES:
        raise UsageError(f"unknown gallery example '{args.name}' (have {', '.join(gallery.NAMES)})")
    text = gallery.text(args.name)
    _emit(args, {"name": args.name, "kgraph": text}, text.rstrip("\n"))
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgraph", description="Finite k-graphs and their realizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, json_flag=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        return p

    command("validate", cmd_validate, "check the square table").add_argument("file")
    p = command("cells", cmd_cells, "cube census of the realization", json_flag=False)
    p.add_argument("file")
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="OUT",
                   help="write the complex as JSON to OUT (stdout if omitted)")
    command("euler", cmd_euler, "Euler characteristic").add_argument("file")
    command("classify", cmd_classify, "name a closed rank-2 surface").add_argument("file")
    p = command("pi1", cmd_pi1, "fundamental group presentation")
    p.add_argument("file")
    p.add_argument("--base", required=True)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--abelianize", action="store_true")
    p.add_argument("--order", type=int, metavar="MAX", help="coset-enumerate with at most MAX cosets")
    p = command("skew", cmd_skew, "skew product by a group labeling")
    p.add_argument("file")
    p.add_argument("--group", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--subgroup", type=int, nargs="+", metavar="ELEMENT")
    for name, func, help_text in (("check-cover", cmd_check_cover, "verify a covering map"),
                                  ("deck", cmd_deck, "deck transformations of a covering")):
        p = command(name, func, help_text)
        p.add_argument("domain")
        p.add_argument("codomain")
        p.add_argument("map")
    p = command("tower", cmd_tower, "assemble a tower of coverings")
    p.add_argument("files", nargs="+")
    p.add_argument("--maps", nargs="*", default=[])
    for name, func, help_text in (("crossed", cmd_crossed, "crossed product by commuting automorphisms"),
                                  ("census", cmd_census, "cube census of the crossed product")):
        p = command(name, func, help_text)
        p.add_argument("file")
        p.add_argument("--action", required=True)
    command("gallery", cmd_gallery, "print a bundled example").add_argument("name")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except KGraphError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
