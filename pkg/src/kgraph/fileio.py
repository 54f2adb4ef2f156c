"""Line-oriented text formats: k-graph files, groups, labelings, maps, actions.

k-graph grammar, one item per line, ``#`` starts a comment::

    rank 2
    vertex u
    edge a color=1 : w <- u        # r(a) = w, s(a) = u
    square d e = h a               # de = ha in the category
"""

from __future__ import annotations

import re
from typing import Iterator

from .core import Edge, KGraph, Square
from .errors import ParseError

_TOKEN = re.compile(r"<-|->|[=:,]|[^\s=:,<>]+")


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _is_name(tok: str) -> bool:
    return tok not in ("<-", "->", "=", ":", ",")


class _Cursor:
    def __init__(self, lineno: int, line: str):
        self.lineno = lineno
        self.toks = _tokens(line)
        self.end = len(line.rstrip()) + 1
        self.i = 0

    def fail(self, msg: str):
        col = self.toks[self.i][1] if self.i < len(self.toks) else self.end
        raise ParseError(msg, self.lineno, col)

    def name(self, what: str) -> str:
        if self.i >= len(self.toks) or not _is_name(self.toks[self.i][0]):
            self.fail(f"expected {what}")
        self.i += 1
        return self.toks[self.i - 1][0]

    def expect(self, tok: str) -> None:
        if self.i >= len(self.toks) or self.toks[self.i][0] != tok:
            self.fail(f"expected '{tok}'")
        self.i += 1

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def integer(self, what: str) -> int:
        tok = self.name(what)
        if not re.fullmatch(r"\d+", tok):
            self.i -= 1
            self.fail(f"expected {what} (an integer)")
        return int(tok)

    def done(self) -> None:
        if self.i < len(self.toks):
            self.fail("unexpected trailing input")


def parse_kgraph(text: str) -> KGraph:
    """Parse k-graph text into an unvalidated :class:`KGraph`."""
    rank = None
    vertices: list[str] = []
    edges: list[Edge] = []
    squares: list[Square] = []
    for lineno, line in _lines(text):
        cur = _Cursor(lineno, line)
        word = cur.name("a keyword")
        if word == "rank":
            if rank is not None:
                cur.fail("rank given twice")
            rank = cur.integer("rank")
            if rank < 1:
                cur.i -= 1
                cur.fail("rank must be at least 1")
        elif word == "vertex":
            vertices.append(cur.name("vertex name"))
            while cur.peek() is not None:
                vertices.append(cur.name("vertex name"))
        elif word == "edge":
            name = cur.name("edge name")
            key = cur.name("'color'")
            if key != "color":
                cur.i -= 1
                cur.fail("expected 'color'")
            cur.expect("=")
            color = cur.integer("colour")
            cur.expect(":")
            rng = cur.name("range vertex")
            cur.expect("<-")
            src = cur.name("source vertex")
            edges.append(Edge(name, color, rng, src))
        elif word == "square":
            e = cur.name("edge e")
            f = cur.name("edge f")
            cur.expect("=")
            g = cur.name("edge g")
            h = cur.name("edge h")
            squares.append(Square(e, f, g, h))
        else:
            cur.i -= 1
            cur.fail(f"unknown keyword '{word}'")
        cur.done()
        if word != "rank" and rank is None:
            raise ParseError("'rank' must come first", lineno, 1)
    if rank is None:
        raise ParseError("missing 'rank' line", 1, 1)
    return KGraph(rank, tuple(vertices), tuple(edges), tuple(squares))


def print_kgraph(g: KGraph) -> str:
    lines = [f"rank {g.rank}"]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.name} color={e.color} : {e.range} <- {e.source}" for e in g.edges]
    lines += [f"square {s.e} {s.f} = {s.g} {s.h}" for s in g.squares]
    return "\n".join(lines) + "\n"


def read_kgraph(path) -> KGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_kgraph(fh.read())


# -- groups and labelings ----------------------------------------------------


def parse_group_table(text: str) -> list[list[int]]:
    """``order: n`` followed by n rows of the multiplication table."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty group file", 1, 1)
    lineno, first = lines[0]
    m = re.fullmatch(r"\s*order\s*:\s*(\d+)\s*", first)
    if not m:
        raise ParseError("expected 'order: n'", lineno, 1)
    n = int(m.group(1))
    rows = []
    for lineno, line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError("table rows are integers", lineno, 1) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", lineno, 1)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"expected {n} table rows, found {len(rows)}", lines[-1][0], 1)
    return rows


def print_group_table(table) -> str:
    return f"order: {len(table)}\n" + "".join(" ".join(map(str, row)) + "\n" for row in table)


def parse_labels(text: str) -> dict[str, int]:
    """Lines ``label e = g3`` (or ``label e = 3``): edge e carries element 3."""
    labels = {}
    for lineno, line in _lines(text):
        m = re.fullmatch(r"\s*label\s+(\S+)\s*=\s*g?(\d+)\s*", line)
        if not m:
            raise ParseError("expected 'label EDGE = gN'", lineno, 1)
        labels[m.group(1)] = int(m.group(2))
    return labels


def print_labels(labels) -> str:
    return "".join(f"label {e} = g{x}\n" for e, x in labels.items())


# -- maps and actions --------------------------------------------------------


def parse_map(text: str) -> dict[str, str]:
    """Lines ``map X -> Y`` sending a vertex or edge X to Y (Y may be a path literal)."""
    out = {}
    for lineno, line in _lines(text):
        m = re.fullmatch(r"\s*map\s+(\S+)\s*->\s*(\S+)\s*", line)
        if not m:
            raise ParseError("expected 'map X -> Y'", lineno, 1)
        if m.group(1) in out:
            raise ParseError(f"{m.group(1)} mapped twice", lineno, 1)
        out[m.group(1)] = m.group(2)
    return out


def print_map(vertex_map, edge_map) -> str:
    items = list(vertex_map.items()) + list(edge_map.items())
    return "".join(f"map {a} -> {b}\n" for a, b in items)


def parse_action(text: str) -> list[dict[str, str]]:
    """Lines ``alphaJ: v->w, e->f, ...``; anything not listed is fixed."""
    gens: dict[int, dict[str, str]] = {}
    for lineno, line in _lines(text):
        m = re.fullmatch(r"\s*alpha(\d+)\s*:(.*)", line)
        if not m:
            raise ParseError("expected 'alphaJ: a->b, ...'", lineno, 1)
        j = int(m.group(1))
        perm = gens.setdefault(j, {})
        body = m.group(2).strip()
        if not body:
            continue
        for item in body.split(","):
            pm = re.fullmatch(r"\s*(\S+?)\s*->\s*(\S+)\s*", item)
            if not pm:
                raise ParseError(f"bad item '{item.strip()}'", lineno, line.find(item.strip()) + 1)
            perm[pm.group(1)] = pm.group(2)
    if sorted(gens) != list(range(1, len(gens) + 1)):
        raise ParseError(f"generators must be alpha1..alphaN, got {sorted(gens)}", 1, 1)
    return [gens[j] for j in sorted(gens)]


def print_action(perms) -> str:
    lines = []
    for j, perm in enumerate(perms, start=1):
        moved = ", ".join(f"{a}->{b}" for a, b in perm.items() if a != b)
        lines.append(f"alpha{j}: {moved}".rstrip())
    return "\n".join(lines) + "\n"
