"""Finite k-graphs presented by a coloured skeleton and a table of commuting squares.

A path is stored in colour-sorted normal form: every colour-1 edge first, then
colour 2, and so on.  Edge sequences are read as category composition, so the
leftmost edge is the one traversed last and ``s(left) == r(right)`` for
neighbouring edges.  Rewriting to normal form swaps adjacent edges of
different colours along commuting squares; on a valid k-graph the result does
not depend on the order of swaps.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BoundExceeded,
    DegreeOutOfRange,
    InvalidKGraph,
    NotAMorphism,
    NotComposable,
    PointOutOfRange,
)

Degree = tuple  # tuple[int, ...] of length k
RealPoint = tuple  # tuple[Fraction, ...] of length k

DEFAULT_PATH_BOUND = 8


# -- degree arithmetic -------------------------------------------------------


def zero(k: int) -> Degree:
    return (0,) * k


def ones(k: int) -> Degree:
    return (1,) * k


def unit(k: int, i: int) -> Degree:
    """The generator e_i of N^k (colours are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def leq(m: Sequence[int], n: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(m, n))


def join(m: Sequence[int], n: Sequence[int]) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n))


def add(m: Sequence[int], n: Sequence[int]) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def sub(m: Sequence[int], n: Sequence[int]) -> Degree:
    return tuple(a - b for a, b in zip(m, n))


def size(n: Sequence[int]) -> int:
    return sum(n)


def below(n: Sequence[int]) -> Iterator[Degree]:
    """All m with 0 <= m <= n, in lexicographic order."""
    return product(*(range(c + 1) for c in n))


def floor_point(t: Sequence[Fraction]) -> Degree:
    return tuple(math.floor(c) for c in t)


def ceil_point(t: Sequence[Fraction]) -> Degree:
    return tuple(math.ceil(c) for c in t)


def as_point(t: Iterable) -> RealPoint:
    return tuple(Fraction(c) for c in t)


# -- data types --------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    name: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Square:
    """The relation ef = gh, with colour(e) = colour(h) != colour(f) = colour(g)."""

    e: str
    f: str
    g: str
    h: str

    @property
    def sides(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return (self.e, self.f), (self.g, self.h)

    @property
    def slots(self) -> tuple[str, str, str, str]:
        return (self.e, self.f, self.g, self.h)


@dataclass(frozen=True)
class Path:
    degree: Degree
    range: str
    source: str
    edges: tuple = ()

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        return "*".join(self.edges) if self.edges else self.range


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class KGraph:
    rank: int
    vertices: tuple = ()
    edges: tuple = ()  # of Edge
    squares: tuple = ()  # of Square

    # lookup tables are built lazily and never compared
    @cached_property
    def _edge(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def _swap(self) -> dict[tuple[str, str], tuple[str, str]]:
        table = {}
        for sq in self.squares:
            a, b = sq.sides
            table.setdefault(a, b)
            table.setdefault(b, a)
        return table

    @cached_property
    def _by_range(self) -> dict[tuple[str, int], list[str]]:
        out = defaultdict(list)
        for e in self.edges:
            out[e.range, e.color].append(e.name)
        return out

    @cached_property
    def _by_source(self) -> dict[tuple[str, int], list[str]]:
        out = defaultdict(list)
        for e in self.edges:
            out[e.source, e.color].append(e.name)
        return out

    @cached_property
    def _vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    @property
    def validated(self) -> bool:
        return self.report.ok

    def require_valid(self) -> None:
        if not self.report.ok:
            raise InvalidKGraph(self.report)

    # -- lookups --

    def edge(self, name: str) -> Edge:
        return self._edge[name]

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def has_edge(self, name: str) -> bool:
        return name in self._edge

    def color(self, name: str) -> int:
        return self._edge[name].color

    def r(self, name: str) -> str:
        return self._edge[name].range

    def s(self, name: str) -> str:
        return self._edge[name].source

    def edges_into(self, v: str, color: int | None = None) -> list[str]:
        """Edges with range v (optionally of one colour)."""
        if color is not None:
            return list(self._by_range.get((v, color), ()))
        return [x for c in range(1, self.rank + 1) for x in self._by_range.get((v, c), ())]

    def edges_out_of(self, v: str, color: int | None = None) -> list[str]:
        """Edges with source v (optionally of one colour)."""
        if color is not None:
            return list(self._by_source.get((v, color), ()))
        return [x for c in range(1, self.rank + 1) for x in self._by_source.get((v, c), ())]

    def swap(self, x: str, y: str) -> tuple[str, str]:
        """The other factorization of the bicoloured path xy."""
        try:
            return self._swap[x, y]
        except KeyError:
            raise InvalidKGraph(
                ValidationReport((Violation("MissingSquare", f"({x},{y})"),))
            ) from None

    def square_of(self, x: str, y: str) -> Square | None:
        for sq in self.squares:
            if (x, y) in sq.sides:
                return sq
        return None

    # -- path construction --

    def vertex_path(self, v: str) -> Path:
        return Path(zero(self.rank), v, v, ())

    def edge_path(self, name: str) -> Path:
        e = self._edge[name]
        return Path(unit(self.rank, e.color), e.range, e.source, (name,))

    def path(self, edges: Sequence[str], at: str | None = None) -> Path:
        """Normal form of the composable edge sequence ``edges``.

        An empty sequence needs ``at`` to name the vertex.
        """
        edges = tuple(edges)
        if not edges:
            if at is None:
                raise ValueError("an empty path needs a vertex")
            return self.vertex_path(at)
        for x, y in zip(edges, edges[1:]):
            if self.s(x) != self.r(y):
                raise NotComposable(f"s({x}) = {self.s(x)} but r({y}) = {self.r(y)}")
        degree = [0] * self.rank
        for x in edges:
            degree[self.color(x) - 1] += 1
        return Path(tuple(degree), self.r(edges[0]), self.s(edges[-1]), normalize(self, edges))

    def parse_path(self, text: str) -> Path:
        """Read the ``e1*e2*...`` path syntax; a bare vertex name is a vertex."""
        text = text.strip()
        if text in self._vertex_set:
            return self.vertex_path(text)
        names = [t.strip() for t in text.split("*")]
        missing = [n for n in names if n not in self._edge]
        if missing:
            raise KeyError(f"unknown edges {missing}")
        return self.path(names)


# -- validation --------------------------------------------------------------


def _skeleton_violations(g: KGraph) -> list[Violation]:
    out = []
    seen_v = set()
    for v in g.vertices:
        if v in seen_v:
            out.append(Violation("DuplicateVertex", v))
        seen_v.add(v)
    seen_e = set()
    for e in g.edges:
        if e.name in seen_e:
            out.append(Violation("DuplicateEdge", e.name))
        seen_e.add(e.name)
        if e.name in seen_v:
            out.append(Violation("NameClash", f"{e.name} is both a vertex and an edge"))
        if not 1 <= e.color <= g.rank:
            out.append(Violation("BadColor", f"{e.name} has colour {e.color} outside 1..{g.rank}"))
        for end in (e.range, e.source):
            if end not in g._vertex_set:
                out.append(Violation("UnknownVertex", f"{e.name} touches undeclared vertex {end}"))
    return out


def _square_violations(g: KGraph) -> list[Violation]:
    out = []
    for sq in g.squares:
        unknown = [x for x in sq.slots if not g.has_edge(x)]
        if unknown:
            out.append(Violation("EndpointMismatch", f"{sq}: unknown edges {unknown}"))
            continue
        ce, cf, cg, ch = (g.color(x) for x in sq.slots)
        if not (ce == ch and cf == cg and ce != cf):
            out.append(Violation("EndpointMismatch", f"{sq}: colours {ce},{cf},{cg},{ch}"))
            continue
        e, f, gg, h = sq.slots
        if not (g.s(e) == g.r(f) and g.s(gg) == g.r(h) and g.r(e) == g.r(gg) and g.s(f) == g.s(h)):
            out.append(Violation("EndpointMismatch", f"{sq}: endpoints do not match"))
    return out


def _hexagon_violations(g: KGraph) -> list[Violation]:
    out = []
    swap = g._swap

    def sw(seq, i):
        seq = list(seq)
        seq[i], seq[i + 1] = swap[seq[i], seq[i + 1]]
        return tuple(seq)

    for x in g.edges:
        for y in g.edges_into(x.source):
            if g.color(y) == x.color:
                continue
            for z in g.edges_into(g.s(y)):
                if g.color(z) in (x.color, g.color(y)):
                    continue
                t = (x.name, y, z)
                left = sw(sw(sw(t, 0), 1), 0)
                right = sw(sw(sw(t, 1), 0), 1)
                if left != right:
                    out.append(Violation("HexagonInconsistent", f"{t}: {left} vs {right}"))
    return out


def validate(g: KGraph) -> ValidationReport:
    """Check that the skeleton and squares present a unique k-graph.

    Every composable pair of differently coloured edges has to be one side of
    exactly one square; for rank >= 3 the two routes reversing a tricoloured
    path must also agree.
    """
    violations = _skeleton_violations(g)
    if violations:
        return ValidationReport(tuple(violations))
    violations = _square_violations(g)
    if violations:
        return ValidationReport(tuple(violations))

    count: dict[tuple[str, str], int] = defaultdict(int)
    for sq in g.squares:
        for side in sq.sides:
            count[side] += 1
    for side, n in count.items():
        if n > 1:
            violations.append(Violation("DuplicateSquare", f"({side[0]},{side[1]}) appears {n} times"))
    for x in g.edges:
        for y in g.edges_into(x.source):
            if g.color(y) != x.color and (x.name, y) not in count:
                violations.append(Violation("MissingSquare", f"({x.name},{y})"))
    if not violations and g.rank >= 3:
        violations = _hexagon_violations(g)
    return ValidationReport(tuple(violations))


# -- path operations ---------------------------------------------------------


def normalize(g: KGraph, edges: Sequence[str]) -> tuple:
    """Bubble-sort a composable edge sequence into colour order using square swaps."""
    seq = list(edges)
    color = g.color
    for end in range(len(seq) - 1, 0, -1):
        swapped = False
        for i in range(end):
            if color(seq[i]) > color(seq[i + 1]):
                seq[i], seq[i + 1] = g.swap(seq[i], seq[i + 1])
                swapped = True
        if not swapped:
            break
    return tuple(seq)


def compose(g: KGraph, lam: Path, mu: Path) -> Path:
    if lam.source != mu.range:
        raise NotComposable(f"s({lam}) = {lam.source} but r({mu}) = {mu.range}")
    if lam.is_vertex:
        return mu
    if mu.is_vertex:
        return lam
    return Path(add(lam.degree, mu.degree), lam.range, mu.source, normalize(g, lam.edges + mu.edges))


def _peel(g: KGraph, seq: list, m: Sequence[int]) -> tuple[list, list]:
    """Split a composable sequence into a degree-m prefix and the rest."""
    seq = list(seq)
    prefix = []
    for color, count in enumerate(m, start=1):
        for _ in range(count):
            i = next(j for j, x in enumerate(seq) if g.color(x) == color)
            while i > 0:
                seq[i - 1], seq[i] = g.swap(seq[i - 1], seq[i])
                i -= 1
            prefix.append(seq.pop(0))
    return prefix, seq


def _piece(g: KGraph, edges: Sequence[str], degree: Degree, at: str) -> Path:
    if not edges:
        return g.vertex_path(at)
    return Path(tuple(degree), g.r(edges[0]), g.s(edges[-1]), normalize(g, edges))


def segment(g: KGraph, lam: Path, m: Sequence[int], n: Sequence[int]) -> Path:
    """The unique lam(m, n) with lam = lam(0,m) lam(m,n) lam(n,d(lam))."""
    m, n = tuple(m), tuple(n)
    if len(m) != g.rank or len(n) != g.rank or not (leq(zero(g.rank), m) and leq(m, n) and leq(n, lam.degree)):
        raise DegreeOutOfRange(f"need 0 <= {m} <= {n} <= {lam.degree}")
    if m == n:
        return g.vertex_path(_vertex_at(g, lam, m))
    head, rest = _peel(g, lam.edges, m)
    at = g.s(head[-1]) if head else lam.range
    mid, _ = _peel(g, rest, sub(n, m))
    return _piece(g, mid, sub(n, m), at)


def _vertex_at(g: KGraph, lam: Path, m: Degree) -> str:
    if not any(m):
        return lam.range
    head, _ = _peel(g, lam.edges, m)
    return g.s(head[-1])


def factor(g: KGraph, lam: Path, m: Sequence[int]) -> tuple[Path, Path]:
    """The factorization lam = lam(0,m) lam(m,d(lam))."""
    return segment(g, lam, zero(g.rank), m), segment(g, lam, m, lam.degree)


def enumerate_paths(
    g: KGraph,
    n: Sequence[int],
    range_vertex: str | None = None,
    source_vertex: str | None = None,
    bound: int = DEFAULT_PATH_BOUND,
) -> list[Path]:
    """All paths of degree n, optionally restricted to vΛⁿ or Λⁿv."""
    n = tuple(n)
    if len(n) != g.rank or any(c < 0 for c in n):
        raise DegreeOutOfRange(f"{n} is not a degree of rank {g.rank}")
    if size(n) > bound:
        raise BoundExceeded(f"|{n}| = {size(n)} exceeds bound {bound}")
    source = source_vertex
    starts = [range_vertex] if range_vertex is not None else list(g.vertices)
    if size(n) == 0:
        return [g.vertex_path(v) for v in starts if source is None or v == source]
    colors = [c for c, count in enumerate(n, start=1) for _ in range(count)]
    out = []

    def extend(at: str, acc: list) -> None:
        if len(acc) == len(colors):
            if source is None or at == source:
                out.append(Path(n, g.r(acc[0]), at, tuple(acc)))
            return
        for x in g.edges_into(at, colors[len(acc)]):
            acc.append(x)
            extend(g.s(x), acc)
            acc.pop()

    for v in starts:
        extend(v, [])
    return out


def canonical_point(g: KGraph, lam: Path, t: Sequence) -> tuple[Path, RealPoint]:
    """The cube representative (lam(⌊t⌋, ⌈t⌉), t - ⌊t⌋) of the point [lam, t]."""
    t = as_point(t)
    if len(t) != g.rank or not (all(c >= 0 for c in t) and leq(t, lam.degree)):
        raise PointOutOfRange(f"{t} is not in [0, {lam.degree}]")
    lo, hi = floor_point(t), ceil_point(t)
    return segment(g, lam, lo, hi), tuple(c - f for c, f in zip(t, lo))


# -- graphs and morphisms ----------------------------------------------------


def components(g: KGraph) -> list[list[str]]:
    """Connected components of the undirected skeleton, in vertex order."""
    adj = defaultdict(list)
    for e in g.edges:
        adj[e.range].append(e.source)
        adj[e.source].append(e.range)
    seen: set[str] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        seen.add(v)
        comp, queue = [], deque([v])
        while queue:
            a = queue.popleft()
            comp.append(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        comps.append(comp)
    return comps


def is_connected(g: KGraph) -> bool:
    return len(components(g)) == 1


def relabel(g: KGraph, vertex: Mapping[str, str] | None = None, edge: Mapping[str, str] | None = None) -> KGraph:
    vertex = vertex or {}
    edge = edge or {}
    V = lambda v: vertex.get(v, v)  # noqa: E731
    E = lambda x: edge.get(x, x)  # noqa: E731
    return KGraph(
        g.rank,
        tuple(V(v) for v in g.vertices),
        tuple(Edge(E(e.name), e.color, V(e.range), V(e.source)) for e in g.edges),
        tuple(Square(*(E(x) for x in sq.slots)) for sq in g.squares),
    )


def disjoint_union(*graphs: KGraph, prefixes: Sequence[str] | None = None) -> KGraph:
    """Disjoint union; names are prefixed ``p0:``, ``p1:``... unless given."""
    if not graphs:
        raise ValueError("need at least one graph")
    k = graphs[0].rank
    if any(h.rank != k for h in graphs):
        raise ValueError("ranks differ")
    prefixes = prefixes or [f"p{i}:" for i in range(len(graphs))]
    vs, es, sqs = [], [], []
    for p, h in zip(prefixes, graphs):
        h = relabel(h, {v: p + v for v in h.vertices}, {e.name: p + e.name for e in h.edges})
        vs += h.vertices
        es += h.edges
        sqs += h.squares
    return KGraph(k, tuple(vs), tuple(es), tuple(sqs))


@dataclass(frozen=True, eq=False)
class Morphism:
    """A colour-preserving k-graph morphism given on vertices and edges."""

    domain: KGraph
    codomain: KGraph
    vertex_map: Mapping[str, str] = field(default_factory=dict)
    edge_map: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def identity(cls, g: KGraph) -> Morphism:
        return cls(g, g, {v: v for v in g.vertices}, {e.name: e.name for e in g.edges})

    def __call__(self, item):
        if isinstance(item, Path):
            return self.apply_path(item)
        if item in self.edge_map:
            return self.edge_map[item]
        return self.vertex_map[item]

    def apply_path(self, lam: Path) -> Path:
        if lam.is_vertex:
            return self.codomain.vertex_path(self.vertex_map[lam.range])
        edges = tuple(self.edge_map[x] for x in lam.edges)
        return Path(lam.degree, self.vertex_map[lam.range], self.vertex_map[lam.source], edges)

    def key(self) -> tuple:
        return (
            tuple(self.vertex_map[v] for v in self.domain.vertices),
            tuple(self.edge_map[e.name] for e in self.domain.edges),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def then(self, other: Morphism) -> Morphism:
        """``other ∘ self``."""
        return Morphism(
            self.domain,
            other.codomain,
            {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
            {e: other.edge_map[f] for e, f in self.edge_map.items()},
        )

    def problems(self) -> list[str]:
        dom, cod = self.domain, self.codomain
        out = []
        if dom.rank != cod.rank:
            return [f"ranks differ: {dom.rank} vs {cod.rank}"]
        for v in dom.vertices:
            if v not in self.vertex_map or not cod.has_vertex(self.vertex_map[v]):
                out.append(f"vertex {v} has no image in the codomain")
        for e in dom.edges:
            image = self.edge_map.get(e.name)
            if image is None or not cod.has_edge(image):
                out.append(f"edge {e.name} has no image in the codomain")
                continue
            f = cod.edge(image)
            if f.color != e.color:
                out.append(f"edge {e.name} changes colour")
            if f.range != self.vertex_map.get(e.range) or f.source != self.vertex_map.get(e.source):
                out.append(f"edge {e.name}: endpoints not preserved")
        if out:
            return out
        for sq in dom.squares:
            e, f, g, h = (self.edge_map[x] for x in sq.slots)
            if cod._swap.get((e, f)) != (g, h):
                out.append(f"square {sq} is not sent to a square")
        return out

    def check(self) -> None:
        probs = self.problems()
        if probs:
            raise NotAMorphism("; ".join(probs))

    @property
    def is_bijective(self) -> bool:
        return (
            len(set(self.vertex_map.values())) == len(self.codomain.vertices) == len(self.domain.vertices)
            and len(set(self.edge_map.values())) == len(self.codomain.edges) == len(self.domain.edges)
        )

    def inverse(self) -> Morphism:
        return Morphism(
            self.codomain,
            self.domain,
            {w: v for v, w in self.vertex_map.items()},
            {f: e for e, f in self.edge_map.items()},
        )
