"""The cubical CW-complex of a k-graph and closed-surface recognition.

Cells are the paths of degree m <= (1,...,1); the r-cells are those with
|m| = r.  Each cube records, per colour i in its degree, the pair of
opposite (r-1)-faces ``(λ(0, d-e_i), λ(e_i, d))``.  Everything downstream
(Euler characteristic, surface checks, JSON export) works from that face data
alone, so a complex read back from JSON behaves like a freshly built one.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .core import KGraph, Path, below, enumerate_paths, ones, segment, size, sub, unit
from .errors import NotAClosedSurface


@dataclass(frozen=True)
class Cube:
    path: Path

    @property
    def dim(self) -> int:
        return size(self.path.degree)

    @property
    def id(self) -> str:
        return str(self.path)


@dataclass(frozen=True)
class CellComplex:
    rank: int
    cells: tuple  # cells[r] = tuple of r-cell ids
    faces: dict  # id -> {colour: (front id, back id)}
    cubes: dict = field(default_factory=dict, compare=False, repr=False)

    def count(self, r: int) -> int:
        return len(self.cells[r]) if r < len(self.cells) else 0

    @property
    def counts(self) -> tuple:
        return tuple(len(c) for c in self.cells)

    def cube_faces(self, cell: str, dim: int) -> list[str]:
        """All (dim)-dimensional faces of ``cell``, with multiplicity."""
        frontier = [cell]
        while frontier and self.dimension(frontier[0]) > dim:
            frontier = [f for c in frontier for pair in self.faces[c].values() for f in pair]
        return frontier

    def dimension(self, cell: str) -> int:
        return len(self.faces.get(cell, {}))


def build_complex(g: KGraph) -> CellComplex:
    g.require_valid()
    k = g.rank
    by_dim: list[list[str]] = [[] for _ in range(k + 1)]
    faces: dict[str, dict[int, tuple[str, str]]] = {}
    cubes: dict[str, Cube] = {}
    for m in below(ones(k)):
        for lam in enumerate_paths(g, m):
            cube = Cube(lam)
            by_dim[cube.dim].append(cube.id)
            cubes[cube.id] = cube
            faces[cube.id] = {
                i: (
                    str(segment(g, lam, (0,) * k, sub(m, unit(k, i)))),
                    str(segment(g, lam, unit(k, i), m)),
                )
                for i in range(1, k + 1)
                if m[i - 1]
            }
    return CellComplex(k, tuple(tuple(c) for c in by_dim), faces, cubes)


def euler_characteristic(c: CellComplex) -> int:
    return sum((-1) ** r * len(cells) for r, cells in enumerate(c.cells))


# -- surfaces ----------------------------------------------------------------


@dataclass(frozen=True)
class SquareSlots:
    """The four edges of a 2-cell λ = ef = gh, recovered from its faces."""

    cell: str
    e: str
    f: str
    g: str
    h: str


def _squares(c: CellComplex) -> list[SquareSlots]:
    out = []
    for cell in c.cells[2] if c.rank >= 2 else ():
        (i, (gi, f)), (j, (e, h)) = sorted(c.faces[cell].items())
        # colour-i faces are the two colour-j edges and vice versa
        out.append(SquareSlots(cell, e, f, gi, h))
    return out


def _ends(c: CellComplex, edge: str) -> tuple[str, str]:
    (front, back), = c.faces[edge].values()
    return front, back  # (range, source)


def _link_ok(c: CellComplex) -> bool:
    # Nodes of the link at v are edge-ends at v; each square corner at v joins two.
    link_adj: dict[str, dict[tuple, list[tuple]]] = defaultdict(lambda: defaultdict(list))
    for sq in _squares(c):
        corners = (
            ((sq.e, "r"), (sq.g, "r")),
            ((sq.e, "s"), (sq.f, "r")),
            ((sq.g, "s"), (sq.h, "r")),
            ((sq.f, "s"), (sq.h, "s")),
        )
        for a, b in corners:
            v = _ends(c, a[0])[0 if a[1] == "r" else 1]
            link_adj[v][a].append(b)
            link_adj[v][b].append(a)
    for v in c.cells[0]:
        ends = [(x, "r") for x in c.cells[1] if _ends(c, x)[0] == v]
        ends += [(x, "s") for x in c.cells[1] if _ends(c, x)[1] == v]
        adj = link_adj.get(v, {})
        if not ends or any(len(adj.get(n, ())) != 2 for n in ends):
            return False
        seen, queue = {ends[0]}, deque([ends[0]])
        while queue:
            for nb in adj[queue.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) != len(ends):
            return False
    return True


def is_closed_surface(c: CellComplex) -> bool:
    """Every edge fills exactly two square slots and every vertex link is one cycle."""
    if c.rank != 2 or not c.cells[2]:
        return False
    used: dict[str, int] = defaultdict(int)
    for sq in _squares(c):
        for x in (sq.e, sq.f, sq.g, sq.h):
            used[x] += 1
    if any(used[x] != 2 for x in c.cells[1]):
        return False
    return _link_ok(c)


def is_orientable(c: CellComplex) -> bool:
    """Propagate square orientations across shared edges.

    A square's boundary is read as e·f·h⁻¹·g⁻¹; neighbouring squares must
    traverse their common edge in opposite directions.
    """
    occurrences: dict[str, list[tuple[int, int]]] = defaultdict(list)
    squares = _squares(c)
    for n, sq in enumerate(squares):
        for x, sign in ((sq.e, 1), (sq.f, 1), (sq.h, -1), (sq.g, -1)):
            occurrences[x].append((n, sign))
    if c.rank != 2 or any(len(occurrences[x]) != 2 for x in c.cells[1]):
        raise NotAClosedSurface("some edge is not shared by exactly two square slots")
    orient: dict[int, int] = {}
    for start in range(len(squares)):
        if start in orient:
            continue
        orient[start] = 1
        queue = deque([start])
        while queue:
            n = queue.popleft()
            for x in (squares[n].e, squares[n].f, squares[n].g, squares[n].h):
                (a, sa), (b, sb) = occurrences[x]
                # o_a * sa == -(o_b * sb)
                if a == b:
                    if sa == sb:
                        return False
                    continue
                other, so, sn = (b, sb, sa) if a == n else (a, sa, sb)
                want = -orient[n] * sn * so
                if other not in orient:
                    orient[other] = want
                    queue.append(other)
                elif orient[other] != want:
                    return False
    return True


def _connected(c: CellComplex) -> bool:
    adj = defaultdict(set)
    for x in c.cells[1]:
        r, s = _ends(c, x)
        adj[r].add(s)
        adj[s].add(r)
    if not c.cells[0]:
        return False
    seen, queue = {c.cells[0][0]}, deque([c.cells[0][0]])
    while queue:
        for b in adj[queue.popleft()]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) == len(c.cells[0])


@dataclass(frozen=True)
class SurfaceType:
    kind: str  # "Sphere", "Torus", "NonOrientable"
    genus: int = 0

    @property
    def orientable(self) -> bool:
        return self.kind != "NonOrientable"

    def __str__(self) -> str:
        if self.kind == "Sphere":
            return "Sphere"
        return f"{self.kind} genus {self.genus}"


def classify_surface(c: CellComplex) -> SurfaceType:
    if not is_closed_surface(c):
        raise NotAClosedSurface("complex is not a closed rank-2 surface")
    if not _connected(c):
        raise NotAClosedSurface("surface is not connected")
    chi = euler_characteristic(c)
    if is_orientable(c):
        genus = (2 - chi) // 2
        return SurfaceType("Sphere") if genus == 0 else SurfaceType("Torus", genus)
    return SurfaceType("NonOrientable", 2 - chi)


# -- export ------------------------------------------------------------------


def complex_to_json(c: CellComplex) -> dict:
    return {
        "rank": c.rank,
        "cells": [list(cells) for cells in c.cells],
        "faces": {
            cell: {str(i): list(pair) for i, pair in sorted(fs.items())}
            for cell, fs in c.faces.items()
            if fs
        },
    }


def complex_from_json(data: dict) -> CellComplex:
    cells = tuple(tuple(x) for x in data["cells"])
    faces = {cell: {} for dim in cells for cell in dim}
    for cell, fs in data["faces"].items():
        faces[cell] = {int(i): tuple(pair) for i, pair in fs.items()}
    return CellComplex(int(data["rank"]), cells, faces)


def export_complex(c: CellComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(complex_to_json(c), fh, indent=2)
        fh.write("\n")


def load_complex(path) -> CellComplex:
    with open(path, encoding="utf-8") as fh:
        return complex_from_json(json.load(fh))
