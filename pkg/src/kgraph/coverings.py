"""Coverings of k-graphs: skew products, covering checks, fibers and deck groups.

Group elements are the indices 0..n-1 of a multiplication table.  A label
c(e) acts on the right: the lift of e at level x has source level x·c(e).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .coset import Exceeded, coset_enumerate
from .core import Edge, KGraph, Morphism, Square, below, components, enumerate_paths, size
from .errors import BoundExceeded, KGraphError, LabelingInvalid, NotASubgroup, UnknownVertex
from .pi1 import pi1_presentation, spanning_tree

CoveringMorphism = Morphism


# -- finite groups -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple  # table[a][b] = a·b
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise ValueError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for row in t for x in row):
            raise ValueError("table entries must be element indices")
        object.__setattr__(self, "table", t)
        ids = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
        if not ids:
            raise ValueError("no identity element")
        e = ids[0]
        inv = []
        for a in range(n):
            b = next((b for b in range(n) if t[a][b] == e and t[b][a] == e), None)
            if b is None:
                raise ValueError(f"element {a} has no inverse")
            inv.append(b)
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"not associative at ({a}, {b}, {c})")
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self._identity

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def elements(self) -> range:
        return range(self.order)

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def symmetric(cls, n: int) -> FiniteGroup:
        """S_n on {0..n-1}; a·b means apply a, then b."""
        perms = sorted(permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = tuple(tuple(index[tuple(b[a[i]] for i in range(n))] for b in perms) for a in perms)
        return cls(table, tuple(perms))

    @classmethod
    def direct_product(cls, a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
        """A × B with (x, y) stored at index x·|B| + y."""
        n = b.order
        table = tuple(
            tuple(a.table[i // n][j // n] * n + b.table[i % n][j % n] for j in range(a.order * n))
            for i in range(a.order * n)
        )
        return cls(table)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        h = set(subset)
        return (
            self.identity in h
            and all(0 <= a < self.order for a in h)
            and all(self.table[a][self.inv(b)] in h for a in h for b in h)
        )

    def generated(self, gens: Iterable[int]) -> frozenset:
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = self.table[a][g]
                if b not in out:
                    out.add(b)
                    frontier.append(b)
        return frozenset(out)

    def right_cosets(self, subgroup: Iterable[int]) -> list[frozenset]:
        """Cosets Hx, ordered by their smallest element."""
        h = frozenset(subgroup)
        if not self.is_subgroup(h):
            raise NotASubgroup(f"{sorted(h)} is not a subgroup")
        seen: set[int] = set()
        out = []
        for x in self.elements():
            if x not in seen:
                coset = frozenset(self.table[a][x] for a in h)
                seen |= coset
                out.append(coset)
        return out


# -- labelings and skew products ---------------------------------------------


@dataclass(frozen=True)
class GroupLabeling:
    base: KGraph
    group: FiniteGroup
    label: Mapping[str, int]

    def problems(self) -> list[str]:
        out = []
        for e in self.base.edges:
            x = self.label.get(e.name)
            if x is None or not 0 <= x < self.group.order:
                out.append(f"edge {e.name} has no label in the group")
        if out:
            return out
        c, mul = self.label, self.group.mul
        for sq in self.base.squares:
            if mul(c[sq.e], c[sq.f]) != mul(c[sq.g], c[sq.h]):
                out.append(f"square {sq.e} {sq.f} = {sq.g} {sq.h}: labels do not commute")
        return out

    def check(self) -> None:
        probs = self.problems()
        if probs:
            raise LabelingInvalid("; ".join(probs))


def iter_labelings(g: KGraph, group: FiniteGroup) -> Iterator[GroupLabeling]:
    """Every functor Λ → G, by brute force over all edge labelings."""
    names = [e.name for e in g.edges]
    for values in product(group.elements(), repeat=len(names)):
        lab = GroupLabeling(g, group, dict(zip(names, values)))
        if not lab.problems():
            yield lab


def _action_cover(g: KGraph, levels: Sequence[str], act: Mapping[str, Sequence[int]]) -> tuple[KGraph, Morphism]:
    """Cover with vertices (v, i) and edges (e, i) of source (s(e), act[e][i])."""
    n = len(levels)
    vname = lambda v, i: f"{v}.{levels[i]}"  # noqa: E731
    ename = lambda e, i: f"{e}.{levels[i]}"  # noqa: E731
    vertices = tuple(vname(v, i) for v in g.vertices for i in range(n))
    edges = tuple(
        Edge(ename(e.name, i), e.color, vname(e.range, i), vname(e.source, act[e.name][i]))
        for e in g.edges
        for i in range(n)
    )
    squares = tuple(
        Square(
            ename(sq.e, i),
            ename(sq.f, act[sq.e][i]),
            ename(sq.g, i),
            ename(sq.h, act[sq.g][i]),
        )
        for sq in g.squares
        for i in range(n)
    )
    cover = KGraph(g.rank, vertices, edges, squares)
    proj = Morphism(
        cover,
        g,
        {vname(v, i): v for v in g.vertices for i in range(n)},
        {ename(e.name, i): e.name for e in g.edges for i in range(n)},
    )
    return cover, proj


def skew_product(lab: GroupLabeling) -> tuple[KGraph, Morphism]:
    lab.check()
    grp = lab.group
    act = {e: [grp.table[x][c] for x in grp.elements()] for e, c in lab.label.items()}
    return _action_cover(lab.base, [str(x) for x in grp.elements()], act)


def relative_skew_product(lab: GroupLabeling, subgroup: Iterable[int]) -> tuple[KGraph, Morphism]:
    """Skew product by the right cosets Hx; coset Hx is named by its smallest element."""
    lab.check()
    grp = lab.group
    cosets = grp.right_cosets(subgroup)
    which = {x: n for n, coset in enumerate(cosets) for x in coset}
    act = {e: [which[grp.table[min(coset)][c]] for coset in cosets] for e, c in lab.label.items()}
    return _action_cover(lab.base, [str(min(coset)) for coset in cosets], act)


def permutation_cover(g: KGraph, perms: Mapping[str, Sequence[int]]) -> tuple[KGraph, Morphism]:
    """Cover from a right action of the edges on {0..n-1}: (e, i) has source level perms[e][i]."""
    sizes = {len(p) for p in perms.values()}
    if len(sizes) != 1 or set(perms) != {e.name for e in g.edges}:
        raise LabelingInvalid("every edge needs a permutation of the same degree")
    n = sizes.pop()
    for e, p in perms.items():
        if sorted(p) != list(range(n)):
            raise LabelingInvalid(f"label of {e} is not a permutation")
    for sq in g.squares:
        for i in range(n):
            if perms[sq.f][perms[sq.e][i]] != perms[sq.h][perms[sq.g][i]]:
                raise LabelingInvalid(f"square {sq.e} {sq.f} = {sq.g} {sq.h} does not lift at level {i}")
    return _action_cover(g, [str(i) for i in range(n)], perms)


def coset_cover(
    g: KGraph, u: str, subgroup: Sequence[Sequence[int]] = (), max_cosets: int | None = None
) -> tuple[KGraph, Morphism]:
    """The covering attached to a finite-index subgroup of π₁(Λ, u).

    ``subgroup`` lists words in the generators of ``pi1_presentation(g, u)``.
    The levels are the cosets; tree edges act trivially and a generator acts
    through its column of the coset table.
    """
    tree = spanning_tree(g, u)
    p = pi1_presentation(g, u, tree)
    result = coset_enumerate(p, max_cosets, subgroup=subgroup)
    if isinstance(result, Exceeded):
        raise BoundExceeded(f"coset enumeration exceeded {result.max_cosets} cosets")
    index = {x: i for i, x in enumerate(p.generators, start=1)}
    n = result.order
    perms = {
        e.name: [result.act(c, (index[e.name],)) for c in range(n)] if e.name in index else list(range(n))
        for e in g.edges
    }
    return permutation_cover(g, perms)


# -- covering checks ---------------------------------------------------------


@dataclass(frozen=True)
class CoveringFailure:
    kind: str  # "NotAMorphism", "NotSurjective", "NotInjective", "NotSurjectiveLocally"
    vertex: str | None
    detail: str

    def __str__(self) -> str:
        at = f" at {self.vertex}" if self.vertex is not None else ""
        return f"{self.kind}{at}: {self.detail}"


@dataclass(frozen=True)
class CoveringReport:
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "covering ok" if self.ok else "\n".join(map(str, self.failures))


def _local_failures(p: Morphism, v: str, n, side: str) -> list[CoveringFailure]:
    dom, cod = p.domain, p.codomain
    if side == "range":
        ups = enumerate_paths(dom, n, range_vertex=v)
        downs = enumerate_paths(cod, n, range_vertex=p.vertex_map[v])
        label = f"{v}Ω"
    else:
        ups = enumerate_paths(dom, n, source_vertex=v)
        downs = enumerate_paths(cod, n, source_vertex=p.vertex_map[v])
        label = f"Ω{v}"
    out = []
    images: dict[tuple, list[str]] = defaultdict(list)
    for lam in ups:
        images[p.apply_path(lam).edges].append(str(lam))
    for image, lifts in images.items():
        if len(lifts) > 1:
            out.append(
                CoveringFailure("NotInjective", v, f"{label} at degree {n}: {', '.join(lifts)} all map to {'*'.join(image)}")
            )
    missed = [str(mu) for mu in downs if mu.edges not in images]
    if missed:
        out.append(CoveringFailure("NotSurjectiveLocally", v, f"{label} at degree {n}: no lift of {', '.join(missed)}"))
    return out


def verify_covering(p: Morphism, max_degree: int = 2) -> CoveringReport:
    """Check p is a surjective morphism, bijective on vΩⁿ and Ωⁿv for 1 <= |n| <= max_degree."""
    probs = p.problems()
    if probs:
        return CoveringReport(tuple(CoveringFailure("NotAMorphism", None, x) for x in probs))
    dom, cod = p.domain, p.codomain
    failures = []
    hit_v = set(p.vertex_map.values())
    hit_e = set(p.edge_map.values())
    for v in cod.vertices:
        if v not in hit_v:
            failures.append(CoveringFailure("NotSurjective", v, "vertex has no preimage"))
    for e in cod.edges:
        if e.name not in hit_e:
            failures.append(CoveringFailure("NotSurjective", None, f"edge {e.name} has no preimage"))
    degrees = [n for n in below((max_degree,) * dom.rank) if 1 <= size(n) <= max_degree]
    for v in dom.vertices:
        for n in degrees:
            failures += _local_failures(p, v, n, "range")
            failures += _local_failures(p, v, n, "source")
    return CoveringReport(tuple(failures))


def fiber(p: Morphism, v: str) -> list[str]:
    if not p.codomain.has_vertex(v):
        raise UnknownVertex(v)
    return [w for w in p.domain.vertices if p.vertex_map[w] == v]


# -- deck transformations ----------------------------------------------------


def _lift_tables(p: Morphism):
    by_range: dict[tuple[str, str], list[str]] = defaultdict(list)
    by_source: dict[tuple[str, str], list[str]] = defaultdict(list)
    for e in p.domain.edges:
        image = p.edge_map[e.name]
        by_range[e.range, image].append(e.name)
        by_source[e.source, image].append(e.name)
    return by_range, by_source


def _propagate(p: Morphism, start: str, target: str, tables) -> Morphism | None:
    """The unique automorphism over p sending start to target, if there is one."""
    dom = p.domain
    by_range, by_source = tables
    vmap = {start: target}
    emap: dict[str, str] = {}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for x in dom.edges_into(a) + dom.edges_out_of(a):
            if x in emap:
                continue
            image = p.edge_map[x]
            if dom.r(x) == a:
                lifts = by_range.get((vmap[a], image), [])
            else:
                lifts = by_source.get((vmap[a], image), [])
            if len(lifts) != 1:
                return None
            y = lifts[0]
            emap[x] = y
            for end, end_y in ((dom.r(x), dom.r(y)), (dom.s(x), dom.s(y))):
                if end in vmap:
                    if vmap[end] != end_y:
                        return None
                else:
                    vmap[end] = end_y
                    queue.append(end)
    if len(vmap) != len(dom.vertices) or len(emap) != len(dom.edges):
        return None
    gamma = Morphism(dom, dom, vmap, emap)
    if gamma.problems() or not gamma.is_bijective:
        return None
    return gamma


def deck_group(p: Morphism) -> list[Morphism]:
    """All automorphisms γ of the (connected) cover with p∘γ = p; the identity comes first."""
    dom = p.domain
    if len(components(dom)) != 1:
        raise KGraphError("deck_group needs a connected cover")
    start = dom.vertices[0]
    tables = _lift_tables(p)
    out = []
    for target in fiber(p, p.vertex_map[start]):
        gamma = _propagate(p, start, target, tables)
        if gamma is not None:
            out.append(gamma)
    return out


def is_regular(p: Morphism) -> bool:
    start = p.domain.vertices[0]
    return len(deck_group(p)) == len(fiber(p, p.vertex_map[start]))


# -- isomorphism search ------------------------------------------------------


def _signature(g: KGraph, v: str) -> tuple:
    return tuple((len(g.edges_into(v, c)), len(g.edges_out_of(v, c))) for c in range(1, g.rank + 1))


def find_isomorphism(a: KGraph, b: KGraph) -> Morphism | None:
    """A k-graph isomorphism a → b, by backtracking over edge images."""
    if (a.rank, len(a.vertices), len(a.edges), len(a.squares)) != (b.rank, len(b.vertices), len(b.edges), len(b.squares)):
        return None
    sig_a = {v: _signature(a, v) for v in a.vertices}
    sig_b = {v: _signature(b, v) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None

    # edges in BFS order so each new edge touches an already-placed vertex
    order: list[str] = []
    seen_e: set[str] = set()
    seen_v: set[str] = set()
    for root in a.vertices:
        if root in seen_v:
            continue
        seen_v.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in sorted(a.edges_into(x) + a.edges_out_of(x)):
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                    for w in (a.r(e), a.s(e)):
                        if w not in seen_v:
                            seen_v.add(w)
                            queue.append(w)
    squares_at: dict[str, list[Square]] = defaultdict(list)
    position = {e: i for i, e in enumerate(order)}
    for sq in a.squares:
        last = max(sq.slots, key=position.__getitem__)
        squares_at[last].append(sq)

    vmap: dict[str, str] = {}
    vinv: dict[str, str] = {}
    emap: dict[str, str] = {}
    used: set[str] = set()

    def assign_vertex(v, w, placed):
        if v in vmap:
            return vmap[v] == w
        if w in vinv or sig_a[v] != sig_b[w]:
            return False
        vmap[v] = w
        vinv[w] = v
        placed.append(v)
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        color = a.color(x)
        if a.r(x) in vmap:
            candidates = b.edges_into(vmap[a.r(x)], color)
        elif a.s(x) in vmap:
            candidates = b.edges_out_of(vmap[a.s(x)], color)
        else:
            candidates = [e.name for e in b.edges if e.color == color]
        for y in candidates:
            if y in used:
                continue
            placed: list[str] = []
            if assign_vertex(a.r(x), b.r(y), placed) and assign_vertex(a.s(x), b.s(y), placed):
                emap[x] = y
                used.add(y)
                if all(b._swap.get((emap[s.e], emap[s.f])) == (emap[s.g], emap[s.h]) for s in squares_at[x]):
                    if search(i + 1):
                        return True
                del emap[x]
                used.discard(y)
            for v in placed:
                del vinv[vmap.pop(v)]
        return False

    if not search(0):
        return None
    # vertices without edges
    rest_b = [w for w in b.vertices if w not in vinv]
    for v, w in zip([v for v in a.vertices if v not in vmap], rest_b):
        vmap[v] = w
    return Morphism(a, b, vmap, emap)


def are_isomorphic(a: KGraph, b: KGraph) -> bool:
    return find_isomorphism(a, b) is not None
