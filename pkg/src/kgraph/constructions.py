"""Quasimorphisms and their induced maps, covering towers, and crossed products by ℤˡ."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    Edge,
    KGraph,
    Morphism,
    Path,
    Square,
    Violation,
    ValidationReport,
    as_point,
    below,
    canonical_point,
    compose,
    enumerate_paths,
    ones,
    segment,
    size,
    sub,
    unit,
)
from .coverings import verify_covering
from .errors import InvalidTower, NotAnAction, PointOutOfRange


# -- quasimorphisms ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Quasimorphism:
    """A functor Λ → Γ with d(φ(λ)) = π(d(λ)) for a monoid map π: ℕᵏ → ℕˡ.

    ``pi[i-1]`` is π(e_i); ``edge_map`` sends each edge to a codomain path.
    """

    domain: KGraph
    codomain: KGraph
    pi: tuple
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, Path]

    @classmethod
    def from_morphism(cls, m: Morphism) -> Quasimorphism:
        k = m.domain.rank
        return cls(
            m.domain,
            m.codomain,
            tuple(unit(k, i) for i in range(1, k + 1)),
            dict(m.vertex_map),
            {x: m.codomain.edge_path(y) for x, y in m.edge_map.items()},
        )

    @classmethod
    def from_words(cls, domain, codomain, pi, vertex_map, edge_words: Mapping[str, str]) -> Quasimorphism:
        """Edge images as path literals ``a*b`` in the codomain."""
        return cls(domain, codomain, tuple(map(tuple, pi)), dict(vertex_map),
                   {x: codomain.parse_path(w) for x, w in edge_words.items()})

    def degree_map(self, n: Sequence) -> tuple:
        """π̃ on ℕᵏ or on real points."""
        out = [0] * self.codomain.rank
        for c, image in zip(n, self.pi):
            for j, a in enumerate(image):
                out[j] += c * a
        return tuple(out)

    def apply(self, lam: Path) -> Path:
        cod = self.codomain
        out = cod.vertex_path(self.vertex_map[lam.range])
        for x in lam.edges:
            out = compose(cod, out, self.edge_map[x])
        return out

    def then(self, other: Quasimorphism) -> Quasimorphism:
        """``other ∘ self``."""
        return Quasimorphism(
            self.domain,
            other.codomain,
            tuple(other.degree_map(p) for p in self.pi),
            {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
            {x: other.apply(p) for x, p in self.edge_map.items()},
        )


def validate_quasimorphism(q: Quasimorphism) -> ValidationReport:
    dom, cod = q.domain, q.codomain
    out = []
    if len(q.pi) != dom.rank or any(len(p) != cod.rank for p in q.pi):
        return ValidationReport((Violation("DegreeMismatch", f"π must be {dom.rank} vectors in ℕ^{cod.rank}"),))
    for v in dom.vertices:
        if not cod.has_vertex(q.vertex_map.get(v, "")):
            out.append(Violation("EndpointMismatch", f"vertex {v} has no image"))
    for e in dom.edges:
        image = q.edge_map.get(e.name)
        if image is None:
            out.append(Violation("DegreeMismatch", f"edge {e.name} has no image"))
            continue
        if image.degree != tuple(q.pi[e.color - 1]):
            out.append(Violation("DegreeMismatch", f"{e.name} ↦ {image} has degree {image.degree}, want {q.pi[e.color - 1]}"))
        if image.range != q.vertex_map.get(e.range) or image.source != q.vertex_map.get(e.source):
            out.append(Violation("EndpointMismatch", f"{e.name} ↦ {image} does not preserve r and s"))
    if out:
        return ValidationReport(tuple(out))
    for sq in dom.squares:
        left = compose(cod, q.edge_map[sq.e], q.edge_map[sq.f])
        right = compose(cod, q.edge_map[sq.g], q.edge_map[sq.h])
        if left != right:
            out.append(Violation("SquareNotPreserved", f"{sq.e} {sq.f} = {sq.g} {sq.h}: {left} vs {right}"))
    return ValidationReport(tuple(out))


def induced_point_map(q: Quasimorphism, lam: Path, t: Sequence) -> tuple[Path, tuple]:
    """φ̃([λ, t]) = [φ(λ), π̃(t)], returned as the canonical cube representative."""
    t = as_point(t)
    if len(t) != q.domain.rank or any(c < 0 or c > d for c, d in zip(t, lam.degree)):
        raise PointOutOfRange(f"{t} is not in [0, {lam.degree}]")
    return canonical_point(q.codomain, q.apply(lam), q.degree_map(t))


@dataclass(frozen=True)
class Verified:
    bound: int

    def __str__(self) -> str:
        return f"Verified up to |d| <= {self.bound} (bounded search, not a proof)"


@dataclass(frozen=True)
class CounterexampleCandidate:
    path: Path

    def __str__(self) -> str:
        return f"CounterexampleCandidate({self.path})"


def check_weak_surjectivity(q: Quasimorphism, degree_bound: int = 2):
    """Is every γ with |d(γ)| <= bound a segment φ(λ)(p, q) for some small λ?"""
    dom, cod = q.domain, q.codomain
    reached = set()
    for m in below((degree_bound,) * dom.rank):
        if size(m) > degree_bound:
            continue
        for lam in enumerate_paths(dom, m, bound=degree_bound):
            image = q.apply(lam)
            for p in below(image.degree):
                for r in below(sub(image.degree, p)):
                    if size(r) <= degree_bound:
                        hi = tuple(a + b for a, b in zip(p, r))
                        piece = segment(cod, image, p, hi)
                        reached.add((piece.edges, piece.range))
    for n in below((degree_bound,) * cod.rank):
        if size(n) > degree_bound:
            continue
        for gamma in enumerate_paths(cod, n, bound=degree_bound):
            if (gamma.edges, gamma.range) not in reached:
                return CounterexampleCandidate(gamma)
    return Verified(degree_bound)


def comb(n: int) -> KGraph:
    """A finite truncation of the 1-graph with a ray τ and two arms α, β."""
    vs = [f"v{i}" for i in range(n + 1)]
    vs += [f"a{i}" for i in range(1, n + 2)] + [f"b{i}" for i in range(1, n + 2)]
    es = [Edge(f"tau{i}", 1, f"v{i - 1}", f"v{i}") for i in range(1, n + 1)]
    es += [Edge("mu", 1, "a1", "v0"), Edge("nu", 1, "b1", "v0")]
    es += [Edge(f"alpha{i}", 1, f"a{i + 1}", f"a{i}") for i in range(1, n + 1)]
    es += [Edge(f"beta{i}", 1, f"b{i + 1}", f"b{i}") for i in range(1, n + 1)]
    return KGraph(1, tuple(vs), tuple(es), ())


def comb_doubling(n: int) -> Quasimorphism:
    """φ: comb(n) → comb(2n+1) with π(n) = 2n, injective but with non-injective φ̃."""
    dom, cod = comb(n), comb(2 * n + 1)
    vmap = {f"v{i}": f"v{2 * i + 1}" for i in range(n + 1)}
    vmap.update({f"{c}{i}": f"{c}{2 * i - 1}" for c in "ab" for i in range(1, n + 2)})
    words = {"mu": "mu*tau1", "nu": "nu*tau1"}
    words.update({f"tau{i}": f"tau{2 * i}*tau{2 * i + 1}" for i in range(1, n + 1)})
    for arm in ("alpha", "beta"):
        words.update({f"{arm}{i}": f"{arm}{2 * i}*{arm}{2 * i - 1}" for i in range(1, n + 1)})
    return Quasimorphism.from_words(dom, cod, ((2,),), vmap, words)


# -- towers ------------------------------------------------------------------


@dataclass(frozen=True)
class Tower:
    """Levels Λ₀..Λ_N with coverings maps[n-1]: Λₙ → Λₙ₋₁."""

    levels: tuple
    maps: tuple = ()

    def check(self) -> None:
        if not self.levels:
            raise InvalidTower("a tower needs at least one level")
        if len(self.maps) != len(self.levels) - 1:
            raise InvalidTower(f"{len(self.levels)} levels need {len(self.levels) - 1} maps")
        k = self.levels[0].rank
        for n, p in enumerate(self.maps, start=1):
            if p.domain != self.levels[n] or p.codomain != self.levels[n - 1]:
                raise InvalidTower(f"map {n} does not go from level {n} to level {n - 1}")
            if self.levels[n].rank != k:
                raise InvalidTower(f"level {n} has rank {self.levels[n].rank}, not {k}")
            report = verify_covering(p)
            if not report.ok:
                raise InvalidTower(f"map {n} is not a covering: {report.failures[0]}")


def level_name(x: str, n: int) -> str:
    return f"{x}@{n}"


def connector_name(v: str, n: int) -> str:
    return f"f[{v}@{n}]"


def tower_sigma(t: Tower) -> KGraph:
    """The (k+1)-graph stacking the levels, with colour-(k+1) connectors f_v: v → pₙ(v)."""
    t.check()
    k = t.levels[0].rank
    vs, es, sqs = [], [], []
    for n, g in enumerate(t.levels):
        L = lambda x: level_name(x, n)  # noqa: E731
        vs += [L(v) for v in g.vertices]
        es += [Edge(L(e.name), e.color, L(e.range), L(e.source)) for e in g.edges]
        sqs += [Square(*(L(x) for x in sq.slots)) for sq in g.squares]
    for n, p in enumerate(t.maps, start=1):
        g = t.levels[n]
        for v in g.vertices:
            es.append(Edge(connector_name(v, n), k + 1, level_name(p.vertex_map[v], n - 1), level_name(v, n)))
        for e in g.edges:
            # p(λ) · f_{s(λ)} = f_{r(λ)} · λ
            sqs.append(Square(
                level_name(p.edge_map[e.name], n - 1),
                connector_name(e.source, n),
                connector_name(e.range, n),
                level_name(e.name, n),
            ))
    return KGraph(k + 1, tuple(vs), tuple(es), tuple(sqs))


# -- crossed products --------------------------------------------------------


@dataclass(frozen=True)
class AutomorphismAction:
    """ℤˡ acting on Λ through l commuting automorphisms."""

    base: KGraph
    gens: tuple = ()  # of Morphism

    @classmethod
    def from_perms(cls, g: KGraph, perms: Sequence[Mapping[str, str]]) -> AutomorphismAction:
        """Build generators from partial maps; anything not listed is fixed."""
        gens = []
        for perm in perms:
            known = set(g.vertices) | {e.name for e in g.edges}
            bad = [x for x in list(perm) + list(perm.values()) if x not in known]
            if bad:
                raise NotAnAction(f"unknown names {bad}")
            gens.append(Morphism(
                g, g,
                {v: perm.get(v, v) for v in g.vertices},
                {e.name: perm.get(e.name, e.name) for e in g.edges},
            ))
        return cls(g, tuple(gens))

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.gens)

    def check(self) -> None:
        for j, a in enumerate(self.gens, start=1):
            if a.domain != self.base or a.codomain != self.base:
                raise NotAnAction(f"alpha{j} is not a map of the base graph")
            probs = a.problems()
            if probs or not a.is_bijective:
                raise NotAnAction(f"alpha{j} is not an automorphism: {'; '.join(probs) or 'not bijective'}")
        for i, a in enumerate(self.gens):
            for j, b in enumerate(self.gens[i + 1:], start=i + 1):
                if a.then(b).key() != b.then(a).key():
                    raise NotAnAction(f"alpha{i + 1} and alpha{j + 1} do not commute")


def translation_name(v: str, j: int) -> str:
    return f"t{j}[{v}]"


def crossed_product(a: AutomorphismAction) -> KGraph:
    """Λ ×_α ℤˡ: colours k+1..k+l are translations t_{v,j} from α_j⁻¹(v) to v."""
    a.check()
    g, k = a.base, a.base.rank
    if not a.gens:
        return g
    inv = [alpha.inverse() for alpha in a.gens]
    T = translation_name
    es = list(g.edges)
    for j, beta in enumerate(inv, start=1):
        es += [Edge(T(v, j), k + j, v, beta.vertex_map[v]) for v in g.vertices]
    sqs = list(g.squares)
    for j, beta in enumerate(inv, start=1):
        for e in g.edges:
            # e · t_{s(e),j} = t_{r(e),j} · α_j⁻¹(e)
            sqs.append(Square(e.name, T(e.source, j), T(e.range, j), beta.edge_map[e.name]))
    for j in range(1, a.l + 1):
        for jj in range(j + 1, a.l + 1):
            bj, bjj = inv[j - 1].vertex_map, inv[jj - 1].vertex_map
            for v in g.vertices:
                sqs.append(Square(T(v, j), T(bj[v], jj), T(v, jj), T(bjj[v], j)))
    return KGraph(k + a.l, g.vertices, tuple(es), tuple(sqs))


@dataclass(frozen=True)
class CensusRow:
    m: tuple
    n: tuple
    count: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.count == self.expected


def crossed_cube_census(a: AutomorphismAction) -> list[CensusRow]:
    """#cubes of degree (m, n) in Λ ×_α ℤˡ against #Λᵐ, for m <= 1_k and n <= 1_l."""
    g = a.base
    cross = crossed_product(a)
    rows = []
    for m in below(ones(g.rank)):
        expected = len(enumerate_paths(g, m))
        for n in below(ones(a.l)):
            count = len(enumerate_paths(cross, tuple(m) + tuple(n)))
            rows.append(CensusRow(tuple(m), tuple(n), count, expected))
    return rows
