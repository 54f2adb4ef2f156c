"""Fundamental groups of k-graphs read off the 2-skeleton.

Collapse a spanning tree of the 1-skeleton; the remaining edges generate and
every commuting square ef = gh contributes the relator e f h⁻¹ g⁻¹.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .coset import Exceeded, coset_enumerate
from .core import KGraph, Morphism, components
from .errors import BasepointMismatch, Disconnected, UnknownVertex
from .presentation import GroupPresentation, free_reduce, inverse
from .smith import abelianize

EdgeWord = tuple  # of (edge name, ±1), read left to right as groupoid composition


@dataclass(frozen=True)
class TreeData:
    base: str
    parent: Mapping[str, str]  # non-base vertex -> tree edge towards the base
    kappa: Mapping[str, EdgeWord]  # v -> a reduced word from the base to v

    @property
    def tree_edges(self) -> frozenset:
        return frozenset(self.parent.values())


def _reduce_edges(word) -> EdgeWord:
    out: list = []
    for x in word:
        if out and out[-1] == (x[0], -x[1]):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _invert_edges(word) -> EdgeWord:
    return tuple((x, -s) for x, s in reversed(word))


def spanning_tree(g: KGraph, u: str) -> TreeData:
    """BFS tree from u over the undirected 1-skeleton; ties go to the smallest edge name."""
    if not g.has_vertex(u):
        raise UnknownVertex(u)
    comps = components(g)
    if len(comps) > 1:
        raise Disconnected(comps)
    incident: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        incident[e.range].append(e.name)
        if e.source != e.range:
            incident[e.source].append(e.name)
    parent: dict[str, str] = {}
    kappa: dict[str, EdgeWord] = {u: ()}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for x in sorted(incident[a]):
            r, s = g.r(x), g.s(x)
            if r == a and s not in kappa:
                # x⁻¹ runs from r(x) = a to s(x)
                parent[s] = x
                kappa[s] = _reduce_edges(((x, -1),) + kappa[a])
                queue.append(s)
            elif s == a and r not in kappa:
                parent[r] = x
                kappa[r] = _reduce_edges(((x, 1),) + kappa[a])
                queue.append(r)
    return TreeData(u, parent, kappa)


def _generators(g: KGraph, tree: TreeData) -> list[str]:
    tree_edges = tree.tree_edges
    return [e.name for e in g.edges if e.name not in tree_edges]


def edge_word_to_generators(word: Sequence[tuple[str, int]], index: Mapping[str, int]) -> tuple:
    """Delete tree edges and read the rest as a reduced word in generators."""
    return free_reduce(index[x] * s for x, s in word if x in index)


def pi1_presentation(g: KGraph, u: str, tree: TreeData | None = None) -> GroupPresentation:
    g.require_valid()
    tree = tree or spanning_tree(g, u)
    gens = _generators(g, tree)
    index = {x: i for i, x in enumerate(gens, start=1)}
    rels = []
    for sq in g.squares:
        loop = ((sq.e, 1), (sq.f, 1), (sq.h, -1), (sq.g, -1))
        rels.append(edge_word_to_generators(loop, index))
    return GroupPresentation(tuple(gens), tuple(rels))


def loop_of_edge(tree: TreeData, x: str, g: KGraph) -> EdgeWord:
    """The loop κ_{r(x)}⁻¹ · x · κ_{s(x)} at the base vertex."""
    return _reduce_edges(_invert_edges(tree.kappa[g.r(x)]) + ((x, 1),) + tree.kappa[g.s(x)])


@dataclass(frozen=True)
class GroupHom:
    domain: GroupPresentation
    codomain: GroupPresentation
    images: tuple  # images[i] = word in the codomain for generator i+1

    def __call__(self, word: Sequence[int]) -> tuple:
        out: list[int] = []
        for x in word:
            w = self.images[abs(x) - 1]
            out.extend(w if x > 0 else inverse(w))
        return free_reduce(out)

    def relator_images(self) -> list[tuple]:
        return [self(r) for r in self.domain.relators]

    def check_relators(self, max_cosets: int | None = None) -> list[bool | None]:
        """Per domain relator: True if its image is trivial, False if not, None if undecided.

        Uses the regular coset table of the codomain when it enumerates within
        the bound; otherwise only the abelianized image can refute.
        """
        images = self.relator_images()
        result = coset_enumerate(self.codomain, max_cosets) if images else None
        out: list[bool | None] = []
        for w in images:
            if not w:
                out.append(True)
            elif result is not None and not isinstance(result, Exceeded):
                out.append(result.act(0, w) == 0)
            elif not _abelian_zero(self.codomain, w):
                out.append(False)
            else:
                out.append(None)
        return out

    def image_index(self, max_cosets: int | None = None):
        """Coset enumeration of the image subgroup: Finite(index) or Exceeded."""
        return coset_enumerate(self.codomain, max_cosets, subgroup=self.images)


def _abelian_zero(p: GroupPresentation, word: Sequence[int]) -> bool:
    """Is the image of ``word`` zero in the abelianization of ``p``?"""
    base = abelianize(p)
    extended = abelianize(p.with_relators([word]))
    return base == extended


def induced_hom(
    phi: Morphism,
    u: str,
    codomain_base: str | None = None,
    domain_tree: TreeData | None = None,
    codomain_tree: TreeData | None = None,
) -> GroupHom:
    """The homomorphism π₁(Λ, u) → π₁(Γ, φ(u)) induced by a k-graph morphism φ."""
    phi.check()
    dom, cod = phi.domain, phi.codomain
    if not dom.has_vertex(u):
        raise UnknownVertex(u)
    base = phi.vertex_map[u]
    if codomain_base is not None and codomain_base != base:
        raise BasepointMismatch(f"φ({u}) = {base}, not {codomain_base}")
    t_dom = domain_tree or spanning_tree(dom, u)
    t_cod = codomain_tree or spanning_tree(cod, base)
    if t_dom.base != u or t_cod.base != base:
        raise BasepointMismatch("spanning trees are rooted at the wrong vertices")
    p_dom = pi1_presentation(dom, u, t_dom)
    p_cod = pi1_presentation(cod, base, t_cod)
    index = {x: i for i, x in enumerate(p_cod.generators, start=1)}
    images = []
    for x in p_dom.generators:
        loop = loop_of_edge(t_dom, x, dom)
        pushed = [(phi.edge_map[y], s) for y, s in loop]
        # the pushed word is a loop at the codomain base, so the codomain κ's telescope away
        images.append(edge_word_to_generators(pushed, index))
    return GroupHom(p_dom, p_cod, tuple(images))
