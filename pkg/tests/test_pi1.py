from itertools import permutations, product

import pytest

from _graphs import gallery, rp2_involution, sphere10_to_rp2, torus_collapse, wedge
from kgraph.cells import build_complex, euler_characteristic
from kgraph.core import Edge, KGraph, Morphism, disjoint_union
from kgraph.coset import Finite
from kgraph.errors import BasepointMismatch, Disconnected, NotAMorphism, UnknownVertex
from kgraph.pi1 import induced_hom, loop_of_edge, pi1_presentation, spanning_tree
from kgraph.presentation import canonical_relator, tietze_simplify
from kgraph.smith import AbelianInvariants, abelianize

ABELIAN = {
    "sphere6": (0, ()),
    "torus4": (2, ()),
    "rp2": (0, (2,)),
    "klein": (1, (2,)),
    "sphere10": (0, ()),
}


def _walk(g, start, word):
    # a letter (x, +1) runs s(x) -> r(x); words compose right to left
    at = start
    for x, sign in reversed(word):
        if sign > 0:
            assert g.s(x) == at
            at = g.r(x)
        else:
            assert g.r(x) == at
            at = g.s(x)
    return at


def test_tree_of_a_single_vertex():
    tree = spanning_tree(gallery("loop1"), "v")
    assert tree.parent == {} and tree.kappa == {"v": ()}


@pytest.mark.parametrize("name, gens", [("torus4", 5), ("sphere6", 3), ("rp2", 4), ("sphere10", 7)])
def test_tree_words_reach_every_vertex(name, gens):
    g = gallery(name)
    u = g.vertices[0]
    tree = spanning_tree(g, u)
    assert len(tree.tree_edges) == len(g.vertices) - 1
    assert tree.kappa[u] == ()
    for v, word in tree.kappa.items():
        assert _walk(g, u, word) == v
    assert len(pi1_presentation(g, u).generators) == gens


def test_tree_errors():
    with pytest.raises(Disconnected) as info:
        spanning_tree(disjoint_union(gallery("loop1"), gallery("loop1")), "p0:v")
    assert len(info.value.components) == 2
    with pytest.raises(UnknownVertex):
        spanning_tree(gallery("loop1"), "nowhere")


@pytest.mark.parametrize("name", ABELIAN)
def test_presentation_sizes_and_deficiency(name):
    g = gallery(name)
    chi = euler_characteristic(build_complex(g))
    for u in g.vertices:
        p = pi1_presentation(g, u)
        assert p.ngens == len(g.edges) - len(g.vertices) + 1
        assert len(p.relators) == len(g.squares)
        assert p.deficiency == 1 - chi


@pytest.mark.parametrize("name", ABELIAN)
def test_abelianization_at_every_base(name):
    g = gallery(name)
    rank, torsion = ABELIAN[name]
    for u in g.vertices:
        assert abelianize(pi1_presentation(g, u)) == AbelianInvariants(rank, torsion)


def test_one_graph_gives_a_free_group():
    p = pi1_presentation(wedge(3), "o")
    assert p.ngens == 3 and not p.relators
    assert abelianize(p) == AbelianInvariants(3)


def _is_klein_relator(word):
    target = canonical_relator((1, 2, 1, -2))
    for perm in permutations((1, 2)):
        for signs in product((1, -1), repeat=2):
            renamed = tuple((1 if x > 0 else -1) * signs[abs(x) - 1] * perm[abs(x) - 1] for x in word)
            if canonical_relator(renamed) == target:
                return True
    return False


def test_klein_simplifies_to_the_standard_relator():
    simple = tietze_simplify(pi1_presentation(gallery("klein"), "u"))
    assert simple.ngens == 2 and len(simple.relators) == 1
    assert _is_klein_relator(simple.relators[0])


def test_sphere_simplifies_to_nothing():
    assert tietze_simplify(pi1_presentation(gallery("sphere6"), "u")).generators == ()


def test_loop_of_edge_is_closed():
    g = gallery("torus4")
    tree = spanning_tree(g, "u")
    for e in g.edges:
        assert _walk(g, "u", loop_of_edge(tree, e.name, g)) == "u"


def test_identity_induces_identity():
    g = gallery("klein")
    h = induced_hom(Morphism.identity(g), "u")
    assert h.images == tuple((i,) for i in range(1, h.domain.ngens + 1))


def test_covering_has_index_two_image():
    h = induced_hom(sphere10_to_rp2(), "u0")
    assert h.image_index(1000) == Finite(2, h.image_index(1000).table)
    assert all(h.check_relators(1000))
    # π₁ of the sphere is trivial, so every image word is trivial in ℤ/2
    assert all(abelianize(h.codomain.with_relators([w])) == abelianize(h.codomain) for w in h.images)


def test_collapse_onto_an_edge_kills_every_generator():
    digon = KGraph(1, ("a", "b"), (Edge("x", 1, "b", "a"), Edge("y", 1, "b", "a")), ())
    arrow = KGraph(1, ("p", "q"), (Edge("z", 1, "q", "p"),), ())
    phi = Morphism(digon, arrow, {"a": "p", "b": "q"}, {"x": "z", "y": "z"})
    h = induced_hom(phi, "a")
    assert h.domain.ngens == 1 and h.images == ((),)


def test_morphisms_send_relators_to_the_identity():
    for phi, base in ((rp2_involution(), "u"), (torus_collapse(), "u")):
        h = induced_hom(phi, base)
        for verdict in h.check_relators(1000):
            assert verdict is not False


def test_induced_hom_errors():
    phi = sphere10_to_rp2()
    with pytest.raises(BasepointMismatch):
        induced_hom(phi, "u0", codomain_base="v")
    with pytest.raises(UnknownVertex):
        induced_hom(phi, "nowhere")
    bad = Morphism(phi.domain, phi.codomain, phi.vertex_map, {**phi.edge_map, "a0": "b"})
    with pytest.raises(NotAMorphism):
        induced_hom(bad, "u0")
