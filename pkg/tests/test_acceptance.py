"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import random
import time
from fractions import Fraction

import pytest

from _graphs import GRAPHS_FOR_PROPERTIES, RP2_SWAP, gallery, random_path, rp2_involution, sphere10_to_rp2
from kgraph.cells import SurfaceType, build_complex, classify_surface, euler_characteristic
from kgraph.constructions import (
    AutomorphismAction,
    Quasimorphism,
    Tower,
    comb_doubling,
    crossed_cube_census,
    crossed_product,
    induced_point_map,
    tower_sigma,
)
from kgraph.core import Morphism, canonical_point, compose, enumerate_paths, factor, is_connected, normalize, segment
from kgraph.coset import Exceeded, Finite, coset_enumerate
from kgraph.coverings import (
    FiniteGroup,
    deck_group,
    fiber,
    find_isomorphism,
    is_regular,
    iter_labelings,
    skew_product,
    verify_covering,
)
from kgraph.pi1 import pi1_presentation
from kgraph.presentation import tietze_simplify
from kgraph.smith import AbelianInvariants, abelianize

SURFACES = ("sphere6", "torus4", "rp2", "klein", "sphere10")
CASES = 500
F = Fraction


def criterion(n, title):
    return pytest.mark.criterion(n, title)


@criterion(1, "gallery validation under 1 s")
def test_gallery_validation():
    start = time.perf_counter()
    from kgraph.gallery import load
    graphs = [load(name) for name in SURFACES]
    assert all(g.report.ok for g in graphs)
    assert time.perf_counter() - start < 1.0


@criterion(2, "cell censuses and Euler characteristics")
def test_cell_censuses():
    expected = {
        "sphere6": ((6, 8, 4), 2),
        "torus4": ((4, 8, 4), 0),
        "rp2": ((5, 8, 4), 1),
        "klein": ((4, 8, 4), 0),
        "sphere10": ((10, 16, 8), 2),
    }
    for name, (counts, chi) in expected.items():
        c = build_complex(gallery(name))
        assert c.counts == counts and euler_characteristic(c) == chi, name


@criterion(3, "abelianized fundamental groups at every base vertex")
def test_abelianizations():
    expected = {
        "sphere6": AbelianInvariants(0),
        "torus4": AbelianInvariants(2),
        "rp2": AbelianInvariants(0, (2,)),
        "klein": AbelianInvariants(1, (2,)),
        "sphere10": AbelianInvariants(0),
    }
    for name, ab in expected.items():
        g = gallery(name)
        for u in g.vertices:
            assert abelianize(pi1_presentation(g, u)) == ab, (name, u)


@criterion(4, "coset enumeration certificates, each under 1 s")
@pytest.mark.parametrize("name, order", [("sphere6", 1), ("sphere10", 1), ("rp2", 2), ("torus4", None), ("klein", None)])
def test_finite_certification(name, order):
    g = gallery(name)
    start = time.perf_counter()
    result = coset_enumerate(pi1_presentation(g, g.vertices[0]), 1000)
    elapsed = time.perf_counter() - start
    if order is None:
        assert isinstance(result, Exceeded) and result.max_cosets == 1000
    else:
        assert isinstance(result, Finite) and result.order == order
    assert elapsed < 1.0


@criterion(5, "Tietze simplification of sphere6 and klein")
def test_tietze():
    assert tietze_simplify(pi1_presentation(gallery("sphere6"), "u")).generators == ()
    klein = tietze_simplify(pi1_presentation(gallery("klein"), "u"))
    assert klein.ngens <= 2 and len(klein.relators) == 1
    assert abelianize(klein) == AbelianInvariants(1, (2,))


@criterion(6, "surface classification")
def test_classification():
    expected = [SurfaceType("Sphere"), SurfaceType("Torus", 1), SurfaceType("NonOrientable", 1),
                SurfaceType("NonOrientable", 2), SurfaceType("Sphere")]
    assert [classify_surface(build_complex(gallery(n))) for n in SURFACES] == expected


@criterion(7, "sphere10 rebuilt as a Z/2 skew product over rp2")
def test_skew_product_reconstruction():
    rp2, z2 = gallery("rp2"), FiniteGroup.cyclic(2)
    labelings = list(iter_labelings(rp2, z2))
    assert 0 < len(labelings) <= 2 ** len(rp2.edges)
    found = None
    for lab in labelings:
        cover, proj = skew_product(lab)
        if is_connected(cover) and build_complex(cover).counts == (10, 16, 8):
            found = cover, proj
            break
    assert found is not None
    cover, proj = found
    assert verify_covering(proj).ok
    deck = deck_group(proj)
    assert len(deck) == 2 and is_regular(proj)
    for v in rp2.vertices:
        fib = fiber(proj, v)
        orbit = {gamma.vertex_map[fib[0]] for gamma in deck}
        assert orbit == set(fib)  # transitive
        for gamma in deck[1:]:
            assert all(gamma.vertex_map[w] != w for w in fib)  # free
    assert coset_enumerate(pi1_presentation(cover, cover.vertices[0]), 1000).order == 1
    assert find_isomorphism(cover, gallery("sphere10")) is not None


@criterion(8, "crossed products by the identity")
def test_crossed_products():
    loop = crossed_product(AutomorphismAction.from_perms(gallery("loop1"), [{}]))
    assert abelianize(pi1_presentation(loop, "v")) == AbelianInvariants(2)
    tor = gallery("torus4")
    cross = crossed_product(AutomorphismAction.from_perms(tor, [{}]))
    p = pi1_presentation(cross, "u")
    kill = [(p.generators.index(e.name) + 1,) for e in tor.edges if e.name in p.generators]
    assert abelianize(p.with_relators(kill)) == AbelianInvariants(1)


@criterion(9, "mapping-torus cube census")
def test_mapping_torus_census():
    actions = [
        AutomorphismAction.from_perms(gallery("loop1"), [{}]),
        AutomorphismAction.from_perms(gallery("torus4"), [{}]),
        AutomorphismAction.from_perms(gallery("rp2"), [RP2_SWAP]),
    ]
    assert rp2_involution().then(rp2_involution()) == Morphism.identity(gallery("rp2"))
    for a in actions:
        rows = crossed_cube_census(a)
        assert len(rows) == 2 ** (a.base.rank + a.l)
        assert all(r.ok for r in rows), [r for r in rows if not r.ok]


@criterion(10, "tower isotropy matches the base level")
def test_tower_isotropy():
    tor = gallery("torus4")
    ident = Morphism.identity(tor)
    towers = [
        Tower((gallery("rp2"), gallery("sphere10")), (sphere10_to_rp2(),)),
        Tower((tor, tor, tor), (ident, ident)),
    ]
    for t in towers:
        sigma = tower_sigma(t)
        assert sigma.report.ok
        base = pi1_presentation(t.levels[0], "u")
        top = pi1_presentation(sigma, "u@0")
        assert abelianize(top) == abelianize(base)
        a, b = coset_enumerate(top, 1000), coset_enumerate(base, 1000)
        if isinstance(a, Finite) or isinstance(b, Finite):
            assert isinstance(a, Finite) and isinstance(b, Finite) and a.order == b.order


# -- criterion 11: seeded randomized suites ----------------------------------

_elapsed = []


def _timed(body):
    start = time.perf_counter()
    body()
    _elapsed.append(time.perf_counter() - start)


@criterion(11, "randomized property suites")
def test_property_factorization_uniqueness():
    def body():
        rng = random.Random(1101)
        for _ in range(CASES):
            g = rng.choice(GRAPHS_FOR_PROPERTIES)
            lam = random_path(rng, g)
            m = tuple(rng.randint(0, c) for c in lam.degree)
            rest = tuple(a - b for a, b in zip(lam.degree, m))
            hits = [
                (x, y)
                for x in enumerate_paths(g, m, range_vertex=lam.range)
                for y in enumerate_paths(g, rest, source_vertex=lam.source)
                if x.source == y.range and compose(g, x, y) == lam
            ]
            assert hits == [factor(g, lam, m)]
    _timed(body)


@criterion(11, "randomized property suites")
def test_property_swap_confluence():
    def body():
        rng = random.Random(1102)
        for _ in range(CASES):
            g = rng.choice(GRAPHS_FOR_PROPERTIES)
            lam = random_path(rng, g)
            seq = list(lam.edges)
            for _ in range(3 * len(seq)):
                if len(seq) < 2:
                    break
                i = rng.randrange(len(seq) - 1)
                if g.color(seq[i]) != g.color(seq[i + 1]):
                    seq[i], seq[i + 1] = g.swap(seq[i], seq[i + 1])
            assert normalize(g, seq) == lam.edges
    _timed(body)


def _random_point(rng, degree):
    return tuple(F(rng.randint(0, 4 * d), 4) for d in degree)


def _bracket(rng, t, degree):
    lo = tuple(rng.randint(0, int(c)) for c in t)
    hi = tuple(rng.randint(-(-c.numerator // c.denominator), d) for c, d in zip(t, degree))
    return lo, hi


@criterion(11, "randomized property suites")
def test_property_canonical_point_soundness():
    def body():
        rng = random.Random(1103)
        for _ in range(CASES):
            g = rng.choice(GRAPHS_FOR_PROPERTIES)
            lam = random_path(rng, g)
            t = _random_point(rng, lam.degree)
            lo, hi = _bracket(rng, t, lam.degree)
            piece = segment(g, lam, lo, hi)
            shifted = tuple(c - p for c, p in zip(t, lo))
            assert canonical_point(g, piece, shifted) == canonical_point(g, lam, t)
    _timed(body)


@criterion(11, "randomized property suites")
def test_property_unique_path_lifting():
    covers = [sphere10_to_rp2()]
    z2 = FiniteGroup.cyclic(2)
    for lab in iter_labelings(gallery("rp2"), z2):
        covers.append(skew_product(lab)[1])
        if len(covers) == 4:
            break

    def body():
        rng = random.Random(1104)
        done = 0
        while done < CASES:
            p = rng.choice(covers)
            omega = rng.choice(p.domain.vertices)
            n = (rng.randint(0, 2), rng.randint(0, 2))
            down = enumerate_paths(p.codomain, n, source_vertex=p.vertex_map[omega])
            if not down:
                continue
            lam = rng.choice(down)
            lifts = [mu for mu in enumerate_paths(p.domain, n, source_vertex=omega)
                     if p.apply_path(mu).edges == lam.edges]
            assert len(lifts) == 1
            done += 1
    _timed(body)


@criterion(11, "randomized property suites")
def test_property_functor_laws():
    def body():
        rng = random.Random(1105)
        quasis = {n: comb_doubling(n) for n in (1, 3, 7)}
        involution = Quasimorphism.from_morphism(rp2_involution())
        for i in range(CASES):
            if i % 2:
                n = rng.choice((1, 3))
                phi, psi = quasis[n], quasis[2 * n + 1]
            else:
                phi = psi = involution
            lam = random_path(rng, phi.domain)
            t = _random_point(rng, lam.degree)
            both = phi.then(psi)
            assert induced_point_map(both, lam, t) == induced_point_map(psi, *induced_point_map(phi, lam, t))
            ident = Quasimorphism.from_morphism(Morphism.identity(phi.domain))
            assert induced_point_map(ident, lam, t) == canonical_point(phi.domain, lam, t)
    _timed(body)


@criterion(11, "randomized property suites")
def test_property_non_injectivity_witness():
    def body():
        rng = random.Random(1106)
        q = comb_doubling(3)
        d, c = q.domain, q.codomain
        tau = c.edge_path("tau1")
        assert induced_point_map(q, d.edge_path("mu"), (F(3, 4),)) == (tau, (F(1, 2),))
        for _ in range(CASES):
            t = F(rng.randint(500, 1000), 1000)
            want = canonical_point(c, tau, (2 * t - 1,))
            assert induced_point_map(q, d.edge_path("mu"), (t,)) == want
            assert induced_point_map(q, d.edge_path("nu"), (t,)) == want
    _timed(body)


@criterion(11, "randomized property suites")
def test_property_suites_total_time():
    assert len(_elapsed) == 6
    assert sum(_elapsed) < 30.0
