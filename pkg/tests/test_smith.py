import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from kgraph.presentation import GroupPresentation
from kgraph.smith import AbelianInvariants, abelianize, exponent_matrix, smith_diagonal


def sympy_diagonal(rows):
    return [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


def test_hand_examples():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([[6, 0], [0, 4]]) == [2, 12]
    assert smith_diagonal([]) == []


def test_against_sympy_on_random_matrices():
    rng = random.Random(20260114)
    for _ in range(500):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.choice([0, 0, rng.randint(-9, 9)]) for _ in range(ncols)] for _ in range(nrows)]
        assert smith_diagonal(rows) == sympy_diagonal(rows), rows


def test_big_entries_stay_exact():
    big = 10**40 + 7
    rows = [[big, 0], [0, big * 3]]
    assert smith_diagonal(rows) == [big, 3 * big]


def test_abelianize_examples():
    torus = GroupPresentation(("a", "b"), ((1, 2, -1, -2),))
    assert abelianize(torus) == AbelianInvariants(2, ())
    klein = GroupPresentation(("a", "b"), ((1, 2, 1, -2),))
    assert abelianize(klein) == AbelianInvariants(1, (2,))
    z6 = GroupPresentation(("a", "b"), ((1, 1), (2, 2, 2), (1, 2, -1, -2)))
    assert abelianize(z6) == AbelianInvariants(0, (6,))
    assert str(abelianize(z6)) == "rank 0, torsion [6]"
    assert abelianize(GroupPresentation(())).is_trivial


def test_exponent_matrix():
    p = GroupPresentation(("a", "b"), ((1, 2, 1, -2), (2, 2)))
    assert exponent_matrix(p) == [[2, 0], [0, 2]]


def test_invariants_reject_bad_chains():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (4, 2))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    assert AbelianInvariants(0, (2, 4)).order == 8
    assert AbelianInvariants(1).order is None
