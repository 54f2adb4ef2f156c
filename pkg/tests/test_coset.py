import pytest

from kgraph.coset import ENV_MAX_COSETS, Exceeded, Finite, coset_enumerate, default_max_cosets, word_is_trivial
from kgraph.presentation import GroupPresentation, parse_presentation

# textbook presentations with known orders
KNOWN = [
    ("gens: a\nrel: a a a a a\n", 5),
    ("gens: a, b\nrel: a a\nrel: b b b\nrel: a b a b\n", 6),  # S3
    ("gens: a, b\nrel: a a a a\nrel: b b\nrel: a b a b\n", 8),  # dihedral of order 8
    ("gens: a, b\nrel: a a a a\nrel: a a B B\nrel: a b a B\n", 8),  # quaternion
    ("gens: a, b\nrel: a a\nrel: b b b\nrel: a b a b a b a b\n", 24),  # S4
    ("gens: a, b\nrel: a a\nrel: b b b\nrel: a b a b a b a b a b\n", 60),  # A5
    ("gens: a, b\nrel: a b A B\nrel: a a a\nrel: b b b b\n", 12),  # Z3 x Z4
    ("gens: a, b\nrel: a\nrel: b\n", 1),
]


@pytest.mark.parametrize("text, order", KNOWN)
def test_known_orders(text, order):
    result = coset_enumerate(parse_presentation(text), 10_000)
    assert isinstance(result, Finite) and result.order == order


def test_table_is_a_permutation_representation():
    p = parse_presentation(KNOWN[5][0])
    result = coset_enumerate(p, 10_000)
    n = result.order
    for col in range(2 * p.ngens):
        assert sorted(row[col] for row in result.table) == list(range(n))
    for r in p.relators:
        assert all(result.act(c, r) == c for c in range(n))


def test_infinite_groups_exceed():
    z2 = GroupPresentation(("a", "b"), ((1, 2, -1, -2),))
    assert coset_enumerate(z2, 1000) == Exceeded(1000)
    assert coset_enumerate(GroupPresentation(("a",)), 50) == Exceeded(50)


def test_subgroup_index():
    s3 = parse_presentation(KNOWN[1][0])
    assert coset_enumerate(s3, 100, subgroup=[(1,)]).order == 3
    assert coset_enumerate(s3, 100, subgroup=[(2,)]).order == 2
    free = GroupPresentation(("a", "b"))
    assert coset_enumerate(free, 100, subgroup=[(1,), (2, 2), (2, 1, -2)]).order == 2
    # Schreier generators of the stabilizer of 0 for a -> (1 2), b -> (0 1)
    stab = [(1,), (2, 2), (2, 1, 1, -2), (2, 1, 2, -1, -2)]
    assert coset_enumerate(free, 100, subgroup=stab).order == 3


def test_trivial_group_of_no_generators():
    assert coset_enumerate(GroupPresentation(()), 1).order == 1


def test_bound_validation_and_env(monkeypatch):
    with pytest.raises(ValueError):
        coset_enumerate(GroupPresentation(("a",), ((1,),)), 0)
    monkeypatch.setenv(ENV_MAX_COSETS, "7")
    assert default_max_cosets() == 7
    assert coset_enumerate(GroupPresentation(("a",))) == Exceeded(7)
    monkeypatch.delenv(ENV_MAX_COSETS)
    assert default_max_cosets() == 100_000


def test_word_is_trivial():
    s3 = parse_presentation(KNOWN[1][0])
    assert word_is_trivial(s3, (1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2))
    assert not word_is_trivial(s3, (1,))
    assert word_is_trivial(GroupPresentation(("a",)), (1,), 10) is None
