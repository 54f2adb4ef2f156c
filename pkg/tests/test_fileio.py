import pytest

from kgraph.errors import ParseError
from kgraph.fileio import (
    parse_action,
    parse_group_table,
    parse_kgraph,
    parse_labels,
    parse_map,
    print_action,
    print_group_table,
    print_kgraph,
    print_labels,
    print_map,
)
from kgraph.gallery import NAMES, load, text


def test_sphere6_file():
    g = load("sphere6")
    assert (len(g.vertices), len(g.edges), len(g.squares)) == (6, 8, 4)
    assert g.edge("a").range == "w" and g.edge("a").source == "u"


@pytest.mark.parametrize("name", NAMES)
def test_print_parse_round_trip(name):
    g = load(name)
    once = print_kgraph(g)
    assert parse_kgraph(once) == g
    assert print_kgraph(parse_kgraph(once)) == once


def test_rank_only_file_is_an_empty_valid_graph():
    g = parse_kgraph("rank 2\n")
    assert g.rank == 2 and not g.vertices and g.validated


def test_comments_and_multi_vertex_lines():
    g = parse_kgraph("# header\nrank 1   # one colour\nvertex p q\nedge e color=1 : p <- q\n")
    assert g.vertices == ("p", "q") and g.r("e") == "p"


@pytest.mark.parametrize(
    "body, line, column",
    [
        ("rank 2\nsquare a b = c\n", 2, 15),
        ("rank 2\nedge a colour=1 : u <- v\n", 2, 8),
        ("rank 2\nedge a color=x : u <- v\n", 2, 14),
        ("rank 2\nedge a color=1 : u -> v\n", 2, 20),
        ("vertex u\nrank 2\n", 1, 1),
        ("rank 2\nrank 3\n", 2, 6),
        ("rank 2\nbogus u\n", 2, 1),
        ("rank 0\n", 1, 6),
        ("", 1, 1),
    ],
)
def test_syntax_errors_carry_positions(body, line, column):
    with pytest.raises(ParseError) as info:
        parse_kgraph(body)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_group_table_round_trip():
    table = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    assert parse_group_table(print_group_table(table)) == table
    with pytest.raises(ParseError):
        parse_group_table("order: 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_group_table("order: 2\n0 1\n1\n")


def test_labels_maps_actions():
    labels = {"a": 1, "b": 0}
    assert parse_labels(print_labels(labels)) == labels
    assert parse_labels("label a = 3\n") == {"a": 3}
    assert parse_map(print_map({"u": "u0"}, {"e": "e1"})) == {"u": "u0", "e": "e1"}
    with pytest.raises(ParseError):
        parse_map("map a -> b\nmap a -> c\n")
    perms = [{"x": "y", "y": "x"}, {}]
    assert parse_action(print_action(perms)) == perms
    with pytest.raises(ParseError):
        parse_action("alpha2: x->y\n")


def test_gallery_text_is_parseable():
    for name in NAMES:
        assert text(name).startswith("#") or text(name).startswith("rank")
