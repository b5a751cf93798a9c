import json

import pytest
from hypothesis import given

from gridhom.diagram import (
    GridDiagram,
    assign_weights,
    build_cn_fixture,
    cyclic_renumber,
    from_json,
    is_good,
    load_weighted,
    parse_text,
    serialize,
    to_json,
    trace_edges,
)
from gridhom.errors import BalanceError, DiagramSyntaxError, TraceError, ValidationError

from conftest import diagrams, weighted_diagrams

UNKNOT = "n=2\n* X\nX O\n"


def test_parse_unknot():
    d, w = parse_text(UNKNOT)
    assert d.n == 2
    assert w is None
    assert d.stars == ((1, 0),)
    assert d.plain_os == ((0, 1),)
    assert d.x_markings == {(1, 1), (0, 0)}
    assert d.cell(1, 0) == "*" and d.cell(0, 1) == "O" and d.cell(0, 0) == "X"


def test_comments_and_weights():
    d, w = parse_text("# a comment\nn=2\n\n* X\nX O\nweights= 3\n")
    assert w == [3]
    assert d == parse_text(UNKNOT)[0]


@pytest.mark.parametrize("text", [
    "",
    "size=2\n* X\nX O\n",
    "n=two\n* X\nX O\n",
    "n=2\n* X\n",
    "n=2\n* X X\nX O\n",
    "n=2\n* Y\nX O\n",
    "n=2\n* X\nX O\nweights= a\n",
])
def test_syntax_errors(text):
    with pytest.raises(DiagramSyntaxError):
        parse_text(text)


def test_two_os_in_a_column():
    with pytest.raises(ValidationError) as e:
        GridDiagram.from_string("* X / O X")
    assert e.value.condition == "i"


def test_knot_grid_has_nothing_to_trace():
    d = GridDiagram.from_string("O X / X O")
    with pytest.raises(TraceError):
        trace_edges(d)


def test_double_x_needs_star():
    # two X's in a row that holds only a plain O
    with pytest.raises(ValidationError) as e:
        GridDiagram.from_string("X X O / * . X / . O X")
    assert e.value.condition == "ii"


def test_marking_overlap_is_impossible_from_text():
    with pytest.raises(ValidationError):
        GridDiagram(2, ((0, 0, True), (1, 1, False)), frozenset({(0, 0), (1, 1)}))


def test_trace_unknot():
    sk = trace_edges(GridDiagram.from_string("* X / X O"))
    assert sk.vertices == ((1, 0),)
    (e,) = sk.edges
    assert e.tail == e.head == 0
    assert e.path == ((1, 1), (0, 1), (0, 0))
    assert e.xs == ((1, 1), (0, 0)) and e.os == ((0, 1),)


def test_trace_theta_like_two_vertices():
    # two O*'s joined by two edges in each direction
    d = GridDiagram.from_string("* X X . / X * . X / X . O . / . X . O")
    sk = trace_edges(d)
    assert len(sk.vertices) == 2
    assert not sk.sinks and not sk.sources


def test_balance_error():
    d = GridDiagram.from_string("* X X . / X * . X / X . O . / . X . O")
    sk = trace_edges(d)
    bad = [1] * len(sk.edges)
    bad[0] = 5
    with pytest.raises(BalanceError):
        assign_weights(d, bad)


def test_weights_reach_every_marking():
    wd = load_weighted("n=2\n* X\nX O\nweights= 4\n")
    assert wd.marking_weight == {(1, 1): 4, (0, 1): 4, (0, 0): 4, (1, 0): 4}
    assert wd.plain_o_weights == [4]
    assert wd.vertex_weight(0) == 4


def test_is_good():
    assert is_good(GridDiagram.from_string("* X / X O"))
    assert not is_good(GridDiagram.from_string("X * / O X"))


def test_cn_fixture_layout():
    f = build_cn_fixture(3)
    assert str(f) == "X X *\n. . X\n. . X"
    assert len(f.x_markings) == 4
    with pytest.raises(ValueError):
        build_cn_fixture(1)


@given(weighted_diagrams())
def test_text_round_trip(wd):
    d, w = parse_text(serialize(wd.diagram, wd.edge_weights))
    assert d == wd.diagram
    assert tuple(w) == wd.edge_weights


@given(weighted_diagrams())
def test_json_round_trip(wd):
    text = to_json(wd.diagram, wd.edge_weights)
    assert set(json.loads(text)) == {"n", "o_markings", "x_markings", "weights"}
    d, w = from_json(text)
    assert d == wd.diagram and tuple(w) == wd.edge_weights


@given(diagrams())
def test_cyclic_renumber_is_invertible(d):
    assert cyclic_renumber(cyclic_renumber(d, 1, 2), -1, -2) == d


@given(weighted_diagrams())
def test_every_vertex_balanced(wd):
    sk = wd.skeleton
    for v in range(len(sk.vertices)):
        s_in = sum(wd.edge_weights[i] for i in sk.in_edges[v])
        s_out = sum(wd.edge_weights[i] for i in sk.out_edges[v])
        assert s_in == s_out == wd.vertex_weight(v)


@given(diagrams())
def test_trace_covers_every_marking(d):
    sk = trace_edges(d)
    seen = {m for e in sk.edges for m in e.path}
    assert seen == set(d.x_markings) | set(d.plain_os)
