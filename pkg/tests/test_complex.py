import math

import numpy as np
import pytest
from hypothesis import given

from gridhom.complex import (
    AnnotatedRectangle,
    Rectangle,
    cn_complex,
    empty_rectangles_from,
    hat_rectangle_filter,
    rectangles_between,
    tilde_complex,
    tilde_filter,
)
from gridhom.diagram import GridDiagram, assign_weights, build_cn_fixture, load_weighted
from gridhom.errors import TooLarge
from gridhom.state import enumerate_states
from gridhom import _kernels

from conftest import weighted_diagrams


def test_rectangle_cells_wrap():
    r = Rectangle(4, col=3, width=2, row=3, height=2)
    assert sorted(r.cells()) == [(0, 0), (0, 3), (3, 0), (3, 3)]
    assert r.contains_cell(0, 0) and not r.contains_cell(1, 1)
    assert r.contains_point_in_interior(0, 0)
    assert not r.contains_point_in_interior(3, 3)


def test_two_rectangles_between_states():
    rs = rectangles_between(3, (0, 1, 2), 0, 2)
    assert [(r.col, r.width, r.row, r.height) for r in rs] == [(0, 2, 0, 2), (2, 1, 2, 1)]


def test_filters():
    r = Rectangle(3, 0, 1, 0, 1)
    plain = AnnotatedRectangle((0,), r, ((0, 0),), (), ())
    assert hat_rectangle_filter(plain) == (True, {(0, 0): 1})
    assert not tilde_filter(plain)
    starred = AnnotatedRectangle((0,), r, (), (), ((0, 0),))
    assert hat_rectangle_filter(starred) == (False, {})
    empty = AnnotatedRectangle((0,), r, (), (), ())
    assert tilde_filter(empty)


def _edges_by_enumeration(wd):
    states = list(enumerate_states(wd.diagram))
    index = {s: i for i, s in enumerate(states)}
    out = {}
    for i, s in enumerate(states):
        for ar in empty_rectangles_from(wd.diagram, s):
            if tilde_filter(ar):
                key = (i, index[ar.target])
                out[key] = out.get(key, 0) ^ 1
    return {k for k, v in out.items() if v}


@given(weighted_diagrams(max_n=4))
def test_kernel_edges_match_readable_enumeration(wd):
    c = tilde_complex(wd)
    pairs = {}
    for s, t in zip(c.src.tolist(), c.dst.tolist()):
        pairs[(s, t)] = pairs.get((s, t), 0) ^ 1
    assert {k for k, v in pairs.items() if v} == _edges_by_enumeration(wd)


@given(weighted_diagrams(max_n=6))
def test_grading_drop(wd):
    assert tilde_complex(wd).grading_drops()


@given(weighted_diagrams(max_n=6))
def test_boundary_squares_to_zero(wd):
    c = tilde_complex(wd)
    for a, by_m in c.strata.items():
        for m in by_m:
            d1 = c.boundary(m, a)
            d0 = c.boundary(m - 1, a)
            if d1.shape[1] and d0.shape[1]:
                prod = (d0 @ d1).toarray() % 2
                assert not prod.any()


def test_unknot_has_no_differential():
    c = tilde_complex(load_weighted("n=2\n* X\nX O\n"))
    assert c.size == 2 and c.nnz == 0


def test_strata_partition_generators():
    c = tilde_complex(load_weighted("n=2\n* X\nX O\n"))
    gens = sorted(int(g) for by_m in c.strata.values() for arr in by_m.values() for g in arr)
    assert gens == list(range(c.size))


def test_cn_complex_size():
    c = cn_complex(build_cn_fixture(4))
    assert c.size == math.factorial(4)
    assert c.grading_drops()
    assert not np.any(c.alex2)


def test_too_large():
    n = _kernels.MAX_N + 1
    os_ = tuple((i, i, True) for i in range(n))
    d = GridDiagram(n, os_, frozenset())
    with pytest.raises(TooLarge):
        tilde_complex(assign_weights(d, []))
