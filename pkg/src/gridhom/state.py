"""Grid states and the Maslov / Alexander gradings.

A state is a permutation ``perm`` with ``perm[c]`` the horizontal circle
carrying the state point on vertical circle ``c``.  The functions here are
the readable single-state versions; ``gridhom._kernels`` evaluates the same
formulas over all ``n!`` states at once.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .diagram import GridDiagram, PlanarRealization, WeightedDiagram

State = tuple[int, ...]
Point = tuple


def enumerate_states(d: GridDiagram | int) -> Iterator[State]:
    """All ``n!`` states in lexicographic order of ``perm``."""
    n = d if isinstance(d, int) else d.n
    return itertools.permutations(range(n))


def i_pairing(a: Iterable[Point], b: Iterable[Point]) -> int:
    """Number of pairs ``p in a, q in b`` with ``p < q`` in both coordinates."""
    b = list(b)
    return sum(1 for p in a for q in b if p[0] < q[0] and p[1] < q[1])


def j_pairing2(a: Iterable[Point], b: Iterable[Point]) -> int:
    """Twice the symmetrised pairing, ``I(a, b) + I(b, a)``."""
    a, b = list(a), list(b)
    return i_pairing(a, b) + i_pairing(b, a)


def weighted_j2(points: Sequence[Point], weighted: Sequence[tuple[int, Point]]) -> int:
    """``2 J(points, sum w_k q_k)`` extended bilinearly over a formal sum."""
    return sum(w * j_pairing2(points, [q]) for w, q in weighted)


def maslov(pr: PlanarRealization, x: Sequence[int]) -> int:
    """``J(x - O, x - O) + 1`` in the given planar realization."""
    xs = pr.state_points(x)
    os = pr.o_points()
    # J(x-O, x-O) = J(x,x) - 2J(x,O) + J(O,O), all integers when expanded
    jj = (j_pairing2(xs, xs) - 2 * j_pairing2(xs, os) + j_pairing2(os, os)) // 2
    return jj + 1


def alexander2(pr: PlanarRealization, wd: WeightedDiagram, x: Sequence[int]) -> int:
    """Twice ``J(x, sum w(X) X - sum w(O) O)``."""
    d = pr.diagram
    xs = pr.state_points(x)
    formal = [(wd.marking_weight[(r, c)], pr.marking_point(r, c)) for r, c in d.x_markings]
    formal += [(-wd.marking_weight[(r, c)], pr.marking_point(r, c)) for r, c, _ in d.o_markings]
    return weighted_j2(xs, formal)


def _point_tables(n, cut_row, cut_col, o_pts, o_w, x_pts, x_w):
    """Per lattice point (torus col, row): J2 against the O set, and the
    weighted J2 against ``sum w(X) X - sum w(O) O``."""
    cols = 2 * ((np.arange(n) - cut_col) % n)
    rows = 2 * ((np.arange(n) - cut_row) % n)
    px = cols[:, None]
    py = rows[None, :]

    def j2_with(points):
        if len(points) == 0:
            return np.zeros((0, n, n), dtype=np.int64)
        qx = points[:, 0][:, None, None]
        qy = points[:, 1][:, None, None]
        below = (px[None] < qx) & (py[None] < qy)
        above = (qx < px[None]) & (qy < py[None])
        return (below.astype(np.int64) + above.astype(np.int64))

    jo = j2_with(o_pts)
    jx = j2_with(x_pts)
    f = jo.sum(axis=0) if len(o_pts) else np.zeros((n, n), dtype=np.int64)
    g = np.zeros((n, n), dtype=np.int64)
    if len(x_pts):
        g += np.tensordot(x_w, jx, axes=1)
    if len(o_pts):
        g -= np.tensordot(o_w, jo, axes=1)
    const = i_pairing([tuple(p) for p in o_pts], [tuple(p) for p in o_pts]) + 1
    return f.astype(np.int64), g.astype(np.int64), int(const)


def grading_arrays(wd: WeightedDiagram, cut_row: int = 0, cut_col: int = 0):
    """Maslov and doubled-Alexander gradings of every state, indexed by
    lexicographic rank.  Returns two int64 arrays of length ``n!``."""
    d = wd.diagram
    pr = PlanarRealization(d, cut_row, cut_col)
    o_pts = np.array(pr.o_points(), dtype=np.int64).reshape(-1, 2)
    o_w = np.array([wd.marking_weight[(r, c)] for r, c, _ in d.o_markings], dtype=np.int64)
    xs = sorted(d.x_markings)
    x_pts = np.array([pr.marking_point(r, c) for r, c in xs], dtype=np.int64).reshape(-1, 2)
    x_w = np.array([wd.marking_weight[m] for m in xs], dtype=np.int64)
    f, g, const = _point_tables(d.n, cut_row, cut_col, o_pts, o_w, x_pts, x_w)
    return _kernels.all_gradings(d.n, cut_row, cut_col, f, g, const)


def maslov_array(n: int, o_cells: Sequence[tuple[int, int]], cut_row: int = 0, cut_col: int = 0):
    """Maslov grading of every state for an arbitrary O set (used by the C_n fixture)."""
    o_pts = np.array(
        [(2 * ((c - cut_col) % n) + 1, 2 * ((r - cut_row) % n) + 1) for r, c in o_cells],
        dtype=np.int64,
    ).reshape(-1, 2)
    empty = np.zeros((0, 2), dtype=np.int64)
    f, g, const = _point_tables(n, cut_row, cut_col, o_pts, np.zeros(len(o_pts), np.int64),
                                empty, np.zeros(0, np.int64))
    m, _ = _kernels.all_gradings(n, cut_row, cut_col, f, g, const)
    return m
