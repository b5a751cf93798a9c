"""Empty rectangles and the tilde chain complex as sparse GF(2) data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .diagram import FixtureCn, GridDiagram, WeightedDiagram
from .errors import TooLarge
from .state import grading_arrays, maslov_array

Cell = tuple[int, int]


@dataclass(frozen=True)
class Rectangle:
    """Torus rectangle spanning columns ``col .. col+width-1`` and rows
    ``row .. row+height-1`` (mod n).  Its lower-left and upper-right corners
    are points of the source state, the other two of the target."""

    n: int
    col: int
    width: int
    row: int
    height: int

    def cells(self) -> list[Cell]:
        return [
            ((self.row + j) % self.n, (self.col + i) % self.n)
            for i in range(self.width)
            for j in range(self.height)
        ]

    def contains_cell(self, r: int, c: int) -> bool:
        return (c - self.col) % self.n < self.width and (r - self.row) % self.n < self.height

    def contains_point_in_interior(self, col: int, row: int) -> bool:
        dc = (col - self.col) % self.n
        dr = (row - self.row) % self.n
        return 0 < dc < self.width and 0 < dr < self.height


@dataclass(frozen=True)
class AnnotatedRectangle:
    target: tuple[int, ...]
    rect: Rectangle
    o_content: tuple[Cell, ...]
    x_content: tuple[Cell, ...]
    star_content: tuple[Cell, ...]


def _swap(perm, a, b):
    p = list(perm)
    p[a], p[b] = p[b], p[a]
    return tuple(p)


def rectangles_between(n: int, x: Sequence[int], a: int, b: int) -> list[Rectangle]:
    """The two torus rectangles from ``x`` to the state obtained by exchanging
    the rows on columns ``a`` and ``b``."""
    out = []
    for lo, hi in ((a, b), (b, a)):
        out.append(Rectangle(n, lo, (hi - lo) % n, x[lo], (x[hi] - x[lo]) % n))
    return out


def empty_rectangles_from(d: GridDiagram, x: Sequence[int]) -> list[AnnotatedRectangle]:
    """Every empty rectangle leaving ``x``, annotated with the markings inside."""
    n = d.n
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            y = _swap(x, a, b)
            for r in rectangles_between(n, x, a, b):
                if any(r.contains_point_in_interior(c, x[c]) for c in range(n)):
                    continue
                o_in = tuple(sorted(o for o in d.plain_os if r.contains_cell(*o)))
                s_in = tuple(sorted(o for o in d.stars if r.contains_cell(*o)))
                x_in = tuple(sorted(m for m in d.x_markings if r.contains_cell(*m)))
                out.append(AnnotatedRectangle(y, r, o_in, x_in, s_in))
    return out


def hat_rectangle_filter(ar: AnnotatedRectangle) -> tuple[bool, dict[Cell, int]]:
    """Whether the hat differential counts the rectangle, and the U-power it
    carries (multiplicity of each plain O inside)."""
    if ar.x_content or ar.star_content:
        return False, {}
    return True, {o: 1 for o in ar.o_content}


def tilde_filter(ar: AnnotatedRectangle) -> bool:
    return not (ar.x_content or ar.star_content or ar.o_content)


def blocked_table(n: int, forbidden: Iterable[Cell]) -> np.ndarray:
    """``t[c, w, r, h]`` true when the rectangle at column c, width w, row r,
    height h contains a forbidden cell."""
    forb = np.zeros((n, n), dtype=np.int64)
    for r, c in forbidden:
        forb[r, c] = 1
    # doubled grid turns every cyclic window into a plain window
    big = np.tile(forb, (2, 2))
    pre = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    pre[1:, 1:] = big.cumsum(0).cumsum(1)
    t = np.zeros((n, n, n, n), dtype=np.bool_)
    for c in range(n):
        for w in range(n):
            for r in range(n):
                hs = np.arange(n)
                tot = pre[r + hs, c + w] - pre[r, c + w] - pre[r + hs, c] + pre[r, c]
                t[c, w, r, :] = tot > 0
    return t


@dataclass
class BigradedComplex:
    """Generators = states (by lexicographic rank) with gradings, plus the
    GF(2) boundary as a list of ``(src, dst)`` entries.

    ``maslov`` and ``alex2`` are int64 arrays over generators; ``src``/``dst``
    index into them.
    """

    n: int
    maslov: np.ndarray
    alex2: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    label: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return int(self.maslov.size)

    @property
    def nnz(self) -> int:
        return int(self.src.size)

    @cached_property
    def strata(self) -> dict[int, dict[int, np.ndarray]]:
        """``alex2 -> maslov -> generator indices`` (ascending)."""
        order = np.lexsort((np.arange(self.size), self.maslov, self.alex2))
        keys_a = self.alex2[order]
        keys_m = self.maslov[order]
        out: dict[int, dict[int, np.ndarray]] = {}
        if order.size == 0:
            return out
        brk = np.flatnonzero((np.diff(keys_a) != 0) | (np.diff(keys_m) != 0)) + 1
        for chunk in np.split(order, brk):
            a = int(self.alex2[chunk[0]])
            m = int(self.maslov[chunk[0]])
            out.setdefault(a, {})[m] = chunk
        return out

    def boundary(self, maslov: int, alex2: int) -> sp.csc_matrix:
        """Boundary block ``C_{maslov, alex2} -> C_{maslov-1, alex2}``."""
        cols = self.strata.get(alex2, {}).get(maslov, np.zeros(0, np.int64))
        rows = self.strata.get(alex2, {}).get(maslov - 1, np.zeros(0, np.int64))
        col_pos = {int(g): i for i, g in enumerate(cols)}
        row_pos = {int(g): i for i, g in enumerate(rows)}
        sel = np.isin(self.src, cols)
        ii, jj = [], []
        for s, t in zip(self.src[sel], self.dst[sel]):
            if int(t) in row_pos:
                ii.append(row_pos[int(t)])
                jj.append(col_pos[int(s)])
        data = np.ones(len(ii), dtype=np.uint8)
        return sp.csc_matrix((data, (ii, jj)), shape=(len(rows), len(cols)))

    def grading_drops(self) -> bool:
        """Every boundary entry lowers Maslov by one and keeps alex2."""
        return bool(
            np.all(self.maslov[self.src] - self.maslov[self.dst] == 1)
            and np.all(self.alex2[self.src] == self.alex2[self.dst])
        )


def _check_size(n: int) -> None:
    if n > _kernels.MAX_N:
        raise TooLarge(f"n={n} exceeds the supported maximum {_kernels.MAX_N}")


def tilde_complex(wd: WeightedDiagram, cut_row: int = 0, cut_col: int = 0) -> BigradedComplex:
    """Tilde complex: counts empty rectangles avoiding every marking."""
    d = wd.diagram
    _check_size(d.n)
    m, a = grading_arrays(wd, cut_row, cut_col)
    forbidden = [(r, c) for r, c, _ in d.o_markings] + list(d.x_markings)
    src, dst = _kernels.rectangle_edges(d.n, blocked_table(d.n, forbidden))
    return BigradedComplex(d.n, m, a, src, dst, label="tilde",
                           meta={"plain_o_weights": wd.plain_o_weights})


def cn_complex(f: FixtureCn) -> BigradedComplex:
    """The C_n fixture complex: rectangles avoiding the O* and all X's.
    Only Maslov graded; ``alex2`` is identically zero."""
    _check_size(f.n)
    m = maslov_array(f.n, [f.star])
    forbidden = [f.star] + list(f.x_markings)
    src, dst = _kernels.rectangle_edges(f.n, blocked_table(f.n, forbidden))
    return BigradedComplex(f.n, m, np.zeros_like(m), src, dst, label=f"C_{f.n}")
