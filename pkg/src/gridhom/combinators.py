"""Block constructions: disjoint union, wedge, cut-edge join, connected sum
and adding a split unknot.

All constructors take weighted diagrams and return weighted diagrams.  The
coloring of the output is read off the X markings: every X keeps the weight
it had in its input block, and any new X gets the weight of the edge it
creates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Cell,
    GridDiagram,
    WeightedDiagram,
    assign_weights,
    is_good,
    trace_edges,
)
from .errors import NotGood, VertexNotAtCorner, WeightMismatch
from .moves import _stabilize, cyclic_permute

UNKNOT_TOP = GridDiagram.from_string("* X / X O")  # O* in the top-left cell
UNKNOT_BOTTOM = GridDiagram.from_string("O X / X *")  # O* in the bottom-right cell


def _place(wd: WeightedDiagram, dr: int, dc: int):
    """Markings of ``wd`` translated by ``(dr, dc)``, plus X weights."""
    d = wd.diagram
    os_ = [(r + dr, c + dc, s) for r, c, s in d.o_markings]
    xw = {(r + dr, c + dc): wd.marking_weight[(r, c)] for r, c in d.x_markings}
    return os_, xw


def _finish(n: int, os_, xw: dict[Cell, int]) -> WeightedDiagram:
    d = GridDiagram(n, tuple(os_), frozenset(xw))
    sk = trace_edges(d)
    return assign_weights(d, [xw[e.first_x] for e in sk.edges], skeleton=sk)


def _weighted_stabilize(wd: WeightedDiagram, x: Cell) -> WeightedDiagram:
    d2, xmap = _stabilize(wd.diagram, x)
    return _finish(d2.n, d2.o_markings, {c: wd.marking_weight[o] for c, o in xmap.items()})


def pad_good(wd: WeightedDiagram, n: int) -> WeightedDiagram:
    """Stabilize a good diagram up to size ``n`` keeping it good.

    Stabilizing at an X off the top row and off the last column leaves the
    three corner cells in place relative to the new corners.
    """
    while wd.n < n:
        top = wd.n - 1
        xs = sorted(x for x in wd.diagram.x_markings if x[0] < top and x[1] < top)
        if not xs:
            raise NotGood("no X away from the top row and last column to stabilize at")
        wd = _weighted_stabilize(wd, xs[0])
    return wd


@dataclass(frozen=True)
class GoodPair:
    """Two weighted diagrams ready for a block construction.

    With ``strict`` both must be good.  Without it only the corner vertices
    the constructions glue along are required; the output still represents
    the intended graph, since the gluing is local to the corner cells.
    Sizes may differ: blocks of sizes n1 and n2 give an (n1 + n2) grid.
    """

    w1: WeightedDiagram
    w2: WeightedDiagram
    strict: bool = True

    def __post_init__(self):
        if self.strict:
            for k, w in ((1, self.w1), (2, self.w2)):
                if not is_good(w.diagram):
                    raise NotGood(f"diagram {k} is not good:\n{w.diagram}")

    @classmethod
    def padded(cls, w1: WeightedDiagram, w2: WeightedDiagram) -> "GoodPair":
        """Equalize sizes by stabilizing the smaller (good) diagram."""
        for k, w in ((1, w1), (2, w2)):
            if not is_good(w.diagram):
                raise NotGood(f"diagram {k} is not good:\n{w.diagram}")
        n = max(w1.n, w2.n)
        return cls(pad_good(w1, n), pad_good(w2, n))

    @property
    def n1(self) -> int:
        return self.w1.n

    @property
    def n2(self) -> int:
        return self.w2.n

    @property
    def v1(self) -> Cell:
        """Bottom-right cell of diagram 1."""
        return (0, self.n1 - 1)

    @property
    def v2(self) -> Cell:
        """Top-left cell of diagram 2."""
        return (self.n2 - 1, 0)

    def require_corner_vertices(self) -> None:
        if not self.w1.diagram.o_cells.get(self.v1, False):
            raise VertexNotAtCorner("bottom-right cell of diagram 1 does not hold an O*")
        if not self.w2.diagram.o_cells.get(self.v2, False):
            raise VertexNotAtCorner("top-left cell of diagram 2 does not hold an O*")


def _as_pair(a, b=None, strict: bool = True) -> GoodPair:
    if isinstance(a, GoodPair):
        return a
    return GoodPair(a, b, strict)


def make_good(wd: WeightedDiagram, v1: Cell | None = None, v2: Cell | None = None) -> WeightedDiagram:
    """Re-cut a diagram by cyclic permutations so that it becomes good.

    ``v1`` asks for that O* to land in the bottom-right cell, ``v2`` for it to
    land in the top-left cell.  Raises ``NotGood`` when no cyclic shift works.
    """
    n = wd.n
    for sr in range(n):
        for sc in range(n):
            d = cyclic_permute(cyclic_permute(wd.diagram, "row", sr), "col", sc)
            if not is_good(d):
                continue

            def mv(cell):
                return ((cell[0] + sr) % n, (cell[1] + sc) % n)

            if v1 is not None and mv(v1) != (0, n - 1):
                continue
            if v2 is not None and mv(v2) != (n - 1, 0):
                continue
            xw = {mv(x): w for x, w in wd.x_weight_map().items()}
            return _finish(n, d.o_markings, xw)
    raise NotGood("no cyclic permutation of the diagram is good with the requested corners")


def disjoint_union(w1: WeightedDiagram, w2: WeightedDiagram) -> WeightedDiagram:
    """Block-diagonal: ``w1`` in the upper-left, ``w2`` in the lower-right."""
    n1, n2 = w1.n, w2.n
    o1, x1 = _place(w1, n2, 0)
    o2, x2 = _place(w2, 0, n1)
    return _finish(n1 + n2, o1 + o2, {**x1, **x2})


def add_unknot(wd: WeightedDiagram) -> WeightedDiagram:
    """``f`` plus a split one-vertex unknot whose edge has weight 1."""
    return disjoint_union(wd, assign_weights(UNKNOT_BOTTOM, [1]))


def wedge(a, b=None, strict: bool = True) -> WeightedDiagram:
    """``(n1 + n2 - 1)``-square grid: the blocks overlap in the shared O*
    cell, which becomes the identified vertex."""
    gp = _as_pair(a, b, strict)
    gp.require_corner_vertices()
    n1, n2 = gp.n1, gp.n2
    o1, x1 = _place(gp.w1, n2 - 1, 0)
    o2, x2 = _place(gp.w2, 0, n1 - 1)
    shared = (n2 - 1, n1 - 1, True)
    os_ = [o for o in o1 if o != shared] + o2
    return _finish(n1 + n2 - 1, os_, {**x1, **x2})


def join_cut_edge(a, b=None, edge_weight: int = 0, strict: bool = True) -> WeightedDiagram:
    """``w1`` upper-left, ``w2`` lower-right, and one X in the bottom-left
    cell of the upper-right block, giving an edge v1 -> v2.

    A cut edge carries zero net flow, so any ``edge_weight`` other than 0
    unbalances the vertices and raises ``BalanceError``.
    """
    gp = _as_pair(a, b, strict)
    gp.require_corner_vertices()
    n1, n2 = gp.n1, gp.n2
    o1, x1 = _place(gp.w1, n2, 0)
    o2, x2 = _place(gp.w2, 0, n1)
    return _finish(n1 + n2, o1 + o2, {**x1, **x2, (n2, n1): int(edge_weight)})


def connected_sum(a, b=None, strict: bool = True) -> WeightedDiagram:
    """Join-cut-edge layout with the 2x2 block around the centre re-marked.

    In the join the block reads ``O* X / . O*`` (v1 and the edge X on top, v2
    bottom right).  Here it reads ``. O* / O* .``: the lower-left O* takes
    the incoming edges of v1 and the outgoing edges of v2, the upper-right O*
    the outgoing edges of v1 and the incoming edges of v2.
    """
    gp = _as_pair(a, b, strict)
    gp.require_corner_vertices()
    w1 = gp.w1.marking_weight[gp.v1]
    w2 = gp.w2.marking_weight[gp.v2]
    if w1 != w2:
        raise WeightMismatch(f"vertex weights differ: {w1} vs {w2}")
    n1, n2 = gp.n1, gp.n2
    o1, x1 = _place(gp.w1, n2, 0)
    o2, x2 = _place(gp.w2, 0, n1)
    os_ = [o for o in o1 + o2 if o not in ((n2, n1 - 1, True), (n2 - 1, n1, True))]
    os_ += [(n2 - 1, n1 - 1, True), (n2, n1, True)]
    return _finish(n1 + n2, os_, {**x1, **x2})
