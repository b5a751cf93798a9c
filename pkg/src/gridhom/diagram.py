"""Graph grid diagrams: representation, text/JSON I/O, edge tracing, weights.

Coordinates: ``(row, col)`` with row 0 at the bottom and col 0 at the left.
A marking in cell ``(r, c)`` sits at planar position ``(c + 1/2, r + 1/2)``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BalanceError, DiagramSyntaxError, TraceError, ValidationError

Cell = tuple[int, int]

TOKENS = {".", "X", "O", "*"}


@dataclass(frozen=True)
class GridDiagram:
    """An ``n x n`` toroidal graph grid diagram.

    ``o_markings`` holds ``(row, col, is_star)`` for every O / O* marking and
    ``x_markings`` the cells carrying an X.  Construction validates the three
    marking conditions; an invalid grid never exists as a ``GridDiagram``.
    """

    n: int
    o_markings: tuple[tuple[int, int, bool], ...]
    x_markings: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(
            self, "o_markings", tuple(sorted((int(r), int(c), bool(s)) for r, c, s in self.o_markings))
        )
        object.__setattr__(self, "x_markings", frozenset((int(r), int(c)) for r, c in self.x_markings))
        _validate(self)

    # -- lookups -----------------------------------------------------------
    @cached_property
    def o_cells(self) -> dict[Cell, bool]:
        return {(r, c): s for r, c, s in self.o_markings}

    @cached_property
    def stars(self) -> tuple[Cell, ...]:
        """O* cells in row-major order (row ascending)."""
        return tuple((r, c) for r, c, s in self.o_markings if s)

    @cached_property
    def plain_os(self) -> tuple[Cell, ...]:
        return tuple((r, c) for r, c, s in self.o_markings if not s)

    @cached_property
    def o_col_of_row(self) -> tuple[int, ...]:
        cols = [0] * self.n
        for r, c, _ in self.o_markings:
            cols[r] = c
        return tuple(cols)

    @cached_property
    def o_row_of_col(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for r, c, _ in self.o_markings:
            rows[c] = r
        return tuple(rows)

    @cached_property
    def x_cols_in_row(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for r, c in self.x_markings:
            rows[r].append(c)
        return tuple(tuple(sorted(cs)) for cs in rows)

    @cached_property
    def x_rows_in_col(self) -> tuple[tuple[int, ...], ...]:
        cols: list[list[int]] = [[] for _ in range(self.n)]
        for r, c in self.x_markings:
            cols[c].append(r)
        return tuple(tuple(sorted(rs)) for rs in cols)

    def cell(self, r: int, c: int) -> str:
        """Token of cell ``(r, c)``: one of ``. X O *``."""
        if (r, c) in self.x_markings:
            return "X"
        s = self.o_cells.get((r, c))
        if s is None:
            return "."
        return "*" if s else "O"

    def rows(self) -> list[list[str]]:
        """Token grid, bottom row first."""
        return [[self.cell(r, c) for c in range(self.n)] for r in range(self.n)]

    @classmethod
    def from_rows(cls, rows_top_first: Sequence[Sequence[str]]) -> "GridDiagram":
        """Build from a token grid given top row first (as it reads on screen)."""
        n = len(rows_top_first)
        o, x = [], []
        for i, line in enumerate(rows_top_first):
            r = n - 1 - i
            if len(line) != n:
                raise DiagramSyntaxError(f"row {i + 1} has {len(line)} tokens, expected {n}")
            for c, tok in enumerate(line):
                if tok == "X":
                    x.append((r, c))
                elif tok == "O":
                    o.append((r, c, False))
                elif tok == "*":
                    o.append((r, c, True))
                elif tok != ".":
                    raise DiagramSyntaxError(f"unknown token {tok!r}")
        return cls(n, tuple(o), frozenset(x))

    @classmethod
    def from_string(cls, picture: str) -> "GridDiagram":
        """Convenience: rows separated by newlines or ``/``, top row first."""
        lines = [ln.split() for ln in picture.replace("/", "\n").splitlines() if ln.strip()]
        return cls.from_rows(lines)

    def __str__(self):
        return "\n".join(" ".join(row) for row in reversed(self.rows()))


def _validate(d: GridDiagram) -> None:
    n = d.n
    if n < 1:
        raise ValidationError("size", f"grid size must be positive, got {n}")
    for r, c, _ in d.o_markings:
        if not (0 <= r < n and 0 <= c < n):
            raise ValidationError("size", f"O marking {(r, c)} outside the {n}x{n} grid")
    for r, c in d.x_markings:
        if not (0 <= r < n and 0 <= c < n):
            raise ValidationError("size", f"X marking {(r, c)} outside the {n}x{n} grid")
    if len(d.o_markings) != n:
        raise ValidationError("i", f"expected {n} O/O* markings, found {len(d.o_markings)}")
    o_rows = defaultdict(int)
    o_cols = defaultdict(int)
    for r, c, _ in d.o_markings:
        o_rows[r] += 1
        o_cols[c] += 1
    for i in range(n):
        if o_rows[i] != 1:
            raise ValidationError("i", f"row {i} has {o_rows[i]} O/O* markings")
        if o_cols[i] != 1:
            raise ValidationError("i", f"column {i} has {o_cols[i]} O/O* markings")
    for r, c, _ in d.o_markings:
        if (r, c) in d.x_markings:
            raise ValidationError("iii", f"cell {(r, c)} carries both an O-type and an X marking")
    stars = {(r, c) for r, c, s in d.o_markings if s}
    star_rows = {r for r, _ in stars}
    star_cols = {c for _, c in stars}
    x_row = defaultdict(int)
    x_col = defaultdict(int)
    for r, c in d.x_markings:
        x_row[r] += 1
        x_col[c] += 1
    for i in range(n):
        if x_row[i] != 1 and i not in star_rows:
            raise ValidationError("ii", f"row {i} has {x_row[i]} X markings but no O*")
        if x_col[i] != 1 and i not in star_cols:
            raise ValidationError("ii", f"column {i} has {x_col[i]} X markings but no O*")


# -- text / JSON -------------------------------------------------------------


def parse_text(text: str) -> tuple[GridDiagram, list[int] | None]:
    """Parse diagram text; returns the diagram and the optional weight list."""
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lines.append(s)
    if not lines:
        raise DiagramSyntaxError("empty diagram text")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise DiagramSyntaxError(f"first line must be 'n=<int>', got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise DiagramSyntaxError(f"bad grid size in {lines[0]!r}") from None
    if n < 1:
        raise DiagramSyntaxError(f"grid size must be positive, got {n}")
    body = lines[1:]
    weights = None
    if body and body[-1].startswith("weights="):
        wtxt = body.pop()[len("weights="):]
        try:
            weights = [int(w) for w in wtxt.split()]
        except ValueError:
            raise DiagramSyntaxError(f"weights must be integers: {wtxt!r}") from None
    if len(body) != n:
        raise DiagramSyntaxError(f"expected {n} grid rows, found {len(body)}")
    grid = []
    for i, line in enumerate(body):
        toks = line.split()
        if len(toks) != n:
            raise DiagramSyntaxError(f"grid row {i + 1} has {len(toks)} tokens, expected {n}")
        bad = [t for t in toks if t not in TOKENS]
        if bad:
            raise DiagramSyntaxError(f"grid row {i + 1}: unknown token(s) {bad}")
        grid.append(toks)
    return GridDiagram.from_rows(grid), weights


def parse_diagram(text: str) -> GridDiagram:
    return parse_text(text)[0]


def serialize(d: GridDiagram, weights: Sequence[int] | None = None) -> str:
    """Canonical text form; ``parse_text(serialize(d, w)) == (d, w)``."""
    out = [f"n={d.n}", str(d)]
    if weights is not None:
        out.append("weights= " + " ".join(str(int(w)) for w in weights))
    return "\n".join(out) + "\n"


def to_json(d: GridDiagram, weights: Sequence[int] | None = None) -> str:
    doc = {
        "n": d.n,
        "o_markings": [[r, c, s] for r, c, s in d.o_markings],
        "x_markings": sorted([r, c] for r, c in d.x_markings),
    }
    if weights is not None:
        doc["weights"] = [int(w) for w in weights]
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> tuple[GridDiagram, list[int] | None]:
    doc = json.loads(text)
    d = GridDiagram(
        doc["n"],
        tuple((r, c, bool(s)) for r, c, s in doc["o_markings"]),
        frozenset((r, c) for r, c in doc["x_markings"]),
    )
    return d, doc.get("weights")


def cyclic_renumber(d: GridDiagram, row_shift: int = 0, col_shift: int = 0) -> GridDiagram:
    """Relabel rows ``r -> r + row_shift`` and columns ``c -> c + col_shift`` mod n."""
    n = d.n
    return GridDiagram(
        n,
        tuple(((r + row_shift) % n, (c + col_shift) % n, s) for r, c, s in d.o_markings),
        frozenset(((r + row_shift) % n, (c + col_shift) % n) for r, c in d.x_markings),
    )


# -- planar realizations -------------------------------------------------------


@dataclass(frozen=True)
class PlanarRealization:
    """The diagram cut open along horizontal circle ``cut_row`` and vertical
    circle ``cut_col``.  Cutting there makes that circle the bottom/left edge
    of ``[0, n) x [0, n)``.

    All coordinates below are *doubled* so that lattice points and marking
    centres are both integral: lattice point ``(c, r)`` becomes ``(2c, 2r)``
    and the marking in cell ``(r, c)`` becomes ``(2c + 1, 2r + 1)``.
    """

    diagram: GridDiagram
    cut_row: int = 0
    cut_col: int = 0

    def _x(self, c):
        return 2 * ((c - self.cut_col) % self.diagram.n)

    def _y(self, r):
        return 2 * ((r - self.cut_row) % self.diagram.n)

    def lattice_point(self, col: int, row: int) -> tuple[int, int]:
        return self._x(col), self._y(row)

    def marking_point(self, row: int, col: int) -> tuple[int, int]:
        return self._x(col) + 1, self._y(row) + 1

    def state_points(self, perm: Sequence[int]) -> list[tuple[int, int]]:
        return [self.lattice_point(c, r) for c, r in enumerate(perm)]

    def o_points(self) -> list[tuple[int, int]]:
        return [self.marking_point(r, c) for r, c, _ in self.diagram.o_markings]

    def to_diagram(self) -> GridDiagram:
        """The cut-open picture read as a grid with its own row/col 0."""
        return cyclic_renumber(self.diagram, -self.cut_row, -self.cut_col)


# -- edge tracing -----------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    """One edge of the traced spatial graph.

    ``path`` lists the interior markings in traversal order (X, O, X, ..., X);
    ``tail``/``head`` are vertex indices into ``SpatialGraphSkeleton.vertices``.
    """

    tail: int
    head: int
    path: tuple[Cell, ...]

    @property
    def first_x(self) -> Cell:
        return self.path[0]

    @property
    def xs(self) -> tuple[Cell, ...]:
        return self.path[0::2]

    @property
    def os(self) -> tuple[Cell, ...]:
        return self.path[1::2]


@dataclass(frozen=True)
class SpatialGraphSkeleton:
    vertices: tuple[Cell, ...]
    edges: tuple[Edge, ...]
    in_edges: tuple[tuple[int, ...], ...]
    out_edges: tuple[tuple[int, ...], ...]

    @property
    def sinks(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if self.in_edges[v] and not self.out_edges[v]]

    @property
    def sources(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if self.out_edges[v] and not self.in_edges[v]]

    @property
    def isolated(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if not self.in_edges[v] and not self.out_edges[v]]

    def signature(self, weights: Sequence[int] | None = None):
        """Abstract structure used to compare graphs across diagrams:
        vertex count plus the sorted multiset of (loop?, weight) edges and the
        sorted in/out degree sequence."""
        w = list(weights) if weights is not None else [1] * len(self.edges)
        degs = sorted((len(self.in_edges[v]), len(self.out_edges[v])) for v in range(len(self.vertices)))
        edges = sorted((e.tail == e.head, w[i]) for i, e in enumerate(self.edges))
        return len(self.vertices), tuple(degs), tuple(edges)


def trace_edges(d: GridDiagram) -> SpatialGraphSkeleton:
    """Follow the segments O -> X (horizontal) and X -> O (vertical) out of
    every O* and return the resulting graph.

    Edges are ordered by their tail vertex (row-major) and then by the column
    of the X they leave through.
    """
    vertices = d.stars
    vidx = {v: i for i, v in enumerate(vertices)}
    edges: list[Edge] = []
    seen: set[Cell] = set()
    limit = 2 * d.n + 2
    for vi, (vr, _vc) in enumerate(vertices):
        for xc in d.x_cols_in_row[vr]:
            path: list[Cell] = []
            cur = (vr, xc)
            for _ in range(limit):
                path.append(cur)
                r_o = d.o_row_of_col[cur[1]]
                o = (r_o, cur[1])
                if d.o_cells[o]:
                    edges.append(Edge(vi, vidx[o], tuple(path)))
                    break
                path.append(o)
                (xcol,) = d.x_cols_in_row[r_o]
                cur = (r_o, xcol)
            else:
                raise TraceError(f"edge leaving vertex {vertices[vi]} never reaches an O*")
            seen.update(path)
    everything = set(d.x_markings) | set(d.plain_os)
    stray = everything - seen
    if stray:
        raise TraceError(
            f"markings {sorted(stray)} are not connected to any O* "
            "(a component without vertices)"
        )
    ins: list[list[int]] = [[] for _ in vertices]
    outs: list[list[int]] = [[] for _ in vertices]
    for i, e in enumerate(edges):
        outs[e.tail].append(i)
        ins[e.head].append(i)
    return SpatialGraphSkeleton(
        tuple(vertices), tuple(edges), tuple(map(tuple, ins)), tuple(map(tuple, outs))
    )


# -- weights -------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedDiagram:
    diagram: GridDiagram
    skeleton: SpatialGraphSkeleton
    edge_weights: tuple[int, ...]
    marking_weight: dict = field(compare=False, hash=False)

    @property
    def n(self) -> int:
        return self.diagram.n

    def vertex_weight(self, v: int) -> int:
        return self.marking_weight[self.skeleton.vertices[v]]

    @property
    def plain_o_weights(self) -> list[int]:
        """Weights of the plain (non-star) O markings, in row order."""
        return [self.marking_weight[o] for o in self.diagram.plain_os]

    def x_weight_map(self) -> dict[Cell, int]:
        return {x: self.marking_weight[x] for x in self.diagram.x_markings}

    def text(self) -> str:
        return serialize(self.diagram, self.edge_weights)


def assign_weights(d: GridDiagram, edge_weights: Sequence[int] | None = None,
                   skeleton: SpatialGraphSkeleton | None = None) -> WeightedDiagram:
    """Attach a balanced coloring given edge by edge in trace order.

    ``None`` means weight 1 on every edge.
    """
    sk = skeleton or trace_edges(d)
    if edge_weights is None:
        edge_weights = [1] * len(sk.edges)
    edge_weights = tuple(int(w) for w in edge_weights)
    if len(edge_weights) != len(sk.edges):
        raise ValueError(f"got {len(edge_weights)} weights for {len(sk.edges)} edges")
    mw: dict[Cell, int] = {}
    for e, w in zip(sk.edges, edge_weights):
        for m in e.path:
            mw[m] = w
    for v, cell in enumerate(sk.vertices):
        s_in = sum(edge_weights[i] for i in sk.in_edges[v])
        s_out = sum(edge_weights[i] for i in sk.out_edges[v])
        if s_in != s_out:
            raise BalanceError(cell, s_in, s_out)
        mw[cell] = s_in
    return WeightedDiagram(d, sk, edge_weights, mw)


def weights_from_x_map(d: GridDiagram, x_weight: dict[Cell, int],
                       skeleton: SpatialGraphSkeleton | None = None) -> list[int]:
    """Edge weights in trace order, read off from a weight per X marking.

    Every edge passes through at least one X; the first one decides.
    """
    sk = skeleton or trace_edges(d)
    return [x_weight[e.first_x] for e in sk.edges]


def load_weighted(text: str) -> WeightedDiagram:
    d, w = parse_text(text)
    return assign_weights(d, w)


# -- goodness and the acyclic fixture -------------------------------------------


def is_good(d: GridDiagram) -> bool:
    """O-type markings in the top-left and bottom-right cells, X in the top-right."""
    n = d.n
    top = n - 1
    return (
        (top, 0) in d.o_cells
        and (0, n - 1) in d.o_cells
        and (top, n - 1) in d.x_markings
    )


@dataclass(frozen=True)
class FixtureCn:
    """Diagram-like grid with one O* and ``2n - 2`` X's, lower-left block empty.

    Not a graph grid diagram (the right column holds n markings), so it gets
    its own type rather than a ``GridDiagram``.
    """

    n: int
    star: Cell
    x_markings: frozenset[Cell]

    def cell(self, r, c):
        if (r, c) == self.star:
            return "*"
        return "X" if (r, c) in self.x_markings else "."

    def __str__(self):
        return "\n".join(
            " ".join(self.cell(r, c) for c in range(self.n)) for r in reversed(range(self.n))
        )


def build_cn_fixture(n: int) -> FixtureCn:
    if n < 2:
        raise ValueError("C_n fixture needs n >= 2")
    top = n - 1
    xs = {(top, c) for c in range(n - 1)} | {(r, n - 1) for r in range(n - 1)}
    return FixtureCn(n, (top, n - 1), frozenset(xs))


def iter_cells(n: int) -> Iterable[Cell]:
    for r in range(n):
        for c in range(n):
            yield r, c
