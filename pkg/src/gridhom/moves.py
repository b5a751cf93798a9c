"""Graph grid moves: cyclic permutation, commutation' and (de)stabilization'.

Every move here acts on a ``GridDiagram`` and, through ``apply_move``, on a
``WeightedDiagram``: each X of the result inherits the weight of the X it came
from, which pins down the coloring of the traced edges.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .diagram import Cell, GridDiagram, WeightedDiagram, assign_weights, trace_edges
from .errors import IllegalMove, PatternNotFound

KINDS = ("cyclic_row", "cyclic_col", "commute_cols", "commute_rows", "stabilize", "destabilize")


@dataclass(frozen=True)
class Move:
    """``arg`` is the shift ``k`` for cyclic moves, the left column (bottom
    row) ``i`` for commutations, the X cell for ``stabilize`` and the cell of
    the O to remove for ``destabilize``."""

    kind: str
    arg: object

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if isinstance(self.arg, list):
            object.__setattr__(self, "arg", tuple(self.arg))

    def to_dict(self) -> dict:
        arg = list(self.arg) if isinstance(self.arg, tuple) else self.arg
        return {"kind": self.kind, "arg": arg}

    @classmethod
    def from_dict(cls, doc: dict) -> "Move":
        return cls(doc["kind"], doc["arg"])


def dump_log(moves: Sequence[Move]) -> str:
    return json.dumps([m.to_dict() for m in moves])


def load_log(text: str) -> list[Move]:
    return [Move.from_dict(m) for m in json.loads(text)]


# -- helpers -----------------------------------------------------------------------


def _rebuild(n, cell_map, d: GridDiagram, extra_o=(), extra_x=()):
    """Push every marking through ``cell_map`` and return the new diagram
    together with ``new X -> old X`` for weight transfer."""
    os_ = [(*cell_map((r, c)), s) for r, c, s in d.o_markings] + list(extra_o)
    xmap = {cell_map(x): x for x in d.x_markings}
    for new, old in extra_x:
        xmap[new] = old
    return GridDiagram(n, tuple(os_), frozenset(xmap)), xmap


def transpose(d: GridDiagram) -> GridDiagram:
    return GridDiagram(
        d.n,
        tuple((c, r, s) for r, c, s in d.o_markings),
        frozenset((c, r) for r, c in d.x_markings),
    )


# -- cyclic permutation -----------------------------------------------------------


def _cyclic(d: GridDiagram, kind: str, k: int):
    n = d.n
    if kind == "row":
        return _rebuild(n, lambda rc: ((rc[0] + k) % n, rc[1]), d)
    if kind == "col":
        return _rebuild(n, lambda rc: (rc[0], (rc[1] + k) % n), d)
    raise ValueError(f"kind must be 'row' or 'col', not {kind!r}")


def cyclic_permute(d: GridDiagram, kind: str, k: int) -> GridDiagram:
    """Move every row (``kind='row'``) up by ``k`` or every column right by
    ``k``, cyclically.  The torus picture is unchanged; only the cut moves."""
    return _cyclic(d, kind, k)[0]


# -- commutation' ------------------------------------------------------------------


def _rows_in_col(d: GridDiagram, c: int) -> set[int]:
    return {d.o_row_of_col[c], *d.x_rows_in_col[c]}


def _arc(p: int, q: int, n: int) -> set[int]:
    """Rows met by a segment going up from height ``p`` to height ``q``."""
    return {(p + j) % n for j in range((q - p) % n)}


def commutation_legal(d: GridDiagram, i: int) -> bool:
    """Whether columns ``i`` and ``i+1`` (mod n) may be exchanged.

    Needs cut heights ``p != q`` so that the arc from p up to q holds every
    marking of one column and the complementary arc every marking of the
    other: two segments covering the circle with two endpoint images.
    """
    n = d.n
    if n < 2:
        return False
    a = _rows_in_col(d, i % n)
    b = _rows_in_col(d, (i + 1) % n)
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            lo, hi = _arc(p, q, n), _arc(q, p, n)
            if a <= lo and b <= hi:
                return True
    return False


def _commute(d: GridDiagram, i: int):
    n = d.n
    if not commutation_legal(d, i):
        raise IllegalMove(f"columns {i} and {(i + 1) % n} interleave; commutation' not allowed")
    j = (i + 1) % n

    def f(rc):
        r, c = rc
        return (r, j if c == i % n else i % n if c == j else c)

    return _rebuild(n, f, d)


def commute(d: GridDiagram, i: int) -> GridDiagram:
    return _commute(d, i)[0]


def commutation_legal_rows(d: GridDiagram, i: int) -> bool:
    return commutation_legal(transpose(d), i)


def _commute_rows(d: GridDiagram, i: int):
    t, xmap = _commute(transpose(d), i)
    return transpose(t), {(c, r): (oc, orow) for (r, c), (orow, oc) in xmap.items()}


def commute_rows(d: GridDiagram, i: int) -> GridDiagram:
    return _commute_rows(d, i)[0]


# -- (de)stabilization' ------------------------------------------------------------


def _stabilize(d: GridDiagram, x: Cell):
    if x not in d.x_markings:
        raise IllegalMove(f"no X at {x}")
    r, c = x
    n = d.n

    def f(rc):
        rr, cc = rc
        return (rr + (rr > r), cc + (cc > c))

    # the chosen X slides one column right; the new O sits just above it and
    # the new X just upper-left of it
    moved = (r, c + 1)
    new_o = (r + 1, c + 1, False)
    new_x = (r + 1, c)
    os_ = [(*f((rr, cc)), s) for rr, cc, s in d.o_markings] + [new_o]
    xmap = {f(m): m for m in d.x_markings if m != x}
    xmap[moved] = x
    xmap[new_x] = x
    return GridDiagram(n + 1, tuple(os_), frozenset(xmap)), xmap


def stabilize(d: GridDiagram, x: Cell) -> GridDiagram:
    return _stabilize(d, tuple(x))[0]


def destabilization_sites(d: GridDiagram) -> list[Cell]:
    """Cells of plain O's that sit in a stabilization pattern."""
    return [o for o in d.plain_os if _pattern_ok(d, o)]


def _pattern_ok(d: GridDiagram, o: Cell) -> bool:
    R, C = o
    n = d.n
    if n < 2 or R == 0 or C == 0 or d.o_cells.get(o, True):
        return False
    if d.x_cols_in_row[R] != (C - 1,) or d.x_rows_in_col[C] != (R - 1,):
        return False
    corner = (R - 1, C - 1)
    return corner not in d.x_markings and corner not in d.o_cells


def _destabilize(d: GridDiagram, pos: Cell):
    R, C = pos
    n = d.n
    if not _pattern_ok(d, (R, C)):
        # patterns straddling the cut are handled after re-cutting
        sr, sc = (1 - R) % n, (1 - C) % n
        if (sr or sc) and n >= 2:
            moved = _shifted(d, sr, sc)
            if _pattern_ok(moved, (1, 1)):
                out, xmap = _destabilize(moved, (1, 1))
                m = n - 1
                back = {((r - sr) % m, (c - sc) % m): ((orow - sr) % n, (oc - sc) % n)
                        for (r, c), (orow, oc) in xmap.items()}
                return _shifted(out, -sr, -sc), back
        raise PatternNotFound(f"no stabilization pattern at O {pos}")

    def f(rc):
        rr, cc = rc
        return (rr - (rr > R), cc - (cc > C))

    os_ = [(*f((rr, cc)), s) for rr, cc, s in d.o_markings if (rr, cc) != (R, C)]
    xmap = {}
    for m in d.x_markings:
        if m == (R, C - 1):
            continue
        if m == (R - 1, C):
            xmap[(R - 1, C - 1)] = m
        else:
            xmap[f(m)] = m
    return GridDiagram(n - 1, tuple(os_), frozenset(xmap)), xmap


def _shifted(d: GridDiagram, sr: int, sc: int) -> GridDiagram:
    return cyclic_permute(cyclic_permute(d, "row", sr), "col", sc)


def destabilize(d: GridDiagram, pos: Cell) -> GridDiagram:
    return _destabilize(d, tuple(pos))[0]


# -- moves on weighted diagrams -------------------------------------------------------


def _apply_raw(d: GridDiagram, m: Move):
    if m.kind == "cyclic_row":
        return _cyclic(d, "row", int(m.arg))
    if m.kind == "cyclic_col":
        return _cyclic(d, "col", int(m.arg))
    if m.kind == "commute_cols":
        return _commute(d, int(m.arg))
    if m.kind == "commute_rows":
        return _commute_rows(d, int(m.arg))
    if m.kind == "stabilize":
        return _stabilize(d, tuple(m.arg))
    return _destabilize(d, tuple(m.arg))


def apply_move_diagram(d: GridDiagram, m: Move) -> GridDiagram:
    return _apply_raw(d, m)[0]


def apply_move(wd: WeightedDiagram, m: Move) -> WeightedDiagram:
    d2, xmap = _apply_raw(wd.diagram, m)
    sk = trace_edges(d2)
    old = wd.marking_weight
    weights = [old[xmap[e.first_x]] for e in sk.edges]
    return assign_weights(d2, weights, skeleton=sk)


def replay(wd: WeightedDiagram, moves: Sequence[Move]) -> WeightedDiagram:
    """Apply a move log; failures report the step index."""
    for step, m in enumerate(moves):
        try:
            wd = apply_move(wd, m)
        except (IllegalMove, PatternNotFound) as exc:
            raise IllegalMove(str(exc), step=step) from exc
    return wd


def legal_moves(d: GridDiagram, max_n: int) -> list[Move]:
    n = d.n
    out = []
    for k in range(1, n):
        out.append(Move("cyclic_row", k))
        out.append(Move("cyclic_col", k))
    for i in range(n):
        if commutation_legal(d, i):
            out.append(Move("commute_cols", i))
        if commutation_legal_rows(d, i):
            out.append(Move("commute_rows", i))
    if n < max_n:
        out.extend(Move("stabilize", x) for x in sorted(d.x_markings))
    out.extend(Move("destabilize", o) for o in destabilization_sites(d))
    return out


def random_move_walk(wd: WeightedDiagram, steps: int, seed: int, max_n: int | None = None):
    """A reproducible walk of ``steps`` random legal moves.

    Returns the final weighted diagram and the move log.  ``max_n`` caps the
    grid size (default: start size + 2); stabilizations are skipped at the cap.
    Move families are picked uniformly first so that the many cyclic shifts
    do not drown out the rarer moves.
    """
    rng = random.Random(seed)
    cap = max_n if max_n is not None else wd.n + 2
    log: list[Move] = []
    for _ in range(steps):
        options = legal_moves(wd.diagram, cap)
        if not options:
            break
        families: dict[str, list[Move]] = {}
        for m in options:
            families.setdefault(m.kind, []).append(m)
        kind = rng.choice(sorted(families))
        m = rng.choice(families[kind])
        wd = apply_move(wd, m)
        log.append(m)
    return wd, log
