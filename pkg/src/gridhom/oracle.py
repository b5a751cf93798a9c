"""Independent dense reference for tilde homology.

Shares nothing with the main pipeline beyond the diagram type: gradings are
recomputed from half-integer coordinates with exact fractions, rectangles are
found by explicit cell sets, and ranks come from dense GF(2) elimination.
Meant for n <= 7.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction

import numpy as np

from .diagram import WeightedDiagram
from .errors import TooLarge

HALF = Fraction(1, 2)
MAX_N = 7


def dense_gf2_rank(mat) -> int:
    """Textbook row reduction of a dense 0/1 matrix over GF(2)."""
    a = (np.array(mat, dtype=np.uint8) % 2).copy()
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivots = np.nonzero(a[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hits = np.nonzero(a[:, c])[0]
        for h in hits:
            if h != r:
                a[h] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def _less(p, q):
    return p[0] < q[0] and p[1] < q[1]


def _J(A, B):
    """J over formal sums given as lists of (coefficient, point)."""
    tot = Fraction(0)
    for ca, p in A:
        for cb, q in B:
            tot += ca * cb * (int(_less(p, q)) + int(_less(q, p)))
    return tot / 2


def _gradings(wd: WeightedDiagram, perm):
    d = wd.diagram
    xs = [(1, (Fraction(c), Fraction(r))) for c, r in enumerate(perm)]
    os_ = [(1, (c + HALF, r + HALF)) for r, c, _ in d.o_markings]
    x_minus_o = xs + [(-1, p) for _, p in os_]
    m = _J(x_minus_o, x_minus_o) + 1
    formal = [(wd.marking_weight[(r, c)], (c + HALF, r + HALF)) for r, c in d.x_markings]
    formal += [(-wd.marking_weight[(r, c)], (c + HALF, r + HALF)) for r, c, _ in d.o_markings]
    a = _J(xs, formal)
    assert m.denominator == 1 and (2 * a).denominator == 1
    return int(m), int(2 * a)


def _rect_cells(n, c0, c1, r0, r1):
    """Cells of the torus rectangle going right from column c0 to c1 and up
    from row r0 to r1 (lattice coordinates)."""
    w = (c1 - c0) % n
    h = (r1 - r0) % n
    return {((r0 + j) % n, (c0 + i) % n) for i in range(w) for j in range(h)}, w, h


def _interior_points(n, c0, w, r0, h, perm):
    hits = []
    for c, r in enumerate(perm):
        dc = (c - c0) % n
        dr = (r - r0) % n
        if 0 < dc < w and 0 < dr < h:
            hits.append((c, r))
    return hits


def oracle_complex(wd: WeightedDiagram):
    """Generators with gradings and the boundary as a dict of target sets."""
    d = wd.diagram
    n = d.n
    if n > MAX_N:
        raise TooLarge(f"oracle is dense; n={n} > {MAX_N}")
    markings = {(r, c) for r, c, _ in d.o_markings} | set(d.x_markings)
    states = list(itertools.permutations(range(n)))
    index = {s: i for i, s in enumerate(states)}
    grades = [_gradings(wd, s) for s in states]
    bd = []
    for s in states:
        targets = defaultdict(int)
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                # lower-left corner (a, s[a]), upper-right corner (b, s[b])
                cells, w, h = _rect_cells(n, a, b, s[a], s[b])
                if cells & markings:
                    continue
                if _interior_points(n, a, w, s[a], h, s):
                    continue
                t = list(s)
                t[a], t[b] = t[b], t[a]
                targets[index[tuple(t)]] += 1
        bd.append({t for t, k in targets.items() if k % 2})
    return grades, bd


def oracle_homology(wd: WeightedDiagram):
    """Tilde homology as ``{(maslov, alex2): dim}`` by dense linear algebra."""
    from .homology import PoincarePolynomial

    grades, bd = oracle_complex(wd)
    by_grade = defaultdict(list)
    for i, g in enumerate(grades):
        by_grade[g].append(i)
    rank = {}
    for (m, a), gens in by_grade.items():
        rows = by_grade.get((m - 1, a), [])
        pos = {g: i for i, g in enumerate(rows)}
        mat = np.zeros((len(rows), len(gens)), dtype=np.uint8)
        for j, g in enumerate(gens):
            for t in bd[g]:
                if t not in pos:
                    raise AssertionError("boundary leaves the expected grading")
                mat[pos[t], j] = 1
        rank[(m, a)] = dense_gf2_rank(mat)
    out = {}
    for (m, a), gens in by_grade.items():
        h = len(gens) - rank[(m, a)] - rank.get((m + 1, a), 0)
        if h:
            out[(m, a)] = h
    return PoincarePolynomial(out)
