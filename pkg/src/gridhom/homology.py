"""GF(2) homology of bigraded complexes, Poincare polynomials and the
hat <-> tilde relation ``tilde = hat (x) W(w_1) (x) ... (x) W(w_k)``.

Gradings are pairs ``(maslov, alex2)`` with ``alex2`` twice the Alexander
grading.  ``W(i)`` is ``F_{0,0} + F_{-1,-i}``, i.e. ``1 + t^-1 q^(-2i)`` with
``t`` tracking Maslov and ``q`` tracking alex2.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .complex import BigradedComplex, tilde_complex
from .diagram import WeightedDiagram
from .errors import DeconvolutionError, NotAComplex

Grading = tuple[int, int]


class PoincarePolynomial:
    """Finitely supported map ``(maslov, alex2) -> dimension``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Grading, int] | Iterable[tuple[Grading, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Counter = Counter()
        for (m, a), k in items:
            acc[(int(m), int(a))] += int(k)
        self.coeffs = {g: k for g, k in sorted(acc.items()) if k != 0}

    @classmethod
    def from_classes(cls, gradings: Iterable[Grading]) -> "PoincarePolynomial":
        """One dimension per listed grading (repeats add up)."""
        return cls(Counter((int(m), int(a)) for m, a in gradings))

    def __eq__(self, other):
        return isinstance(other, PoincarePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __repr__(self):
        inner = ", ".join(f"{g}: {k}" for g, k in self.coeffs.items())
        return f"PoincarePolynomial({{{inner}}})"

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        return PoincarePolynomial(list(self.coeffs.items()) + list(other.coeffs.items()))

    def __mul__(self, other):
        """Graded tensor product."""
        acc: Counter = Counter()
        for (m1, a1), k1 in self.coeffs.items():
            for (m2, a2), k2 in other.coeffs.items():
                acc[(m1 + m2, a1 + a2)] += k1 * k2
        return PoincarePolynomial(acc)

    def dim(self) -> int:
        return sum(self.coeffs.values())

    def is_nonnegative(self) -> bool:
        return all(k > 0 for k in self.coeffs.values())

    def classes(self) -> list[Grading]:
        """Gradings with multiplicity, sorted by descending Maslov."""
        out = []
        for g, k in sorted(self.coeffs.items(), key=lambda t: (-t[0][0], -t[0][1])):
            out.extend([g] * k)
        return out

    def as_records(self) -> list[dict]:
        return [
            {"maslov": m, "alex2": a, "dim": k}
            for (m, a), k in sorted(self.coeffs.items(), key=lambda t: (-t[0][0], -t[0][1]))
        ]


ZERO = PoincarePolynomial()


def shift(p: PoincarePolynomial, a: int, b2: int) -> PoincarePolynomial:
    """``p[[a, b]]``: the class at ``(d, s)`` moves to ``(d - a, s - b2)``
    (``b2`` in doubled units), matching ``X[[a,b]]_{d,s} = X_{d+a,s+b}``."""
    return PoincarePolynomial({(m - a, s - b2): k for (m, s), k in p.coeffs.items()})


def w_factor(i: int) -> PoincarePolynomial:
    """``W(i) = F_{0,0} + F_{-1,-i}``."""
    return PoincarePolynomial.from_classes([(0, 0), (-1, -2 * i)])


def tensor_W(p: PoincarePolynomial, i: int) -> PoincarePolynomial:
    return p + shift(p, 1, 2 * i)


def tensor_Ws(p: PoincarePolynomial, weights: Iterable[int]) -> PoincarePolynomial:
    for w in weights:
        p = tensor_W(p, w)
    return p


def _divide_one(p: PoincarePolynomial, w: int) -> PoincarePolynomial:
    """Exact quotient of ``p`` by ``1 + t^-1 q^(-2w)``, greedy from the top
    Maslov grading down."""
    rem = dict(p.coeffs)
    quot: dict[Grading, int] = {}
    for g in sorted(p.coeffs, key=lambda t: (-t[0], -t[1])):
        k = rem.get(g, 0)
        if k == 0:
            continue
        if k < 0:
            raise DeconvolutionError(f"negative remainder {k} at {g} dividing by W({w})")
        quot[g] = k
        rem[g] = 0
        echo = (g[0] - 1, g[1] - 2 * w)
        rem[echo] = rem.get(echo, 0) - k
    bad = {g: k for g, k in rem.items() if k != 0}
    if bad:
        raise DeconvolutionError(f"division by W({w}) leaves remainder {bad}")
    return PoincarePolynomial(quot)


def hat_from_tilde(p: PoincarePolynomial, plain_o_weights: Sequence[int]) -> PoincarePolynomial:
    """Strip one ``W(w)`` factor per plain O marking."""
    q = p
    for w in plain_o_weights:
        q = _divide_one(q, w)
    if tensor_Ws(q, plain_o_weights) != p:
        raise DeconvolutionError("quotient does not multiply back to the input")
    return q


def normalize_ashift(p: PoincarePolynomial) -> PoincarePolynomial:
    """Shift alex2 so that the smallest occupied value is 0."""
    if not p:
        return p
    lo = min(a for _, a in p.coeffs)
    return shift(p, 0, lo)


def equal_up_to_ashift(p: PoincarePolynomial, q: PoincarePolynomial) -> bool:
    return normalize_ashift(p) == normalize_ashift(q)


# -- Euler characteristic ------------------------------------------------------


def euler_characteristic(obj) -> dict[int, int]:
    """``sum (-1)^M q^alex2`` as ``{alex2: coefficient}``, for a complex
    (chain level) or a Poincare polynomial (homology level)."""
    acc: Counter = Counter()
    if isinstance(obj, BigradedComplex):
        sign = np.where(obj.maslov % 2 == 0, 1, -1)
        vals, inv = np.unique(obj.alex2, return_inverse=True)
        sums = np.bincount(inv, weights=sign, minlength=len(vals))
        for a, s in zip(vals, sums):
            acc[int(a)] += int(round(s))
    else:
        for (m, a), k in obj.coeffs.items():
            acc[a] += k if m % 2 == 0 else -k
    return {a: k for a, k in sorted(acc.items()) if k != 0}


def laurent_str(poly: Mapping[int, int], var: str = "q") -> str:
    """Human-readable Laurent polynomial, highest exponent first."""
    if not poly:
        return "0"
    parts = []
    for e, k in sorted(poly.items(), reverse=True):
        mag = abs(k)
        if e == 0:
            mono = f"{mag}"
        else:
            coef = "" if mag == 1 else f"{mag}"
            mono = f"{coef}{var}" if e == 1 else f"{coef}{var}^{e}"
        sign = "-" if k < 0 else "+"
        parts.append((sign, mono))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        s += f" {sign} {mono}"
    return s


# -- ranks and homology ----------------------------------------------------------


def _csc_arrays(m):
    m = sp.csc_matrix(m)
    m.data = m.data % 2
    m.eliminate_zeros()
    m.sort_indices()
    return m


def gf2_rank(m) -> int:
    """Rank over GF(2) of a sparse (or dense) 0/1 matrix."""
    m = _csc_arrays(m)
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0 or m.nnz == 0:
        return 0
    # embed rows and columns in a single index space for the kernel
    size = nrows + ncols
    indptr = np.zeros(size + 1, dtype=np.int64)
    indptr[1 : ncols + 1] = m.indptr[1:]
    indptr[ncols + 1 :] = m.indptr[-1]
    indices = (m.indices.astype(np.int64) + ncols)
    nonzero = _kernels.reduce_columns(indptr, indices, size, False)
    return int(nonzero.sum())


def _relabel(c: BigradedComplex):
    """Order generators by (alex2 asc, maslov desc) and return the CSC
    arrays of the boundary in that order plus the permutation."""
    N = c.size
    order = np.lexsort((np.arange(N), -c.maslov, c.alex2))
    inv = np.empty(N, dtype=np.int64)
    inv[order] = np.arange(N, dtype=np.int64)
    s = inv[c.src]
    t = inv[c.dst]
    key = s * N + t
    key.sort()
    s = key // N
    t = (key - s * N).astype(np.int32 if N < 2**31 else np.int64)
    del key
    indptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(np.bincount(s, minlength=N), out=indptr[1:])
    return order, indptr, t


def homology(c: BigradedComplex, check: bool = True) -> PoincarePolynomial:
    """``dim H_{d,s} = dim C_{d,s} - rank d_{d,s} - rank d_{d+1,s}``."""
    if c.size == 0:
        return ZERO
    if not c.grading_drops():
        raise NotAComplex("boundary entries do not lower Maslov by exactly one at fixed alex2")
    order, indptr, indices = _relabel(c)
    if check and not _kernels.boundary_squared_is_zero(indptr, indices, c.size):
        raise NotAComplex("boundary map does not square to zero")
    survive = _kernels.reduce_columns(indptr, indices, c.size, True)
    m = c.maslov[order]
    a = c.alex2[order]
    dims = Counter(zip(m.tolist(), a.tolist()))
    ranks = Counter(zip(m[survive].tolist(), a[survive].tolist()))
    out = {}
    for (d, s), k in dims.items():
        h = k - ranks.get((d, s), 0) - ranks.get((d + 1, s), 0)
        if h < 0:
            raise NotAComplex(f"negative homology dimension at {(d, s)}")
        if h:
            out[(d, s)] = h
    return PoincarePolynomial(out)


def tilde_homology(wd: WeightedDiagram, check: bool = True) -> PoincarePolynomial:
    return homology(tilde_complex(wd), check=check)


def hat_homology(wd: WeightedDiagram, check: bool = True) -> PoincarePolynomial:
    return hat_from_tilde(tilde_homology(wd, check=check), wd.plain_o_weights)


def format_alex(alex2: int) -> str:
    """Alexander grading from its doubled value: ``3 -> '3/2'``, ``4 -> '2'``."""
    return str(alex2 // 2) if alex2 % 2 == 0 else f"{alex2}/2"


def table(p: PoincarePolynomial) -> str:
    """Plain-text table of a Poincare polynomial."""
    if not p:
        return "  (zero)"
    lines = ["  maslov  alex   (alex2)  dim"]
    for rec in p.as_records():
        lines.append(
            f"  {rec['maslov']:>6}  {format_alex(rec['alex2']):>5}  ({rec['alex2']:>5})  {rec['dim']:>3}"
        )
    return "\n".join(lines)
