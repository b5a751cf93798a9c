"""Numerical checks of the structural theorems.

Each check returns a ``Verdict`` holding both sides of the claimed relation,
so callers can print them whether or not the check passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import combinators as cb
from .complex import cn_complex
from .diagram import WeightedDiagram, build_cn_fixture
from .homology import (
    ZERO,
    PoincarePolynomial,
    equal_up_to_ashift,
    hat_from_tilde,
    homology,
    normalize_ashift,
    tensor_W,
    tilde_homology,
)
from .moves import dump_log, random_move_walk
from .oracle import MAX_N as ORACLE_MAX_N
from .oracle import oracle_homology


@dataclass
class Verdict:
    name: str
    passed: bool
    lhs: PoincarePolynomial | None = None
    rhs: PoincarePolynomial | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"check": self.name, "passed": self.passed, "details": self.details}
        for key in ("lhs", "rhs"):
            p = getattr(self, key)
            out[key] = None if p is None else p.as_records()
        return out


def hat(wd: WeightedDiagram, oracle: bool = False) -> PoincarePolynomial:
    """Hat homology; with ``oracle`` the tilde side comes from the dense
    reference implementation (small diagrams only)."""
    tilde = oracle_homology(wd) if oracle else tilde_homology(wd)
    return hat_from_tilde(tilde, wd.plain_o_weights)


def _part(wd: WeightedDiagram, oracle: bool) -> PoincarePolynomial:
    return hat(wd, oracle=oracle and wd.n <= ORACLE_MAX_N)


def vanishing(wd: WeightedDiagram, name: str = "vanishing") -> Verdict:
    """Sink, source or cut edge: hat homology is zero."""
    h = hat(wd)
    sk = wd.skeleton
    return Verdict(name, h == ZERO, h, ZERO,
                   {"n": wd.n, "sinks": len(sk.sinks), "sources": len(sk.sources)})


def cut_edge(w1: WeightedDiagram, w2: WeightedDiagram, strict: bool = True) -> Verdict:
    wd = cb.join_cut_edge(w1, w2, strict=strict)
    v = vanishing(wd, "cut-edge")
    v.details["n"] = wd.n
    return v


def _product_check(name, combined, w1, w2, extra_w, oracle):
    lhs = hat(combined)
    rhs = _part(w1, oracle) * _part(w2, oracle)
    if extra_w is not None:
        rhs = tensor_W(rhs, extra_w)
    return Verdict(name, equal_up_to_ashift(lhs, rhs), normalize_ashift(lhs), normalize_ashift(rhs),
                   {"n": combined.n, "dim": lhs.dim()})


def wedge(w1, w2, strict: bool = True, oracle: bool = False) -> Verdict:
    """hat(f1 v f2) = hat(f1) (x) hat(f2)."""
    return _product_check("wedge", cb.wedge(w1, w2, strict=strict), w1, w2, None, oracle)


def connected_sum(w1, w2, strict: bool = True, oracle: bool = False) -> Verdict:
    """hat(f1 # f2) = hat(f1) (x) hat(f2) (x) W(w1(v1))."""
    gp = cb.GoodPair(w1, w2, strict)
    wd = cb.connected_sum(gp)
    return _product_check("connected-sum", wd, w1, w2, w1.marking_weight[gp.v1], oracle)


def disjoint(w1, w2, oracle: bool = False) -> Verdict:
    """hat(f1 u f2) = hat(f1) (x) hat(f2) (x) W(0)."""
    return _product_check("disjoint", cb.disjoint_union(w1, w2), w1, w2, 0, oracle)


def kunneth(w1, w2, strict: bool = False, oracle: bool = True) -> Verdict:
    """Knots through one vertex each: stripping the W(w(v)) factor from
    hat(K1 # K2) leaves hat(K1) (x) hat(K2)."""
    gp = cb.GoodPair(w1, w2, strict)
    wd = cb.connected_sum(gp)
    whole = hat(wd)
    lhs = hat_from_tilde(whole, [w1.marking_weight[gp.v1]])
    rhs = _part(w1, oracle) * _part(w2, oracle)
    return Verdict("kunneth", equal_up_to_ashift(lhs, rhs), normalize_ashift(lhs), normalize_ashift(rhs),
                   {"n": wd.n, "dim": lhs.dim(), "dim_with_w": whole.dim()})


def cn_acyclic(n: int) -> Verdict:
    h = homology(cn_complex(build_cn_fixture(n)))
    return Verdict("cn-acyclic", h == ZERO, h, ZERO, {"n": n, "states": math.factorial(n)})


def dimension_law(wd: WeightedDiagram) -> Verdict:
    """dim tilde = 2^k dim hat, k = number of plain O's, with exact deconvolution."""
    tilde = tilde_homology(wd)
    k = len(wd.plain_o_weights)
    h = hat_from_tilde(tilde, wd.plain_o_weights)  # raises if inexact
    ok = tilde.dim() == 2 ** k * h.dim()
    return Verdict("dimension-law", ok, tilde, h, {"n": wd.n, "plain_os": k})


def move_invariance(wd: WeightedDiagram, steps: int = 20, seed: int = 0,
                    max_n: int | None = None) -> Verdict:
    end, log = random_move_walk(wd, steps, seed, max_n=max_n)
    h0 = hat(wd)
    h1 = hat(end)
    return Verdict("move-invariance", equal_up_to_ashift(h0, h1), normalize_ashift(h0), normalize_ashift(h1),
                   {"seed": seed, "steps": len(log), "final_n": end.n, "log": dump_log(log)})
