"""Random valid diagrams and random balanced colorings, for fuzzing."""

from __future__ import annotations

import random
from collections import deque

from .diagram import GridDiagram, SpatialGraphSkeleton, WeightedDiagram, assign_weights, trace_edges
from .errors import TraceError


def random_diagram(n: int, rng: random.Random, star_prob: float = 0.4,
                   extra_x_prob: float = 0.25, drop_x_prob: float = 0.15,
                   max_tries: int = 1000) -> GridDiagram:
    """A random graph grid diagram whose every component meets a vertex."""
    for _ in range(max_tries):
        o_perm = list(range(n))
        rng.shuffle(o_perm)  # column c holds an O in row o_perm[c]
        if n == 1:
            return GridDiagram(1, ((0, 0, True),), frozenset())
        while True:
            x_perm = list(range(n))
            rng.shuffle(x_perm)
            if all(x_perm[c] != o_perm[c] for c in range(n)):
                break
        stars = {c for c in range(n) if rng.random() < star_prob}
        if not stars:
            stars = {rng.randrange(n)}
        star_rows = {o_perm[c] for c in stars}
        xs = {(x_perm[c], c) for c in range(n)}
        o_cells = {(o_perm[c], c) for c in range(n)}
        for r in star_rows:
            for c in stars:
                if (r, c) in o_cells:
                    continue
                if (r, c) in xs:
                    if rng.random() < drop_x_prob:
                        xs.discard((r, c))
                elif rng.random() < extra_x_prob:
                    xs.add((r, c))
        d = GridDiagram(n, tuple((o_perm[c], c, c in stars) for c in range(n)), frozenset(xs))
        try:
            trace_edges(d)
        except TraceError:
            continue
        return d
    raise RuntimeError("could not generate a diagram with every component on a vertex")


def cycle_basis_signed(sk: SpatialGraphSkeleton) -> list[list[int]]:
    """Fundamental cycles of the underlying undirected multigraph, each as a
    vector of +1/-1/0 per edge (sign = traversal agrees with orientation)."""
    nv = len(sk.vertices)
    adj = [[] for _ in range(nv)]
    for i, e in enumerate(sk.edges):
        adj[e.tail].append((e.head, i, +1))
        adj[e.head].append((e.tail, i, -1))
    parent = [None] * nv  # (vertex, edge, sign) leading into v
    seen = [False] * nv
    tree = set()
    for root in range(nv):
        if seen[root]:
            continue
        seen[root] = True
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for u, i, s in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = (v, i, s)
                    tree.add(i)
                    dq.append(u)

    def path_to_root(v):
        out = []
        while parent[v] is not None:
            pv, i, s = parent[v]
            out.append((v, i, s))
            v = pv
        return out

    cycles = []
    for i, e in enumerate(sk.edges):
        if i in tree:
            continue
        vec = [0] * len(sk.edges)
        vec[i] += 1
        # close the cycle head -> ... -> tail through the tree
        up_h = path_to_root(e.head)
        up_t = path_to_root(e.tail)
        for _, j, s in up_h:
            vec[j] -= s
        for _, j, s in up_t:
            vec[j] += s
        cycles.append(vec)
    return cycles


def random_balanced_weights(sk: SpatialGraphSkeleton, rng: random.Random,
                            lo: int = -2, hi: int = 3) -> list[int]:
    w = [0] * len(sk.edges)
    for cyc in cycle_basis_signed(sk):
        k = rng.randint(lo, hi)
        for i, s in enumerate(cyc):
            w[i] += k * s
    return w


def random_weighted_diagram(n: int, rng: random.Random, **kw) -> WeightedDiagram:
    d = random_diagram(n, rng, **kw)
    sk = trace_edges(d)
    return assign_weights(d, random_balanced_weights(sk, rng), skeleton=sk)
