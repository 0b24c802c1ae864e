"""Brute-force structure detection by enumerating every vertex subset.

This engine shares nothing with the path-growing searches in
``ehtw.structures`` beyond the graph type: a subset X is classified purely
from the degree sequence of ``G[X]`` followed by a small structural check.
It is exponential in ``n`` and refuses graphs above ``MAX_N`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import GuardrailError
from .graph import Graph, bits, component_masks, mask_tuple

MAX_N = 14


def _edges_in(g: Graph, x: int) -> int:
    return sum((g.mask(v) & x).bit_count() for v in bits(x)) // 2


def _connected(g: Graph, x: int) -> bool:
    return len(component_masks(g, x)) == 1


def _is_triangle(g: Graph, t) -> bool:
    a, b, c = t
    return g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)


def _theta_shape(g: Graph, x: int, ends) -> bool:
    a, b = ends
    if g.has_edge(a, b) or not _connected(g, x):
        return False
    comps = component_masks(g, x & ~((1 << a) | (1 << b)))
    if len(comps) != 3:
        return False
    return all(g.mask(a) & c and g.mask(b) & c for c in comps)


def _prism_shape(g: Graph, x: int, six) -> bool:
    rest = set(six)
    first = six[0]
    for pair in combinations(six[1:], 2):
        ta = (first,) + pair
        tb = tuple(sorted(rest - set(ta)))
        if not (_is_triangle(g, ta) and _is_triangle(g, tb)):
            continue
        # Remove triangle edges: what is left must be three A-B paths.
        am = sum(1 << v for v in ta)
        bm = sum(1 << v for v in tb)
        adj = {}
        for v in bits(x):
            m = g.mask(v) & x
            if (am >> v) & 1:
                m &= ~am
            if (bm >> v) & 1:
                m &= ~bm
            adj[v] = m
        seen = 0
        ok = True
        for a in ta:
            prev, cur = None, a
            seen |= 1 << a
            while True:
                nxt = [u for u in bits(adj[cur]) if u != prev]
                if len(nxt) != 1:
                    ok = False
                    break
                prev, cur = cur, nxt[0]
                if (seen >> cur) & 1:
                    ok = False
                    break
                seen |= 1 << cur
                if (bm >> cur) & 1:
                    break
            if not ok:
                break
        if ok and seen == x:
            return True
    return False


def _pyramid_shape(g: Graph, x: int, four):
    """Return the apex if ``G[X]`` is a pyramid with degree-3 vertices ``four``."""
    for apex in four:
        base = tuple(v for v in four if v != apex)
        if not _is_triangle(g, base):
            continue
        bm = sum(1 << v for v in base)
        if (g.mask(apex) & bm).bit_count() > 1:
            continue
        # G[X] minus the base edges must be a tree (a subdivided claw).
        if _edges_in(g, x) - 3 != x.bit_count() - 1:
            continue
        seen = 1 << apex
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                m = g.mask(v) & x
                if (bm >> v) & 1:
                    m &= ~bm
                nxt |= m
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        if seen == x:
            return apex
    return None


def _lexmin(masks):
    best = None
    for m in masks:
        t = mask_tuple(m)
        if best is None or t < best:
            best = t
    return best


@dataclass
class SubsetReport:
    """Lex-smallest vertex set per kind (None when absent) and hub witnesses."""

    n: int
    c4: tuple | None = None
    even_hole: tuple | None = None
    theta: tuple | None = None
    prism: tuple | None = None
    pyramid: tuple | None = None
    wheel: tuple | None = None  # (vertex tuple, center)
    even_wheel: tuple | None = None
    hubs: dict = field(default_factory=dict)  # center -> lex-min vertex tuple of a proper wheel
    pyramid_sets: list = field(default_factory=list)  # every pyramid as (vertex tuple, apex)
    clique_number: int = 0
    hole_count: int = 0

    def present(self, kind: str) -> bool:
        return getattr(self, kind.lower()) is not None

    def membership(self, t=None) -> str:
        if self.c4 or self.theta or self.prism or self.even_wheel:
            return "NOT_IN_C"
        if t is None:
            return "IN_C"
        return f"NOT_IN_C_{t}" if self.clique_number >= t else f"IN_C_{t}"


def analyze(g: Graph) -> SubsetReport:
    n = g.n
    if n > MAX_N:
        raise GuardrailError(f"subset enumeration is limited to {MAX_N} vertices (got {n})")
    rep = SubsetReport(n)
    if n == 0:
        return rep
    size = 1 << n
    xs = np.arange(size, dtype=np.int64)
    inx = [((xs >> v) & 1).astype(bool) for v in range(n)]
    pc = np.zeros(size, dtype=np.int64)
    for v in range(n):
        pc += inx[v]
    deg = [np.where(inx[v], pc[xs & g.mask(v)], -1) for v in range(n)]

    cnt2 = np.zeros(size, dtype=np.int64)
    cnt3 = np.zeros(size, dtype=np.int64)
    bad = np.zeros(size, dtype=bool)
    clique = np.ones(size, dtype=bool)
    for v in range(n):
        d = deg[v]
        cnt2 += d == 2
        cnt3 += d == 3
        bad |= inx[v] & (d != 2) & (d != 3)
        clique &= ~inx[v] | (d == pc - 1)
    rep.clique_number = int(pc[clique].max())

    # holes: all degrees 2, connected, at least four vertices
    cand = np.nonzero((cnt2 == pc) & (pc >= 4))[0]
    hole = np.zeros(size, dtype=bool)
    for x in cand.tolist():
        if _connected(g, x):
            hole[x] = True
    hole_masks = np.nonzero(hole)[0].tolist()
    rep.hole_count = len(hole_masks)
    rep.c4 = _lexmin(x for x in hole_masks if x.bit_count() == 4)
    rep.even_hole = _lexmin(x for x in hole_masks if x.bit_count() % 2 == 0)

    shape = ~bad & (cnt2 + cnt3 == pc)
    thetas = []
    for x in np.nonzero(shape & (cnt3 == 2))[0].tolist():
        ends = [v for v in bits(x) if (g.mask(v) & x).bit_count() == 3]
        if _theta_shape(g, x, ends):
            thetas.append(x)
    rep.theta = _lexmin(thetas)

    prisms = []
    for x in np.nonzero(shape & (cnt3 == 6))[0].tolist():
        six = [v for v in bits(x) if (g.mask(v) & x).bit_count() == 3]
        if _prism_shape(g, x, six):
            prisms.append(x)
    rep.prism = _lexmin(prisms)

    pyramids = []
    for x in np.nonzero(shape & (cnt3 == 4))[0].tolist():
        four = [v for v in bits(x) if (g.mask(v) & x).bit_count() == 3]
        apex = _pyramid_shape(g, x, four)
        if apex is not None:
            pyramids.append(x)
            rep.pyramid_sets.append((mask_tuple(x), apex))
    rep.pyramid = _lexmin(pyramids)
    rep.pyramid_sets.sort()

    wheel_best = None
    even_best = None
    hubs = {}
    for v in range(n):
        sel = inx[v] & (deg[v] >= 3) & hole[xs ^ (1 << v)]
        for x in np.nonzero(sel)[0].tolist():
            key = (mask_tuple(x), v)
            if wheel_best is None or key < wheel_best:
                wheel_best = key
            spokes = g.mask(v) & x
            k = spokes.bit_count()
            if k % 2 == 0 and (even_best is None or key < even_best):
                even_best = key
            inner = _edges_in(g, spokes)
            if not (k == 3 and inner in (1, 2)):
                if v not in hubs or key[0] < hubs[v]:
                    hubs[v] = key[0]
    rep.wheel = wheel_best
    rep.even_wheel = even_best
    rep.hubs = dict(sorted(hubs.items()))
    return rep
