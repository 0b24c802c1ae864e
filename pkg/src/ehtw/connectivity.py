"""Menger separators, bananas, cutsets and balanced separators.

Flows use the usual vertex-splitting reduction with unit vertex capacities.
All weight comparisons use :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .graph import (
    Graph,
    bits,
    component_masks,
    is_clique,
    is_induced_path,
    mask_tuple,
    reachable_mask,
    to_mask,
)
from .structures import Certificate, Kind, classify_wheel, sectors, validate_certificate


# -- weights ------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFunction:
    """Exact non-negative vertex weights."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(x) for x in self.weights)
        if any(x < 0 for x in ws):
            raise InputError("weights must be non-negative")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def uniform(cls, n: int) -> "WeightFunction":
        if n == 0:
            return cls(())
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def point(cls, n: int, v: int) -> "WeightFunction":
        return cls(tuple(Fraction(int(i == v)) for i in range(n)))

    @classmethod
    def from_mapping(cls, n: int, weights: Mapping[int, Fraction], normalize: bool = False) -> "WeightFunction":
        w = cls(tuple(Fraction(weights.get(v, 0)) for v in range(n)))
        return w.normalized() if normalize else w

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def is_normal(self) -> bool:
        return self.total == 1

    def normalized(self) -> "WeightFunction":
        t = self.total
        if t == 0:
            raise InputError("cannot normalize an all-zero weight function")
        return WeightFunction(tuple(x / t for x in self.weights))

    def of_mask(self, mask: int) -> Fraction:
        return sum((self.weights[v] for v in bits(mask)), Fraction(0))

    def of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in set(vertices)), Fraction(0))

    def to_json(self):
        return [{"num": x.numerator, "den": x.denominator} for x in self.weights]


def _check_weights(g: Graph, w: WeightFunction, normal: bool = True):
    if w.n != g.n:
        raise InputError(f"weight function covers {w.n} vertices, graph has {g.n}")
    if normal and not w.is_normal:
        raise InputError(f"weight function is not normal (total {w.total})")


@dataclass(frozen=True)
class Separation:
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    def is_valid(self, g: Graph) -> bool:
        xm, ym, zm = to_mask(self.x), to_mask(self.y), to_mask(self.z)
        if xm & ym or xm & zm or ym & zm or xm | ym | zm != g.full_mask:
            return False
        return g.nbr_mask(xm) & zm == 0


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: bool
    heaviest: Fraction
    heaviest_component: tuple[int, ...]

    def to_json(self):
        return {
            "balanced": self.balanced,
            "heaviest": {"num": self.heaviest.numerator, "den": self.heaviest.denominator},
            "heaviest_component": list(self.heaviest_component),
        }


def _balance_mask(g: Graph, w: WeightFunction, xmask: int, c: Fraction) -> BalanceVerdict:
    best, best_comp = Fraction(0), 0
    for comp in component_masks(g, g.full_mask & ~xmask):
        wt = w.of_mask(comp)
        if wt > best:
            best, best_comp = wt, comp
    return BalanceVerdict(best <= c, best, mask_tuple(best_comp))


def is_balanced_separator(g: Graph, w: WeightFunction, x: Iterable[int], c=Fraction(1, 2)) -> BalanceVerdict:
    """Every component of ``G \\ x`` has weight at most ``c``."""
    _check_weights(g, w)
    c = Fraction(c)
    if not 0 <= c <= 1:
        raise InputError("balance constant must lie in [0, 1]")
    return _balance_mask(g, w, to_mask(g.check_vertices(x)), c)


# -- vertex-disjoint paths ------------------------------------------------------

class _SplitFlow:
    """Unit vertex capacities between a and b (a, b themselves uncapacitated)."""

    INF = 1 << 30

    def __init__(self, g: Graph, a: int, b: int, removed: int = 0):
        self.g = g
        self.a, self.b = a, b
        self.cap: dict[tuple[int, int], int] = {}
        self.adj: dict[int, list[int]] = {}
        for v in range(g.n):
            if (removed >> v) & 1:
                continue
            if v not in (a, b):
                self._add(2 * v, 2 * v + 1, 1)
            for u in bits(g.mask(v) & ~removed):
                self._add(2 * v + 1, 2 * u, self.INF)
        self.source, self.sink = 2 * a + 1, 2 * b
        self.value = self._run()

    def _add(self, u, v, c):
        if (u, v) not in self.cap:
            self.adj.setdefault(u, []).append(v)
            self.adj.setdefault(v, []).append(u)
            self.cap.setdefault((v, u), 0)
        self.cap[(u, v)] = self.cap.get((u, v), 0) + c

    def _augment(self):
        parent = {self.source: None}
        q = deque([self.source])
        while q:
            u = q.popleft()
            if u == self.sink:
                break
            for v in self.adj.get(u, ()):
                if v not in parent and self.cap[(u, v)] > 0:
                    parent[v] = u
                    q.append(v)
        if self.sink not in parent:
            return False
        v = self.sink
        while parent[v] is not None:
            u = parent[v]
            self.cap[(u, v)] -= 1
            self.cap[(v, u)] += 1
            v = u
        return True

    def _run(self):
        flow = 0
        while self._augment():
            flow += 1
        return flow

    def paths(self) -> list[list[int]]:
        """Decompose the flow into vertex sequences a..b."""
        used = {}
        for (u, v), c in self.cap.items():
            # flow on an original arc u->v shows up as residual capacity on v->u
            if u // 2 != v // 2 and u % 2 == 1 and v % 2 == 0:
                f = self.cap[(v, u)]
                if f > 0:
                    used.setdefault(u // 2, []).append(v // 2)
        out = []
        for _ in range(self.value):
            path = [self.a]
            cur = self.a
            while cur != self.b:
                nxt = min(used[cur])
                used[cur].remove(nxt)
                path.append(nxt)
                cur = nxt
            out.append(path)
        return out


def _check_pair(g: Graph, a: int, b: int):
    g.check_vertices((a, b))
    if a == b:
        raise InputError("a and b must be distinct")
    if g.has_edge(a, b):
        raise InputError(f"{a} and {b} are adjacent: no separator exists")


def separator_size(g: Graph, a: int, b: int, removed: Iterable[int] = ()) -> int:
    return _SplitFlow(g, a, b, to_mask(removed)).value


def min_separator(g: Graph, a: int, b: int) -> tuple[int, ...]:
    """Lexicographically smallest minimum vertex set meeting every a-b path interior."""
    _check_pair(g, a, b)
    k = _SplitFlow(g, a, b).value
    chosen = []
    for v in range(g.n):
        if len(chosen) == k:
            break
        if v in (a, b):
            continue
        trial = chosen + [v]
        if _SplitFlow(g, a, b, to_mask(trial)).value == k - len(trial):
            chosen = trial
    return tuple(chosen)


def _induce(g: Graph, path: Sequence[int]) -> tuple[int, ...]:
    """Shortest a-b path inside G[path]; it is induced and keeps only path vertices."""
    allowed = to_mask(path)
    a, b = path[0], path[-1]
    parent = {a: None}
    q = deque([a])
    while q:
        u = q.popleft()
        if u == b:
            break
        for v in bits(g.mask(u) & allowed):
            if v not in parent:
                parent[v] = u
                q.append(v)
    out = [b]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


@dataclass(frozen=True)
class Banana:
    a: int
    b: int
    paths: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.paths)

    def is_valid(self, g: Graph) -> bool:
        if g.has_edge(self.a, self.b) or self.a == self.b:
            return False
        seen = 0
        for p in self.paths:
            if p[0] != self.a or p[-1] != self.b or not is_induced_path(g, p):
                return False
            inner = to_mask(p[1:-1])
            if inner & seen:
                return False
            seen |= inner
        return True

    def to_json(self):
        return {"a": self.a, "b": self.b, "k": self.k, "paths": [list(p) for p in self.paths]}


def max_banana(g: Graph, a: int, b: int) -> Banana:
    """Maximum family of internally disjoint induced a-b paths."""
    _check_pair(g, a, b)
    flow = _SplitFlow(g, a, b)
    paths = sorted(_induce(g, p) for p in flow.paths())
    return Banana(a, b, tuple(paths))


def separates(g: Graph, cut: Iterable[int], a: int, b: int) -> bool:
    cm = to_mask(cut)
    allowed = g.full_mask & ~cm
    return not (reachable_mask(g, a, allowed | (1 << b)) >> b) & 1


# -- star and clique cutsets ----------------------------------------------------

@dataclass(frozen=True)
class Cutset:
    kind: str  # "star" or "clique"
    vertices: tuple[int, ...]
    center: int | None
    components: tuple[tuple[int, ...], ...]

    def to_json(self):
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "center": self.center,
            "components": [list(c) for c in self.components],
        }


def is_cutset(g: Graph, s: Iterable[int]) -> bool:
    sm = to_mask(s)
    return len(component_masks(g, g.full_mask & ~sm)) >= 2


def star_and_clique_cutsets(g: Graph, clique_cap: int = 4, degree_cap: int = 16) -> list[Cutset]:
    """Per-vertex smallest star cutset (if any) followed by every clique cutset of size <= ``clique_cap``."""
    out = []
    for x in range(g.n):
        nb = g.adj(x)
        if len(nb) > degree_cap:
            raise InputError(f"vertex {x} has degree {len(nb)} > {degree_cap}: star cutset search refused")
        found = None
        for r in range(len(nb) + 1):
            for extra in itertools.combinations(nb, r):
                s = (1 << x) | to_mask(extra)
                comps = component_masks(g, g.full_mask & ~s)
                if len(comps) >= 2:
                    found = (s, comps)
                    break
            if found:
                break
        if found:
            s, comps = found
            out.append(Cutset("star", mask_tuple(s), x, tuple(mask_tuple(c) for c in comps)))
    for r in range(1, clique_cap + 1):
        for c in itertools.combinations(range(g.n), r):
            if not is_clique(g, c):
                continue
            comps = component_masks(g, g.full_mask & ~to_mask(c))
            if len(comps) >= 2:
                out.append(Cutset("clique", c, None, tuple(mask_tuple(m) for m in comps)))
    return out


# -- Gyarfas path ---------------------------------------------------------------

def _heavy(g: Graph, w: WeightFunction, allowed: int):
    for comp in component_masks(g, allowed):
        if w.of_mask(comp) > Fraction(1, 2):
            return comp
    return 0


def gyarfas_path(g: Graph, w: WeightFunction, start: int | None = None) -> tuple[int, ...]:
    """Induced path P such that ``N[P]`` is a w-balanced separator.

    Grows the path from ``start`` (default vertex 0): while ``G \\ N[P]`` has a
    component D of weight > 1/2, the smallest neighbor of the head that has a
    neighbor in D (and lies in the previous heavy component) is appended.
    """
    _check_weights(g, w)
    if g.n == 0:
        return ()
    if len(component_masks(g, g.full_mask)) != 1:
        raise InputError("gyarfas_path needs a connected graph")
    v0 = 0 if start is None else g.check_vertices([start])[0]
    path = [v0]
    closed = g.closed_mask(v0)
    prev = g.full_mask
    while True:
        heavy = _heavy(g, w, g.full_mask & ~closed)
        if not heavy:
            return tuple(path)
        cand = g.mask(path[-1]) & g.nbr_mask(heavy) & prev
        if not cand:  # pragma: no cover - excluded by the invariant
            raise AssertionError("Gyarfas extension failed")
        p = (cand & -cand).bit_length() - 1
        path.append(p)
        closed |= g.closed_mask(p)
        prev = heavy


# -- wheels and pyramids ------------------------------------------------------

@dataclass(frozen=True)
class ForcerResult:
    cutset: tuple[int, ...]
    q_interior: tuple[int, ...]
    w_set: tuple[int, ...]
    z_set: tuple[int, ...]
    n_prime: tuple[int, ...]
    separates: bool
    finding: str | None

    def to_json(self):
        return {
            "cutset": list(self.cutset),
            "q_interior": list(self.q_interior),
            "W": list(self.w_set),
            "Z": list(self.z_set),
            "N_prime": list(self.n_prime),
            "separates": self.separates,
            "finding": self.finding,
        }


def wheel_forcer_cutset(g: Graph, wheel: Certificate, sector: Sequence[int]) -> ForcerResult:
    """Cutset ``N' + x`` separating the interior of a long sector from ``W + Z``.

    ``sector`` is a long sector of the wheel written from x1 to x2.  A failed
    separation is reported through ``separates=False`` and ``finding`` (the
    host is then not in the class), not raised.
    """
    if wheel.kind is not Kind.WHEEL:
        raise InputError("wheel_forcer_cutset needs a WHEEL certificate")
    problems = validate_certificate(g, wheel)
    if problems:
        raise InputError(f"invalid wheel: {problems}")
    hole = list(wheel.roles["hole"])
    x = wheel.roles["center"]
    flags = classify_wheel(hole, wheel.roles["spokes"])
    if not flags.is_proper:
        raise InputError("wheel is not proper")
    if flags.is_universal:
        raise InputError("wheel is universal (it has no long sector)")
    q = tuple(sector)
    known = {s.path for s in sectors(wheel)} | {tuple(reversed(s.path)) for s in sectors(wheel)}
    if q not in known or len(q) < 3:
        raise InputError("sector is not a long sector of the wheel")
    x1, x2 = q[0], q[-1]
    k = len(hole)
    # walk H \ {x1} starting at x2, away from the sector
    i2 = hole.index(x2)
    step = 1 if hole[(i2 - 1) % k] == q[-2] else -1
    walk = [hole[(i2 + step * j) % k] for j in range(k)]
    walk = [v for v in walk if v != x1]
    nx = g.mask(x)
    w_set = []
    count = 0
    for h in walk:
        if (nx >> h) & 1:
            count += 1
            if count % 2 == 0:
                w_set.append(h)
    qm = to_mask(q)
    z_set = [v for v in hole if not (qm >> v) & 1 and not (nx >> v) & 1]
    wm = to_mask(w_set)
    n_prime = mask_tuple(nx & ~wm)
    cut = to_mask(n_prime) | (1 << x)
    q_int = q[1:-1]
    target = wm | to_mask(z_set)
    reach = 0
    for s in q_int:
        reach |= reachable_mask(g, s, g.full_mask & ~cut)
    ok = not (reach & target)
    finding = None
    if not ok:
        finding = (
            f"Q* {list(q_int)} reaches {mask_tuple(reach & target)} avoiding N' + x: "
            "host is outside the class"
        )
    return ForcerResult(mask_tuple(cut), tuple(sorted(q_int)), tuple(sorted(w_set)), tuple(z_set), n_prime, ok, finding)


def wheel_star_cutset_check(g: Graph, wheel: Certificate) -> tuple[bool, tuple[int, ...] | None]:
    """True when no component D of ``G \\ N[x]`` has ``H`` inside ``N[D]``; else the offending D."""
    hole = to_mask(wheel.roles["hole"])
    x = wheel.roles["center"]
    for comp in component_masks(g, g.full_mask & ~g.closed_mask(x)):
        if hole & ~(comp | g.nbr_mask(comp)) == 0:
            return False, mask_tuple(comp)
    return True, None


def pyramid_neighborhood_check(g: Graph, pyramid: Certificate, p: Sequence[int]) -> bool:
    """Whether one of the apex and base vertices has a neighbor in the interior of ``p``.

    ``p`` must be an induced path of ``g`` from ``P_i \\ {a, a_i, b_i}`` to
    ``P_j \\ {a, a_j, b_j}`` for distinct legs i, j.
    """
    if pyramid.kind is not Kind.PYRAMID:
        raise InputError("pyramid_neighborhood_check needs a PYRAMID certificate")
    p = tuple(p)
    if len(p) < 2 or not is_induced_path(g, p):
        raise InputError("p must be an induced path with two distinct ends")
    legs = [set(path[2:-1]) for path in pyramid.roles["paths"]]
    ends = [next((i for i, leg in enumerate(legs) if v in leg), None) for v in (p[0], p[-1])]
    if None in ends or ends[0] == ends[1]:
        raise InputError("ends of p must lie in the interiors of two different legs (minus a_i)")
    watch = to_mask([pyramid.roles["apex"], *pyramid.roles["base"]])
    return bool(g.nbr_mask(to_mask(p[1:-1])) & watch)


def pyramid_legs_core(pyramid: Certificate) -> list[tuple[int, ...]]:
    """``P_i \\ {a, a_i, b_i}`` for each leg."""
    return [tuple(path[2:-1]) for path in pyramid.roles["paths"]]


# -- dominated balanced separators --------------------------------------------------

@dataclass(frozen=True)
class DominatedSeparator:
    y: tuple[int, ...] | None
    verdict: BalanceVerdict | None
    strategy: str
    source: str | None
    candidates_tried: int

    @property
    def found(self) -> bool:
        return self.y is not None

    def to_json(self):
        return {
            "found": self.found,
            "Y": None if self.y is None else list(self.y),
            "verdict": None if self.verdict is None else self.verdict.to_json(),
            "strategy": self.strategy,
            "source": self.source,
            "candidates_tried": self.candidates_tried,
        }


def _closed_nbhd_mask(g: Graph, ym: int) -> int:
    return ym | g.nbr_mask(ym)


def _guided_candidates(g: Graph, w: WeightFunction, d_max: int):
    from .structures import find_structure, hubs

    if g.n and len(component_masks(g, g.full_mask)) == 1:
        path = gyarfas_path(g, w)
        for size in range(1, min(d_max, len(path)) + 1):
            for i in range(len(path) - size + 1):
                yield "gyarfas-window", path[i:i + size]
    hub_res = hubs(g, budget=10**5)
    for x in hub_res.hubs:
        yield "hub", (x,)
        wheel = hub_res.witnesses[x]
        spokes = wheel.roles["spokes"]
        for r in range(1, d_max):
            for extra in itertools.combinations(spokes, r):
                yield "wheel-cutset", (x,) + extra
    pyr = find_structure(g, Kind.PYRAMID, budget=10**5)
    if pyr.certificate is not None:
        top = (pyr.certificate.roles["apex"], *pyr.certificate.roles["base"])
        for r in range(1, min(d_max, 4) + 1):
            for sub in itertools.combinations(top, r):
                yield "pyramid-top", sub


def dominated_balanced_separator(
    g: Graph, w: WeightFunction, d_max: int, strategy: str = "exhaustive"
) -> DominatedSeparator:
    """Find Y with ``|Y| <= d_max`` and ``N[Y]`` w-balanced.

    ``exhaustive`` tries all Y by size, then lexicographically, so the answer
    is the smallest such Y.  ``guided`` first tries candidates built from a
    Gyarfas path, hub wheels and pyramid tops and then falls back to the
    exhaustive order, so both strategies agree on feasibility.
    """
    _check_weights(g, w)
    if d_max < 0:
        raise InputError("d_max must be non-negative")
    if strategy not in ("exhaustive", "guided"):
        raise InputError(f"unknown strategy {strategy!r}")
    half = Fraction(1, 2)
    tried = 0
    if strategy == "guided":
        seen = set()
        for source, y in _guided_candidates(g, w, d_max):
            y = tuple(sorted(set(y)))
            if len(y) > d_max or y in seen:
                continue
            seen.add(y)
            tried += 1
            v = _balance_mask(g, w, _closed_nbhd_mask(g, to_mask(y)), half)
            if v.balanced:
                return DominatedSeparator(y, v, strategy, source, tried)
    for size in range(0, min(d_max, g.n) + 1):
        for y in itertools.combinations(range(g.n), size):
            tried += 1
            v = _balance_mask(g, w, _closed_nbhd_mask(g, to_mask(y)), half)
            if v.balanced:
                return DominatedSeparator(y, v, strategy, "enumeration", tried)
    return DominatedSeparator(None, None, strategy, None, tried)
