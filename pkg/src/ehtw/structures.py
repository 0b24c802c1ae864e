"""Detection of C4, even holes, thetas, prisms, pyramids, wheels and hubs.

The default engine walks induced paths depth-first (holes are grown from
their minimum vertex, paths between two ends are grown from one end) and
charges one budget node per extension.  ``ehtw.subsets`` holds an
independent engine that enumerates vertex subsets; the two are cross-checked
in the test-suite.

Every search returns the certificate whose sorted vertex list is
lexicographically smallest (ties between wheels on the same vertex set go to
the smaller center), and every certificate is re-checked by
:func:`validate_certificate` before it is handed out.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping

from .budget import Budget, as_budget, DEFAULT_BUDGET
from .errors import BudgetExhausted, InputError
from .graph import Graph, bits, clique_number, is_induced_path, mask_tuple, to_mask


class Kind(str, enum.Enum):
    C4 = "C4"
    EVEN_HOLE = "EVEN_HOLE"
    THETA = "THETA"
    PRISM = "PRISM"
    PYRAMID = "PYRAMID"
    WHEEL = "WHEEL"

    @property
    def rank(self) -> int:
        return list(Kind).index(self)


class Status(str, enum.Enum):
    PRESENT = "present"
    ABSENT = "absent"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, eq=True)
class Certificate:
    """Witness of an induced structure.

    ``roles`` depends on the kind:

    * C4, EVEN_HOLE: ``hole`` (cyclic order)
    * THETA: ``ends`` ``[a, b]`` and three ``paths`` from a to b
    * PRISM: ``triangles`` ``[[a1,a2,a3],[b1,b2,b3]]`` and ``paths`` ai..bi
    * PYRAMID: ``apex``, ``base`` ``[b1,b2,b3]`` and ``paths`` apex..bi
    * WHEEL: ``hole``, ``center`` and ``spokes`` (center's neighbors on the hole,
      in hole order)
    """

    kind: Kind
    roles: Mapping[str, Any] = field(hash=False)
    vertices: tuple[int, ...] = ()

    def __hash__(self):
        return hash((self.kind, self.vertices))

    @property
    def key(self):
        return (self.vertices, self.roles.get("center", -1) if self.kind is Kind.WHEEL else -1)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "roles": _jsonable(self.roles), "vertices": list(self.vertices)}
        if self.kind is Kind.WHEEL:
            out["flags"] = wheel_flags(self).to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        try:
            kind = Kind(data["kind"])
            roles = dict(data["roles"])
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from None
        return make_certificate(kind, roles)


def _jsonable(x):
    if isinstance(x, Mapping):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def make_certificate(kind: Kind, roles: Mapping[str, Any]) -> Certificate:
    verts = set()
    if "hole" in roles:
        verts.update(roles["hole"])
    for p in roles.get("paths", ()):
        verts.update(p)
    for t in roles.get("triangles", ()):
        verts.update(t)
    verts.update(roles.get("base", ()))
    for key in ("apex", "center"):
        if key in roles:
            verts.add(roles[key])
    frozen = {}
    for k, v in roles.items():
        if isinstance(v, (list, tuple)):
            v = tuple(tuple(x) if isinstance(x, (list, tuple)) else x for x in v)
        frozen[k] = v
    return Certificate(kind, frozen, tuple(sorted(verts)))


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate/reflect a cyclic sequence to start at its minimum, heading to the smaller neighbor."""
    cyc = list(cycle)
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return tuple(cyc)


def wheel_certificate(g: Graph, hole, center: int) -> Certificate:
    hole = canonical_cycle(hole)
    spokes = tuple(v for v in hole if g.has_edge(center, v))
    return make_certificate(Kind.WHEEL, {"hole": hole, "center": center, "spokes": spokes})


# -- wheel taxonomy ----------------------------------------------------------

@dataclass(frozen=True)
class WheelFlags:
    neighbor_count: int
    is_even: bool
    is_universal: bool
    is_twin: bool
    is_short_pyramid: bool
    is_proper: bool

    def to_json(self):
        return {
            "neighbor_count": self.neighbor_count,
            "is_even": self.is_even,
            "is_universal": self.is_universal,
            "is_twin": self.is_twin,
            "is_short_pyramid": self.is_short_pyramid,
            "is_proper": self.is_proper,
        }


def _spoke_edges(hole, spokes) -> int:
    """Number of hole edges with both ends among the spokes."""
    s = set(spokes)
    k = len(hole)
    return sum(1 for i in range(k) if hole[i] in s and hole[(i + 1) % k] in s)


def classify_wheel(hole, spokes) -> WheelFlags:
    cnt = len(spokes)
    inner = _spoke_edges(hole, spokes)
    universal = cnt == len(hole)
    twin = cnt == 3 and inner == 2
    short_pyramid = cnt == 3 and inner == 1
    return WheelFlags(cnt, cnt % 2 == 0, universal, twin, short_pyramid, not (twin or short_pyramid))


def wheel_flags(cert: Certificate) -> WheelFlags:
    if cert.kind is not Kind.WHEEL:
        raise InputError("wheel flags requested for a non-wheel certificate")
    return classify_wheel(cert.roles["hole"], cert.roles["spokes"])


@dataclass(frozen=True)
class Sector:
    path: tuple[int, ...]
    long: bool


def sectors(cert: Certificate) -> list[Sector]:
    """Sectors of a wheel in hole order, starting from the first spoke."""
    if cert.kind is not Kind.WHEEL:
        raise InputError("sectors are defined for wheel certificates only")
    hole = list(cert.roles["hole"])
    spokes = set(cert.roles["spokes"])
    if len(spokes) < 3 or not spokes <= set(hole):
        raise InputError("malformed wheel certificate")
    k = len(hole)
    idx = [i for i, v in enumerate(hole) if v in spokes]
    out = []
    for j, i in enumerate(idx):
        nxt = idx[(j + 1) % len(idx)]
        span = (nxt - i) % k
        path = tuple(hole[(i + s) % k] for s in range(span + 1))
        out.append(Sector(path, span > 1))
    return out


# -- validators --------------------------------------------------------------

def _is_hole(g: Graph, cyc) -> bool:
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j - i == 1) or (i == 0 and j == k - 1)
            if g.has_edge(cyc[i], cyc[j]) != adjacent:
                return False
    return True


def _paths_ok(g, paths, starts, ends):
    for p, s, e in zip(paths, starts, ends):
        if len(p) < 2 or p[0] != s or p[-1] != e or not is_induced_path(g, p):
            return False
    return True


def _no_edges_between(g, xs, ys, allowed=()):
    allowed = {frozenset(e) for e in allowed}
    for x in xs:
        for y in ys:
            if x == y:
                return False
            if g.has_edge(x, y) and frozenset((x, y)) not in allowed:
                return False
    return True


def validate_certificate(g: Graph, cert: Certificate) -> list[str]:
    """Literal definitional re-check of a certificate; returns the list of problems."""
    problems = []
    r = cert.roles
    try:
        allv = g.check_vertices(cert.vertices)
    except InputError as exc:
        return [str(exc)]
    if len(allv) != len(cert.vertices):
        problems.append("vertex list has duplicates")
    kind = cert.kind
    if kind in (Kind.C4, Kind.EVEN_HOLE, Kind.WHEEL):
        hole = list(r["hole"])
        if not _is_hole(g, hole):
            problems.append("hole is not an induced cycle of length >= 4")
        if kind is Kind.C4 and len(hole) != 4:
            problems.append("C4 certificate must have 4 vertices")
        if kind is Kind.EVEN_HOLE and len(hole) % 2:
            problems.append("even hole has odd length")
        if kind is Kind.WHEEL:
            x = r["center"]
            if x in hole:
                problems.append("wheel center lies on the hole")
            spokes = [v for v in hole if g.has_edge(x, v)]
            if len(spokes) < 3:
                problems.append("wheel center has fewer than 3 neighbors on the hole")
            if tuple(spokes) != tuple(r.get("spokes", ())):
                problems.append("recorded spokes disagree with the graph")
    elif kind is Kind.THETA:
        a, b = r["ends"]
        paths = [list(p) for p in r["paths"]]
        if len(paths) != 3:
            problems.append("theta needs three paths")
        elif not _paths_ok(g, paths, [a] * 3, [b] * 3):
            problems.append("theta paths are not induced a-b paths")
        else:
            if any(len(p) < 3 for p in paths):
                problems.append("theta path of length < 2")
            inter = [p[1:-1] for p in paths]
            for i, j in itertools.combinations(range(3), 2):
                if not _no_edges_between(g, inter[i], inter[j]):
                    problems.append(f"theta interiors {i},{j} not disjoint/anticomplete")
    elif kind is Kind.PRISM:
        ta, tb = (list(t) for t in r["triangles"])
        paths = [list(p) for p in r["paths"]]
        if len(ta) != 3 or len(tb) != 3 or len(paths) != 3:
            problems.append("prism needs two triangles and three paths")
        else:
            for t in (ta, tb):
                if not all(g.has_edge(t[i], t[j]) for i, j in ((0, 1), (0, 2), (1, 2))):
                    problems.append("prism triangle is not a triangle")
            if not _paths_ok(g, paths, ta, tb):
                problems.append("prism paths are not induced ai-bi paths")
            else:
                tri_edges = [(ta[i], ta[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
                tri_edges += [(tb[i], tb[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
                for i, j in itertools.combinations(range(3), 2):
                    if not _no_edges_between(g, paths[i], paths[j], tri_edges):
                        problems.append(f"prism paths {i},{j} not disjoint or joined by extra edges")
    elif kind is Kind.PYRAMID:
        a = r["apex"]
        base = list(r["base"])
        paths = [list(p) for p in r["paths"]]
        if len(base) != 3 or len(paths) != 3:
            problems.append("pyramid needs a base triangle and three paths")
        else:
            if not all(g.has_edge(base[i], base[j]) for i, j in ((0, 1), (0, 2), (1, 2))):
                problems.append("pyramid base is not a triangle")
            if not _paths_ok(g, paths, [a] * 3, base):
                problems.append("pyramid paths are not induced apex-bi paths")
            else:
                if sum(1 for p in paths if len(p) >= 3) < 2:
                    problems.append("fewer than two pyramid paths of length >= 2")
                tri = [(base[i], base[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
                tails = [p[1:] for p in paths]
                for i, j in itertools.combinations(range(3), 2):
                    if not _no_edges_between(g, tails[i], tails[j], tri):
                        problems.append(f"pyramid paths {i},{j} not disjoint or joined by extra edges")
    else:  # pragma: no cover
        problems.append(f"unknown kind {kind}")
    return problems


# -- induced path / hole enumeration -------------------------------------------

def iter_holes(g: Graph, budget: Budget):
    """Yield every hole once, in canonical cyclic order."""
    masks = g.masks
    full = g.full_mask
    for s in range(g.n):
        higher = full & ~((1 << (s + 1)) - 1)
        sm = masks[s]
        for p1 in bits(sm & higher):
            budget.tick()
            stack = [((s, p1), p1, (1 << s) | (1 << p1))]
            while stack:
                path, last, forb = stack.pop()
                cand = masks[last] & higher & ~forb
                for u in bits(cand):
                    budget.tick()
                    if (sm >> u) & 1:
                        if len(path) >= 3 and p1 < u:
                            yield path + (u,)
                    else:
                        stack.append((path + (u,), u, forb | masks[last] | (1 << last)))


def induced_paths(g: Graph, a: int, b: int, allowed: int, budget: Budget) -> list[tuple[int, ...]]:
    """All induced a-b paths (a, b non-adjacent) with interior inside ``allowed``."""
    masks = g.masks
    allowed &= ~((1 << a) | (1 << b))
    bm = masks[b]
    out = []
    stack = [((a,), a, 1 << a)]
    while stack:
        path, last, forb = stack.pop()
        budget.tick()
        for u in bits(masks[last] & allowed & ~forb):
            if (bm >> u) & 1:
                out.append(path + (u, b))
            else:
                stack.append((path + (u,), u, forb | masks[last] | (1 << last)))
    out.sort()
    return out


_HOLE_CACHE: dict = {}
_HOLE_CACHE_LIMIT = 4096


def all_holes(g: Graph, budget=DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Every hole of ``g`` (cached per graph; the node cost is charged on every call)."""
    budget = as_budget(budget)
    hit = _HOLE_CACHE.get(g)
    if hit is not None:
        holes, cost = hit
        budget.tick(cost)
        return holes
    start = budget.used
    holes = list(iter_holes(g, budget))
    if len(_HOLE_CACHE) >= _HOLE_CACHE_LIMIT:
        _HOLE_CACHE.clear()
    _HOLE_CACHE[g] = (holes, budget.used - start)
    return holes


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    masks = g.masks
    out = []
    for u in range(g.n):
        for v in bits(masks[u] & ~((1 << (u + 1)) - 1)):
            for w in bits(masks[u] & masks[v] & ~((1 << (v + 1)) - 1)):
                out.append((u, v, w))
    return out


def _interior_info(g: Graph, p):
    inner = to_mask(p[1:-1])
    return inner, inner | g.nbr_mask(inner)


def _compatible_triples(g: Graph, lists, budget: Budget):
    """Triples (one path per list) whose interiors are pairwise disjoint and anticomplete."""
    infos = [[(p, *_interior_info(g, p)) for p in lst] for lst in lists]
    for p0, i0, c0 in infos[0]:
        for p1, i1, c1 in infos[1]:
            budget.tick()
            if i1 & c0:
                continue
            for p2, i2, c2 in infos[2]:
                budget.tick()
                if i2 & (c0 | c1):
                    continue
                yield p0, p1, p2


# -- per-kind searches ------------------------------------------------------

def _search_c4(g: Graph, budget: Budget):
    masks = g.masks
    best = None
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if (masks[a] >> b) & 1:
                continue
            budget.tick()
            common = masks[a] & masks[b]
            for x in bits(common):
                for y in bits(common & ~((1 << (x + 1)) - 1) & ~masks[x]):
                    c = make_certificate(Kind.C4, {"hole": canonical_cycle((a, x, b, y))})
                    if best is None or c.key < best.key:
                        best = c
    return best


def _search_even_hole(g, budget):
    best = None
    for h in all_holes(g, budget):
        if len(h) % 2 == 0:
            key = tuple(sorted(h))
            if best is None or key < best[0]:
                best = (key, h)
    if best is None:
        return None
    return make_certificate(Kind.EVEN_HOLE, {"hole": best[1]})


def _iter_wheels(g: Graph, budget: Budget):
    masks = g.masks
    for h in all_holes(g, budget):
        hm = to_mask(h)
        for x in bits(g.full_mask & ~hm):
            budget.tick()
            if (masks[x] & hm).bit_count() >= 3:
                yield h, x


def _search_wheel(g, budget, even_only=False):
    best = None
    for h, x in _iter_wheels(g, budget):
        if even_only and (g.mask(x) & to_mask(h)).bit_count() % 2:
            continue
        key = (tuple(sorted(h + (x,))), x)
        if best is None or key < best[0]:
            best = (key, h, x)
    if best is None:
        return None
    return wheel_certificate(g, best[1], best[2])


def _search_theta(g: Graph, budget: Budget):
    masks = g.masks
    best = None
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if (masks[a] >> b) & 1:
                continue
            common_deg = (masks[a]).bit_count() >= 3 and (masks[b]).bit_count() >= 3
            if not common_deg:
                continue
            paths = induced_paths(g, a, b, g.full_mask, budget)
            if len(paths) < 3:
                continue
            for i in range(len(paths)):
                pi = paths[i]
                ii, ci = _interior_info(g, pi)
                for j in range(i + 1, len(paths)):
                    budget.tick()
                    pj = paths[j]
                    ij, cj = _interior_info(g, pj)
                    if ij & ci:
                        continue
                    for k in range(j + 1, len(paths)):
                        budget.tick()
                        pk = paths[k]
                        ik, _ = _interior_info(g, pk)
                        if ik & (ci | cj):
                            continue
                        key = tuple(sorted(set(pi) | set(pj) | set(pk)))
                        if best is None or key < best[0]:
                            best = (key, a, b, (pi, pj, pk))
    if best is None:
        return None
    _, a, b, ps = best
    return make_certificate(Kind.THETA, {"ends": (a, b), "paths": ps})


def _search_prism(g: Graph, budget: Budget):
    masks = g.masks
    tris = triangles(g)
    best = None
    path_cache = {}

    def paths_between(u, v, allowed):
        key = (u, v, allowed)
        if key not in path_cache:
            if (masks[u] >> v) & 1:
                path_cache[key] = [(u, v)]
            else:
                path_cache[key] = induced_paths(g, u, v, allowed, budget)
        return path_cache[key]

    for ia, A in enumerate(tris):
        amask = to_mask(A)
        for B in tris[ia + 1:]:
            budget.tick()
            bmask = to_mask(B)
            if amask & bmask:
                continue
            ab = amask | bmask
            for perm in itertools.permutations(B):
                if any(i != j and (masks[A[i]] >> perm[j]) & 1 for i in range(3) for j in range(3)):
                    continue
                lists = []
                for i in range(3):
                    others = ab & ~((1 << A[i]) | (1 << perm[i]))
                    allowed = g.full_mask & ~ab & ~g.nbr_mask(others)
                    lists.append(paths_between(A[i], perm[i], allowed))
                if not all(lists):
                    continue
                for ps in _compatible_triples(g, lists, budget):
                    key = tuple(sorted(set().union(*ps)))
                    if best is None or key < best[0]:
                        best = (key, A, perm, ps)
    if best is None:
        return None
    _, A, B, ps = best
    return make_certificate(Kind.PRISM, {"triangles": (A, B), "paths": ps})


def _search_pyramid(g: Graph, budget: Budget):
    masks = g.masks
    best = None
    for B in triangles(g):
        bmask = to_mask(B)
        for a in range(g.n):
            budget.tick()
            if (bmask >> a) & 1 or (masks[a] & bmask).bit_count() > 1:
                continue
            lists = []
            for i in range(3):
                if (masks[a] >> B[i]) & 1:
                    lists.append([(a, B[i])])
                    continue
                others = bmask & ~(1 << B[i])
                allowed = g.full_mask & ~bmask & ~(1 << a) & ~g.nbr_mask(others)
                lists.append(induced_paths(g, a, B[i], allowed, budget))
            if not all(lists):
                continue
            for ps in _compatible_triples(g, lists, budget):
                key = tuple(sorted(set().union(*ps)))
                if best is None or key < best[0]:
                    best = (key, a, B, ps)
    if best is None:
        return None
    _, a, B, ps = best
    return make_certificate(Kind.PYRAMID, {"apex": a, "base": B, "paths": ps})


_SEARCHES = {
    Kind.C4: _search_c4,
    Kind.EVEN_HOLE: _search_even_hole,
    Kind.THETA: _search_theta,
    Kind.PRISM: _search_prism,
    Kind.PYRAMID: _search_pyramid,
    Kind.WHEEL: _search_wheel,
}


@dataclass(frozen=True)
class Detection:
    status: Status
    certificate: Certificate | None
    nodes: int

    @property
    def present(self) -> bool:
        return self.status is Status.PRESENT

    def to_json(self):
        return {
            "status": self.status.value,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "nodes": self.nodes,
        }


class CertificateError(AssertionError):
    """A search produced a certificate that fails the definitional check."""


def _checked(g, cert):
    if cert is not None:
        problems = validate_certificate(g, cert)
        if problems:
            raise CertificateError(f"{cert.kind.value} certificate rejected: {problems}")
    return cert


def find_structure(g: Graph, kind, budget=DEFAULT_BUDGET, even_only: bool = False) -> Detection:
    """Search ``g`` for an induced structure of the given kind.

    ``even_only`` restricts WHEEL searches to even wheels.  Running out of
    budget yields ``Status.INDETERMINATE``, never ``ABSENT``.
    """
    kind = Kind(kind)
    b = as_budget(budget)
    try:
        if kind is Kind.WHEEL:
            cert = _search_wheel(g, b, even_only=even_only)
        else:
            cert = _SEARCHES[kind](g, b)
    except BudgetExhausted:
        return Detection(Status.INDETERMINATE, None, b.used)
    cert = _checked(g, cert)
    return Detection(Status.PRESENT if cert else Status.ABSENT, cert, b.used)


# -- hubs -----------------------------------------------------------------------

@dataclass(frozen=True)
class HubResult:
    status: Status  # PRESENT == enumeration complete (even when no hubs), INDETERMINATE otherwise
    hubs: tuple[int, ...]
    witnesses: Mapping[int, Certificate]
    nodes: int

    @property
    def complete(self) -> bool:
        return self.status is not Status.INDETERMINATE

    def to_json(self):
        return {
            "complete": self.complete,
            "hubs": list(self.hubs),
            "witnesses": {str(h): self.witnesses[h].to_json() for h in self.hubs},
            "nodes": self.nodes,
        }


def hubs(g: Graph, budget=DEFAULT_BUDGET) -> HubResult:
    """Vertices that are centers of a proper wheel, each with its smallest witness."""
    b = as_budget(budget)
    best = {}
    complete = True
    try:
        for h, x in _iter_wheels(g, b):
            spokes = [v for v in h if g.has_edge(x, v)]
            if not classify_wheel(h, spokes).is_proper:
                continue
            key = tuple(sorted(h + (x,)))
            if x not in best or key < best[x][0]:
                best[x] = (key, h)
    except BudgetExhausted:
        complete = False
    wit = {x: _checked(g, wheel_certificate(g, h, x)) for x, (_, h) in best.items()}
    return HubResult(Status.PRESENT if complete else Status.INDETERMINATE, tuple(sorted(wit)), wit, b.used)


# -- class membership -----------------------------------------------------------

CLASS_KINDS = (Kind.C4, Kind.THETA, Kind.PRISM, Kind.WHEEL)


@dataclass(frozen=True)
class Membership:
    verdict: str
    certificate: Certificate | None
    clique: tuple[int, ...] | None
    nodes: int

    @property
    def in_class(self) -> bool:
        return self.verdict.startswith("IN_C")

    def to_json(self):
        return {
            "verdict": self.verdict,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "clique": None if self.clique is None else list(self.clique),
            "nodes": self.nodes,
        }


def class_membership(g: Graph, t: int | None = None, budget=DEFAULT_BUDGET) -> Membership:
    """Decide membership in the (C4, theta, prism, even wheel)-free class, optionally with ``omega < t``.

    Kinds are tried in the order C4, theta, prism, even wheel and the first
    violation found is reported.
    """
    if t is not None and t < 1:
        raise InputError("clique bound t must be >= 1")
    b = as_budget(budget)
    for kind in CLASS_KINDS:
        det = find_structure(g, kind, b, even_only=(kind is Kind.WHEEL))
        if det.status is Status.PRESENT:
            return Membership("NOT_IN_C", det.certificate, None, b.used)
        if det.status is Status.INDETERMINATE:
            return Membership("INDETERMINATE", None, None, b.used)
    if t is None:
        return Membership("IN_C", None, None, b.used)
    cq = clique_number(g, b.remaining)
    b.used += cq.nodes
    if cq.size >= t:
        return Membership(f"NOT_IN_C_{t}", None, cq.witness, b.used)
    if not cq.exact:
        return Membership("INDETERMINATE", None, None, b.used)
    return Membership(f"IN_C_{t}", None, cq.witness, b.used)


def hole_mask_set(g: Graph, budget=None) -> list[int]:
    return [to_mask(h) for h in all_holes(g, as_budget(budget))]


__all__ = [
    "Kind", "Status", "Certificate", "WheelFlags", "Sector", "Detection", "HubResult", "Membership",
    "find_structure", "hubs", "class_membership", "sectors", "wheel_flags", "classify_wheel",
    "validate_certificate", "make_certificate", "wheel_certificate", "canonical_cycle",
    "all_holes", "induced_paths", "triangles", "mask_tuple",
]
