"""Tree decompositions and the quality notions built on them.

A decomposition is a list of bags (sorted vertex tuples) indexed by node id
plus a list of tree edges.  Nothing here assumes a root; when a traversal
needs one, node 0 is used.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .connectivity import WeightFunction, _check_weights, is_balanced_separator
from .errors import GuardrailError, InputError
from .graph import Graph, bits, component_masks, mask_tuple, to_mask


class TreeDecomposition:
    """Bags over the host vertices ``0..n-1`` and an undirected edge list between node ids."""

    __slots__ = ("_bags", "_masks", "_edges", "_n", "_nbrs")

    def __init__(self, bags: Iterable[Iterable[int]], edges: Iterable[Sequence[int]] = (), n: int | None = None):
        self._bags = tuple(tuple(sorted(set(int(v) for v in b))) for b in bags)
        self._masks = tuple(to_mask(b) for b in self._bags)
        self._edges = tuple((int(e[0]), int(e[1])) for e in edges)
        m = len(self._bags)
        if n is None:
            n = 1 + max((b[-1] for b in self._bags if b), default=-1)
        self._n = n
        for b in self._bags:
            for v in b:
                if not 0 <= v < n:
                    raise InputError(f"bag vertex {v} outside 0..{n - 1}")
        nbrs = [[] for _ in range(m)]
        for i, j in self._edges:
            if not (0 <= i < m and 0 <= j < m) or i == j:
                raise InputError(f"bad tree edge ({i}, {j})")
            nbrs[i].append(j)
            nbrs[j].append(i)
        self._nbrs = tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def bags(self) -> tuple[tuple[int, ...], ...]:
        return self._bags

    @property
    def bag_masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_nodes(self) -> int:
        return len(self._bags)

    def nodes(self) -> range:
        return range(len(self._bags))

    def neighbors(self, t: int) -> tuple[int, ...]:
        return self._nbrs[t]

    @property
    def max_bag_size(self) -> int:
        return max((len(b) for b in self._bags), default=0)

    @property
    def width(self) -> int:
        return self.max_bag_size - 1

    def adhesion(self, s: int, t: int) -> tuple[int, ...]:
        if t not in self._nbrs[s]:
            return ()
        return mask_tuple(self._masks[s] & self._masks[t])

    @property
    def adhesion_size(self) -> int:
        return max((len(self.adhesion(i, j)) for i, j in self._edges), default=0)

    def is_tree(self) -> bool:
        m = self.num_nodes
        if m == 0 or len(self._edges) != m - 1:
            return False
        return len(self._side(0, None)) == m

    def _side(self, start: int, blocked: int | None) -> list[int]:
        seen = {start}
        q = deque([start])
        while q:
            u = q.popleft()
            for v in self._nbrs[u]:
                if v != blocked and v not in seen:
                    seen.add(v)
                    q.append(v)
        return sorted(seen)

    def branch_nodes(self, t: int, t2: int) -> list[int]:
        """Nodes of the component of ``T \\ t`` containing the neighbor ``t2``."""
        return self._side(t2, t)

    def branch_mask(self, t: int, t2: int) -> int:
        m = 0
        for s in self.branch_nodes(t, t2):
            m |= self._masks[s]
        return m

    def tree_path(self, s: int, t: int) -> list[int]:
        parent = {s: None}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in self._nbrs[u]:
                if v not in parent:
                    parent[v] = u
                    q.append(v)
        if t not in parent:
            raise InputError("nodes are not connected in the tree")
        out = [t]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out[::-1]

    def fatness(self, n: int | None = None) -> tuple[int, ...]:
        """``(a_n, ..., a_0)`` with ``a_i`` the number of bags of size i."""
        n = self._n if n is None else n
        counts = [0] * (n + 1)
        for b in self._bags:
            counts[len(b)] += 1
        return tuple(reversed(counts))

    def to_json(self):
        return {
            "n": self._n,
            "width": self.width,
            "bags": [list(b) for b in self._bags],
            "edges": [list(e) for e in self._edges],
        }

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return (self._n, self._bags, self._edges) == (other._n, other._bags, other._edges)

    def __hash__(self):
        return hash((self._n, self._bags, self._edges))

    def __repr__(self):
        return f"TreeDecomposition(nodes={self.num_nodes}, width={self.width})"


# -- validity -----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    rule: str  # "tree", "vertex", "edge" or "subtree"
    detail: str
    witness: tuple

    def to_json(self):
        return {"rule": self.rule, "detail": self.detail, "witness": list(self.witness)}


@dataclass(frozen=True)
class TDVerdict:
    valid: bool
    violations: tuple[Violation, ...]
    width: int

    def to_json(self):
        return {"valid": self.valid, "width": self.width, "violations": [v.to_json() for v in self.violations]}


def validate_td(g: Graph, td: TreeDecomposition) -> TDVerdict:
    out = []
    if td.n != g.n:
        out.append(Violation("tree", f"decomposition is over {td.n} vertices, graph has {g.n}", ()))
    if not td.is_tree():
        out.append(Violation("tree", "nodes and edges do not form a tree", ()))
    masks = td.bag_masks
    covered = 0
    for m in masks:
        covered |= m
    for v in range(g.n):
        if not (covered >> v) & 1:
            out.append(Violation("vertex", f"vertex {v} lies in no bag", (v,)))
    for u, v in g.edges:
        e = (1 << u) | (1 << v)
        if not any(m & e == e for m in masks):
            out.append(Violation("edge", f"edge {u}-{v} lies in no bag", (u, v)))
    if td.is_tree():
        for v in range(g.n):
            holders = [t for t, m in enumerate(masks) if (m >> v) & 1]
            if len(holders) <= 1:
                continue
            hs = set(holders)
            seen = {holders[0]}
            q = deque([holders[0]])
            while q:
                u = q.popleft()
                for w in td.neighbors(u):
                    if w in hs and w not in seen:
                        seen.add(w)
                        q.append(w)
            if len(seen) != len(hs):
                out.append(Violation("subtree", f"nodes holding vertex {v} are not connected", (v, *holders)))
    return TDVerdict(not out, tuple(out), td.width)


def _require_valid(g, td):
    v = validate_td(g, td)
    if not v.valid:
        raise InputError(f"invalid tree decomposition: {v.violations[0].detail}")


def torso(g: Graph, td: TreeDecomposition, t: int) -> tuple[Graph, dict[int, int]]:
    """Torso at ``t``; vertices renumbered as in ``induced_subgraph`` (map returned)."""
    if not 0 <= t < td.num_nodes:
        raise InputError(f"node {t} outside 0..{td.num_nodes - 1}")
    bag = td.bags[t]
    remap = {v: i for i, v in enumerate(bag)}
    edges = set()
    for u, v in itertools.combinations(bag, 2):
        if g.has_edge(u, v):
            edges.add((remap[u], remap[v]))
    for s in td.neighbors(t):
        for u, v in itertools.combinations(td.adhesion(t, s), 2):
            edges.add((remap[u], remap[v]))
    return Graph(len(bag), sorted(edges)), remap


# -- tightness and leanness -------------------------------------------------------

@dataclass(frozen=True)
class TightVerdict:
    tight: bool
    witnesses: dict = field(hash=False)  # (t, t') -> component D with N(D) = adhesion
    failures: tuple = ()

    def to_json(self):
        return {
            "tight": self.tight,
            "witnesses": [{"t": t, "t2": s, "D": list(d)} for (t, s), d in sorted(self.witnesses.items())],
            "failures": [list(f) for f in self.failures],
        }


def is_tight(g: Graph, td: TreeDecomposition) -> TightVerdict:
    """Every oriented tree edge tt' has a component D of ``G_{t->t'} \\ chi(t)`` with adhesion inside N(D)."""
    _require_valid(g, td)
    wit = {}
    fails = []
    for i, j in td.edges:
        for t, s in ((i, j), (j, i)):
            adh = td.bag_masks[t] & td.bag_masks[s]
            side = td.branch_mask(t, s) & ~td.bag_masks[t]
            found = None
            for comp in component_masks(g, side):
                if adh & ~g.nbr_mask(comp) == 0:
                    found = comp
                    break
            if found is None:
                fails.append((t, s))
            else:
                wit[(t, s)] = mask_tuple(found)
    return TightVerdict(not fails, wit, tuple(fails))


def linkage(g: Graph, z: int, z2: int, need: int | None = None) -> int:
    """Maximum number of vertex-disjoint paths from set ``z`` to set ``z2`` (trivial paths allowed)."""
    # vertex v -> in 2v, out 2v+1; source S = -1, sink T = -2
    cap = {}
    adj = {}

    def add(u, v, c):
        if (u, v) not in cap:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
            cap.setdefault((v, u), 0)
        cap[(u, v)] = cap.get((u, v), 0) + c

    src, snk = -1, -2
    for v in range(g.n):
        add(2 * v, 2 * v + 1, 1)
        for u in g.adj(v):
            add(2 * v + 1, 2 * u, 1)
    for v in bits(z):
        add(src, 2 * v, 1)
    for v in bits(z2):
        add(2 * v + 1, snk, 1)
    flow = 0
    while need is None or flow < need:
        parent = {src: None}
        q = deque([src])
        while q and snk not in parent:
            u = q.popleft()
            for v in adj.get(u, ()):
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    q.append(v)
        if snk not in parent:
            break
        v = snk
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1
    return flow


@dataclass(frozen=True)
class LeanVerdict:
    lean: bool
    adhesion_ok: bool
    violation: tuple | None  # (t, t', Z, Z')
    checked: int

    def to_json(self):
        v = None
        if self.violation is not None:
            t, s, z, z2 = self.violation
            v = {"t": t, "t2": s, "Z": list(z), "Z2": list(z2)}
        return {"lean": self.lean, "adhesion_ok": self.adhesion_ok, "violation": v, "checked": self.checked}


def is_k_lean(g: Graph, td: TreeDecomposition, k: int, max_n: int = 12, force: bool = False) -> LeanVerdict:
    """Check k-leanness literally over all node pairs and equal-size subsets up to size k."""
    _require_valid(g, td)
    if k < 1:
        raise InputError("k must be positive")
    if g.n > max_n and not force:
        raise GuardrailError(f"is_k_lean refuses n={g.n} > {max_n} (pass force=True)")
    if td.adhesion_size >= k:
        bad = next((i, j) for i, j in td.edges if len(td.adhesion(i, j)) >= k)
        return LeanVerdict(False, False, (bad[0], bad[1], td.adhesion(*bad), td.adhesion(*bad)), 0)
    cache = {}
    checked = 0
    m = td.num_nodes
    for t in range(m):
        for s in range(t, m):
            path = td.tree_path(t, s)
            bottleneck = min((len(td.adhesion(path[i], path[i + 1])) for i in range(len(path) - 1)), default=k + 1)
            top = min(k, bottleneck, len(td.bags[t]), len(td.bags[s]))
            for r in range(1, top + 1):
                for z in itertools.combinations(td.bags[t], r):
                    zm = to_mask(z)
                    for z2 in itertools.combinations(td.bags[s], r):
                        z2m = to_mask(z2)
                        key = (min(zm, z2m), max(zm, z2m))
                        if key not in cache:
                            cache[key] = linkage(g, zm, z2m, need=r) >= r
                            checked += 1
                        if not cache[key]:
                            return LeanVerdict(False, True, (t, s, z, z2), checked)
    return LeanVerdict(True, True, None, checked)


def connected_branches_check(g: Graph, td: TreeDecomposition) -> list[tuple]:
    """Oriented edges where ``G_{t1->t2} \\ chi(t1)`` is disconnected or has neighborhood other than the adhesion,
    and sibling pairs with equal adhesions; empty when the decomposition has connected branches."""
    _require_valid(g, td)
    bad = []
    for i, j in td.edges:
        for t, s in ((i, j), (j, i)):
            side = td.branch_mask(t, s) & ~td.bag_masks[t]
            comps = component_masks(g, side)
            adh = td.bag_masks[t] & td.bag_masks[s]
            if len(comps) != 1 or (g.nbr_mask(side) & ~side) != adh:
                bad.append(("branch", t, s))
    for t in td.nodes():
        nb = td.neighbors(t)
        for s1, s2 in itertools.combinations(nb, 2):
            if td.bag_masks[t] & td.bag_masks[s1] == td.bag_masks[t] & td.bag_masks[s2]:
                bad.append(("siblings", t, s1, s2))
    return bad


# -- centers and baskets ----------------------------------------------------------

def is_center(g: Graph, td: TreeDecomposition, w: WeightFunction, t: int) -> bool:
    half = Fraction(1, 2)
    for s in td.neighbors(t):
        side = td.branch_mask(t, s) & ~td.bag_masks[t]
        if w.of_mask(side) > half:
            return False
    return True


def center(g: Graph, td: TreeDecomposition, w: WeightFunction) -> int:
    """Smallest node id t0 with ``w(G_{t0->t'} \\ chi(t0)) <= 1/2`` for every tree neighbor t'."""
    _check_weights(g, w)
    _require_valid(g, td)
    for t in td.nodes():
        if is_center(g, td, w, t):
            return t
    raise AssertionError("no center found")  # pragma: no cover - every decomposition has one


@dataclass(frozen=True)
class BasketResult:
    found: bool
    t1: int | None
    t2: int | None
    reason: str | None = None

    def to_json(self):
        return {"found": self.found, "t1": self.t1, "t2": self.t2, "reason": self.reason}


def _hits(g: Graph, union: int, a: int, b: int) -> bool:
    allowed = (g.full_mask & ~union) | (1 << a) | (1 << b)
    # b is a sink: do not walk through it
    seen = 1 << a
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            if v == b:
                continue
            nxt |= g.mask(v)
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return not (seen >> b) & 1


def _components_see_one(g: Graph, union: int, a: int, b: int) -> bool:
    ab = (1 << a) | (1 << b)
    for comp in component_masks(g, g.full_mask & ~union):
        if g.nbr_mask(comp) & ~comp & ab == ab:
            return False
    return True


def basket_pair(g: Graph, td: TreeDecomposition, a: int, b: int) -> BasketResult:
    """Nodes t1 <= t2 whose bags meet every a-b path interior (first pair in lexicographic order)."""
    g.check_vertices((a, b))
    if a == b or g.has_edge(a, b):
        raise InputError("a and b must be distinct and non-adjacent")
    _require_valid(g, td)
    masks = td.bag_masks
    for t1 in td.nodes():
        for t2 in range(t1, td.num_nodes):
            union = masks[t1] | masks[t2]
            if _hits(g, union, a, b) and _components_see_one(g, union, a, b):
                return BasketResult(True, t1, t2)
    return BasketResult(False, None, None, "no node pair meets every a-b path: the graph contains a theta with ends a, b")


def verify_basket(g: Graph, td: TreeDecomposition, a: int, b: int, t1: int, t2: int) -> bool:
    union = td.bag_masks[t1] | td.bag_masks[t2]
    return _hits(g, union, a, b) and _components_see_one(g, union, a, b)


# -- balanced separators to tree decompositions ---------------------------------------

@dataclass(frozen=True)
class OracleCall:
    support: tuple[int, ...]  # vertices carrying the uniform weight
    answer: tuple[int, ...]
    heaviest: Fraction
    ok: bool

    def to_json(self):
        return {
            "support": list(self.support),
            "answer": list(self.answer),
            "heaviest": {"num": self.heaviest.numerator, "den": self.heaviest.denominator},
            "ok": self.ok,
        }


class OracleFailure(InputError):
    def __init__(self, call: OracleCall, reason: str):
        super().__init__(f"separator oracle failed ({reason}) on support {list(call.support)}")
        self.call = call


@dataclass(frozen=True)
class BSResult:
    td: TreeDecomposition
    bound: int
    audit: tuple[OracleCall, ...]

    def to_json(self):
        return {"td": self.td.to_json(), "width_bound": self.bound, "audit": [c.to_json() for c in self.audit]}


def width_bound(k: int, c: Fraction) -> int:
    c = Fraction(c)
    return math.ceil(Fraction(k) / (1 - c)) - 1 + k


def td_from_balanced_separators(
    g: Graph, oracle: Callable[[WeightFunction], Iterable[int]], c=Fraction(1, 2), k: int = 1
) -> BSResult:
    """Build a decomposition of width ``<= ceil(k/(1-c)) - 1 + k`` from a balanced-separator oracle.

    Recursion on (U, W) with W the boundary of U (no edge leaves U except
    from W) and ``|W| <= B = ceil(k/(1-c))``.  Small parts become one bag.
    While ``|W| < B`` the smallest free vertex v is added to the bag.
    Once ``|W| = B`` the oracle is asked for a (w, c)-balanced separator X of
    size at most k, where w is uniform on W + v, and the bag is ``W + (X & U)``.
    Each child is a component C of what is left, with ``U_C = C + N_U(C)`` and
    ``W_C = N_U(C)``.
    """
    c = Fraction(c)
    if not (0 <= c < 1):
        raise InputError("c must lie in [0, 1)")
    if k < 1:
        raise InputError("k must be positive")
    big = math.ceil(Fraction(k) / (1 - c))
    bags: list[int] = []
    edges: list[tuple[int, int]] = []
    audit: list[OracleCall] = []

    def ask(support: int) -> int:
        w = WeightFunction.from_mapping(g.n, {v: 1 for v in bits(support)}, normalize=True)
        x = g.check_vertices(oracle(w))
        verdict = is_balanced_separator(g, w, x, c)
        call = OracleCall(mask_tuple(support), x, verdict.heaviest, verdict.balanced and len(x) <= k)
        audit.append(call)
        if not verdict.balanced:
            raise OracleFailure(call, f"component of weight {verdict.heaviest} > {c}")
        if len(x) > k:
            raise OracleFailure(call, f"separator has {len(x)} > {k} vertices")
        return to_mask(x)

    def new_bag(mask, parent):
        bags.append(mask)
        node = len(bags) - 1
        if parent is not None:
            edges.append((parent, node))
        return node

    stack = [(g.full_mask, 0, None)]
    while stack:
        u, w, parent = stack.pop()
        if u.bit_count() <= big + k:
            new_bag(u, parent)
            continue
        free = u & ~w
        v = (free & -free).bit_length() - 1
        if w.bit_count() < big:
            bag = w | (1 << v)
        else:
            x = ask(w | (1 << v))
            bag = w | (x & u)
        node = new_bag(bag, parent)
        children = []
        for comp in component_masks(g, u & ~bag):
            boundary = g.nbr_mask(comp) & u & ~comp
            children.append((comp | boundary, boundary, node))
        stack.extend(reversed(children))
    td = TreeDecomposition([mask_tuple(b) for b in bags], edges, n=g.n)
    return BSResult(td, big - 1 + k, tuple(audit))


# -- friendly vertices and separator shrinking --------------------------------------------

def fan_cut(g: Graph, v: int, targets: int) -> tuple[int, ...]:
    """Lexicographically smallest minimum set X (v not in X) meeting every path from v to ``targets``.

    X may contain target vertices; a target adjacent to v must itself be in X.
    """
    targets &= ~(1 << v)

    def flow(removed: int) -> int:
        tg = targets & ~removed
        if not tg:
            return 0
        return _fan_flow(g, v, tg, removed)

    k = flow(0)
    chosen = 0
    size = 0
    for u in range(g.n):
        if size == k:
            break
        if u == v:
            continue
        if flow(chosen | (1 << u)) == k - size - 1:
            chosen |= 1 << u
            size += 1
    return mask_tuple(chosen)


def _fan_flow(g: Graph, v: int, targets: int, removed: int) -> int:
    cap = {}
    adj = {}

    def add(a, b, c):
        if (a, b) not in cap:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    inf = g.n + 1
    snk = -1
    for u in range(g.n):
        if (removed >> u) & 1:
            continue
        if u != v:
            add(2 * u, 2 * u + 1, 1)
        for x in bits(g.mask(u) & ~removed):
            add(2 * u + 1, 2 * x, inf)
        if (targets >> u) & 1:
            add(2 * u + 1, snk, 1)
    src = 2 * v + 1
    total = 0
    while True:
        parent = {src: None}
        q = deque([src])
        while q and snk not in parent:
            a = q.popleft()
            for b in adj.get(a, ()):
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    q.append(b)
        if snk not in parent:
            return total
        b = snk
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        total += 1


def friendly_vertices(g: Graph, td: TreeDecomposition, t0: int, threshold: int) -> tuple[int, ...]:
    """Vertices v not separated from ``chi(t0) \\ v`` by fewer than ``threshold`` vertices."""
    bag = td.bag_masks[t0]
    out = []
    for v in range(g.n):
        tg = bag & ~(1 << v)
        if tg and _fan_flow(g, v, tg, 0) >= threshold:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class ShrinkResult:
    y: tuple[int, ...]
    k_set: tuple[int, ...]
    k_is_clique: bool
    t0: int
    deltas: dict = field(hash=False)
    balanced: bool = True
    heaviest: Fraction = Fraction(0)
    bound: int = 0

    @property
    def extra(self) -> int:
        return len(set(self.y) - set(self.k_set))

    def to_json(self):
        return {
            "Y": list(self.y),
            "K": list(self.k_set),
            "K_is_clique": self.k_is_clique,
            "t0": self.t0,
            "deltas": {str(v): list(d) for v, d in sorted(self.deltas.items())},
            "balanced": self.balanced,
            "heaviest": {"num": self.heaviest.numerator, "den": self.heaviest.denominator},
            "size_outside_K": self.extra,
            "bound": self.bound,
        }


def shrink_separator(
    g: Graph,
    td: TreeDecomposition,
    w: WeightFunction,
    x: Iterable[int],
    L: int,
    k_set: Iterable[int] | None = None,
    check_lean: bool = True,
) -> ShrinkResult:
    """Turn a dominated separator ``K + N[X]`` into ``Y = K + union of Delta(v)`` with ``|Y \\ K| <= 3L|X|``.

    ``t0`` is the center of ``td``; K is the set of t0-friendly vertices
    (not separable from ``chi(t0) \\ v`` by fewer than 3L vertices) and, for
    each v in X, ``Delta(v)`` is v plus a minimum set separating v from the
    rest of ``chi(t0)``.  If ``k_set`` is given it must equal that K.
    """
    from .graph import is_clique

    _check_weights(g, w)
    if L < 1:
        raise InputError("L must be positive")
    _require_valid(g, td)
    if check_lean:
        tv = is_tight(g, td)
        if not tv.tight:
            raise InputError(f"decomposition is not tight at {tv.failures[0]}")
        lv = is_k_lean(g, td, 3 * L)
        if not lv.lean:
            raise InputError(f"decomposition is not {3 * L}-lean: {lv.violation}")
    t0 = center(g, td, w)
    kk = friendly_vertices(g, td, t0, 3 * L)
    if k_set is not None and tuple(sorted(set(k_set))) != kk:
        raise InputError(f"K must be the t0-friendly set {list(kk)}")
    km = to_mask(kk)
    xs = g.check_vertices(x)
    if to_mask(xs) & km:
        raise InputError("X must avoid K")
    xm = to_mask(xs)
    dom = km | xm | g.nbr_mask(xm)
    half = Fraction(1, 2)
    for comp in component_masks(g, g.full_mask & ~dom):
        if w.of_mask(comp) > half:
            raise InputError(f"component {mask_tuple(comp)} of G - (K + N[X]) has weight {w.of_mask(comp)} > 1/2")
    bag = td.bag_masks[t0]
    deltas = {}
    ym = km
    for v in xs:
        d = to_mask(fan_cut(g, v, bag)) | (1 << v)
        deltas[v] = mask_tuple(d)
        ym |= d
    y = mask_tuple(ym)
    verdict = is_balanced_separator(g, w, y)
    return ShrinkResult(y, kk, is_clique(g, kk), t0, deltas, verdict.balanced, verdict.heaviest, 3 * L * len(xs))


@dataclass(frozen=True)
class SmallSepResult:
    shrink: ShrinkResult
    x: tuple[int, ...]
    d_used: int

    def to_json(self):
        out = self.shrink.to_json()
        out["X"] = list(self.x)
        out["d_used"] = self.d_used
        return out


def smallsep(g: Graph, w: WeightFunction, L: int, d_max: int, td: TreeDecomposition | None = None,
             strategy: str = "exhaustive") -> SmallSepResult:
    """Balanced separator via K, a dominated separator of ``G \\ K`` for the renormalized weight, then shrinking."""
    from .atomic import atomic_td
    from .connectivity import dominated_balanced_separator
    from .graph import delete_vertices

    _check_weights(g, w)
    if td is None:
        td = atomic_td(g, 3 * L).td
    t0 = center(g, td, w)
    kk = friendly_vertices(g, td, t0, 3 * L)
    km = to_mask(kk)
    rest_weight = 1 - w.of_mask(km)
    if rest_weight == 0:
        x = ()
    else:
        h, remap = delete_vertices(g, kk)
        back = {i: v for v, i in remap.items()}
        w2 = WeightFunction(tuple(w.weights[back[i]] / rest_weight for i in range(h.n)))
        dom = dominated_balanced_separator(h, w2, d_max, strategy)
        if not dom.found:
            raise InputError(f"no dominated balanced separator with |Y| <= {d_max} in G - K")
        x = tuple(sorted(back[i] for i in dom.y))
    res = shrink_separator(g, td, w, x, L, check_lean=False)
    return SmallSepResult(res, x, len(x))
