"""Dynamic programming on tree decompositions and the two approximation schemes.

The decomposition is first turned into a nice one (leaf, introduce vertex,
introduce edge, forget, join; empty root).  An edge uv is introduced just
below the forget node of whichever of u, v is forgotten first.  Each problem
supplies its own state labels; tables map a tuple of labels (aligned with the
sorted bag) to ``(value, back-pointer)``.  Every answer is re-checked against
the definition of the problem before it is returned.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import GuardrailError, InputError
from .graph import Graph, bits, component_masks, induced_subgraph, is_stable, mask_tuple, to_mask
from .treedec import TreeDecomposition, validate_td


class Problem(str, enum.Enum):
    STABLE_SET = "STABLE_SET"
    VERTEX_COVER = "VERTEX_COVER"
    FEEDBACK_VERTEX_SET = "FEEDBACK_VERTEX_SET"
    DOMINATING_SET = "DOMINATING_SET"
    R_COLORING = "R_COLORING"
    COLORING = "COLORING"


@dataclass(frozen=True)
class ProblemInstance:
    graph: Graph
    problem: Problem
    r: int | None = None
    eps: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "problem", Problem(self.problem))
        if self.problem is Problem.R_COLORING and (self.r is None or self.r < 1):
            raise InputError("R_COLORING needs r >= 1")
        if self.eps is not None:
            eps = Fraction(self.eps)
            if not 0 < eps <= 1:
                raise InputError("eps must satisfy 0 < eps <= 1")
            object.__setattr__(self, "eps", eps)


@dataclass(frozen=True)
class Solution:
    problem: Problem
    value: int | bool
    witness: tuple | None  # vertex set, or color per vertex for colorings
    mode: str
    stats: dict = field(default_factory=dict, hash=False, compare=False)

    def to_json(self):
        return {
            "problem": self.problem.value,
            "value": self.value,
            "witness": None if self.witness is None else list(self.witness),
            "mode": self.mode,
            "stats": self.stats,
        }


# -- definitional checks -----------------------------------------------------------

def is_forest(g: Graph, keep: int) -> bool:
    edges = sum((g.mask(v) & keep).bit_count() for v in bits(keep)) // 2
    return edges == keep.bit_count() - len(component_masks(g, keep))


def check_solution(inst: ProblemInstance, sol: Solution) -> bool:
    g = inst.graph
    p = inst.problem
    if p in (Problem.R_COLORING, Problem.COLORING):
        if p is Problem.R_COLORING and not sol.value:
            return sol.witness is None
        col = sol.witness
        if col is None or len(col) != g.n:
            return False
        limit = inst.r if p is Problem.R_COLORING else sol.value
        if any(not 0 <= c < limit for c in col):
            return False
        if p is Problem.COLORING and len(set(col)) != sol.value and g.n:
            return False
        return all(col[u] != col[v] for u, v in g.edges)
    xs = set(sol.witness)
    if len(xs) != sol.value or not xs <= set(range(g.n)):
        return False
    xm = to_mask(xs)
    if p is Problem.STABLE_SET:
        return is_stable(g, sorted(xs))
    if p is Problem.VERTEX_COVER:
        return all(u in xs or v in xs for u, v in g.edges)
    if p is Problem.DOMINATING_SET:
        return (xm | g.nbr_mask(xm)) == g.full_mask
    if p is Problem.FEEDBACK_VERTEX_SET:
        return is_forest(g, g.full_mask & ~xm)
    raise AssertionError(p)  # pragma: no cover


class SolutionError(AssertionError):
    pass


def _validated(inst, sol):
    if not check_solution(inst, sol):
        raise SolutionError(f"{inst.problem.value} witness failed the definitional check: {sol}")
    return sol


# -- nice decompositions ----------------------------------------------------------------

@dataclass
class NiceNode:
    kind: str  # leaf, intro, forget, edge, join
    bag: tuple[int, ...]
    children: list[int]
    vertex: int | None = None
    edge: tuple[int, int] | None = None


def make_nice(g: Graph, td: TreeDecomposition) -> tuple[list[NiceNode], int]:
    """Nice version of ``td`` rooted at node 0; returns (nodes in post-order, root index)."""
    nodes: list[NiceNode] = []

    def add(kind, bag, children, vertex=None, edge=None):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), children, vertex, edge))
        return len(nodes) - 1

    introduced = set()

    def forget(cur, bag, v):
        for u in sorted(bag):
            if u != v and g.has_edge(u, v):
                e = (min(u, v), max(u, v))
                if e not in introduced:
                    introduced.add(e)
                    cur = add("edge", bag, [cur], edge=e)
        bag = bag - {v}
        return add("forget", bag, [cur], vertex=v), bag

    # iterative post-order over the decomposition tree
    order, parent = [], {0: None}
    stack = [0]
    while stack:
        t = stack.pop()
        order.append(t)
        for s in td.neighbors(t):
            if s not in parent:
                parent[s] = t
                stack.append(s)
    top = {}
    for t in reversed(order):
        target = set(td.bags[t])
        kids = [s for s in td.neighbors(t) if parent.get(s) == t]
        branches = []
        if not kids:
            cur, bag = add("leaf", (), []), set()
            for v in sorted(target):
                bag = bag | {v}
                cur = add("intro", bag, [cur], vertex=v)
            branches.append(cur)
        for s in kids:
            cur, bag = top[s], set(td.bags[s])
            for v in sorted(bag - target):
                cur, bag = forget(cur, bag, v)
            for v in sorted(target - bag):
                bag = bag | {v}
                cur = add("intro", bag, [cur], vertex=v)
            branches.append(cur)
        cur = branches[0]
        for other in branches[1:]:
            cur = add("join", target, [cur, other])
        top[t] = cur
    cur, bag = top[0], set(td.bags[0])
    for v in sorted(bag):
        cur, bag = forget(cur, bag, v)
    return nodes, cur


# -- problem definitions ------------------------------------------------------------------
# Each spec: intro(label list) / edge filter+update / forget cost / join combine.

_INF = float("inf")


class _Spec:
    maximize = False

    def intro_labels(self):
        raise NotImplementedError

    def edge(self, lu, lv):
        """Return new (lu, lv) or None when the edge kills the state."""
        return lu, lv

    def forget_cost(self, label):
        """Cost of forgetting a vertex with this label, or None if not allowed."""
        return 0

    def join(self, s1, s2):
        return s1 if s1 == s2 else None

    def chosen(self, label) -> bool:
        return False


class _Stable(_Spec):
    maximize = True

    def intro_labels(self):
        return (0, 1)

    def edge(self, lu, lv):
        return None if lu and lv else (lu, lv)

    def forget_cost(self, label):
        return label

    def chosen(self, label):
        return label == 1


class _Cover(_Spec):
    def intro_labels(self):
        return (0, 1)

    def edge(self, lu, lv):
        return None if not (lu or lv) else (lu, lv)

    def forget_cost(self, label):
        return label

    def chosen(self, label):
        return label == 1


# dominating set labels: 2 = in the set, 1 = dominated, 0 = not yet dominated
class _Dominating(_Spec):
    def intro_labels(self):
        return (2, 0)

    def edge(self, lu, lv):
        if lu == 2 and lv == 0:
            lv = 1
        if lv == 2 and lu == 0:
            lu = 1
        return lu, lv

    def forget_cost(self, label):
        return {2: 1, 1: 0, 0: None}[label]

    def join(self, s1, s2):
        out = []
        for a, b in zip(s1, s2):
            if (a == 2) != (b == 2):
                return None
            out.append(2 if a == 2 else max(a, b))
        return tuple(out)

    def chosen(self, label):
        return label == 2


class _Coloring(_Spec):
    """Labels are color classes numbered by first occurrence in the bag, so
    states are partitions of the bag into at most r classes."""

    def __init__(self, r):
        self.r = r

    def edge(self, lu, lv):
        return None if lu == lv else (lu, lv)


def _canon(labels):
    """Renumber kept-vertex blocks by first occurrence; -1 (deleted) stays."""
    ren = {}
    out = []
    for x in labels:
        if x < 0:
            out.append(-1)
        else:
            if x not in ren:
                ren[x] = len(ren)
            out.append(ren[x])
    return tuple(out)


class _FVS(_Spec):
    """Labels: -1 deleted, otherwise the forest component (block) among bag vertices."""

    def intro_labels(self):
        return (-1, "new")

    def forget_cost(self, label):
        return 1 if label < 0 else 0

    def chosen(self, label):
        return label < 0


def _solve_dp(g: Graph, td: TreeDecomposition, spec: _Spec):
    nodes, root = make_nice(g, td)
    better = (lambda a, b: a > b) if spec.maximize else (lambda a, b: a < b)
    tables: list[dict] = [None] * len(nodes)
    fvs = isinstance(spec, _FVS)
    coloring = isinstance(spec, _Coloring)
    max_table = 0
    for i, nd in enumerate(nodes):
        tab = {}

        def put(state, val, back):
            old = tab.get(state)
            if old is None or better(val, old[0]):
                tab[state] = (val, back)

        if nd.kind == "leaf":
            put((), 0, None)
        elif nd.kind == "intro":
            child = tables[nd.children[0]]
            cbag = nodes[nd.children[0]].bag
            pos = nd.bag.index(nd.vertex)
            for s, (val, _) in child.items():
                nxt = max((x for x in s if x >= 0), default=-1) + 1
                if fvs:
                    labels = (-1, nxt)
                elif coloring:
                    # prune classes already holding a neighbor; the edge node would kill them anyway
                    taken = {x for u, x in zip(cbag, s) if g.has_edge(u, nd.vertex)}
                    labels = [c for c in range(min(nxt + 1, spec.r)) if c not in taken]
                else:
                    labels = spec.intro_labels()
                for lab in labels:
                    ns = s[:pos] + (lab,) + s[pos:]
                    if fvs or coloring:
                        ns = _canon(ns)
                    put(ns, val, s)
        elif nd.kind == "edge":
            child = tables[nd.children[0]]
            iu, iv = nd.bag.index(nd.edge[0]), nd.bag.index(nd.edge[1])
            for s, (val, _) in child.items():
                lu, lv = s[iu], s[iv]
                if fvs:
                    if lu < 0 or lv < 0:
                        put(s, val, s)
                    elif lu != lv:
                        ns = tuple(lu if x == lv else x for x in s)
                        put(_canon(ns), val, s)
                    continue
                res = spec.edge(lu, lv)
                if res is None:
                    continue
                ns = list(s)
                ns[iu], ns[iv] = res
                put(tuple(ns), val, s)
        elif nd.kind == "forget":
            child = tables[nd.children[0]]
            cbag = nodes[nd.children[0]].bag
            pos = cbag.index(nd.vertex)
            for s, (val, _) in child.items():
                cost = spec.forget_cost(s[pos])
                if cost is None:
                    continue
                ns = s[:pos] + s[pos + 1:]
                if fvs or coloring:
                    ns = _canon(ns)
                put(ns, val + cost, s)
        else:  # join
            t1, t2 = tables[nd.children[0]], tables[nd.children[1]]
            if fvs:
                _fvs_join(t1, t2, put)
            elif isinstance(spec, _Dominating):
                groups = {}
                for s2, (v2, _) in t2.items():
                    key = tuple(x == 2 for x in s2)
                    groups.setdefault(key, []).append((s2, v2))
                for s1, (v1, _) in t1.items():
                    for s2, v2 in groups.get(tuple(x == 2 for x in s1), ()):
                        ns = spec.join(s1, s2)
                        put(ns, v1 + v2, (s1, s2))
            else:
                for s1, (v1, _) in t1.items():
                    if s1 in t2:
                        put(s1, v1 + t2[s1][0], (s1, s1))
        tables[i] = tab
        max_table = max(max_table, len(tab))
        # children tables are kept for witness reconstruction
    final = tables[root].get(())
    stats = {"nice_nodes": len(nodes), "max_table": max_table, "width": td.width}
    if final is None:
        return None, None, stats
    # top-down reconstruction
    labels = {}
    stack = [(root, ())]
    while stack:
        i, state = stack.pop()
        nd = nodes[i]
        back = tables[i][state][1]
        if nd.kind == "leaf":
            continue
        if nd.kind == "join":
            stack.append((nd.children[0], back[0]))
            stack.append((nd.children[1], back[1]))
            continue
        if nd.kind == "forget":
            cbag = nodes[nd.children[0]].bag
            lab = back[cbag.index(nd.vertex)]
            if coloring:
                # every other vertex of this bag is forgotten higher up, so it already has a color
                mates = [labels[u] for u, x in zip(cbag, back) if x == lab and u != nd.vertex]
                used = {labels[u] for u in cbag if u != nd.vertex}
                lab = mates[0] if mates else min(c for c in range(spec.r) if c not in used)
            labels[nd.vertex] = lab
        stack.append((nd.children[0], back))
    return final[0], labels, stats


def _fvs_join(t1, t2, put):
    groups = {}
    for s2, (v2, _) in t2.items():
        groups.setdefault(tuple(x < 0 for x in s2), []).append((s2, v2))
    for s1, (v1, _) in t1.items():
        for s2, v2 in groups.get(tuple(x < 0 for x in s1), ()):
            kept = [i for i, x in enumerate(s1) if x >= 0]
            parent = {}

            def find(a):
                while parent.get(a, a) != a:
                    a = parent[a]
                return a

            ok = True
            # union the blocks of s2 into the partition of s1 (vertices as nodes)
            for i in kept:
                parent[i] = i
            first1, first2 = {}, {}
            for i in kept:
                for first, lab in ((first1, s1[i]), (first2, s2[i])):
                    if lab in first:
                        ra, rb = find(first[lab]), find(i)
                        if ra == rb:
                            ok = False
                            break
                        parent[rb] = ra
                    else:
                        first[lab] = i
                if not ok:
                    break
            if not ok:
                continue
            ns = _canon(tuple(find(i) if x >= 0 else -1 for i, x in enumerate(s1)))
            put(ns, v1 + v2, (s1, s2))


_SPECS = {
    Problem.STABLE_SET: _Stable,
    Problem.VERTEX_COVER: _Cover,
    Problem.DOMINATING_SET: _Dominating,
    Problem.FEEDBACK_VERTEX_SET: _FVS,
}


def _default_td(g: Graph) -> TreeDecomposition:
    from .treewidth import treewidth_exact

    return treewidth_exact(g).td


def solve_on_td(inst: ProblemInstance, td: TreeDecomposition | None = None) -> Solution:
    """Exact optimum by dynamic programming over ``td`` (default: an optimal-width decomposition)."""
    g = inst.graph
    if td is None:
        td = _default_td(g)
    verdict = validate_td(g, td)
    if not verdict.valid:
        raise InputError(f"invalid tree decomposition: {verdict.violations[0].detail}")
    p = inst.problem
    if p is Problem.COLORING:
        stats = {}
        r = 0
        if g.n == 0:
            return _validated(inst, Solution(p, 0, (), "exact", {"width": td.width}))
        while True:
            r += 1
            val, labels, stats = _solve_dp(g, td, _Coloring(r))
            if val is not None:
                col = tuple(labels[v] for v in range(g.n))
                stats = dict(stats, infeasible_below=r)
                return _validated(inst, Solution(p, r, _compact_colors(col), "exact", stats))
    if p is Problem.R_COLORING:
        val, labels, stats = _solve_dp(g, td, _Coloring(inst.r))
        if val is None:
            return _validated(inst, Solution(p, False, None, "exact", stats))
        return _validated(inst, Solution(p, True, tuple(labels[v] for v in range(g.n)), "exact", stats))
    spec = _SPECS[p]()
    val, labels, stats = _solve_dp(g, td, spec)
    if val is None:  # pragma: no cover - every problem here is feasible
        raise AssertionError("DP found no solution")
    wit = tuple(sorted(v for v, lab in labels.items() if spec.chosen(lab)))
    return _validated(inst, Solution(p, val, wit, "exact", stats))


def _compact_colors(col):
    ren = {}
    for c in col:
        ren.setdefault(c, len(ren))
    return tuple(ren[c] for c in col)


# -- brute force ---------------------------------------------------------------------------

BRUTE_MAX_N = 20
BRUTE_COLOR_MAX_N = 16


def brute_force(inst: ProblemInstance) -> Solution:
    """Exhaustive optimum; subsets are scanned by size so the first hit is optimal."""
    g = inst.graph
    p = inst.problem
    n = g.n
    if p in (Problem.COLORING, Problem.R_COLORING):
        if n > BRUTE_COLOR_MAX_N:
            raise GuardrailError(f"brute-force coloring limited to n <= {BRUTE_COLOR_MAX_N}")
        if p is Problem.R_COLORING:
            col = _color_search(g, inst.r)
            sol = Solution(p, col is not None, col, "brute-force")
            return _validated(inst, sol)
        for r in range(0, n + 1):
            col = _color_search(g, r)
            if col is not None:
                return _validated(inst, Solution(p, r, col, "brute-force"))
    if n > BRUTE_MAX_N:
        raise GuardrailError(f"brute force limited to n <= {BRUTE_MAX_N}")
    sizes = range(n, -1, -1) if p is Problem.STABLE_SET else range(0, n + 1)
    for k in sizes:
        for xs in itertools.combinations(range(n), k):
            sol = Solution(p, k, xs, "brute-force")
            if check_solution(inst, sol):
                return sol
    raise AssertionError("no feasible solution")  # pragma: no cover


def _color_search(g: Graph, r: int):
    if g.n == 0:
        return ()
    if r == 0:
        return None
    col = [-1] * g.n

    def rec(v, used):
        if v == g.n:
            return True
        banned = {col[u] for u in g.adj(v) if u < v}
        for c in range(min(r, used + 1)):
            if c not in banned:
                col[v] = c
                if rec(v + 1, max(used, c + 1)):
                    return True
        col[v] = -1
        return False

    return tuple(col) if rec(0, 0) else None


# -- exact maximum stable set on bitmasks (used by the QPTAS) --------------------------------------

def max_stable_mask(g: Graph, alive: int) -> int:
    masks = g.masks

    @lru_cache(maxsize=None)
    def rec(m):
        if not m:
            return 0
        best_v, best_d = -1, -1
        for v in bits(m):
            d = (masks[v] & m).bit_count()
            if d <= 1:
                return (1 << v) | rec(m & ~(masks[v] | (1 << v)))
            if d > best_d:
                best_v, best_d = v, d
        v = best_v
        a = rec(m & ~(1 << v))
        b = (1 << v) | rec(m & ~(masks[v] | (1 << v)))
        if b.bit_count() > a.bit_count() or (b.bit_count() == a.bit_count() and mask_tuple(b) < mask_tuple(a)):
            return b
        return a

    return rec(alive)


# -- approximation schemes ----------------------------------------------------------------------

def _first_clique(g: Graph, alive: int, size: int):
    """Lexicographically first clique of exactly ``size`` vertices inside ``alive``."""
    masks = g.masks

    def rec(chosen, cand):
        if len(chosen) == size:
            return chosen
        for v in bits(cand):
            if len(chosen) + (cand >> v).bit_count() < size:
                return None
            got = rec(chosen + [v], cand & masks[v] & ~((1 << (v + 1)) - 1))
            if got:
                return got
        return None

    return rec([], alive)


def ptas_vertex_cover(g: Graph, eps) -> Solution:
    """Vertex cover of size at most ``(1 + eps) vc(G)``.

    Strip cliques of size ``ceil(2/eps)`` one at a time; on what remains, solve
    exactly over an optimal-width decomposition.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError("eps must satisfy 0 < eps <= 1")
    size = math.ceil(2 / eps)
    alive = g.full_mask
    stripped = []
    while True:
        c = _first_clique(g, alive, size)
        if not c:
            break
        stripped.append(tuple(c))
        alive &= ~to_mask(c)
    h, remap = induced_subgraph(g, mask_tuple(alive))
    back = {i: v for v, i in remap.items()}
    inner = solve_on_td(ProblemInstance(h, Problem.VERTEX_COVER))
    cover = set(back[i] for i in inner.witness)
    for c in stripped:
        cover |= set(c)
    wit = tuple(sorted(cover))
    sol = Solution(
        Problem.VERTEX_COVER,
        len(wit),
        wit,
        f"(1+eps) eps={eps}",
        {"clique_size": size, "cliques_stripped": [list(c) for c in stripped], "exact_part": inner.value},
    )
    return _validated(ProblemInstance(g, Problem.VERTEX_COVER), sol)


QPTAS_MAX_N = 30


def qptas_stable_set(g: Graph, eps, d: int = 1, N: int | None = None, prune: bool = True,
                     max_n: int = QPTAS_MAX_N, force: bool = False) -> Solution:
    """Stable set of size at least ``(1 - eps) alpha(G)`` by the balanced-separator recursion.

    A connected piece on n >= 2 vertices tries pairs (S, Y) with
    ``|S| <= 2 d log n log N / eps`` and ``|Y| <= d`` such that every component
    of the piece minus ``N(S) + N[Y]`` has at most n/2 vertices, recurses on
    that remainder and keeps the largest answer.  With ``prune`` a maximum
    stable set of the piece is tried first as S and the scan stops once an
    answer of size alpha is in hand; the returned size is then the same as
    for the full scan.  If no pair qualifies the piece is solved exactly and
    the event is counted in ``stats['fallbacks']``.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError("eps must satisfy 0 < eps <= 1")
    if d < 0:
        raise InputError("d must be non-negative")
    if g.n > max_n and not force:
        raise GuardrailError(f"qptas_stable_set refuses n={g.n} > {max_n} (pass force=True)")
    big_n = g.n if N is None else N
    log_n_total = math.log2(big_n) if big_n > 1 else 0.0
    masks = g.masks
    stats = {"calls": 0, "pairs": 0, "fallbacks": 0, "early_exits": 0}
    memo = {}

    def closed(m):
        out = m
        for v in bits(m):
            out |= masks[v]
        return out

    def open_nb(m):
        return closed(m) & ~m

    def rec(alive: int) -> int:
        if alive in memo:
            return memo[alive]
        stats["calls"] += 1
        if alive.bit_count() <= 1:
            memo[alive] = alive
            return alive
        comps = component_masks(g, alive)
        if len(comps) > 1:
            out = 0
            for c in comps:
                out |= rec(c)
            memo[alive] = out
            return out
        nv = alive.bit_count()
        s_cap = int(math.floor(2 * d * math.log2(nv) * log_n_total / float(eps)))
        target = max_stable_mask(g, alive).bit_count() if prune else None
        verts = mask_tuple(alive)
        best = None

        def candidates():
            if prune:
                opt = max_stable_mask(g, alive)
                if opt.bit_count() <= s_cap:
                    yield opt, 0
            for ks in range(0, min(s_cap, nv) + 1):
                for s in itertools.combinations(verts, ks):
                    sm = to_mask(s)
                    for ky in range(0, min(d, nv) + 1):
                        for y in itertools.combinations(verts, ky):
                            yield sm, to_mask(y)

        for sm, ym in candidates():
            removed = (open_nb(sm) | closed(ym)) & alive
            rest = alive & ~removed
            if any(c.bit_count() * 2 > nv for c in component_masks(g, rest)):
                continue
            stats["pairs"] += 1
            got = rec(rest)
            if best is None or got.bit_count() > best.bit_count():
                best = got
            if prune and best.bit_count() == target:
                stats["early_exits"] += 1
                break
        if best is None:
            stats["fallbacks"] += 1
            best = max_stable_mask(g, alive)
        memo[alive] = best
        return best

    res = rec(g.full_mask)
    wit = mask_tuple(res)
    sol = Solution(Problem.STABLE_SET, len(wit), wit, f"(1-eps) eps={eps} d={d}", stats)
    return _validated(ProblemInstance(g, Problem.STABLE_SET), sol)
