"""Exact treewidth for small graphs, plus min-fill upper bounds.

The exact routine decides "tw <= k" for increasing k by a depth-first search
over eliminated vertex sets S.  For S fixed, the degree of v in the
elimination graph is ``|Q(S, v)|``, the set of vertices outside S reachable
from v through S.  Failing sets are memoized and simplicial vertices are
eliminated without branching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import DEFAULT_BUDGET, as_budget
from .errors import BudgetExhausted, GuardrailError
from .graph import Graph, bits, clique_number, degeneracy_order, mask_tuple
from .treedec import TreeDecomposition

EXACT_MAX_N = 20


def _q(g: Graph, s: int, v: int) -> int:
    """Vertices outside S + v reachable from v by a path whose interior lies in S."""
    masks = g.masks
    seen = 1 << v
    frontier = seen
    out = 0
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= masks[u]
        nxt &= ~seen
        seen |= nxt
        out |= nxt & ~s
        frontier = nxt & s
    return out & ~(1 << v)


def min_fill_order(g: Graph) -> list[int]:
    """Greedy elimination order: fewest fill edges, then smallest degree, then smallest id."""
    adj = list(g.masks)
    alive = g.full_mask
    order = []
    while alive:
        best = None
        for v in bits(alive):
            nb = adj[v] & alive
            fill = 0
            for u in bits(nb):
                fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
            key = (fill // 2, nb.bit_count(), v)
            if best is None or key < best:
                best = key
        v = best[2]
        nb = adj[v] & alive
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
        order.append(v)
    return order


def td_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Decomposition with one bag per vertex: v plus its later neighbors in the filled graph."""
    n = g.n
    if n == 0:
        return TreeDecomposition([()], [], n=0)
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.masks)
    bags = []
    parent = []
    alive = g.full_mask
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
        bags.append(nb | (1 << v))
        later = [pos[u] for u in bits(nb)]
        parent.append(min(later) if later else None)
        alive &= ~(1 << v)
    edges = []
    roots = []
    for i, p in enumerate(parent):
        if p is None:
            roots.append(i)
        else:
            edges.append((p, i))
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return compress(TreeDecomposition([mask_tuple(b) for b in bags], sorted(edges), n=n))


def compress(td: TreeDecomposition) -> TreeDecomposition:
    """Contract every tree edge whose one bag contains the other."""
    bags = [set(b) for b in td.bags]
    alive = [True] * len(bags)
    nbrs = [set(td.neighbors(t)) for t in td.nodes()]
    changed = True
    while changed:
        changed = False
        for t in range(len(bags)):
            if not alive[t]:
                continue
            for s in sorted(nbrs[t]):
                if bags[t] <= bags[s]:
                    for r in nbrs[t]:
                        if r != s:
                            nbrs[r].discard(t)
                            nbrs[r].add(s)
                            nbrs[s].add(r)
                    nbrs[s].discard(t)
                    alive[t] = False
                    nbrs[t] = set()
                    changed = True
                    break
    keep = [t for t in range(len(bags)) if alive[t]]
    new = {t: i for i, t in enumerate(keep)}
    edges = sorted({(min(new[t], new[s]), max(new[t], new[s])) for t in keep for s in nbrs[t]})
    return TreeDecomposition([sorted(bags[t]) for t in keep], edges, n=td.n)


@dataclass(frozen=True)
class TreewidthResult:
    width: int | None
    lower: int
    upper: int
    exact: bool
    td: TreeDecomposition
    nodes: int

    def to_json(self):
        return {
            "width": self.width,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "td": self.td.to_json(),
            "nodes": self.nodes,
        }



def lower_bound(g: Graph) -> int:
    if g.n == 0:
        return -1
    cq = clique_number(g, budget=10**5)
    return max(cq.size - 1, degeneracy_order(g)[1])


def _decide(g: Graph, k: int, budget) -> list[int] | None:
    full = g.full_mask
    failed = set()

    def rec(s: int):
        rest = full & ~s
        if rest.bit_count() <= k + 1:
            return list(bits(rest))
        if s in failed:
            return None
        budget.tick()
        qs = {}
        for v in bits(rest):
            q = _q(g, s, v)
            if q.bit_count() <= k:
                qs[v] = q
        for v, q in qs.items():
            if all(q & ~(1 << u) & ~_q(g, s, u) == 0 for u in bits(q)):
                sub = rec(s | (1 << v))
                if sub is None:
                    failed.add(s)
                    return None
                return [v] + sub
        for v in qs:
            sub = rec(s | (1 << v))
            if sub is not None:
                return [v] + sub
        failed.add(s)
        return None

    return rec(0)


def treewidth_exact(g: Graph, budget=DEFAULT_BUDGET, max_n: int = EXACT_MAX_N) -> TreewidthResult:
    """Exact treewidth with a witness decomposition; bounds only above ``max_n`` or when the budget runs out."""
    order = min_fill_order(g)
    ub_td = td_from_order(g, order)
    ub = ub_td.width
    lb = lower_bound(g)
    if g.n == 0:
        return TreewidthResult(-1, -1, -1, True, ub_td, 0)
    if g.n > max_n:
        return TreewidthResult(None, lb, ub, False, ub_td, 0)
    b = as_budget(budget)
    best_td = ub_td
    try:
        for k in range(lb, ub):
            found = _decide(g, k, b)
            if found is not None:
                best_td = td_from_order(g, found)
                return TreewidthResult(best_td.width, best_td.width, best_td.width, True, best_td, b.used)
            lb = k + 1
    except BudgetExhausted:
        return TreewidthResult(None, lb, ub, False, ub_td, b.used)
    return TreewidthResult(ub, ub, ub, True, best_td, b.used)


def treewidth(g: Graph, budget=DEFAULT_BUDGET) -> int:
    res = treewidth_exact(g, budget)
    if not res.exact:
        raise GuardrailError(f"treewidth undecided: {res.lower} <= tw <= {res.upper}")
    return res.width
