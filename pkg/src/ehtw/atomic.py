"""k-atomic tree decompositions.

Exhaustive mode computes, for every pair (U, S) reached, the lexicographically
smallest fatness of a decomposition of ``G[U]`` whose root bag R contains S.
The components of ``G[U] \\ R`` are grouped into child subtrees; a group
hangs below R through the adhesion ``A = N(group) & R``, which must have
fewer than k vertices and differ from R (a child bag containing R could be
contracted into it, which lowers the fatness).  Fatness vectors are encoded
as integers with one digit per bag size, so lexicographic comparison and
addition become integer comparison and addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import GuardrailError, InputError
from .graph import Graph, bits, component_masks, mask_tuple
from .treedec import TreeDecomposition
from .treewidth import compress, min_fill_order, td_from_order

EXHAUSTIVE_MAX_N = 9
_DIGIT = 1 << 16


def fatness_key(sizes) -> int:
    return sum(_DIGIT ** s for s in sizes)


def decode_fatness(key: int, n: int) -> tuple[int, ...]:
    counts = []
    for _ in range(n + 1):
        key, r = divmod(key, _DIGIT)
        counts.append(r)
    return tuple(reversed(counts))


@dataclass(frozen=True)
class AtomicResult:
    td: TreeDecomposition
    k: int
    fatness: tuple[int, ...]
    exact: bool
    mode: str

    def to_json(self):
        return {
            "k": self.k,
            "mode": self.mode,
            "exact": self.exact,
            "heuristic": not self.exact,
            "fatness": list(self.fatness),
            "td": self.td.to_json(),
        }


def _submasks_by_size(free: int):
    subs = []
    sub = free
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    subs.sort(key=lambda m: (m.bit_count(), mask_tuple(m)))
    return subs


def _exhaustive(g: Graph, k: int) -> TreeDecomposition:
    masks = g.masks

    def nbr(m):
        out = 0
        for v in bits(m):
            out |= masks[v]
        return out

    @lru_cache(maxsize=None)
    def best(u: int, s: int):
        """(cost, root bag, ((group, adhesion), ...)) for decompositions of G[U] with root bag containing S."""
        top = None
        for extra in _submasks_by_size(u & ~s):
            r = s | extra
            if r == 0:
                continue
            base = _DIGIT ** r.bit_count()
            if top is not None and base >= top[0]:
                break  # bags are sorted by size; larger roots cannot win
            comps = component_masks(g, u & ~r)
            m = len(comps)
            # group DP over subsets of components (first member fixed to avoid repeats)
            group_cost = {}
            for gm in range(1, 1 << m):
                grp = 0
                for i in range(m):
                    if (gm >> i) & 1:
                        grp |= comps[i]
                a = nbr(grp) & r
                if a.bit_count() >= k or a == r:
                    continue
                group_cost[gm] = (best(grp | a, a)[0], grp, a)
            dp = {0: (0, ())}
            for mask in range(1, 1 << m):
                low = mask & -mask
                rest = mask ^ low
                choice = None
                sub = rest
                while True:
                    gm = sub | low
                    if gm in group_cost and (mask ^ gm) in dp:
                        c = group_cost[gm][0] + dp[mask ^ gm][0]
                        if choice is None or c < choice[0]:
                            choice = (c, dp[mask ^ gm][1] + ((group_cost[gm][1], group_cost[gm][2]),))
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest
                if choice is not None:
                    dp[mask] = choice
            full = (1 << m) - 1
            if full not in dp:
                continue
            cost = base + dp[full][0]
            if top is None or cost < top[0]:
                top = (cost, r, dp[full][1])
        if top is None:
            raise AssertionError("no decomposition with the required adhesion")  # pragma: no cover
        return top

    bags: list[int] = []
    edges: list[tuple[int, int]] = []

    def build(u, s, parent):
        _, r, groups = best(u, s)
        bags.append(r)
        node = len(bags) - 1
        if parent is not None:
            edges.append((parent, node))
        for grp, a in sorted(groups, key=lambda x: mask_tuple(x[0])):
            build(grp | a, a, node)

    build(g.full_mask, 0, None)
    best.cache_clear()
    return TreeDecomposition([mask_tuple(b) for b in bags], edges, n=g.n)


def _heuristic(g: Graph, k: int) -> TreeDecomposition:
    td = td_from_order(g, min_fill_order(g))
    bags = [set(b) for b in td.bags]
    edges = [tuple(e) for e in td.edges]
    while True:
        bad = next(((i, j) for i, j in edges if len(bags[i] & bags[j]) >= k), None)
        if bad is None:
            break
        i, j = bad
        bags[i] |= bags[j]
        bags[j] = set()
        edges = [(i if x == j else x, i if y == j else y) for x, y in edges if (x, y) != bad]
        keep = [t for t in range(len(bags)) if t != j]
        new = {t: idx for idx, t in enumerate(keep)}
        bags = [bags[t] for t in keep]
        edges = [(new[x], new[y]) for x, y in edges]
    return compress(TreeDecomposition([sorted(b) for b in bags], edges, n=g.n))


def atomic_td(g: Graph, k: int, mode: str = "exhaustive", max_n: int = EXHAUSTIVE_MAX_N) -> AtomicResult:
    """Decomposition with adhesion < k and lexicographically minimum fatness (exhaustive mode).

    ``heuristic`` mode returns a min-fill decomposition whose high-adhesion
    edges are contracted; it has adhesion < k but no optimality claim.
    """
    if k < 1:
        raise InputError("k must be positive")
    if mode not in ("exhaustive", "heuristic"):
        raise InputError(f"unknown mode {mode!r}")
    if g.n == 0:
        td = TreeDecomposition([()], [], n=0)
        return AtomicResult(td, k, td.fatness(), True, mode)
    if mode == "exhaustive":
        if g.n > max_n:
            raise GuardrailError(f"exhaustive atomic decomposition is limited to n <= {max_n} (got {g.n})")
        td = _exhaustive(g, k)
        return AtomicResult(td, k, td.fatness(), True, mode)
    td = _heuristic(g, k)
    return AtomicResult(td, k, td.fatness(), False, mode)
