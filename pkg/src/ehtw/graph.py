"""Immutable simple graphs on the vertex set ``0..n-1``.

Adjacency is kept twice: as sorted neighbor tuples (for deterministic
iteration) and as integer bitmasks (for the set algebra that every search in
this package leans on).  Vertex sets passed around between modules are plain
iterables of ints; functions return sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Instances are immutable and hashable; two graphs compare equal when they
    have the same vertex count and edge set (labels are ignored).
    """

    __slots__ = ("_n", "_adj", "_masks", "_labels", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        masks = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._init(n, tuple(masks), labels)

    def _init(self, n, masks, labels):
        self._n = n
        self._masks = masks
        self._adj = tuple(mask_tuple(m) for m in masks)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError("label count does not match vertex count")
        self._labels = labels
        self._edges = None
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g._init(len(masks), tuple(masks), labels)
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self._n) for v in self._adj[u] if u < v)
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self._n)

    def adj(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def closed_mask(self, v: int) -> int:
        return self._masks[v] | (1 << v)

    def nbr_mask(self, mask: int) -> int:
        """Union of the open neighborhoods of the vertices in ``mask``."""
        out = 0
        for v in bits(mask):
            out |= self._masks[v]
        return out

    def check_vertices(self, vertices: Iterable[int]) -> tuple[int, ...]:
        out = set()
        for v in vertices:
            v = int(v)
            if not 0 <= v < self._n:
                raise InputError(f"vertex {v} outside 0..{self._n - 1}")
            out.add(v)
        return tuple(sorted(out))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._masks))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"


# -- basic queries ---------------------------------------------------------

def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[X]`` with vertices renumbered in increasing order, plus old->new map."""
    xs = g.check_vertices(vertices)
    remap = {v: i for i, v in enumerate(xs)}
    masks = []
    for v in xs:
        m = 0
        for u in g.adj(v):
            j = remap.get(u)
            if j is not None:
                m |= 1 << j
        masks.append(m)
    labels = None
    if g.labels is not None:
        labels = [g.labels[v] for v in xs]
    return Graph.from_masks(masks, labels), remap


def delete_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    gone = set(g.check_vertices(vertices))
    return induced_subgraph(g, [v for v in g.vertices() if v not in gone])


def neighborhood(g: Graph, vertices: Iterable[int], closed: bool = False) -> tuple[int, ...]:
    xm = to_mask(g.check_vertices(vertices))
    out = g.nbr_mask(xm)
    if closed:
        out |= xm
    else:
        out &= ~xm
    return mask_tuple(out)


def component_masks(g: Graph, allowed: int) -> list[int]:
    """Connected components of ``G[allowed]`` as bitmasks, ordered by minimum vertex."""
    comps = []
    rest = allowed
    masks = g.masks
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph, forbidden: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Components of ``G \\ forbidden``, each sorted, ordered by minimum vertex."""
    fm = to_mask(g.check_vertices(forbidden))
    return [mask_tuple(c) for c in component_masks(g, g.full_mask & ~fm)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g, g.full_mask)) <= 1


def reachable_mask(g: Graph, source: int, allowed: int) -> int:
    """Vertices reachable from ``source`` through vertices of ``allowed``."""
    seen = 1 << source
    frontier = seen
    masks = g.masks
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Smallest-last ordering and the degeneracy.

    Repeatedly removes a vertex of minimum remaining degree (ties: smallest id);
    each vertex then has at most ``degeneracy`` neighbors later in the order.
    """
    alive = g.full_mask
    deg = [g.degree(v) for v in g.vertices()]
    order = []
    best = 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda u: (deg[u], u))
        best = max(best, deg[v])
        order.append(v)
        alive &= ~(1 << v)
        for u in bits(g.mask(v) & alive):
            deg[u] -= 1
    return order, best


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int


def clique_number(g: Graph, budget: int | None = 10**7) -> CliqueResult:
    """Maximum clique by branch and bound over candidate bitmasks.

    With a finite ``budget`` the search may stop early; the result is then a
    lower bound with ``exact=False``.
    """
    best = ()
    nodes = 0
    masks = g.masks
    exhausted = False

    def expand(clique, cand):
        nonlocal best, nodes, exhausted
        if not cand:
            if len(clique) > len(best) or (len(clique) == len(best) and tuple(sorted(clique)) < best):
                best = tuple(sorted(clique))
            return
        while cand:
            if len(clique) + cand.bit_count() < len(best):
                return
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = True
                return
            low = cand & -cand
            v = low.bit_length() - 1
            clique.append(v)
            expand(clique, cand & masks[v])
            clique.pop()
            if exhausted:
                return
            cand ^= low

    if g.n:
        expand([], g.full_mask)
    return CliqueResult(len(best), best, not exhausted, nodes)


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs)))


def is_stable(g: Graph, vertices: Sequence[int]) -> bool:
    m = to_mask(vertices)
    return all(g.mask(v) & m == 0 for v in vertices)


def is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    """Consecutive vertices adjacent, all others non-adjacent, vertices distinct."""
    if len(set(path)) != len(path):
        return False
    for i in range(len(path)):
        for j in range(i + 1, len(path)):
            if g.has_edge(path[i], path[j]) != (j == i + 1):
                return False
    return True


# -- constructors ----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


def add_vertex(g: Graph, neighbors: Iterable[int]) -> Graph:
    """Return ``g`` plus a new vertex ``n`` adjacent to ``neighbors``."""
    nb = g.check_vertices(neighbors)
    return Graph(g.n + 1, list(g.edges) + [(v, g.n) for v in nb])
