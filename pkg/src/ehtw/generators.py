"""Seeded instance generators, each result labeled with a verified class verdict.

Filtered families grow a graph one vertex at a time.  A proposed vertex
gets a random neighborhood and is kept only if the enlarged graph still
passes the filter; the class is hereditary, so this is rejection sampling
on the last vertex.  With ``method="gnp"`` whole G(n, p) graphs are
rejected instead.  Acceptance statistics are returned with every graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .budget import as_budget
from .errors import GuardrailError, InputError
from .graph import (
    Graph,
    add_vertex,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    petersen_graph,
)
from .structures import Kind, Membership, Status, all_holes, class_membership, find_structure, hubs

FAMILIES = (
    "random_gnp_filtered_C",
    "random_gnp_filtered_Ct",
    "chordal_random",
    "cycles",
    "theta_free_random",
    "handcrafted_library",
)


class RejectionExhausted(GuardrailError):
    def __init__(self, msg, stats):
        super().__init__(msg)
        self.stats = stats


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 0:
            raise InputError("n must be non-negative")

    def rng(self) -> random.Random:
        key = f"{self.family}|{self.n}|{self.seed}|{sorted(self.params.items())}"
        return random.Random(key)

    def to_json(self):
        return {"family": self.family, "n": self.n, "seed": self.seed, "params": dict(sorted(self.params.items()))}


@dataclass(frozen=True)
class Generated:
    graph: Graph
    membership: Membership
    spec: GeneratorSpec
    stats: dict

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "membership": self.membership.to_json(),
            "stats": self.stats,
        }


# -- library of small named graphs ------------------------------------------------

def _wheel(k: int) -> Graph:
    return add_vertex(cycle_graph(k), range(k))


def _c6_hub() -> Graph:
    return add_vertex(cycle_graph(6), (0, 2, 4))


def _prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def _pyramid() -> Graph:
    # apex 0, base triangle 1 2 3, legs 0-1, 0-4-2, 0-5-3
    return Graph(6, [(1, 2), (2, 3), (1, 3), (0, 1), (0, 4), (4, 2), (0, 5), (5, 3)])


LIBRARY = {
    "c5": lambda: cycle_graph(5),
    "c6": lambda: cycle_graph(6),
    "c7": lambda: cycle_graph(7),
    "k4": lambda: complete_graph(4),
    "k23": lambda: complete_bipartite(2, 3),
    "w5": lambda: _wheel(5),
    "w6": lambda: _wheel(6),
    "w7": lambda: _wheel(7),
    "c6_hub": _c6_hub,
    "prism": _prism,
    "pyramid": _pyramid,
    "petersen": petersen_graph,
    "grid3x3": lambda: grid_graph(3, 3),
    "p6": lambda: path_graph(6),
}


# -- growth helpers --------------------------------------------------------------------

def _random_nbhd(rng: random.Random, g: Graph, p: float) -> list[int]:
    nb = [u for u in range(g.n) if rng.random() < p]
    return nb or ([rng.randrange(g.n)] if g.n else [])


def _hub_nbhd(rng: random.Random, g: Graph):
    """Odd spoke set on a random hole, sometimes joined to the current hubs."""
    holes = all_holes(g, as_budget(10**6))
    if not holes:
        return None
    h = list(rng.choice(holes))
    sizes = list(range(3, len(h) + 1, 2))
    k = sizes[-1] if rng.random() < 0.5 else rng.choice(sizes)
    nb = set(rng.sample(h, k))
    if rng.random() < 0.5:
        nb |= set(hubs(g, 10**6).hubs)
    return sorted(nb)


def _grow(spec: GeneratorSpec, accept, default_p: float):
    rng = spec.rng()
    n = spec.n
    prm = spec.params
    p = float(prm.get("p", default_p))
    hub_bias = float(prm.get("hub_bias", 0.0))
    max_attempts = int(prm.get("max_attempts", 200 * max(n, 1)))
    if hub_bias > 0 and n >= 5:
        g = cycle_graph(rng.choice([5, 7]) if n >= 7 else 5)
    else:
        g = Graph(min(n, 1))
    attempts = accepted = 0
    while g.n < n:
        if attempts >= max_attempts:
            stats = {"attempts": attempts, "accepted": accepted, "reached": g.n}
            raise RejectionExhausted(
                f"{spec.family}: stuck at {g.n}/{n} vertices after {attempts} proposals", stats)
        nb = _hub_nbhd(rng, g) if hub_bias and rng.random() < hub_bias else None
        if nb is None:
            nb = _random_nbhd(rng, g, p)
        h = add_vertex(g, nb)
        attempts += 1
        if accept(h):
            g = h
            accepted += 1
    return g, {"method": "grow", "attempts": attempts, "accepted": accepted,
               "acceptance": round(accepted / attempts, 6) if attempts else 1.0}


def _gnp(spec: GeneratorSpec, accept, default_p: float):
    rng = spec.rng()
    n = spec.n
    p = float(spec.params.get("p", default_p))
    max_attempts = int(spec.params.get("max_attempts", 10000))
    for attempt in range(1, max_attempts + 1):
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        if accept(g):
            return g, {"method": "gnp", "attempts": attempt, "accepted": 1, "acceptance": round(1 / attempt, 6)}
    raise RejectionExhausted(f"{spec.family}: no G({n}, {p}) sample accepted in {max_attempts} tries",
                             {"attempts": max_attempts, "accepted": 0})


def _chordal(spec: GeneratorSpec) -> Graph:
    """Each new vertex joins a random nonempty subset of a random maximal clique."""
    rng = spec.rng()
    n = spec.n
    keep = float(spec.params.get("p", 0.5))
    max_clique = int(spec.params.get("max_clique", 5))
    if n == 0:
        return Graph(0)
    g = Graph(1)
    cliques = [[0]]
    while g.n < n:
        v = g.n
        base = rng.choice(cliques)
        nb = [u for u in base if rng.random() < keep] or [rng.choice(base)]
        nb = nb[: max_clique - 1]
        g = add_vertex(g, nb)
        new = sorted(nb + [v])
        if set(nb) == set(base):
            cliques.remove(base)
        cliques.append(new)
    return g


def generate(spec: GeneratorSpec, budget=10**7) -> Generated:
    fam = spec.family
    t = spec.params.get("t")
    if fam == "random_gnp_filtered_Ct":
        if t is None:
            raise InputError("random_gnp_filtered_Ct needs parameter t")
        t = int(t)
    method = spec.params.get("method", "grow")
    if fam in ("random_gnp_filtered_C", "random_gnp_filtered_Ct"):
        ct = t if fam == "random_gnp_filtered_Ct" else None

        def accept(h):
            return class_membership(h, ct, budget).in_class

        if method == "gnp":
            g, stats = _gnp(spec, accept, 1.5 / max(spec.n, 1))
        else:
            g, stats = _grow(spec, accept, 0.15)
    elif fam == "theta_free_random":
        def accept(h):
            return find_structure(h, Kind.THETA, budget).status is Status.ABSENT

        g, stats = (_gnp if method == "gnp" else _grow)(spec, accept, 0.3)
    elif fam == "chordal_random":
        g, stats = _chordal(spec), {"method": "clique-attach"}
    elif fam == "cycles":
        if spec.n < 3:
            raise InputError("cycles need n >= 3")
        g, stats = cycle_graph(spec.n), {}
    else:
        name = spec.params.get("name")
        if name not in LIBRARY:
            raise InputError(f"handcrafted_library needs name in {sorted(LIBRARY)}")
        g, stats = LIBRARY[name](), {"name": name}
    mem = class_membership(g, t, budget)
    return Generated(g, mem, spec, stats)
