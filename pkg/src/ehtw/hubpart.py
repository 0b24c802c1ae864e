"""Layered partitions of the hub set into stable sets with bounded forward degree.

A hub-partition with respect to ``ab`` splits ``Hub(G) - {a, b}`` into stable
layers S1..Sk.  A vertex of S_i may have at most ``d`` neighbors among the
hubs of ``S_i + ... + S_k``; the degree in ``G`` minus the earlier layers
(counting non-hubs too) is reported alongside as ``full_degree``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExhausted, GuardrailError, InputError
from .graph import Graph, bits, mask_tuple, to_mask
from .structures import hubs as find_hubs

EXHAUSTIVE_MAX_HUBS = 12


@dataclass(frozen=True)
class HubPartition:
    layers: tuple[tuple[int, ...], ...]
    d: int
    a: int
    b: int
    full_degree: int  # max over layers of deg in G minus earlier layers

    @property
    def k(self) -> int:
        return len(self.layers)

    def to_json(self):
        return {
            "layers": [list(s) for s in self.layers],
            "d": self.d,
            "k": self.k,
            "a": self.a,
            "b": self.b,
            "full_degree": self.full_degree,
        }


def _hub_set(g: Graph, a: int, b: int, hub_set) -> int:
    if a == b:
        raise InputError("a and b must differ")
    g.check_vertices((a, b))
    if hub_set is None:
        res = find_hubs(g)
        if not res.complete:
            raise BudgetExhausted("hub enumeration ran out of budget")
        hub_set = res.hubs
    return to_mask(hub_set) & ~((1 << a) | (1 << b))


def partition_problems(g: Graph, hub_mask: int, layers, d: int) -> list[str]:
    """Everything wrong with ``layers`` as a hub-partition of ``hub_mask`` with bound ``d``."""
    out = []
    seen = 0
    for s in layers:
        sm = to_mask(s)
        if not sm:
            out.append("empty layer")
        if sm & seen:
            out.append(f"layer {list(s)} overlaps an earlier layer")
        seen |= sm
    if seen != hub_mask:
        out.append(f"layers cover {list(mask_tuple(seen))}, hubs are {list(mask_tuple(hub_mask))}")
    rest = hub_mask
    for s in layers:
        sm = to_mask(s)
        for v in s:
            if g.mask(v) & sm:
                out.append(f"layer {list(s)} is not stable")
                break
        for v in s:
            deg = (g.mask(v) & rest).bit_count()
            if deg > d:
                out.append(f"vertex {v} has {deg} > {d} later hub neighbors")
        rest &= ~sm
    return out


def _degeneracy(g: Graph, m: int) -> int:
    best = 0
    while m:
        v = min(bits(m), key=lambda u: ((g.mask(u) & m).bit_count(), u))
        best = max(best, (g.mask(v) & m).bit_count())
        m &= ~(1 << v)
    return best


def _full_degree(g: Graph, layers) -> int:
    rest = g.full_mask
    worst = 0
    for s in layers:
        for v in s:
            worst = max(worst, (g.mask(v) & rest).bit_count())
        rest &= ~to_mask(s)
    return worst


def _greedy_layers(g: Graph, hub_mask: int, d: int):
    rest = hub_mask
    layers = []
    while rest:
        cand = sorted(bits(rest), key=lambda v: ((g.mask(v) & rest).bit_count(), v))
        layer = 0
        for v in cand:
            if (g.mask(v) & rest).bit_count() > d:
                break
            if not g.mask(v) & layer:
                layer |= 1 << v
        if not layer:  # pragma: no cover - d below the degeneracy is rejected earlier
            raise AssertionError("no vertex of low degree")
        layers.append(mask_tuple(layer))
        rest &= ~layer
    return tuple(layers)


def hub_partition(g: Graph, a: int, b: int, hub_set=None, d: int | None = None) -> HubPartition:
    """Greedy hub-partition: each layer is a maximal stable set among the hubs of lowest remaining degree.

    ``d`` defaults to the degeneracy of the graph induced on the hubs, the
    smallest bound for which every round has a candidate.
    """
    hm = _hub_set(g, a, b, hub_set)
    floor = _degeneracy(g, hm)
    if d is None:
        d = floor
    elif d < floor:
        raise InputError(f"d={d} is below the degeneracy {floor} of the hub graph")
    layers = _greedy_layers(g, hm, d)
    achieved = 0
    rest = hm
    for s in layers:
        for v in s:
            achieved = max(achieved, (g.mask(v) & rest).bit_count())
        rest &= ~to_mask(s)
    hp = HubPartition(layers, achieved, a, b, _full_degree(g, layers))
    problems = partition_problems(g, hm, layers, achieved)
    if problems:  # pragma: no cover - construction guarantees the invariants
        raise AssertionError("; ".join(problems))
    return hp


def _exhaustive_min(g: Graph, hub_mask: int, d: int) -> tuple[tuple[int, ...], ...] | None:
    masks = g.masks

    @lru_cache(maxsize=None)
    def best(rest: int):
        if not rest:
            return ()
        low = 0
        for v in bits(rest):
            if (masks[v] & rest).bit_count() <= d:
                low |= 1 << v
        out = None
        # every nonempty stable subset of the low-degree vertices is a legal next layer
        sub = low
        while sub:
            if all(not (masks[v] & sub) for v in bits(sub)):
                tail = best(rest & ~sub)
                if tail is not None and (out is None or len(tail) + 1 < len(out)):
                    out = (mask_tuple(sub),) + tail
            sub = (sub - 1) & low
        return out

    return best(hub_mask)


@dataclass(frozen=True)
class HubDimension:
    k: int
    d: int
    search: str
    partition: HubPartition
    greedy_k: int

    def to_json(self):
        return {"k": self.k, "d": self.d, "search": self.search, "greedy_k": self.greedy_k,
                "partition": self.partition.to_json()}


def hub_dimension(g: Graph, a: int, b: int, search: str = "greedy", hub_set=None,
                  d: int | None = None) -> HubDimension:
    """Smallest number of layers of a hub-partition for bound ``d``.

    ``greedy`` gives the upper bound from :func:`hub_partition`; ``exhaustive``
    searches every layered partition (at most 12 hubs).
    """
    hm = _hub_set(g, a, b, hub_set)
    floor = _degeneracy(g, hm)
    if d is None:
        d = floor
    greedy = hub_partition(g, a, b, mask_tuple(hm), d)
    if search == "greedy":
        return HubDimension(greedy.k, d, search, greedy, greedy.k)
    if search != "exhaustive":
        raise InputError(f"unknown search mode {search!r}")
    if hm.bit_count() > EXHAUSTIVE_MAX_HUBS:
        raise GuardrailError(f"exhaustive hub dimension limited to {EXHAUSTIVE_MAX_HUBS} hubs")
    layers = _exhaustive_min(g, hm, d)
    if layers is None:  # pragma: no cover - d >= degeneracy always admits a partition
        raise AssertionError("no hub-partition")
    problems = partition_problems(g, hm, layers, d)
    if problems:  # pragma: no cover
        raise AssertionError("; ".join(problems))
    hp = HubPartition(layers, d, a, b, _full_degree(g, layers))
    return HubDimension(len(layers), d, search, hp, greedy.k)
