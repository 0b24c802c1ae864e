"""Shared instance builders for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from ehtw.graph import Graph

# (criterion, passed, detail) rows printed at the end of the session
ACCEPTANCE: list[tuple[str, bool, str]] = []


def report(name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append((name, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


# number of unlabeled graphs on n vertices (OEIS A000088)
GRAPH_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


def _cert(n, masks):
    import pynauty

    adj = {v: [u for u in range(n) if masks[v] >> u & 1] for v in range(n)}
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One graph per isomorphism class on n vertices, by vertex augmentation and nauty certificates."""
    if n == 0:
        return (Graph(0),)
    out = {}
    for h in all_graphs(n - 1):
        base = list(h.masks)
        for nb in range(1 << (n - 1)):
            masks = [m | ((nb >> v & 1) << (n - 1)) for v, m in enumerate(base)] + [nb]
            key = _cert(n, masks)
            if key not in out:
                out[key] = masks
    return tuple(Graph.from_masks(m) for m in sorted(out.values()))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_graphs(seed: int, count: int, n_lo: int, n_hi: int, ps=(0.15, 0.25, 0.35, 0.5, 0.7)):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        yield random_graph(rng, n, rng.choice(ps))


def write_cli_fixtures(root) -> dict:
    """Graph, decomposition and weight files used by the CLI tests."""
    from pathlib import Path

    from ehtw.graph import add_vertex, complete_bipartite, cycle_graph, path_graph
    from ehtw.io import format_graph, format_td
    from ehtw.treewidth import treewidth_exact

    root = Path(root)
    files = {}
    graphs = {
        "k23": complete_bipartite(2, 3),
        "c5": cycle_graph(5),
        "c6hub": add_vertex(cycle_graph(6), [0, 2, 4]),
        "w5": add_vertex(cycle_graph(5), range(5)),
        "p7": path_graph(7),
        "c8": cycle_graph(8),
    }
    for name, g in graphs.items():
        files[name] = root / f"{name}.txt"
        files[name].write_text(format_graph(g))
    files["p7td"] = root / "p7.td"
    files["p7td"].write_text(format_td(treewidth_exact(graphs["p7"]).td))
    files["c8td"] = root / "c8.td"
    files["c8td"].write_text(format_td(treewidth_exact(graphs["c8"]).td))
    files["weights"] = root / "w.txt"
    files["weights"].write_text("0 1\n3 1\n")
    return {k: str(v) for k, v in files.items()}


def cli_cases(f: dict) -> list[list[str]]:
    """One invocation per subcommand (and per td action), given the fixture paths."""
    return [
        ["detect", f["c6hub"], "--hubs"],
        ["class", f["w5"]],
        ["banana", f["k23"], "--a", "0", "--b", "1"],
        ["separator", f["c8"], "--d-max", "2", "--gyarfas"],
        ["td", "validate", f["p7"], f["p7td"]],
        ["td", "convert", f["p7td"], "--to", "json"],
        ["td", "exact", f["c8"]],
        ["td", "atomic", f["c5"], "--k", "2"],
        ["td", "basket", f["c8"], f["c8td"], "--a", "0", "--b", "4"],
        ["td", "center", f["p7"], f["p7td"], "--weights", f["weights"]],
        ["solve", "stable_set", f["c5"]],
        ["solve", "vertex_cover", f["c8"], "--method", "ptas", "--eps", "1/2"],
        ["solve", "stable_set", f["c8"], "--method", "qptas", "--eps", "1", "--d", "1"],
        ["solve", "coloring", f["c5"], "--method", "brute"],
        ["hubpart", f["w5"], "--a", "0", "--b", "2", "--search", "exhaustive"],
        ["generate", "random_gnp_filtered_C", "--n", "9", "--seed", "3"],
        ["experiment", "logtw", "--family", "random_gnp_filtered_Ct", "--t", "3", "--n-list", "8-10",
         "--seeds", "0,1"],
        ["experiment", "banana", "--family", "cycles", "--n-list", "6,8", "--pair-samples", "4"],
    ]
