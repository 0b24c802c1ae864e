"""Readers and writers for graphs, weights and tree decompositions.

Graph formats
    edgelist  ``n m`` header then ``u v`` lines, 0-indexed, ``#`` comments.
    dimacs    ``p edge n m`` then ``e u v`` lines, 1-indexed, ``c`` comments.
    pace      ``p tw n m`` then ``u v`` lines, 1-indexed, ``c`` comments.

Tree decompositions use the PACE ``.td`` format.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .graph import Graph

GRAPH_FORMATS = ("edgelist", "dimacs", "pace")


def _lines(text):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c ") or line == "c":
            continue
        yield i, line


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def detect_format(text: str) -> str:
    for _, line in _lines(text):
        if line.startswith("p "):
            parts = line.split()
            if len(parts) >= 2 and parts[1] == "tw":
                return "pace"
            return "dimacs"
        return "edgelist"
    return "edgelist"


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    fmt = fmt or detect_format(text)
    if fmt not in GRAPH_FORMATS:
        raise InputError(f"unknown graph format {fmt!r}")
    n = m = None
    edges = []
    seen = set()
    offset = 0 if fmt == "edgelist" else 1
    for lineno, line in _lines(text):
        tokens = line.split()
        if n is None:
            if fmt == "edgelist":
                if len(tokens) != 2:
                    raise InputError("header must be 'n m'", lineno)
                n, m = _ints(tokens, lineno)
            else:
                want = "edge" if fmt == "dimacs" else "tw"
                if tokens[0] != "p" or len(tokens) != 4 or tokens[1] != want:
                    raise InputError(f"header must be 'p {want} n m'", lineno)
                n, m = _ints(tokens[2:], lineno)
            if n < 0 or m < 0:
                raise InputError("negative counts in header", lineno)
            continue
        if fmt == "dimacs":
            if tokens[0] != "e" or len(tokens) != 3:
                raise InputError("edge line must be 'e u v'", lineno)
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise InputError("edge line must have two endpoints", lineno)
        u, v = (x - offset for x in _ints(tokens, lineno))
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"endpoint out of range in edge {line!r}", lineno)
        if u == v:
            raise InputError(f"self-loop {line!r}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge {line!r}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise InputError("empty graph file")
    if len(edges) != m:
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        out = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    elif fmt == "dimacs":
        out = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    elif fmt == "pace":
        out = [f"p tw {g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.edges]
    else:
        raise InputError(f"unknown graph format {fmt!r}")
    return "\n".join(out) + "\n"


def read_graph(path, fmt: str | None = None) -> Graph:
    return parse_graph(Path(path).read_text(), fmt)


def write_graph(g: Graph, path, fmt: str = "edgelist") -> None:
    Path(path).write_text(format_graph(g, fmt))


def parse_weights(text: str, n: int) -> dict[int, Fraction]:
    """Parse ``v numerator denominator`` / ``v integer`` lines; missing vertices weigh 0."""
    weights = {}
    for lineno, line in _lines(text):
        tokens = line.split()
        vals = _ints(tokens, lineno)
        if len(vals) == 2:
            v, w = vals[0], Fraction(vals[1])
        elif len(vals) == 3:
            if vals[2] <= 0:
                raise InputError("denominator must be positive", lineno)
            v, w = vals[0], Fraction(vals[1], vals[2])
        else:
            raise InputError("weight line must be 'v w' or 'v num den'", lineno)
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range", lineno)
        if w < 0:
            raise InputError("negative weight", lineno)
        if v in weights:
            raise InputError(f"vertex {v} given twice", lineno)
        weights[v] = w
    return weights


# -- PACE tree decompositions ---------------------------------------------

def parse_td(text: str):
    from .treedec import TreeDecomposition

    header = None
    bags = {}
    edges = []
    for lineno, line in _lines(text):
        tokens = line.split()
        if header is None:
            if tokens[:2] != ["s", "td"] or len(tokens) != 5:
                raise InputError("header must be 's td <bags> <width+1> <n>'", lineno)
            header = _ints(tokens[2:], lineno)
            continue
        if tokens[0] == "b":
            vals = _ints(tokens[1:], lineno)
            if not vals:
                raise InputError("bag line without id", lineno)
            bid = vals[0]
            if not 1 <= bid <= header[0]:
                raise InputError(f"bag id {bid} out of range", lineno)
            if bid in bags:
                raise InputError(f"bag {bid} defined twice", lineno)
            for v in vals[1:]:
                if not 1 <= v <= header[2]:
                    raise InputError(f"vertex {v} out of range", lineno)
            bags[bid] = [v - 1 for v in vals[1:]]
        else:
            vals = _ints(tokens, lineno)
            if len(vals) != 2:
                raise InputError("tree edge line must be 'i j'", lineno)
            for b in vals:
                if not 1 <= b <= header[0]:
                    raise InputError(f"bag id {b} out of range", lineno)
            edges.append((vals[0] - 1, vals[1] - 1))
    if header is None:
        raise InputError("empty decomposition file")
    nbags, size, n = header
    if len(bags) != nbags:
        raise InputError(f"header announces {nbags} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i + 1] for i in range(nbags)], edges, n=n)
    if nbags and td.max_bag_size != size:
        raise InputError(f"header width+1 is {size}, largest bag has {td.max_bag_size}")
    return td


def format_td(td) -> str:
    out = [f"s td {len(td.bags)} {td.max_bag_size} {td.n}"]
    for i, bag in enumerate(td.bags):
        out.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in bag]))
    for i, j in td.edges:
        out.append(f"{i + 1} {j + 1}")
    return "\n".join(out) + "\n"


def read_td(path):
    return parse_td(Path(path).read_text())


def write_td(td, path) -> None:
    Path(path).write_text(format_td(td))
