"""Command line entry point.

Every subcommand prints one JSON document on stdout (``schema: 1``) and can
also write it to ``--json PATH``.  Wall-clock data is confined to the
top-level ``timing`` field.  Exit codes: 0 success, 1 negative verdict,
2 input error, 3 budget or guardrail.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import io as gio
from .budget import DEFAULT_BUDGET
from .errors import BudgetExhausted, GuardrailError, InputError

SCHEMA = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _Outcome(Exception):
    """Carries a result together with a non-zero exit code."""

    def __init__(self, result, code):
        super().__init__(code)
        self.result = result
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(args):
    return gio.parse_graph(_read_text(args.graph), args.format)


def _td(path: str):
    from .treedec import TreeDecomposition

    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
            return TreeDecomposition([tuple(b) for b in obj["bags"]], [tuple(e) for e in obj["edges"]],
                                     n=obj.get("n"))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad JSON decomposition: {exc}") from exc
    return gio.parse_td(text)


def _weights(args, g):
    from .connectivity import WeightFunction

    if getattr(args, "weights", None):
        return WeightFunction.from_mapping(g.n, gio.parse_weights(_read_text(args.weights), g.n), normalize=True)
    return WeightFunction.uniform(g.n)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        for conv in (int, float):
            try:
                v = conv(v)
                break
            except ValueError:
                continue
        out[k] = v
    return out


# -- subcommands --------------------------------------------------------------------

def cmd_detect(args):
    from .structures import Kind, Status, find_structure, hubs

    g = _graph(args)
    kinds = list(Kind) if args.kind == "all" else [Kind[args.kind.upper()]]
    out = {"n": g.n, "m": g.m, "structures": {}}
    limit = False
    for kind in kinds:
        det = find_structure(g, kind, args.budget)
        out["structures"][kind.value] = det.to_json()
        limit |= det.status is Status.INDETERMINATE
    if args.hubs:
        hr = hubs(g, args.budget)
        out["hubs"] = hr.to_json()
        limit |= not hr.complete
    if limit:
        raise _Outcome(out, EXIT_LIMIT)
    return out


def cmd_class(args):
    from .structures import class_membership

    g = _graph(args)
    mem = class_membership(g, args.t, args.budget)
    out = mem.to_json()
    if mem.verdict == "INDETERMINATE":
        raise _Outcome(out, EXIT_LIMIT)
    if not mem.in_class:
        raise _Outcome(out, EXIT_NEGATIVE)
    return out


def cmd_banana(args):
    from .connectivity import max_banana, min_separator

    g = _graph(args)
    ban = max_banana(g, args.a, args.b)
    sep = min_separator(g, args.a, args.b)
    out = ban.to_json()
    out["valid"] = ban.is_valid(g)
    out["min_separator"] = list(sep)
    return out


def cmd_separator(args):
    from .connectivity import dominated_balanced_separator, gyarfas_path, is_balanced_separator

    g = _graph(args)
    w = _weights(args, g)
    res = dominated_balanced_separator(g, w, args.d_max, args.strategy)
    out = {"dominated": res.to_json()}
    if args.gyarfas:
        path = gyarfas_path(g, w)
        nb = sorted(set(path) | {u for v in path for u in g.adj(v)})
        out["gyarfas"] = {"path": list(path), "verdict": is_balanced_separator(g, w, nb).to_json()}
    if not res.found:
        raise _Outcome(out, EXIT_NEGATIVE)
    return out


def cmd_td(args):
    from .treedec import basket_pair, center, validate_td

    action = args.action
    if action == "convert":
        td = _td(args.graph)  # first positional is the decomposition here
        if args.to == "pace":
            text = gio.format_td(td)
        else:
            text = json.dumps(td.to_json(), indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        return {"action": "convert", "to": args.to, "bags": td.num_nodes, "width": td.width,
                "text": None if args.out else text}
    g = _graph(args)
    if action == "validate":
        v = validate_td(g, _need_td(args))
        out = v.to_json()
        if not v.valid:
            raise _Outcome(out, EXIT_NEGATIVE)
        return out
    if action == "exact":
        from .treewidth import treewidth_exact

        res = treewidth_exact(g, args.budget)
        _maybe_write_td(args, res.td)
        out = res.to_json()
        if not res.exact:
            raise _Outcome(out, EXIT_LIMIT)
        return out
    if action == "atomic":
        from .atomic import atomic_td

        if args.k is None:
            raise InputError("td atomic needs --k")
        res = atomic_td(g, args.k, args.mode)
        _maybe_write_td(args, res.td)
        return res.to_json()
    td = _need_td(args)
    if action == "basket":
        if args.a is None or args.b is None:
            raise InputError("td basket needs --a and --b")
        res = basket_pair(g, td, args.a, args.b)
        out = res.to_json()
        if not res.found:
            raise _Outcome(out, EXIT_NEGATIVE)
        return out
    if action == "center":
        t0 = center(g, td, _weights(args, g))
        return {"center": t0, "bag": list(td.bags[t0])}
    raise InputError(f"unknown td action {action}")  # pragma: no cover - argparse restricts choices


def _need_td(args):
    if not args.td:
        raise InputError(f"td {args.action} needs a decomposition file")
    return _td(args.td)


def _maybe_write_td(args, td):
    if args.out:
        Path(args.out).write_text(gio.format_td(td))


def cmd_solve(args):
    from .solvers import Problem, ProblemInstance, brute_force, ptas_vertex_cover, qptas_stable_set, solve_on_td

    g = _graph(args)
    problem = Problem(args.problem.upper())
    method = args.method
    if method == "ptas":
        if problem is not Problem.VERTEX_COVER:
            raise InputError("--method ptas applies to VERTEX_COVER")
        return ptas_vertex_cover(g, args.eps).to_json()
    if method == "qptas":
        if problem is not Problem.STABLE_SET:
            raise InputError("--method qptas applies to STABLE_SET")
        return qptas_stable_set(g, args.eps, args.d).to_json()
    inst = ProblemInstance(g, problem, r=args.r)
    if method == "brute":
        return brute_force(inst).to_json()
    td = _td(args.td) if args.td else None
    sol = solve_on_td(inst, td)
    out = sol.to_json()
    if problem is Problem.R_COLORING and not sol.value:
        raise _Outcome(out, EXIT_NEGATIVE)
    return out


def cmd_hubpart(args):
    from .hubpart import hub_dimension

    g = _graph(args)
    res = hub_dimension(g, args.a, args.b, args.search, d=args.d)
    return res.to_json()


def cmd_generate(args):
    from .generators import GeneratorSpec, generate

    params = _params(args.param)
    if args.t is not None:
        params["t"] = args.t
    gen = generate(GeneratorSpec(args.family, args.n, args.seed, params), args.budget)
    text = gio.format_graph(gen.graph, args.format or "edgelist")
    if args.out:
        Path(args.out).write_text(text)
    out = gen.to_json()
    out["text"] = None if args.out else text
    return out


def cmd_experiment(args):
    from .experiments import experiment_banana, experiment_logtw

    seeds = args.seeds if args.seeds is not None else [args.seed]
    params = _params(args.param)
    if args.which == "logtw":
        rep = experiment_logtw(args.family, args.n_list, seeds, args.t, params,
                               separator_d_max=args.d_max, budget=args.budget)
    else:
        rep = experiment_banana(args.family, args.n_list, seeds, args.pair_samples, args.t, params,
                                budget=args.budget)
    if args.csv:
        key = "tw_upper" if args.which == "logtw" else "max_banana"
        lines = ["n,seed,verdict," + key]
        lines += [f"{r['n']},{r['seed']},{r['verdict']},{r[key]}" for r in rep["records"]]
        Path(args.csv).write_text("\n".join(lines) + "\n")
    return rep


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--json", metavar="PATH", help="also write the JSON result to PATH")
    common.add_argument("--format", choices=("edgelist", "dimacs", "pace"), help="graph file format")

    p = argparse.ArgumentParser(prog="ehtw", description="Structure detection, decompositions and solvers "
                                "for (C4, theta, prism, even wheel)-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("detect", parents=[common], help="find forbidden induced structures")
    s.add_argument("graph")
    s.add_argument("--kind", default="all", choices=["all", "c4", "even_hole", "theta", "prism", "pyramid", "wheel"])
    s.add_argument("--hubs", action="store_true", help="also list hubs with wheel witnesses")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("class", parents=[common], help="decide class membership (exit 1 if outside)")
    s.add_argument("graph")
    s.add_argument("--t", type=int, help="also require clique number below t")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("banana", parents=[common], help="maximum banana and minimum separator")
    s.add_argument("graph")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_banana)

    s = sub.add_parser("separator", parents=[common], help="dominated balanced separator")
    s.add_argument("graph")
    s.add_argument("--weights", help="weight file (default uniform)")
    s.add_argument("--d-max", type=int, default=2)
    s.add_argument("--strategy", choices=("exhaustive", "guided"), default="exhaustive")
    s.add_argument("--gyarfas", action="store_true", help="also report a Gyarfas path separator")
    s.set_defaults(func=cmd_separator)

    s = sub.add_parser("td", parents=[common], help="tree decomposition tools")
    s.add_argument("action", choices=("validate", "convert", "exact", "atomic", "basket", "center"))
    s.add_argument("graph", help="graph file (for convert: the decomposition file)")
    s.add_argument("td", nargs="?", help="decomposition file (PACE .td or JSON)")
    s.add_argument("--to", choices=("json", "pace"), default="json")
    s.add_argument("--out", help="write the decomposition here")
    s.add_argument("--k", type=int)
    s.add_argument("--mode", choices=("exhaustive", "heuristic"), default="exhaustive")
    s.add_argument("--a", type=int)
    s.add_argument("--b", type=int)
    s.add_argument("--weights")
    s.set_defaults(func=cmd_td)

    s = sub.add_parser("solve", parents=[common], help="optimization problems")
    s.add_argument("problem", type=str.upper, choices=["STABLE_SET", "VERTEX_COVER", "FEEDBACK_VERTEX_SET",
                                                         "DOMINATING_SET", "R_COLORING", "COLORING"])
    s.add_argument("graph")
    s.add_argument("--td", help="decomposition to run the DP on (default: optimal width)")
    s.add_argument("--method", choices=("dp", "brute", "ptas", "qptas"), default="dp")
    s.add_argument("--eps", type=_fraction, default=Fraction(1, 2))
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--r", type=int)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("hubpart", parents=[common], help="hub partition and hub dimension")
    s.add_argument("graph")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--search", choices=("greedy", "exhaustive"), default="greedy")
    s.add_argument("--d", type=int)
    s.set_defaults(func=cmd_hubpart)

    s = sub.add_parser("generate", parents=[common], help="seeded instance generators")
    s.add_argument("family")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--out", help="write the graph here")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("experiment", parents=[common], help="treewidth and banana measurements")
    s.add_argument("which", choices=("logtw", "banana"))
    s.add_argument("--family", required=True)
    s.add_argument("--n-list", type=_int_list, required=True, help="e.g. 8-18 or 8,10,12")
    s.add_argument("--seeds", type=_int_list)
    s.add_argument("--t", type=int)
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--pair-samples", type=int, default=20)
    s.add_argument("--d-max", type=int, default=2)
    s.add_argument("--csv", help="also write per-instance rows as CSV")
    s.set_defaults(func=cmd_experiment)
    return p


def _emit(args, command, result, code, elapsed, timing=None):
    doc = {"schema": SCHEMA, "command": command, "exit_code": code, "result": result,
           "timing": {"seconds": round(elapsed, 6), **({"detail": timing} if timing else {})}}
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if getattr(args, "json", None):
        Path(args.json).write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    command = args.command if args.command != "td" else f"td {args.action}"
    start = time.perf_counter()
    try:
        result, code = args.func(args), EXIT_OK
    except _Outcome as out:
        result, code = out.result, out.code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GuardrailError, BudgetExhausted) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    timing = result.pop("timing", None) if isinstance(result, dict) else None
    _emit(args, command, result, code, time.perf_counter() - start, timing)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
