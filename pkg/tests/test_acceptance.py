"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are also
collected into an "acceptance criteria" section at the end of the session.
Every criterion is checked against an independent oracle (subset
enumeration, certificates, brute force) at the stated size.
"""

import itertools
import json
import math
import random
import subprocess
import sys
from collections import deque
from fractions import Fraction

import pytest

from ehtw.atomic import atomic_td
from ehtw.cli import main as cli_main
from ehtw.connectivity import (
    WeightFunction,
    gyarfas_path,
    is_balanced_separator,
    max_banana,
    min_separator,
    pyramid_legs_core,
    pyramid_neighborhood_check,
    separates,
    wheel_forcer_cutset,
    wheel_star_cutset_check,
)
from ehtw.errors import InputError
from ehtw.experiments import experiment_banana, experiment_logtw
from ehtw.generators import GeneratorSpec, generate
from ehtw.graph import Graph, bits, component_masks, cycle_graph, grid_graph, is_clique, to_mask
from ehtw.solvers import Problem, ProblemInstance, brute_force, check_solution, ptas_vertex_cover, \
    qptas_stable_set, solve_on_td
from ehtw.structures import (
    Kind,
    Status,
    all_holes,
    class_membership,
    find_structure,
    hubs,
    make_certificate,
    sectors,
    validate_certificate,
    wheel_certificate,
    wheel_flags,
)
from ehtw.subsets import analyze
from ehtw.treedec import (
    OracleFailure,
    basket_pair,
    friendly_vertices,
    center,
    is_k_lean,
    is_tight,
    shrink_separator,
    td_from_balanced_separators,
    validate_td,
    verify_basket,
)
from ehtw.treewidth import min_fill_order, td_from_order, treewidth_exact
from helpers import GRAPH_COUNTS, all_graphs, cli_cases, random_graph, random_graphs, report, write_cli_fixtures

pytestmark = pytest.mark.acceptance

FIXED_KINDS = [(Kind.C4, "c4"), (Kind.EVEN_HOLE, "even_hole"), (Kind.THETA, "theta"),
               (Kind.PRISM, "prism"), (Kind.PYRAMID, "pyramid")]


def class_c_graphs(max_n):
    return [g for n in range(1, max_n + 1) for g in all_graphs(n) if class_membership(g).in_class]


def class_c_samples(ns, seeds, params=None):
    out = []
    for n in ns:
        for seed in seeds:
            out.append(generate(GeneratorSpec("random_gnp_filtered_C", n, seed, dict(params or {}))).graph)
    return out


def nonadjacent_pairs(g):
    return [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if not g.has_edge(a, b)]


def proper_wheels(g):
    for hole in all_holes(g, None):
        hs = set(hole)
        for x in range(g.n):
            if x in hs:
                continue
            cert = wheel_certificate(g, hole, x)
            if len(cert.roles["spokes"]) >= 3 and wheel_flags(cert).is_proper:
                yield cert


# -- 1 ---------------------------------------------------------------------------------

def _detector_disagreements(g):
    bad = []
    rep = analyze(g)
    for kind, attr in FIXED_KINDS:
        det = find_structure(g, kind)
        got = det.certificate.vertices if det.certificate else None
        if got != getattr(rep, attr) or det.status is Status.INDETERMINATE:
            bad.append(kind.value)
        if det.certificate and validate_certificate(g, det.certificate):
            bad.append(f"{kind.value} certificate")
    for even, attr in ((False, "wheel"), (True, "even_wheel")):
        det = find_structure(g, Kind.WHEEL, even_only=even)
        got = (det.certificate.vertices, det.certificate.roles["center"]) if det.certificate else None
        if got != getattr(rep, attr):
            bad.append(attr)
        if det.certificate and validate_certificate(g, det.certificate):
            bad.append(f"{attr} certificate")
    hr = hubs(g)
    if not hr.complete or {x: hr.witnesses[x].vertices for x in hr.hubs} != rep.hubs:
        bad.append("hubs")
    for x in hr.hubs:
        if validate_certificate(g, hr.witnesses[x]) or not wheel_flags(hr.witnesses[x]).is_proper:
            bad.append("hub witness")
    for t in (None, 3, 4):
        if class_membership(g, t).verdict != rep.membership(t):
            bad.append(f"membership t={t}")
    return bad


def test_detector_oracle_equivalence():
    checked = 0
    failures = []
    for n in range(0, 9):
        graphs = all_graphs(n)
        assert len(graphs) == GRAPH_COUNTS[n]
        for g in graphs:
            bad = _detector_disagreements(g)
            if bad:
                failures.append((g.edges, bad))
            checked += 1
    exhaustive = checked
    for g in random_graphs(20240, 10_000, 1, 12):
        bad = _detector_disagreements(g)
        if bad:
            failures.append((g.edges, bad))
        checked += 1
    report("detector oracle equivalence", not failures,
           f"{exhaustive} isomorphism classes n<=8 + {checked - exhaustive} random n<=12, "
           f"{len(failures)} disagreements")
    assert not failures, failures[:5]


# -- 2 ---------------------------------------------------------------------------------

def test_menger_duality():
    rng = random.Random(7)
    done = 0
    failures = []
    while done < 10_000:
        g = random_graph(rng, rng.randint(2, 12), rng.choice([0.15, 0.25, 0.35, 0.5, 0.7]))
        pairs = nonadjacent_pairs(g)
        if not pairs:
            continue
        a, b = rng.choice(pairs)
        ban = max_banana(g, a, b)
        sep = min_separator(g, a, b)
        # k disjoint paths certify >= k, a separator of size k certifies <= k
        if not (ban.is_valid(g) and ban.k == len(sep) and separates(g, sep, a, b) and a not in sep
                and b not in sep):
            failures.append((g.edges, a, b))
        done += 1
    report("Menger duality", not failures, f"{done} random (g, a, b), {len(failures)} failures")
    assert not failures, failures[:5]


# -- 3 ---------------------------------------------------------------------------------

def test_atomic_is_lean_and_tight():
    graphs = class_c_graphs(8)
    failures = []
    runs = 0
    for g in graphs:
        for k in (1, 2, 3):
            td = atomic_td(g, k).td
            runs += 1
            if not (validate_td(g, td).valid and td.adhesion_size < k and is_k_lean(g, td, k).lean
                    and is_tight(g, td).tight):
                failures.append((g.edges, k))
    report("atomic decompositions are lean and tight", not failures,
           f"all {len(graphs)} class-C isomorphism classes n<=8, k in 1..3, {runs} decompositions, "
           f"{len(failures)} failures")
    assert not failures, failures[:5]


# -- 4 ---------------------------------------------------------------------------------

def test_basket_pairs_on_theta_free():
    instances = pairs = 0
    failures = []
    seed = 0
    while instances < 600:
        n = 4 + seed % 6  # 4..9: exhaustive atomic decompositions
        gen = generate(GeneratorSpec("theta_free_random", n, seed))
        seed += 1
        g = gen.graph
        if find_structure(g, Kind.THETA).status is not Status.ABSENT:
            failures.append(("generator", g.edges))
            continue
        k = 1 + seed % 3
        td = atomic_td(g, k).td
        instances += 1
        for a, b in nonadjacent_pairs(g):
            res = basket_pair(g, td, a, b)
            pairs += 1
            if not (res.found and verify_basket(g, td, a, b, res.t1, res.t2)):
                failures.append((g.edges, k, a, b))
    report("basket pairs on theta-free graphs", not failures,
           f"{instances} theta-free instances n in 4..9 with exhaustive atomic decompositions, "
           f"{pairs} non-adjacent pairs, {len(failures)} failures")
    assert not failures, failures[:5]


# -- 5 and 6 ------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def wheel_hosts():
    hosts = [g for g in class_c_graphs(8) if hubs(g).hubs]
    for bias in (0.6, 0.9):
        hosts += class_c_samples(range(9, 17), range(30), {"hub_bias": bias})
    return hosts


def test_wheel_star_cutset(wheel_hosts):
    wheels = 0
    failures = []
    for g in wheel_hosts:
        for cert in proper_wheels(g):
            ok, comp = wheel_star_cutset_check(g, cert)
            wheels += 1
            if not ok:
                failures.append((g.edges, cert.roles, comp))
    ok = not failures and wheels >= 200
    report("proper wheels: no component of G - N[x] dominates H", ok,
           f"{wheels} proper wheels in {len(wheel_hosts)} class-C hosts, {len(failures)} failures")
    assert ok, failures[:5]


def test_wheel_forcer_cutsets(wheel_hosts):
    wheels = calls = 0
    failures = []
    for g in wheel_hosts:
        for cert in proper_wheels(g):
            if wheel_flags(cert).is_universal:
                continue
            wheels += 1
            for sec in sectors(cert):
                if not sec.long:
                    continue
                calls += 1
                try:
                    res = wheel_forcer_cutset(g, cert, sec.path)
                except InputError as exc:
                    failures.append((g.edges, cert.roles, sec.path, str(exc)))
                    continue
                if not res.separates:
                    failures.append((g.edges, cert.roles, sec.path, res.finding))
    ok = not failures and wheels > 0
    report("forcer cutsets for proper non-universal wheels", ok,
           f"{wheels} wheels, {calls} long sectors, {len(failures)} failures")
    assert ok, failures[:5]


# -- 7 ---------------------------------------------------------------------------------

def pyramid_certificate(g, verts, apex):
    vs = set(verts)
    base = next(t for t in itertools.combinations(sorted(vs - {apex}), 3)
                if all(g.has_edge(u, v) for u, v in itertools.combinations(t, 2)))
    paths = []
    for b in base:
        allowed = vs - (set(base) - {b})
        prev = {apex: None}
        q = deque([apex])
        while q:
            u = q.popleft()
            for v in g.adj(u):
                if v in allowed and v not in prev:
                    prev[v] = u
                    q.append(v)
        path = [b]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        paths.append(tuple(reversed(path)))
    return make_certificate(Kind.PYRAMID, {"apex": apex, "base": base, "paths": tuple(paths)})


def induced_paths_between(g, cores):
    """Every induced path (as a tuple, listed once) with ends in two different cores."""
    which = {v: i for i, core in enumerate(cores) for v in core}
    out = []

    def extend(path, inner_closed):
        last = path[-1]
        for u in g.adj(last):
            if u in path or (inner_closed >> u) & 1:
                continue
            new = path + [u]
            if u in which and which[u] != which[path[0]] and path[0] < u:
                out.append(tuple(new))
            extend(new, inner_closed | g.closed_mask(last))

    for s in which:
        extend([s], 0)
    return out


def pyramid_graph(legs):
    """Apex 0 joined to a base triangle by paths with the given edge counts."""
    edges, ends, n = [], [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev, n = n, n + 1
        ends.append(prev)
    return Graph(n, edges + list(itertools.combinations(ends, 2)))


def grow_in_class(rng, g, target, p=0.25, tries=200):
    """Attach random vertices one at a time, keeping only connected class-C extensions."""
    for _ in range(tries):
        if g.n >= target:
            break
        h = Graph(g.n + 1, list(g.edges) + [(v, g.n) for v in range(g.n) if rng.random() < p])
        if len(component_masks(h, h.full_mask)) == 1 and class_membership(h).in_class:
            g = h
    return g


def pyramid_hosts(rng, per_shape=6, max_n=12):
    hosts = []
    for legs in itertools.combinations_with_replacement(range(1, 5), 3):
        base = pyramid_graph(legs)
        if base.n > max_n or not class_membership(base).in_class:
            continue
        hosts += [grow_in_class(rng, base, max_n) for _ in range(per_shape)]
    return hosts


def test_pyramid_paths():
    # plain samples rarely contain pyramids, so most hosts are grown around one
    hosts = pyramid_hosts(random.Random(12))
    hosts += class_c_samples(range(7, 13), range(15))
    hosts += [g for g in class_c_graphs(8) if g.n >= 7]
    pyramids = paths = 0
    failures = []
    for g in hosts:
        for verts, apex in analyze(g).pyramid_sets:
            cert = pyramid_certificate(g, verts, apex)
            if validate_certificate(g, cert):
                failures.append(("certificate", g.edges, verts))
                continue
            pyramids += 1
            for p in induced_paths_between(g, [set(c) for c in pyramid_legs_core(cert)]):
                paths += 1
                if not pyramid_neighborhood_check(g, cert, p):
                    failures.append((g.edges, verts, p))
    ok = not failures and paths > 0
    report("pyramid paths see the apex or the base", ok,
           f"{pyramids} pyramids in {len(hosts)} class-C hosts n<=12, {paths} induced paths, "
           f"{len(failures)} failures")
    assert ok, failures[:5]


# -- 8 ---------------------------------------------------------------------------------

def test_gyarfas_paths():
    rng = random.Random(8)
    done = adversarial = 0
    failures = []
    while done < 1500:
        g = random_graph(rng, rng.randint(1, 16), rng.choice([0.1, 0.2, 0.3, 0.5]))
        if len(component_masks(g, g.full_mask)) != 1:
            continue
        choice = done % 3
        if choice == 0:
            w = WeightFunction.uniform(g.n)
        elif choice == 1:
            w = WeightFunction.from_mapping(g.n, {v: rng.randint(0, 9) for v in range(g.n)} | {0: 1},
                                            normalize=True)
        else:
            w = WeightFunction.point(g.n, rng.randrange(g.n))
            adversarial += 1
        start = rng.randrange(g.n)
        p = gyarfas_path(g, w, start)
        closed = 0
        for v in p:
            closed |= g.closed_mask(v)
        ok = is_balanced_separator(g, w, list(bits(closed))).balanced
        ok &= len(p) <= 1 or all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))
        ok &= all(not g.has_edge(p[i], p[j]) for i in range(len(p)) for j in range(i + 2, len(p)))
        if not ok:
            failures.append((g.edges, w.weights, start, p))
        done += 1
    report("Gyarfas path separators", not failures,
           f"{done} (graph, weight) instances, {adversarial} with all mass on one vertex, "
           f"{len(failures)} failures")
    assert not failures, failures[:5]


# -- 9 ---------------------------------------------------------------------------------

def exhaustive_oracle(g):
    def oracle(w):
        for r in range(g.n + 1):
            for x in itertools.combinations(range(g.n), r):
                if is_balanced_separator(g, w, x).balanced:
                    return x
    return oracle


def centroid_oracle(g):
    def oracle(w):
        return next((v,) for v in range(g.n) if is_balanced_separator(g, w, (v,)).balanced)
    return oracle


def antipodal_oracle(g):
    n = g.n

    def oracle(w):
        return next((v, (v + n // 2) % n) for v in range(n)
                    if is_balanced_separator(g, w, (v, (v + n // 2) % n)).balanced)
    return oracle


def _smallest_k_run(g, make_oracle, c):
    """Smallest k for which the oracle meets its size promise on every query, and that run."""
    for k in range(1, g.n + 1):
        try:
            return td_from_balanced_separators(g, make_oracle(g), c, k), k
        except OracleFailure:
            continue
    raise AssertionError("even k = n failed")  # pragma: no cover


def test_balanced_separators_to_decompositions():
    import networkx as nx

    runs = calls = 0
    failures = []

    def check(g, res, k, label):
        nonlocal runs, calls
        runs += 1
        calls += len(res.audit)
        if not (validate_td(g, res.td).valid and res.td.width <= res.bound and all(a.ok for a in res.audit)):
            failures.append((label, g.edges, k))

    rng = random.Random(9)
    for n in range(2, 41):
        for _ in range(3):
            t = nx.random_labeled_tree(n, seed=rng.randrange(10**6))
            g = Graph(n, list(t.edges))
            for c in (Fraction(1, 2), Fraction(2, 3)):
                res = td_from_balanced_separators(g, centroid_oracle(g), c, 1)
                check(g, res, 1, f"tree c={c}")
    for n in range(4, 25):
        g = cycle_graph(n)
        check(g, td_from_balanced_separators(g, antipodal_oracle(g), Fraction(1, 2), 2), 2, "cycle antipodal")
        res, k = _smallest_k_run(g, exhaustive_oracle, Fraction(1, 2))
        check(g, res, k, "cycle exhaustive")
    for r in range(1, 6):
        for c_ in range(r, 6):
            g = grid_graph(r, c_)
            for c in (Fraction(1, 2), Fraction(2, 3), Fraction(1, 3)):
                res, k = _smallest_k_run(g, exhaustive_oracle, c)
                check(g, res, k, f"grid {r}x{c_} c={c}")
    report("balanced separators to tree decompositions", not failures,
           f"{runs} constructions on trees, cycles and grids up to 5x5, {calls} audited oracle calls, "
           f"{len(failures)} failures")
    assert not failures, failures[:5]


# -- 10 --------------------------------------------------------------------------------

def has_banana(g, L):
    return any(max_banana(g, a, b).k >= L for a, b in nonadjacent_pairs(g))


def lean_tight_td(g, L):
    mode = "exhaustive" if g.n <= 9 else "heuristic"
    td = atomic_td(g, 3 * L, mode).td
    if is_tight(g, td).tight and is_k_lean(g, td, 3 * L).lean:
        return td, mode
    return None, None


def test_separator_shrinking():
    rng = random.Random(10)
    hosts = class_c_samples(range(5, 13), range(4))
    hosts += [generate(GeneratorSpec("theta_free_random", n, s)).graph for n in (6, 8, 10, 12) for s in range(3)]
    hosts += [generate(GeneratorSpec("chordal_random", n, s, {"max_clique": 4})).graph
              for n in (6, 9, 12) for s in range(3)]
    runs = skipped = clique_checks = 0
    failures = []
    for g in hosts:
        for L in (1, 2):
            td, mode = lean_tight_td(g, L)
            if td is None:
                skipped += 1
                continue
            no_banana = not has_banana(g, L)
            weights = [WeightFunction.uniform(g.n),
                       WeightFunction.from_mapping(g.n, {v: rng.randint(0, 5) for v in range(g.n)} | {0: 1},
                                                   normalize=True)]
            for w in weights:
                t0 = center(g, td, w)
                kk = friendly_vertices(g, td, t0, 3 * L)
                km = to_mask(kk)
                rest = [v for v in range(g.n) if not (km >> v) & 1]
                xs = [()] + [(v,) for v in rest] + list(itertools.combinations(rest, 2))
                xs = [x for x in xs if is_balanced_separator(
                    g, w, list(bits(km | to_mask(x) | g.nbr_mask(to_mask(x))))).balanced]
                for x in rng.sample(xs, min(len(xs), 12)):
                    res = shrink_separator(g, td, w, x, L, check_lean=False)
                    runs += 1
                    ok = res.balanced and res.extra <= 3 * L * len(x) and res.k_set == kk
                    ok &= all(len(d) <= 3 * L for d in res.deltas.values())
                    if no_banana:
                        clique_checks += 1
                        ok &= res.k_is_clique and is_clique(g, kk)
                    if not ok:
                        failures.append((g.edges, L, mode, x, res.to_json()))
    ok = not failures and runs > 0
    report("separator shrinking", ok,
           f"{runs} runs on {len(hosts)} hosts n<=12, L in 1..2 ({skipped} host/L pairs without a lean "
           f"tight decomposition skipped), K a clique in all {clique_checks} runs without an L-banana, "
           f"{len(failures)} failures")
    assert ok, failures[:3]


# -- 11 --------------------------------------------------------------------------------

FIVE = [Problem.STABLE_SET, Problem.VERTEX_COVER, Problem.FEEDBACK_VERTEX_SET, Problem.DOMINATING_SET,
        Problem.COLORING]


def test_solver_equivalence():
    instances = 0
    failures = []
    for g in random_graphs(1111, 1000, 1, 14):
        td = td_from_order(g, min_fill_order(g))
        for p in FIVE:
            inst = ProblemInstance(g, p)
            a = solve_on_td(inst, td)
            b = brute_force(inst)
            if a.value != b.value or not check_solution(inst, a):
                failures.append((p.value, g.edges, a.value, b.value))
        instances += 1
    approx = 0
    for g in class_c_samples(range(6, 17, 2), range(5)):
        vc = brute_force(ProblemInstance(g, Problem.VERTEX_COVER)).value
        alpha = brute_force(ProblemInstance(g, Problem.STABLE_SET)).value
        for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
            if ptas_vertex_cover(g, eps).value > (1 + eps) * vc:
                failures.append(("ptas", g.edges, eps))
            for d in (1, 2, 3):
                if qptas_stable_set(g, eps, d=d).value < (1 - eps) * alpha:
                    failures.append(("qptas", g.edges, eps, d))
                approx += 1
    report("solver equivalence and approximation bounds", not failures,
           f"{instances} random graphs n<=14 x 5 problems against brute force, {approx} PTAS/QPTAS runs on "
           f"class-C samples n<=16, {len(failures)} violations")
    assert not failures, failures[:5]


# -- 12 --------------------------------------------------------------------------------

def test_empirical_curves():
    rep = experiment_logtw("random_gnp_filtered_Ct", list(range(8, 19)), [0, 1, 2], t=3)
    fit = rep["aggregate"]["tw_vs_log2n"]
    exact = all(r["tw_exact"] and r["verdict"] == "IN_C_3" for r in rep["records"])
    ban = experiment_banana("random_gnp_filtered_Ct", list(range(8, 19)), [0, 1, 2], t=3)
    bfit = ban["aggregate"]["banana_vs_log2n"]
    chordal = experiment_logtw("chordal_random", list(range(8, 19)), [0, 1, 2])
    anchor_bad = [r for r in chordal["records"] if r["tw"] != r["clique_number"] - 1]
    ok = math.isfinite(fit["slope"]) and exact and math.isfinite(bfit["slope"]) and not anchor_bad
    report("empirical curves", ok,
           f"tw vs log2 n on filtered C_3, n=8..18: slope {fit['slope']:.3f} (95% band {fit['band95'][0]:.3f}.."
           f"{fit['band95'][1]:.3f}); max banana vs log2 n slope {bfit['slope']:.3f}; chordal anchor "
           f"tw = omega-1 on {len(chordal['records'])} graphs, {len(anchor_bad)} failures")
    assert ok


# -- 13 --------------------------------------------------------------------------------

def _strip_timing(raw):
    doc = json.loads(raw)
    doc.pop("timing")
    return json.dumps(doc, indent=2).encode()


def test_cli_determinism(tmp_path, capsys):
    files = write_cli_fixtures(tmp_path)
    mismatches = []
    cases = cli_cases(files)
    for argv in cases:
        outs = []
        for _ in range(2):
            code = cli_main(argv)
            doc = json.loads(capsys.readouterr().out)
            doc.pop("timing")
            outs.append((code, json.dumps(doc, sort_keys=True)))
        if outs[0] != outs[1] or outs[0][0] != 0:
            mismatches.append(argv)
    for argv in cases:
        outs = [_strip_timing(subprocess.run([sys.executable, "-m", "ehtw", *argv], capture_output=True).stdout)
                for _ in range(2)]
        if outs[0] != outs[1]:
            mismatches.append(["subprocess", *argv])
    report("CLI determinism", not mismatches,
           f"{len(cases)} invocations covering every subcommand, each run twice in-process and twice as a "
           f"subprocess, byte-identical outside 'timing', {len(mismatches)} mismatches")
    assert not mismatches, mismatches
