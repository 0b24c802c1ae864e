import json
import math

import pytest

from ehtw.connectivity import max_banana
from ehtw.errors import InputError
from ehtw.experiments import CAVEAT, experiment_banana, experiment_logtw, fit_line, rational
from ehtw.generators import FAMILIES, LIBRARY, GeneratorSpec, RejectionExhausted, generate
from ehtw.graph import clique_number
from ehtw.structures import Kind, Status, find_structure
from ehtw.treewidth import treewidth_exact


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_cycles_in_class():
    gen = generate(GeneratorSpec("cycles", 7))
    assert gen.graph.m == 7 and gen.membership.verdict == "IN_C"
    with pytest.raises(InputError):
        generate(GeneratorSpec("cycles", 2))


def test_chordal_sample():
    gen = generate(GeneratorSpec("chordal_random", 15, 1))
    assert gen.graph.n == 15 and gen.membership.in_class
    # chordal: treewidth is the clique number minus one
    assert treewidth_exact(gen.graph).width == clique_number(gen.graph).size - 1


@pytest.mark.parametrize("family,params", [
    ("random_gnp_filtered_C", {}),
    ("random_gnp_filtered_C", {"hub_bias": 0.5}),
    ("random_gnp_filtered_Ct", {"t": 3}),
    ("random_gnp_filtered_C", {"method": "gnp"}),
    ("theta_free_random", {}),
    ("chordal_random", {}),
])
def test_determinism_and_filter(family, params):
    a = generate(GeneratorSpec(family, 10, 4, params))
    b = generate(GeneratorSpec(family, 10, 4, params))
    assert a.graph == b.graph
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    if family == "theta_free_random":
        assert find_structure(a.graph, Kind.THETA).status is Status.ABSENT
    else:
        assert a.membership.in_class
    if family == "random_gnp_filtered_Ct":
        assert clique_number(a.graph).size < 3
    assert generate(GeneratorSpec(family, 10, 5, params)).graph != a.graph or family == "chordal_random"


def test_library():
    for name in LIBRARY:
        gen = generate(GeneratorSpec("handcrafted_library", 0, 0, {"name": name}))
        assert gen.graph.n > 0
    assert not generate(GeneratorSpec("handcrafted_library", 0, 0, {"name": "k23"})).membership.in_class
    assert generate(GeneratorSpec("handcrafted_library", 0, 0, {"name": "w5"})).membership.in_class
    # spokes at distance two close a C4 with the center
    assert not generate(GeneratorSpec("handcrafted_library", 0, 0, {"name": "c6_hub"})).membership.in_class
    with pytest.raises(InputError):
        generate(GeneratorSpec("handcrafted_library", 0, 0, {"name": "nope"}))


def test_bad_specs():
    with pytest.raises(InputError):
        GeneratorSpec("erdos", 5)
    with pytest.raises(InputError):
        generate(GeneratorSpec("random_gnp_filtered_Ct", 5))
    assert "cycles" in FAMILIES


def test_rejection_is_reported():
    # a triangle-free target with dense proposals and almost no retries cannot grow
    spec = GeneratorSpec("random_gnp_filtered_Ct", 12, 0, {"t": 2, "p": 0.9, "max_attempts": 3})
    with pytest.raises(RejectionExhausted) as exc:
        generate(spec)
    assert exc.value.stats["attempts"] == 3


def test_anchors_trees_and_cycles():
    for seed in range(5):
        tree = generate(GeneratorSpec("chordal_random", 12, seed, {"max_clique": 2})).graph
        assert treewidth_exact(tree).width == 1
        for a in range(tree.n):
            for b in range(a + 1, tree.n):
                if not tree.has_edge(a, b):
                    assert max_banana(tree, a, b).k == 1
    for n in range(4, 12):
        g = generate(GeneratorSpec("cycles", n)).graph
        assert treewidth_exact(g).width == 2
        assert max_banana(g, 0, 2).k == 2


def test_fit_line():
    fit = fit_line([1, 2, 3, 4], [2, 4, 6, 8])
    assert fit["slope"] == 2 and fit["intercept"] == 0 and fit["stderr"] == 0
    assert fit_line([1, 1], [0, 1]) is None
    assert rational(0.5) == {"num": 1, "den": 2}


def test_logtw_report():
    rep = experiment_logtw("random_gnp_filtered_Ct", [8, 10, 12], [0, 1], t=3)
    assert rep["schema"] == 1 and rep["caveat"] == CAVEAT
    assert len(rep["records"]) == 6
    assert all(r["tw_exact"] and r["verdict"] == "IN_C_3" for r in rep["records"])
    fit = rep["aggregate"]["tw_vs_log2n"]
    assert math.isfinite(fit["slope"])
    again = experiment_logtw("random_gnp_filtered_Ct", [8, 10, 12], [0, 1], t=3)
    assert json.dumps(strip_timing(rep), sort_keys=True) == json.dumps(strip_timing(again), sort_keys=True)
    json.dumps(rep)


def test_chordal_anchor_in_experiment():
    rep = experiment_logtw("chordal_random", [8, 12], [0, 1, 2])
    for r in rep["records"]:
        assert r["tw"] == r["clique_number"] - 1


def test_banana_report():
    rep = experiment_banana("cycles", [5, 8, 11], [0], pair_samples=5)
    assert [r["max_banana"] for r in rep["records"]] == [2, 2, 2]
    assert rep["aggregate"]["banana_vs_log2n"]["slope"] == 0
    rep = experiment_banana("chordal_random", [10], [0, 1], pair_samples=100, params={"max_clique": 2})
    assert all(r["max_banana"] == 1 for r in rep["records"])
