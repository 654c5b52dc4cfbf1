import itertools
import json

import pytest

import hsp


def triangle():
    return hsp.Graph([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], node_count=4)


def brute_force(g, k):
    best = -1.0
    for subset in itertools.combinations(range(g.node_count), k):
        total = sum(g.weight(u, v) for u, v in itertools.combinations(subset, 2))
        best = max(best, total)
    return best


def test_graph_basics():
    g = triangle()
    assert g.node_count == 4
    assert g.edge_count == 3
    assert g.strength(0) == 2.0
    assert g.strength(3) == 0.0
    assert g.edges() == [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]
    assert hsp.objective(g, [0, 1, 2]) == 3.0
    agg = hsp.Graph([(0, 1, 1.0), (1, 0, 2.0)], aggregate=True)
    assert agg.weight(0, 1) == 3.0


def test_graph_validation():
    with pytest.raises(hsp.ValidationError):
        hsp.Graph([(0, 1, -1.0)])
    with pytest.raises(ValueError):
        hsp.Graph([(2, 2, 1.0)])
    with pytest.raises(ValueError):
        hsp.threshold_edges(triangle(), 0.0)


def test_solvers_match_exact_on_small_graph():
    g = hsp.gnp_weighted(14, 0.4, a=1.0, b=9.0, seed=3)
    best = hsp.exact(g, 5)
    assert best.best_objective == pytest.approx(brute_force(g, 5), rel=1e-9)
    for solve in (hsp.ovns, hsp.bvns):
        r = solve(g, 5, seed=1, iterations=2000)
        assert len(r.best_set) == 5
        assert r.best_set == sorted(r.best_set)
        assert r.best_objective == pytest.approx(best.best_objective, rel=1e-9)
        assert r.trace[0][0] == 0
        assert hsp.local_opt_check(g, r.best_set) is None


def test_solver_determinism_and_overrides():
    g = hsp.bbv(300, m=2, seed=5)
    a = hsp.ovns(g, 20, seed=9, iterations=300, q=0.5, search="best")
    b = hsp.ovns(g, 20, seed=9, iterations=300, q=0.5, search="best")
    assert a.best_set == b.best_set
    assert a.iterations == 300
    with pytest.raises(TypeError):
        hsp.ovns(g, 20, iterations=10, colour="red")
    with pytest.raises(ValueError):
        hsp.bvns(g, 301, iterations=10)


def test_exact_limit():
    g = hsp.bbv(40, seed=1)
    with pytest.raises(hsp.TooLargeError):
        hsp.exact(g, 20, limit=1000)


def test_local_opt_witness():
    g = hsp.Graph([(0, 1, 1.0), (1, 2, 5.0), (0, 3, 0.5)])
    assert hsp.local_opt_check(g, [0, 2]) == (0, 1, 5.0)


def test_generators():
    g = hsp.mdp_gaussian(20, mu=7.0, sigma=0.0, seed=2)
    assert g.edge_count == 190
    assert all(w == 7.0 for _, _, w in g.edges())
    b = hsp.bbv(1000, m=2, delta=0.0, seed=4)
    assert b.edge_count == 3 + 2 * 997
    assert hsp.bbv(200, seed=8) == hsp.bbv(200, seed=8)
    p = hsp.gnp_weighted(50, 0.2, weights="pareto", alpha=1.5, seed=1)
    assert all(w >= 1.0 for _, _, w in p.edges())
    assert hsp.threshold_edges(p, 1.0) == p
    assert hsp.drop_heuristic(p, 5) == sorted(hsp.drop_heuristic(p, 5))


def test_io_round_trip(tmp_path):
    g = hsp.gnp_weighted(30, 0.3, a=0.1, b=3.0, seed=6)
    path = tmp_path / "g.txt"
    hsp.write_matrix(path, g, 4)
    back, labels, k = hsp.read_instance(path)
    assert back == g
    assert k == 4
    assert labels[0] == "0"

    edges = tmp_path / "e.edges"
    edges.write_text("# comment\nalpha beta 1.5\nbeta gamma 2\n")
    h, labels, k = hsp.read_instance(edges)
    assert labels == ["alpha", "beta", "gamma"]
    assert k is None
    assert h.weight(0, 1) == 1.5

    bad = tmp_path / "bad.edges"
    bad.write_text("a b 1\na b\n")
    with pytest.raises(hsp.ParseError, match="2"):
        hsp.read_instance(bad)


def test_bench_arithmetic(tmp_path):
    assert hsp.relative_deviation(100.0, 95.0) == 5.0
    assert hsp.rank_pool([10.0, 5.0, 7.0]) == [1.0, 3.0, 2.0]
    assert hsp.rank_pool([4.0, 4.0]) == [1.5, 1.5]

    config = tmp_path / "c.json"
    config.write_text(json.dumps({
        "instances": [{"id": "g", "generate": {"family": "bbv", "n": 60, "seed": 1}}],
        "algorithms": [{"solver": "ovns"}, {"solver": "bvns"}],
        "k_values": [5],
        "runs_per_cell": 2,
        "budget": {"iterations": 30},
    }))
    out = hsp.run_bench(config, tmp_path / "out")
    assert [s["algorithm"] for s in out["summaries"]] == ["ovns", "bvns"]
    assert all(s["runs"] == 2 for s in out["summaries"])
    assert (tmp_path / "out" / "bench.csv").read_text() == out["csv"]
    assert len((tmp_path / "out" / "runs.jsonl").read_text().splitlines()) == 4
