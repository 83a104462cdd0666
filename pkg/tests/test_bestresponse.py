import numpy as np
import pytest

from lkncg.bestresponse import (
    ViewTooLarge,
    best_response,
    best_response_max,
    best_response_sum,
    verify_lke,
)
from lkncg.constructions import build_cycle
from lkncg.domset import DominatingInstance, min_dominating_set
from lkncg.game import GameConfig, Finite, delta
from lkncg.graph import OwnedGraph, graph_power, view

from oracles import bfs, brute_force_argbest, current_cost, random_owned_graph, switched


def hanging_star(owner_u=True):
    """u=0 attached to c=1, which has leaves 2, 3, 4."""
    first = (0, 1) if owner_u else (1, 0)
    return OwnedGraph(5, [first, (2, 1), (3, 1), (4, 1)])


def leaf_star(n):
    return OwnedGraph(n, [(i, 0) for i in range(1, n)])


# -- Max ---------------------------------------------------------------------------


def test_max_cheap_edges_buy_everything():
    br = best_response_max(view(hanging_star(), 0, 2), GameConfig("max", 0.1, 2))
    assert br.strategy == {1, 2, 3, 4}
    assert br.cost == pytest.approx(1.4)
    assert br.delta_vs_current == pytest.approx(1.4 - 2.1)


def test_max_expensive_edges_keep_centre():
    br = best_response_max(view(hanging_star(), 0, 2), GameConfig("max", 2, 2))
    assert br.strategy == {1}
    assert br.cost == 4
    assert br.delta_vs_current == 0


@pytest.mark.parametrize("alpha", [0.2, 1, 7])
def test_max_single_neighbour(alpha):
    g = OwnedGraph(2, [(0, 1)])
    br = best_response_max(view(g, 0, 3), GameConfig("max", alpha, 3))
    assert br.strategy == {1}
    assert br.cost == pytest.approx(alpha + 1)


def test_max_in_neighbour_gives_free_edge():
    g = OwnedGraph(2, [(1, 0)])
    br = best_response_max(view(g, 0, 2), GameConfig("max", 1, 2))
    assert br.strategy == frozenset() and br.cost == 1


def test_variant_guard():
    v = view(hanging_star(), 0, 2)
    with pytest.raises(ValueError):
        best_response_max(v, GameConfig("sum", 1, 2))
    with pytest.raises(ValueError):
        best_response_sum(v, GameConfig("max", 1, 2))


# -- Sum ---------------------------------------------------------------------------


def test_sum_leaf_keeps_centre():
    br = best_response_sum(view(leaf_star(5), 1, 2), GameConfig("sum", 3, 2))
    assert br.strategy == {0}
    assert br.delta_vs_current == 0


def test_sum_path_buys_both():
    g = OwnedGraph(3, [(0, 1), (1, 2)])
    br = best_response_sum(view(g, 0, 2), GameConfig("sum", 0.5, 2))
    assert br.strategy == {1, 2}
    assert br.cost == 3.0 and type(br.cost) is float


def test_sum_frontier_constraint_excludes_strategy():
    # dropping (0,1) would cost less on the view but pushes frontier vertex 2 to distance 3
    g = OwnedGraph(5, [(0, 1), (1, 2), (3, 0), (3, 4), (4, 2)])
    br = best_response_sum(view(g, 0, 2), GameConfig("sum", 10, 2))
    assert br.strategy == {1}


def test_sum_cap_and_fallback():
    g = build_cycle(40)
    v = view(g, 0, 10)
    cfg = GameConfig("sum", 0.5, 10)
    with pytest.raises(ViewTooLarge):
        best_response_sum(v, cfg)
    br = best_response_sum(v, cfg, fallback=True)
    assert not br.exact
    assert br.delta_vs_current < 0
    out = delta(v, br.strategy, cfg)
    assert isinstance(out, Finite) and out.value == pytest.approx(br.delta_vs_current)
    assert best_response(view(g, 0, 3), GameConfig("sum", 1, 3), sum_cap=7).exact
    with pytest.raises(ViewTooLarge):
        best_response(view(g, 0, 3), GameConfig("sum", 1, 3), sum_cap=6)


# -- oracle equivalence ------------------------------------------------------------


def sample_views(seed, count, max_view):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        g = random_owned_graph(rng, int(rng.integers(2, 16)), float(rng.uniform(0.05, 0.35)))
        u = int(rng.integers(0, g.n))
        k = int(rng.integers(1, 5))
        v = view(g, u, k)
        if 2 <= len(v) <= max_view:
            out.append((v, float(rng.choice([0.25, 0.5, 1.0, 1.5, 2.0, 3.5]))))
    return out


@pytest.mark.parametrize("variant", ["max", "sum"])
def test_matches_brute_force_including_ties(variant):
    for v, alpha in sample_views(7 if variant == "max" else 8, 80, 10):
        cfg = GameConfig(variant, alpha, v.k)
        br = best_response(v, cfg)
        cost, canon = brute_force_argbest(v, variant, alpha)
        assert br.cost == pytest.approx(cost, abs=1e-9)
        assert br.strategy == canon
        assert br.delta_vs_current == pytest.approx(cost - current_cost(v, variant, alpha), abs=1e-9)


def test_max_reduction_soundness():
    """Any forced dominating set of the (h-1)-th power keeps the eccentricity at most h."""
    for v, _ in sample_views(21, 60, 12):
        u = v.center
        rest = {x: v.adj[x] - {u} for x in v.dist if x != u}
        in_nbrs = v.adj[u] - v.owned[u]
        for h in range(1, len(v)):
            s = min_dominating_set(DominatingInstance(graph_power(rest, h - 1), in_nbrs))
            adj = switched(v.adj, v.owned, u, s - in_nbrs)
            assert max(bfs(adj, u).values()) <= h


# -- verification ------------------------------------------------------------------


def test_cycle_equilibrium():
    assert verify_lke(build_cycle(10), GameConfig("max", 2, 2)).equilibrium


def test_cycle_cheap_chord_witness():
    verdict = verify_lke(build_cycle(10), GameConfig("max", 0.5, 3))
    assert not verdict.equilibrium
    w = verdict.witness
    assert w.player == 0 and w.delta < 0
    assert len(w.strategy) >= 2  # keeps a path and adds a chord
    rec = w.as_record()
    assert rec["endpoints"] == sorted(w.strategy)


@pytest.mark.parametrize("alpha", [1.01, 1.5, 3, 20])
@pytest.mark.parametrize("n", [3, 6, 9])
def test_leaf_owned_star_is_equilibrium(alpha, n):
    for k in (1, 2, 3):
        assert verify_lke(leaf_star(n), GameConfig("max", alpha, k)).equilibrium


def test_verify_restricted_players():
    g = build_cycle(10)
    assert verify_lke(g, GameConfig("max", 0.5, 3), players=[]).equilibrium
    assert verify_lke(g, GameConfig("max", 0.5, 3), players=[4]).witness.player == 4
