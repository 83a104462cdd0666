from collections import Counter

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from lkncg.bestresponse import verify_lke
from lkncg.constructions import (
    ParamError,
    TorusParams,
    build_cycle,
    build_open_torus,
    build_torus,
    f_set,
    heawood,
    is_intersection,
    sum_torus_params,
    torus_distance_bound,
    torus_params_for,
)
from lkncg.game import GameConfig
from lkncg.graph import bfs_distances, diameter, girth, is_connected, view

SMALL = TorusParams(d=2, ell=2, delta=(3, 4))


def nxgraph(edges):
    return nx.Graph([(a, b) for a, b, _ in edges])


def test_cycle_ownership():
    c = build_cycle(3)
    assert c.edges() == [(0, 1, 0), (0, 2, 2), (1, 2, 1)]
    c10 = build_cycle(10)
    assert all(len(c10.strategy(u)) == 1 for u in range(10))
    with pytest.raises(ParamError):
        build_cycle(2)


@pytest.mark.parametrize(
    "params",
    [SMALL, TorusParams(2, 3, (3, 3)), TorusParams(3, 2, (2, 2, 3)), TorusParams(2, 4, (2, 5))],
)
def test_torus_counts_and_ownership(params):
    g = build_torus(params)
    N = params.num_intersection
    assert g.n == params.num_vertices == N * (2 ** (params.d - 1) * (params.ell - 1) + 1)
    paths = N * 2 ** (params.d - 1)
    assert g.num_edges == paths * params.ell
    assert is_connected(g)
    corner = [u for u in range(g.n) if is_intersection(g.labels[u], params)]
    inner = [u for u in range(g.n) if u not in set(corner)]
    assert len(corner) == N
    assert all(len(g.strategy(u)) == 0 and g.degree(u) == 2 ** params.d for u in corner)
    bought = Counter(len(g.strategy(u)) for u in inner)
    assert set(bought) <= {1, 2}
    assert bought[2] == paths  # one per path: the vertex next to the far endpoint
    assert bought[1] == paths * (params.ell - 2)
    assert all(g.degree(u) == 2 for u in inner)


def test_small_torus_diameter():
    g = build_torus(SMALL)
    assert diameter(g) >= SMALL.ell * SMALL.delta[1] == 8


def test_wide_torus_counts():
    p = TorusParams(d=2, ell=2, delta=(15, 5))
    assert (p.num_intersection, p.num_vertices) == (150, 450)
    assert build_torus(p).n == 450


def test_labels_are_normalised_coordinates():
    g = build_torus(SMALL)
    mods = SMALL.moduli
    assert mods == (12, 16)
    assert all(0 <= x < m for lab in g.labels for x, m in zip(lab, mods))
    assert g.index_of((0, 0)) is not None and g.index_of((1, 1)) is not None


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_f_set_size_and_distance(h):
    g = build_torus(SMALL)
    for u in range(g.n):
        lab = g.labels[u]
        if not is_intersection(lab, SMALL):
            continue
        fs = f_set(lab, h, SMALL)
        assert len(fs) == 4
        d = bfs_distances(g, u)
        assert all(d[g.index_of(x)] == h for x in fs)


def test_f_set_example():
    assert f_set((0, 0), 1, SMALL) == {(1, 1), (1, 15), (11, 1), (11, 15)}


def test_closed_distance_bound_holds():
    g = build_torus(SMALL)
    for u in range(g.n):
        d = bfs_distances(g, u)
        for w in range(g.n):
            assert d[w] >= torus_distance_bound(g.labels[u], g.labels[w], SMALL)


def test_open_distance_bound_holds():
    p = TorusParams(2, 2, (5, 5))
    g = build_open_torus(p)
    for u in range(g.n):
        d = bfs_distances(g, u)
        for w in range(g.n):
            a, b = g.labels[u], g.labels[w]
            assert d[w] >= max(abs(x - y) for x, y in zip(a, b))


def test_open_distance_bound_tight_next_to_corner():
    # corner (2,2) and its path neighbour (3,3) sit at distance 1 = max |x_i - y_i|
    g = build_open_torus(TorusParams(2, 2, (5, 5)))
    a, b = g.index_of((2, 2)), g.index_of((3, 3))
    assert bfs_distances(g, a)[b] == 1


def test_open_torus_only_joins_diagonal_corners():
    g = build_open_torus(TorusParams(2, 2, (2, 2)))
    assert g.labels == [(2, 2), (3, 3), (4, 4)]
    assert g.num_edges == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_views_embed_in_open_torus(k):
    host = nxgraph(build_open_torus(TorusParams(2, 2, (5, 5))).edges())
    g = build_torus(SMALL)
    for u in range(g.n):
        part = nxgraph(view(g, u, k).edges)
        assert isomorphism.GraphMatcher(host, part).subgraph_is_isomorphic()


def test_invalid_params():
    with pytest.raises(ParamError):
        TorusParams(1, 2, (3,))
    with pytest.raises(ParamError):
        TorusParams(2, 2, (3,))
    with pytest.raises(ParamError):
        TorusParams(2, 2, (1, 3))
    with pytest.raises(ParamError):
        build_torus(TorusParams(2, 1, (3, 3)))


@pytest.mark.parametrize(
    "alpha,k,expected",
    [(2, 4, (2, 2, 3)), (1.5, 3, (2, 2, 3)), (3, 10, (3, 3, 5)), (1.01, 1000, (2, 9, 501))],
)
def test_torus_params_for(alpha, k, expected):
    p = torus_params_for(alpha, k)
    assert (p.ell, p.d, p.delta[0]) == expected
    assert len(p.delta) == p.d and all(x == p.delta[0] for x in p.delta)


def test_torus_params_for_errors():
    with pytest.raises(ParamError):
        torus_params_for(5, 4)
    with pytest.raises(ParamError):
        torus_params_for(1, 4)
    with pytest.raises(ParamError):
        torus_params_for(2, 4, delta_last=2)
    assert torus_params_for(2, 4, delta_last=4).delta == (3, 4)


def test_sum_torus_params():
    p = sum_torus_params(2, 3)
    assert p == TorusParams(2, 2, (2, 3))
    assert build_torus(p).n == 36
    with pytest.raises(ParamError):
        sum_torus_params(4, 2)


def test_heawood_structure():
    h = heawood()
    assert h.n == 14 and h.num_edges == 21
    assert all(h.degree(u) == 3 for u in range(14))
    assert all(len(h.strategy(u)) <= 2 for u in range(14))
    assert girth(h) == 6
    for u in range(14):
        v = view(h, u, 2)
        assert len(v) == 10 and len(v.edges) == 9
    assert nx.is_isomorphic(nxgraph(h.edges()), nx.heawood_graph())


def test_small_torus_is_equilibrium():
    assert verify_lke(build_torus(SMALL), GameConfig("max", 2, 4)).equilibrium
