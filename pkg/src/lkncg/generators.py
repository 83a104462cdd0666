"""Random starting networks: uniform labelled trees and connected G(n, p)."""
from __future__ import annotations

import heapq

import numpy as np

from .graph import OwnedGraph, is_connected


class MaxAttemptsExceeded(RuntimeError):
    pass


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent (topology, ownership) generators derived from one seed."""
    topo, own = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(topo), np.random.default_rng(own)


def prufer_decode(seq) -> list[tuple[int, int]]:
    """Edges of the labelled tree on ``len(seq) + 2`` vertices with Prüfer code ``seq``."""
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, int(x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, int(x))
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return edges


def _orient(edges, rng: np.random.Generator):
    coins = rng.integers(0, 2, size=len(edges))
    return [(u, v) if c == 0 else (v, u) for (u, v), c in zip(edges, coins)]


def random_tree(n: int, seed: int) -> OwnedGraph:
    """Uniform labelled tree on ``n`` vertices, each edge owned by a fair coin flip."""
    if n < 2:
        raise ValueError("random_tree needs n >= 2")
    topo, own = _streams(seed)
    seq = topo.integers(0, n, size=n - 2)
    edges = sorted(tuple(sorted(e)) for e in prufer_decode(seq))
    return OwnedGraph(n, _orient(edges, own))


def gnp_connected(n: int, p: float, seed: int, max_attempts: int = 1000) -> OwnedGraph:
    """G(n, p) conditioned on connectivity by rejection, with fair-coin ownership."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    topo, own = _streams(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(max_attempts):
        keep = topo.random(iu.size) < p
        edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        adj = {v: set() for v in range(n)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        if is_connected(adj):
            return OwnedGraph(n, _orient(edges, own))
    raise MaxAttemptsExceeded(f"no connected G({n}, {p}) after {max_attempts} attempts")
