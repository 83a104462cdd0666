"""Exact best responses on a player's view and equilibrium verification."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .domset import CoverSearch
from .game import COST_TOL, Finite, GameConfig, Variant, delta, view_cost
from .graph import OwnedGraph, View, _ball, view

#: default largest view (vertices, centre included) searched exactly in the Sum variant
SUM_EXACT_CAP = 16


class ViewTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class BestResponse:
    strategy: frozenset[int]
    cost: float
    delta_vs_current: float
    exact: bool = True


@dataclass(frozen=True)
class Witness:
    player: int
    strategy: frozenset[int]
    delta: float

    def as_record(self) -> dict:
        return {"player": self.player, "endpoints": sorted(self.strategy), "delta": self.delta}


@dataclass(frozen=True)
class Verdict:
    equilibrium: bool
    witness: Witness | None = None


class _LocalView:
    """Index-based copy of a view with the centre removed.

    ``dist[i, j]`` is the distance between the i-th and j-th non-centre
    vertices in the view minus its centre (``inf`` across components).
    """

    def __init__(self, v: View):
        u = v.center
        self.others = sorted(x for x in v.dist if x != u)
        index = {x: i for i, x in enumerate(self.others)}
        m = len(self.others)
        rows, cols = [], []
        for x in self.others:
            for y in v.adj[x]:
                if y != u:
                    rows.append(index[x])
                    cols.append(index[y])
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(m, m))
        self.dist = shortest_path(graph, directed=False, unweighted=True)
        in_nbrs = v.in_neighbors
        self.forced = [index[x] for x in sorted(in_nbrs)]
        self.cands = [i for i, x in enumerate(self.others) if x not in in_nbrs]
        self.frontier = np.array(sorted(index[x] for x in v.frontier), dtype=int)
        self.m = m


def _row_masks(within: np.ndarray) -> list[int]:
    packed = np.packbits(within, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def best_response_max(v: View, cfg: GameConfig) -> BestResponse:
    """Best response in the Max variant via forced dominating sets.

    For a guessed eccentricity ``h`` the player must be adjacent to some
    vertex within distance ``h - 1`` (in the view without her) of every other
    vertex; players who bought an edge towards her are adjacent for free.
    """
    if cfg.variant is not Variant.MAX:
        raise ValueError("best_response_max needs the Max variant")
    if len(v) < 2:
        raise ValueError("view must contain at least two vertices")
    loc = _LocalView(v)
    alpha = cfg.alpha
    current = view_cost(v, cfg)
    full = (1 << loc.m) - 1
    best = current
    found: list[tuple[float, int, int]] = []
    h_top = min(loc.m, math.floor(best + COST_TOL))
    for h in range(h_top, 0, -1):
        limit = math.floor((best + COST_TOL - h) / alpha)
        if limit < 0:
            continue
        masks = _row_masks(loc.dist <= h - 1)
        need = full
        for f in loc.forced:
            need &= ~masks[f]
        search = CoverSearch([masks[c] for c in loc.cands], need)
        size = search.minimum(limit)
        if size is None:
            continue
        cost = alpha * size + h
        found.append((cost, size, h))
        best = min(best, cost)
    tied = [(size, h) for cost, size, h in found if cost <= best + COST_TOL]
    size, h = min(tied)
    masks = _row_masks(loc.dist <= h - 1)
    need = full
    for f in loc.forced:
        need &= ~masks[f]
    picked = CoverSearch([masks[c] for c in loc.cands], need).lex_first(size)
    strategy = frozenset(loc.others[loc.cands[i]] for i in picked)
    cost = alpha * size + h
    return BestResponse(strategy, cost, cost - current)


def best_response_sum(
    v: View, cfg: GameConfig, cap: int = SUM_EXACT_CAP, fallback: bool = False
) -> BestResponse:
    """Best response in the Sum variant by pruned subset enumeration.

    Strategies that push a frontier vertex beyond distance ``k`` or
    disconnect part of the view are infeasible.  Views larger than ``cap``
    raise :class:`ViewTooLarge` unless ``fallback`` asks for a local search
    over single-edge moves (reported with ``exact=False``).
    """
    if cfg.variant is not Variant.SUM:
        raise ValueError("best_response_sum needs the Sum variant")
    if len(v) > cap:
        if fallback:
            return _local_search(v, cfg)
        raise ViewTooLarge(f"view of {v.center} has {len(v)} vertices (cap {cap})")
    if len(v) < 2:
        raise ValueError("view must contain at least two vertices")
    loc = _LocalView(v)
    alpha, k = cfg.alpha, v.k
    via = loc.dist + 1.0  # via[w, x]: distance to x when adjacent to w
    inf_row = np.full(loc.m, np.inf)
    base = inf_row.copy()
    for f in loc.forced:
        base = np.minimum(base, via[f])
    cands = loc.cands
    suffix = [inf_row] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = np.minimum(suffix[i + 1], via[cands[i]])
    frontier = loc.frontier

    current = view_cost(v, cfg)
    index = {x: i for i, x in enumerate(loc.others)}
    cur_key = (len(v.strategy), tuple(sorted(index[x] for x in v.strategy)))
    state = {"cost": current, "key": cur_key}

    def visit(i: int, dist: np.ndarray, chosen: list[int]) -> None:
        bound = np.minimum(dist, suffix[i])
        if np.isinf(bound).any():
            return
        if frontier.size and (bound[frontier] > k).any():
            return
        lb = alpha * len(chosen) + bound.sum()
        if lb > state["cost"] + COST_TOL:
            return
        if i == len(cands):
            key = (len(chosen), tuple(chosen))
            if lb < state["cost"] - COST_TOL or key < state["key"]:
                state["cost"], state["key"] = lb, key
            return
        c = cands[i]
        visit(i + 1, np.minimum(dist, via[c]), chosen + [c])
        visit(i + 1, dist, chosen)

    visit(0, base, [])
    strategy = frozenset(loc.others[i] for i in state["key"][1])
    cost = float(state["cost"])
    return BestResponse(strategy, cost, cost - current)


def _local_search(v: View, cfg: GameConfig) -> BestResponse:
    """Steepest descent over single additions, removals and swaps."""
    current = view_cost(v, cfg)
    strategy = frozenset(v.strategy)
    total = 0.0
    options = sorted(x for x in v.dist if x != v.center and x not in v.in_neighbors)
    while True:
        moves = [strategy | {x} for x in options if x not in strategy]
        moves += [strategy - {x} for x in sorted(strategy)]
        moves += [
            (strategy - {x}) | {y} for x in sorted(strategy) for y in options if y not in strategy
        ]
        best_move, best_gain = None, -COST_TOL
        for move in moves:
            out = delta(_with_strategy(v, strategy), move, cfg)
            if isinstance(out, Finite) and out.value < best_gain:
                best_move, best_gain = move, out.value
        if best_move is None:
            break
        strategy = frozenset(best_move)
        total += best_gain
    return BestResponse(strategy, current + total, total, exact=False)


def _with_strategy(v: View, strategy: frozenset[int]) -> View:
    """The view as it would look after the centre switched to ``strategy``.

    Only used inside the local search, which keeps the original frontier.
    """
    if strategy == v.strategy:
        return v
    u = v.center
    adj = {x: set(s) for x, s in v.adj.items()}
    owned = {x: set(s) for x, s in v.owned.items()}
    for x in v.owned[u]:
        adj[u].discard(x)
        adj[x].discard(u)
    owned[u] = set(strategy)
    for x in strategy:
        adj[u].add(x)
        adj[x].add(u)
    dist = _ball(adj, u, len(adj))
    return View(u, v.k, dist, adj, owned, frozenset(x for x in v.frontier))


def best_response(v: View, cfg: GameConfig, sum_cap: int = SUM_EXACT_CAP, fallback: bool = False):
    if cfg.variant is Variant.MAX:
        return best_response_max(v, cfg)
    return best_response_sum(v, cfg, cap=sum_cap, fallback=fallback)


def verify_lke(
    g: OwnedGraph, cfg: GameConfig, sum_cap: int = SUM_EXACT_CAP, players=None
) -> Verdict:
    """Check that no player has a strictly improving switch on her view.

    Returns the first improving witness in player-id order.
    """
    for u in players if players is not None else range(g.n):
        br = best_response(view(g, u, cfg.k), cfg, sum_cap=sum_cap)
        if br.delta_vs_current < -COST_TOL:
            return Verdict(False, Witness(u, br.strategy, br.delta_vs_current))
    return Verdict(True)
