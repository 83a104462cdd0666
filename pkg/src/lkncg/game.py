"""Player costs, social cost and worst-case strategy evaluation on a view."""
from __future__ import annotations

import enum
import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .graph import UNREACHABLE, OwnedGraph, View, bfs_distances

#: absolute tolerance used whenever two costs are compared
COST_TOL = 1e-9


class Variant(str, enum.Enum):
    MAX = "max"
    SUM = "sum"


@dataclass(frozen=True)
class GameConfig:
    variant: Variant
    alpha: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"view radius k must be an integer >= 1, got {self.k}")
        object.__setattr__(self, "k", int(self.k))


# -- outcomes of a strategy switch ------------------------------------------------


@dataclass(frozen=True)
class Finite:
    value: float


@dataclass(frozen=True)
class RejectedFrontier:
    """Sum variant: the switch pushes a frontier vertex beyond distance k."""


@dataclass(frozen=True)
class Disconnecting:
    """Some vertex of the view becomes unreachable from the player."""


DeltaOutcome = Finite | RejectedFrontier | Disconnecting


class StrategyError(ValueError):
    """A strategy names an endpoint the player may not buy."""


def is_improving(outcome: DeltaOutcome) -> bool:
    return isinstance(outcome, Finite) and outcome.value < -COST_TOL


# -- costs on the whole graph -------------------------------------------------------


def player_cost(g: OwnedGraph, u: int, cfg: GameConfig) -> float:
    dist = bfs_distances(g, u)
    if any(d is UNREACHABLE for d in dist.values()):
        return math.inf
    usage = max(dist.values()) if cfg.variant is Variant.MAX else sum(dist.values())
    return cfg.alpha * len(g.owned[u]) + usage


def social_cost(g: OwnedGraph, cfg: GameConfig) -> float:
    return sum(player_cost(g, u, cfg) for u in range(g.n))


def star_cost(n: int, cfg: GameConfig) -> float:
    """Social cost of the spanning star on ``n`` vertices (the optimum for alpha > 1)."""
    if n < 2:
        raise ValueError("star_cost needs n >= 2")
    building = cfg.alpha * (n - 1)
    if cfg.variant is Variant.MAX:
        return building + 1 + 2 * (n - 1)
    return building + (n - 1) + (n - 1) * (1 + 2 * (n - 2))


# -- evaluation on the view -------------------------------------------------------------


def _distances_after_switch(view: View, endpoints: frozenset[int]) -> dict[int, int]:
    """BFS from the centre in H' (own edges replaced by ``endpoints``)."""
    u = view.center
    start = (view.adj[u] - view.owned[u]) | endpoints
    dist = {u: 0}
    queue = deque()
    for v in start:
        dist[v] = 1
        queue.append(v)
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in view.adj[x]:
            if y not in dist:
                dist[y] = dx
                queue.append(y)
    return dist


def check_strategy(view: View, endpoints: Iterable[int]) -> frozenset[int]:
    endpoints = frozenset(endpoints)
    u = view.center
    if u in endpoints:
        raise StrategyError(f"player {u} cannot buy an edge to herself")
    outside = [v for v in endpoints if v not in view.dist]
    if outside:
        raise StrategyError(f"endpoints {sorted(outside)} lie outside the view of {u}")
    clash = endpoints & view.in_neighbors
    if clash:
        raise StrategyError(f"edges towards {sorted(clash)} are already bought by them")
    return endpoints


def usage_on_view(view: View, cfg: GameConfig) -> int:
    if cfg.variant is Variant.MAX:
        return max(view.dist.values())
    return sum(view.dist.values())


def view_cost(view: View, cfg: GameConfig) -> float:
    """Cost of the current strategy when the network is exactly the view."""
    return cfg.alpha * len(view.owned[view.center]) + usage_on_view(view, cfg)


def delta(view: View, new_strategy: Iterable[int], cfg: GameConfig) -> DeltaOutcome:
    """Worst-case cost change of switching to ``new_strategy``.

    The worst realisable network is the view itself, except that in the Sum
    variant any switch that moves a frontier vertex beyond distance ``k`` can
    be made arbitrarily bad.
    """
    endpoints = check_strategy(view, new_strategy)
    dist = _distances_after_switch(view, endpoints)
    if len(dist) < len(view.dist):
        return Disconnecting()
    if cfg.variant is Variant.SUM:
        if any(dist[y] > view.k for y in view.frontier):
            return RejectedFrontier()
        usage_new = sum(dist.values())
    else:
        usage_new = max(dist.values())
    change = cfg.alpha * (len(endpoints) - len(view.owned[view.center]))
    return Finite(change + usage_new - usage_on_view(view, cfg))
