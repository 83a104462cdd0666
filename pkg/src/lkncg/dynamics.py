"""Round-robin best-response dynamics and parameter sweeps."""
from __future__ import annotations

import csv
import enum
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .bestresponse import SUM_EXACT_CAP, best_response
from .game import COST_TOL, GameConfig, player_cost, star_cost
from .generators import gnp_connected, random_tree
from .graph import OwnedGraph, diameter, is_connected, view, view_size

log = logging.getLogger(__name__)

DEFAULT_ROUND_CAP = 1000

CSV_COLUMNS = [
    "class", "n", "p", "alpha", "k", "rep", "seed", "status", "rounds", "changes",
    "social_cost", "star_cost", "quality", "diameter", "max_degree", "avg_degree",
    "max_bought", "min_view", "avg_view", "unfairness",
]


class Status(str, enum.Enum):
    EQUILIBRIUM = "equilibrium"
    CYCLE = "cycle"
    ROUND_CAP = "round_cap"


@dataclass
class RoundStats:
    round: int
    changes: int
    social_cost: float
    diameter: float
    max_degree: int
    avg_degree: float
    min_bought: int
    max_bought: int
    avg_bought: float
    min_view: int
    max_view: int
    avg_view: float
    unfairness: float


@dataclass
class DynamicsTrace:
    config: GameConfig
    seed: int | None
    rounds: list[RoundStats] = field(default_factory=list)
    status: Status = Status.ROUND_CAP
    cycle_start: int | None = None  # round whose end-of-round profile reappeared
    total_changes: int = 0
    final: OwnedGraph | None = None

    @property
    def num_rounds(self) -> int:
        return len(self.rounds)


def round_stats(g: OwnedGraph, cfg: GameConfig, round_index: int, changes: int) -> RoundStats:
    costs = [player_cost(g, u, cfg) for u in range(g.n)]
    degrees = [g.degree(u) for u in range(g.n)]
    bought = [len(g.owned[u]) for u in range(g.n)]
    views = [view_size(g, u, cfg.k) for u in range(g.n)]
    low = min(costs)
    return RoundStats(
        round=round_index,
        changes=changes,
        social_cost=sum(costs),
        diameter=diameter(g),
        max_degree=max(degrees),
        avg_degree=sum(degrees) / g.n,
        min_bought=min(bought),
        max_bought=max(bought),
        avg_bought=sum(bought) / g.n,
        min_view=min(views),
        max_view=max(views),
        avg_view=sum(views) / g.n,
        unfairness=max(costs) / low if low > 0 else math.inf,
    )


def run(
    g0: OwnedGraph,
    cfg: GameConfig,
    seed: int | None = None,
    round_cap: int = DEFAULT_ROUND_CAP,
    sum_cap: int = SUM_EXACT_CAP,
) -> DynamicsTrace:
    """Play rounds in player-id order until a quiet round, a repeated profile or the cap.

    Each player sees her view as it is at her turn (earlier moves of the same
    round included) and moves only when her best response is strictly better.
    ``seed`` is only echoed into the trace: the dynamics are deterministic.
    """
    if not is_connected(g0):
        raise ValueError("dynamics need a connected starting network")
    g = g0.copy()
    trace = DynamicsTrace(config=cfg, seed=seed)
    seen: dict[tuple, int] = {g.profile_key(): 0}
    for r in range(1, round_cap + 1):
        changes = 0
        for u in range(g.n):
            br = best_response(view(g, u, cfg.k), cfg, sum_cap=sum_cap)
            if br.delta_vs_current < -COST_TOL:
                g.set_strategy(u, br.strategy)
                changes += 1
        trace.total_changes += changes
        trace.rounds.append(round_stats(g, cfg, r, changes))
        if changes == 0:
            trace.status = Status.EQUILIBRIUM
            break
        key = g.profile_key()
        if key in seen:
            trace.status = Status.CYCLE
            trace.cycle_start = seen[key]
            break
        seen[key] = r
    trace.final = g
    return trace


# -- sweeps -----------------------------------------------------------------------

_CLASS_IDS = {"tree": 1, "gnp": 2}


@dataclass(frozen=True)
class RunSpec:
    graph_class: str
    n: int
    p: float | None
    alpha: float
    k: int
    rep: int
    seed: int
    variant: str = "max"
    round_cap: int = DEFAULT_ROUND_CAP

    @property
    def sort_key(self):
        return (self.graph_class, self.n, self.p or 0.0, self.alpha, self.k, self.rep)


def graph_seed(base_seed: int, graph_class: str, n: int, p: float | None, rep: int) -> int:
    """Seed of one starting network; shared by every (alpha, k) run on it."""
    words = [base_seed, _CLASS_IDS[graph_class], n, round((p or 0.0) * 1_000_000), rep]
    return int(np.random.SeedSequence(words).generate_state(1, dtype=np.uint64)[0] >> 1)


def expand_grid(grid: dict, repetitions: int | None = None, seed: int = 0) -> list[RunSpec]:
    """All runs described by a sweep configuration, in deterministic order.

    ``grid`` holds ``classes`` (list of ``{"class": "tree"|"gnp", "n": [...],
    "p": [...]}``), ``alpha`` and ``k`` lists, and optionally ``repetitions``,
    ``variant`` and ``round_cap``.
    """
    reps = repetitions if repetitions is not None else grid.get("repetitions", 20)
    variant = grid.get("variant", "max")
    cap = grid.get("round_cap", DEFAULT_ROUND_CAP)
    specs = []
    for cls in grid["classes"]:
        name = cls["class"]
        if name not in _CLASS_IDS:
            raise ValueError(f"unknown graph class {name!r}")
        ps = cls.get("p", [None]) if name == "gnp" else [None]
        for n, p, alpha, k, rep in itertools.product(cls["n"], ps, grid["alpha"], grid["k"], range(reps)):
            specs.append(RunSpec(name, n, p, alpha, k, rep, graph_seed(seed, name, n, p, rep), variant, cap))
    if not specs:
        raise ValueError("empty sweep grid")
    specs.sort(key=lambda s: s.sort_key)
    return specs


def starting_graph(spec: RunSpec) -> OwnedGraph:
    if spec.graph_class == "tree":
        return random_tree(spec.n, spec.seed)
    return gnp_connected(spec.n, spec.p, spec.seed)


def run_spec(spec: RunSpec) -> tuple[dict, list[dict]]:
    """One sweep run; returns the CSV row and the per-round records."""
    row = {
        "class": spec.graph_class, "n": spec.n, "p": "" if spec.p is None else spec.p,
        "alpha": spec.alpha, "k": spec.k, "rep": spec.rep, "seed": spec.seed,
    }
    try:
        cfg = GameConfig(spec.variant, spec.alpha, spec.k)
        trace = run(starting_graph(spec), cfg, seed=spec.seed, round_cap=spec.round_cap)
    except Exception as exc:  # a failed run must not kill the sweep
        log.warning("run %s failed: %s", spec, exc)
        row["status"] = f"error: {exc}"
        return row, []
    last = trace.rounds[-1]
    opt = star_cost(spec.n, cfg)
    row.update(
        status=trace.status.value,
        rounds=trace.num_rounds,
        changes=trace.total_changes,
        social_cost=last.social_cost,
        star_cost=opt,
        quality=last.social_cost / opt,
        diameter=last.diameter,
        max_degree=last.max_degree,
        avg_degree=last.avg_degree,
        max_bought=last.max_bought,
        min_view=last.min_view,
        avg_view=last.avg_view,
        unfairness=last.unfairness,
    )
    records = [dict(row_key(spec), **asdict(s)) for s in trace.rounds]
    return row, records


def row_key(spec: RunSpec) -> dict:
    return {"class": spec.graph_class, "n": spec.n, "p": spec.p, "alpha": spec.alpha,
            "k": spec.k, "rep": spec.rep, "seed": spec.seed}


def sweep(grid: dict, repetitions: int | None = None, seed: int = 0, jobs: int = 1,
          with_rounds: bool = False):
    """Run every grid point; rows come back in grid order regardless of ``jobs``."""
    specs = expand_grid(grid, repetitions, seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_spec, specs))
    else:
        results = [run_spec(s) for s in specs]
    rows = [r for r, _ in results]
    if with_rounds:
        return rows, [rec for _, recs in results for rec in recs]
    return rows


def write_csv(rows: list[dict], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
