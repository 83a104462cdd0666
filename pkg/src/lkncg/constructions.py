"""Deterministic equilibrium constructions: cycle, stretched tori, Heawood graph."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import OwnedGraph


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class TorusParams:
    d: int
    ell: int
    delta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))
        if self.d < 2:
            raise ParamError(f"need d >= 2 dimensions, got {self.d}")
        if len(self.delta) != self.d:
            raise ParamError(f"expected {self.d} side lengths, got {len(self.delta)}")
        if any(x < 2 for x in self.delta):
            raise ParamError(f"side lengths must be >= 2, got {self.delta}")
        if self.ell < 1:
            raise ParamError(f"stretch must be >= 1, got {self.ell}")

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(2 * x * self.ell for x in self.delta)

    @property
    def num_intersection(self) -> int:
        return 2 * math.prod(self.delta)

    @property
    def num_vertices(self) -> int:
        return self.num_intersection * (2 ** (self.d - 1) * (self.ell - 1) + 1)


def build_cycle(n: int) -> OwnedGraph:
    """``C_n`` where vertex ``i`` owns the edge towards ``i + 1``."""
    if n < 3:
        raise ParamError("a cycle needs n >= 3")
    return OwnedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def _intersection_points(p: TorusParams, open_: bool):
    ranges = [range(1, x + 1) if open_ else range(2 * x) for x in p.delta]
    for a in itertools.product(*ranges):
        if len({ai % 2 for ai in a}) == 1:
            yield tuple(p.ell * ai for ai in a)


def _build(p: TorusParams, open_: bool) -> OwnedGraph:
    if p.ell < 2:
        raise ParamError("stretch ell = 1 leaves no vertex to own the edges")
    mod = p.moduli
    norm = (lambda c: c) if open_ else (lambda c: tuple(x % m for x, m in zip(c, mod)))
    corners = set(_intersection_points(p, open_))
    paths = {}
    for x in sorted(corners):
        for signs in itertools.product((1, -1), repeat=p.d):
            y = norm(tuple(xi + p.ell * s for xi, s in zip(x, signs)))
            if y not in corners:
                continue
            a, b = (x, y) if x < y else (y, x)
            step = signs if a == x else tuple(-s for s in signs)
            key = (a, b, step)
            if key in paths:
                continue
            interior = [norm(tuple(ai + j * s for ai, s in zip(a, step))) for j in range(1, p.ell)]
            paths[key] = [a, *interior, b]
    labels = set(corners)
    for path in paths.values():
        for lab in path[1:-1]:
            if lab in labels:
                raise ParamError(f"label {lab} generated twice; sides too small for ell={p.ell}")
            labels.add(lab)
    ordered = sorted(labels)
    index = {lab: i for i, lab in enumerate(ordered)}
    g = OwnedGraph(len(ordered), labels=ordered)
    for path in paths.values():
        ids = [index[lab] for lab in path]
        for i in range(1, p.ell):
            g.add_edge(ids[i], ids[i - 1])
        g.add_edge(ids[p.ell - 1], ids[p.ell])
    return g


def build_torus(p: TorusParams) -> OwnedGraph:
    """Stretched d-dimensional torus; vertex labels are coordinate tuples.

    Intersection vertices buy nothing.  On every path, oriented from the
    lexicographically smaller endpoint, each interior vertex buys the edge
    back towards the start and the last interior vertex also buys the edge
    to the far endpoint.
    """
    return _build(p, open_=False)


def build_open_torus(p: TorusParams) -> OwnedGraph:
    """Same lattice without wrap-around; corners are joined only when every
    coordinate differs by exactly ``ell``."""
    return _build(p, open_=True)


def is_intersection(label, p: TorusParams) -> bool:
    return all(x % p.ell == 0 for x in label) and len({(x // p.ell) % 2 for x in label}) == 1


def f_set(v, h: int, p: TorusParams) -> set[tuple[int, ...]]:
    """Labels reached from ``v`` moving ``h`` steps with a fixed sign per coordinate."""
    mod = p.moduli
    return {
        tuple((x + s * h) % m for x, s, m in zip(v, signs, mod))
        for signs in itertools.product((1, -1), repeat=p.d)
    }


def torus_distance_bound(x, y, p: TorusParams) -> int:
    """Coordinate lower bound on the distance between two torus labels."""
    return max(min(abs(a - b), m - abs(a - b)) for a, b, m in zip(x, y, p.moduli))


def torus_params_for(alpha: float, k: int, delta_last: int | None = None) -> TorusParams:
    """Parameters of the large-diameter MaxNCG equilibrium for ``1 < alpha <= k``.

    ``delta_last`` (the last side, i.e. the size knob) defaults to the
    common value of the other sides and must not be smaller.
    """
    if not 1 < alpha <= k:
        raise ParamError(f"need 1 < alpha <= k, got alpha={alpha}, k={k}")
    ell = math.ceil(alpha)
    d = math.ceil(math.log2(k / ell + 2))
    side = math.ceil(k / ell) + 1
    if delta_last is None:
        delta_last = side
    if delta_last < side:
        raise ParamError(f"last side {delta_last} is below the others ({side})")
    return TorusParams(d=d, ell=ell, delta=(side,) * (d - 1) + (delta_last,))


def sum_torus_params(k: int, delta_last: int | None = None) -> TorusParams:
    """Two-dimensional stretch-2 torus used as a SumNCG equilibrium (alpha >= 4k^3)."""
    side = math.ceil(k / 2) + 1
    if delta_last is None:
        delta_last = side
    if delta_last < side:
        raise ParamError(f"last side {delta_last} is below the first ({side})")
    return TorusParams(d=2, ell=2, delta=(side, delta_last))


def heawood() -> OwnedGraph:
    """Heawood graph (LCF [5, -5]^7): 14 vertices, 3-regular, girth 6.

    Vertex ``i`` owns the cycle edge to ``i + 1``; even vertices also own
    their chord, so nobody owns more than two edges.
    """
    g = OwnedGraph(14)
    for i in range(14):
        g.add_edge(i, (i + 1) % 14)
    for i in range(0, 14, 2):
        g.add_edge(i, (i + 5) % 14)
    return g
