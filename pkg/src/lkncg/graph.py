"""Owned graphs and the metric primitives the game is played on.

Vertices are dense integer ids ``0..n-1``.  Every edge remembers which of its
endpoints bought it, so the graph doubles as the strategy profile: the
strategy of ``u`` is the set of neighbours ``v`` for which ``u`` owns
``(u, v)``.
"""
from __future__ import annotations

import enum
import io
import math
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field


class _Unreachable(enum.Enum):
    UNREACHABLE = "unreachable"

    def __repr__(self) -> str:
        return "UNREACHABLE"


#: Distance marker for vertices in another component.  Deliberately not a
#: number, so it can never leak into a sum of distances.
UNREACHABLE = _Unreachable.UNREACHABLE


class GraphFormatError(ValueError):
    pass


class OwnedGraph:
    """Simple undirected graph where each edge has an owner endpoint."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.owned: list[set[int]] = [set() for _ in range(n)]
        # optional vertex names (coordinates for the torus), index-aligned
        self.labels = list(labels) if labels is not None else None
        for owner, other in edges:
            self.add_edge(owner, other)

    # -- construction / mutation -------------------------------------------

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def add_edge(self, owner: int, other: int) -> None:
        """Add edge ``(owner, other)`` bought by ``owner``."""
        self._check(owner)
        self._check(other)
        if owner == other:
            raise ValueError(f"self-loop at {owner}")
        if other in self.adj[owner]:
            raise ValueError(f"parallel edge ({owner}, {other})")
        self.adj[owner].add(other)
        self.adj[other].add(owner)
        self.owned[owner].add(other)

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u].remove(v)
        self.adj[v].remove(u)
        self.owned[u].discard(v)
        self.owned[v].discard(u)

    def set_strategy(self, u: int, endpoints: Iterable[int]) -> None:
        """Replace the edges bought by ``u`` with edges towards ``endpoints``.

        Edges bought by other players towards ``u`` are untouched; buying one
        of those again would create a parallel edge and is rejected.
        """
        endpoints = set(endpoints)
        clash = endpoints & self.in_neighbors(u)
        if clash:
            raise ValueError(f"player {u} cannot buy edges already bought by {sorted(clash)}")
        for v in list(self.owned[u]):
            self.remove_edge(u, v)
        for v in sorted(endpoints):
            self.add_edge(u, v)

    def copy(self) -> OwnedGraph:
        g = OwnedGraph(self.n, labels=self.labels)
        g.adj = [set(s) for s in self.adj]
        g.owned = [set(s) for s in self.owned]
        return g

    # -- queries --------------------------------------------------------------

    def strategy(self, u: int) -> frozenset[int]:
        return frozenset(self.owned[u])

    def in_neighbors(self, u: int) -> set[int]:
        """Neighbours that bought their edge towards ``u``."""
        return self.adj[u] - self.owned[u]

    def owner(self, u: int, v: int) -> int:
        if v not in self.adj[u]:
            raise KeyError(f"no edge ({u}, {v})")
        return u if v in self.owned[u] else v

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.owned)

    def edges(self) -> list[tuple[int, int, int]]:
        """Sorted ``(u, v, owner)`` triples with ``u < v``."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v, u if v in self.owned[u] else v))
        out.sort()
        return out

    def profile_key(self) -> tuple[tuple[int, int], ...]:
        """Canonical strategy profile: sorted ``(owner, endpoint)`` pairs."""
        return tuple(sorted((u, v) for u in range(self.n) for v in self.owned[u]))

    def index_of(self, label) -> int:
        if self.labels is None:
            raise KeyError("graph has no labels")
        if not hasattr(self, "_index") or len(self._index) != len(self.labels):
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index[label]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OwnedGraph):
            return NotImplemented
        return self.n == other.n and self.owned == other.owned

    def __repr__(self) -> str:
        return f"OwnedGraph(n={self.n}, m={self.num_edges})"


def _adjacency(g) -> Mapping | list:
    if isinstance(g, OwnedGraph):
        return g.adj
    return g


def _vertices(g) -> Iterable[int]:
    if isinstance(g, OwnedGraph):
        return range(g.n)
    return g.keys()


# -- distances ----------------------------------------------------------------


def bfs_distances(g, u: int) -> dict:
    """Unweighted distances from ``u``; unreachable vertices map to ``UNREACHABLE``."""
    adj = _adjacency(g)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if y not in dist:
                dist[y] = dx
                queue.append(y)
    for v in _vertices(g):
        if v not in dist:
            dist[v] = UNREACHABLE
    return dist


def _ball(adj, u: int, radius: int) -> dict[int, int]:
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx == radius:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def eccentricity(g, u: int) -> float:
    """Largest distance from ``u``; ``math.inf`` if some vertex is unreachable."""
    dist = bfs_distances(g, u)
    if any(d is UNREACHABLE for d in dist.values()):
        return math.inf
    return max(dist.values())


def diameter(g) -> float:
    best = 0
    for u in _vertices(g):
        e = eccentricity(g, u)
        if e == math.inf:
            return math.inf
        best = max(best, e)
    return best


def girth(g) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    For each edge ``(u, v)`` the shortest cycle through it has length
    ``1 + d(u, v)`` in the graph without that edge.
    """
    adj = _adjacency(g)
    best = math.inf
    for u in _vertices(g):
        for v in adj[u]:
            if v < u:
                continue
            # BFS from u avoiding edge (u, v); only depths < best - 1 matter
            limit = best - 2
            dist = {u: 0}
            queue = deque([u])
            found = None
            while queue and found is None:
                x = queue.popleft()
                if dist[x] >= limit:
                    break
                for y in adj[x]:
                    if x == u and y == v:
                        continue
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        if y == v:
                            found = dist[y]
                            break
                        queue.append(y)
            if found is not None:
                best = min(best, found + 1)
                if best == 3:
                    return 3
    return best


# -- views ----------------------------------------------------------------------


@dataclass
class View:
    """Subgraph induced by the radius-``k`` ball around ``center``."""

    center: int
    k: int
    dist: dict[int, int]
    adj: dict[int, set[int]]
    owned: dict[int, set[int]]
    frontier: frozenset[int] = field(default_factory=frozenset)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.dist)

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, v: int) -> bool:
        return v in self.dist

    @property
    def strategy(self) -> frozenset[int]:
        return frozenset(self.owned[self.center])

    @property
    def in_neighbors(self) -> frozenset[int]:
        u = self.center
        return frozenset(self.adj[u] - self.owned[u])

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        out = []
        for u, nbrs in self.adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v, u if v in self.owned[u] else v))
        out.sort()
        return out

    @property
    def eccentricity(self) -> int:
        return max(self.dist.values())


def view(g: OwnedGraph, u: int, k: int) -> View:
    """The part of ``g`` that player ``u`` sees with view radius ``k``."""
    if k < 1:
        raise ValueError("view radius k must be >= 1")
    dist = _ball(g.adj, u, k)
    adj = {v: g.adj[v] & dist.keys() for v in dist}
    owned = {v: g.owned[v] & dist.keys() for v in dist}
    frontier = frozenset(v for v, d in dist.items() if d == k)
    return View(center=u, k=k, dist=dist, adj=adj, owned=owned, frontier=frontier)


def view_size(g: OwnedGraph, u: int, k: int) -> int:
    return len(_ball(g.adj, u, k))


def graph_power(g, h: int) -> dict[int, set[int]]:
    """``h``-th power: ``(u, v)`` is an edge iff ``0 < d(u, v) <= h``.

    Ownership is not carried over; the result is a plain adjacency dict.
    """
    if h < 0:
        raise ValueError("power must be >= 0")
    adj = _adjacency(g)
    out = {}
    for u in _vertices(g):
        out[u] = set(_ball(adj, u, h)) - {u} if h > 0 else set()
    return out


def is_connected(g) -> bool:
    verts = list(_vertices(g))
    if not verts:
        return True
    return not any(d is UNREACHABLE for d in bfs_distances(g, verts[0]).values())


# -- edge-list format -----------------------------------------------------------


def write_edgelist(g: OwnedGraph, fh=None) -> str:
    """Serialise as ``ncg n=<n>`` followed by ``u v owner`` lines."""
    lines = [f"ncg n={g.n}"]
    lines.extend(f"{u} {v} {o}" for u, v, o in g.edges())
    text = "\n".join(lines) + "\n"
    if fh is not None:
        fh.write(text)
    return text


def read_edgelist(src) -> OwnedGraph:
    """Parse the format written by :func:`write_edgelist` (file object or text)."""
    if isinstance(src, str):
        src = io.StringIO(src)
    lines = [ln.strip() for ln in src]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("ncg n="):
        raise GraphFormatError("missing 'ncg n=<n>' header")
    try:
        n = int(lines[0][len("ncg n="):])
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    g = OwnedGraph(n)
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v owner', got {ln!r}")
        u, v, o = (int(p) for p in parts)
        if o not in (u, v):
            raise GraphFormatError(f"line {lineno}: owner {o} is not an endpoint")
        try:
            g.add_edge(o, v if o == u else u)
        except (ValueError, IndexError) as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    return g
