"""Exact minimum dominating set with forced vertices.

Sets of vertices are Python ints used as bitsets.  The search is a plain
branch-and-bound: branch on the undominated vertex with the fewest possible
dominators, bound with the larger of a coverage-count bound and a greedy
packing of vertices whose dominator sets are pairwise disjoint.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DominatingInstance:
    graph: Mapping[int, Iterable[int]]
    forced: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "forced", frozenset(self.forced))
        missing = self.forced - set(self.graph)
        if missing:
            raise ValueError(f"forced vertices {sorted(missing)} are not in the graph")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CoverSearch:
    """Minimum cover of ``need`` by candidate sets ``cover[i]`` (bitsets).

    Candidate order matters only for :meth:`lex_first`, which returns the
    cover whose sorted index tuple is lexicographically smallest.
    """

    def __init__(self, cover: list[int], need: int):
        self.cover = cover
        self.need = need
        self.n_cand = len(cover)
        self.all_cands = (1 << self.n_cand) - 1
        # dominators of every element that still has to be covered
        dom: dict[int, int] = {}
        for i, c in enumerate(cover):
            for e in _bits(c & need):
                dom[e] = dom.get(e, 0) | (1 << i)
        self.dom = dom
        self.nodes = 0

    # -- bounds -------------------------------------------------------------

    def _bound(self, need: int, allowed: int):
        """Lower bound on extra candidates and the tightest element, or None if infeasible."""
        dom = self.dom
        entries = []
        for e in _bits(need):
            d = dom.get(e, 0) & allowed
            if not d:
                return None, None
            entries.append((d.bit_count(), e, d))
        entries.sort()
        used = 0
        packing = 0
        for _, _, d in entries:
            if not d & used:
                used |= d
                packing += 1
        best_cov = 0
        for i in _bits(allowed):
            cov = (self.cover[i] & need).bit_count()
            if cov > best_cov:
                best_cov = cov
        counting = -(-need.bit_count() // best_cov)
        return max(packing, counting), entries[0]

    def greedy(self, allowed: int | None = None) -> list[int] | None:
        allowed = self.all_cands if allowed is None else allowed
        need = self.need
        chosen = []
        while need:
            best_i, best_cov = -1, 0
            for i in _bits(allowed):
                cov = (self.cover[i] & need).bit_count()
                if cov > best_cov:
                    best_i, best_cov = i, cov
            if best_i < 0:
                return None
            chosen.append(best_i)
            need &= ~self.cover[best_i]
        return chosen

    # -- minimum size --------------------------------------------------------------

    def minimum(self, limit: int | None = None) -> int | None:
        """Smallest number of candidates covering ``need``; None if above ``limit``."""
        if not self.need:
            return 0
        greedy = self.greedy()
        if greedy is None:
            return None
        self._best = len(greedy)
        if limit is not None and self._best > limit:
            self._best = limit + 1
        self._search(self.need, self.all_cands, 0)
        if limit is not None and self._best > limit:
            return None
        return self._best

    def _search(self, need: int, allowed: int, size: int) -> None:
        self.nodes += 1
        if not need:
            if size < self._best:
                self._best = size
            return
        if size + 1 >= self._best:
            return
        lb, tight = self._bound(need, allowed)
        if lb is None or size + lb >= self._best:
            return
        _, _, branch = tight
        options = [(self.cover[i] & need, i) for i in _bits(branch)]
        # drop candidates whose new coverage is contained in another option's
        kept = []
        for cov, i in options:
            if any(cov | cov2 == cov2 and (cov != cov2 or j < i) for cov2, j in options if j != i):
                continue
            kept.append((cov, i))
        kept.sort(key=lambda t: (-t[0].bit_count(), t[1]))
        for cov, i in kept:
            self._search(need & ~cov, allowed, size + 1)
            allowed &= ~(1 << i)
            if size + 1 >= self._best:
                return

    # -- canonical solution ---------------------------------------------------------

    def lex_first(self, size: int) -> list[int] | None:
        """Lexicographically smallest cover with exactly ``size`` candidates.

        ``size`` must be the minimum, otherwise the result need not be the
        lexicographically smallest among covers of that size.
        """
        return self._lex(0, self.need, size, [])

    def _lex(self, i: int, need: int, left: int, chosen: list[int]):
        self.nodes += 1
        if not need:
            return chosen
        if left == 0 or i >= self.n_cand:
            return None
        allowed = self.all_cands & ~((1 << i) - 1)
        lb, _ = self._bound(need, allowed)
        if lb is None or lb > left:
            return None
        if self.cover[i] & need:
            found = self._lex(i + 1, need & ~self.cover[i], left - 1, chosen + [i])
            if found is not None:
                return found
        return self._lex(i + 1, need, left, chosen)


def min_dominating_set(inst: DominatingInstance) -> frozenset:
    """Minimum dominating set containing ``inst.forced``.

    Minimises the number of non-forced vertices; among optimal solutions the
    one with the lexicographically smallest sorted vertex list is returned.
    """
    verts = sorted(inst.graph)
    index = {v: i for i, v in enumerate(verts)}
    closed = []
    for v in verts:
        mask = 1 << index[v]
        for w in inst.graph[v]:
            mask |= 1 << index[w]
        closed.append(mask)
    need = (1 << len(verts)) - 1
    for f in inst.forced:
        need &= ~closed[index[f]]
    cands = [v for v in verts if v not in inst.forced]
    search = CoverSearch([closed[index[v]] for v in cands], need)
    size = search.minimum()
    picked = search.lex_first(size)
    return inst.forced | frozenset(cands[i] for i in picked)
