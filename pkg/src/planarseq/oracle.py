"""Exact twin-width for tiny graphs by search over partition states.

A state is the partition of the original vertex set into live parts; the
red/black status of a part pair follows from the partition alone (full
bipartite bundle = black, empty = none, otherwise red). The solver asks,
for increasing budgets k, whether some contraction order keeps every
intermediate maximum red degree at most k, memoising on the partition
(stored as a frozenset of vertex bitmasks, which is canonical).
"""

from __future__ import annotations

from .errors import SizeLimitError
from .graphs import Graph

HARD_CAP = 12


def _adj_masks(g: Graph):
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Searcher:
    def __init__(self, g: Graph, memo=True):
        self.adjm = _adj_masks(g)
        self.n = g.n
        self.use_memo = memo

    def _pair_red(self, x_mask, y_mask):
        cnt = 0
        size = 0
        for v in _bits(x_mask):
            cnt += bin(self.adjm[v] & y_mask).count("1")
            size += 1
        total = size * bin(y_mask).count("1")
        return 0 < cnt < total

    def _red_max(self, parts):
        deg = [0] * len(parts)
        mx = 0
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if self._pair_red(parts[i], parts[j]):
                    deg[i] += 1
                    deg[j] += 1
        for d in deg:
            if d > mx:
                mx = d
        return mx

    def decide(self, budget: int) -> bool:
        memo = {}
        parts = tuple(1 << v for v in range(self.n))

        def rec(parts):
            if len(parts) == 1:
                return True
            key = frozenset(parts) if self.use_memo else None
            if key is not None and key in memo:
                return memo[key]
            ok = False
            m = len(parts)
            for i in range(m):
                for j in range(i + 1, m):
                    child = list(parts)
                    merged = child[i] | child[j]
                    del child[j], child[i]
                    child.append(merged)
                    child = tuple(sorted(child))
                    if self._red_max(child) <= budget and rec(child):
                        ok = True
                        break
                if ok:
                    break
            if key is not None:
                memo[key] = ok
            return ok

        if self._red_max(parts) > budget:
            return False
        return rec(parts)


def exact_twinwidth(g: Graph, budget: int = None, memo: bool = True):
    """Minimum width over all full contraction sequences of g.

    With `budget` k the return value is min(width, k + 1): callers testing
    `result <= k` get the exact decision without paying for larger widths.
    """
    if g.n > HARD_CAP:
        raise SizeLimitError(f"exact solver capped at {HARD_CAP} vertices, got {g.n}")
    if g.n <= 1:
        return 0
    s = _Searcher(g, memo=memo)
    top = g.n - 1 if budget is None else min(budget, g.n - 1)
    for k in range(top + 1):
        if s.decide(k):
            return k
    return top + 1


def crosscheck(g: Graph, planned_width: int = None, bipartite_width: int = None):
    """Assert exact <= planned <= bound for a small planar instance.

    Returns a dict report; raises AssertionError on a violated inequality.
    Widths may be passed in to avoid re-planning.
    """
    from .planar import PLANAR_WIDTH_BOUND, plan_planar_sequence
    from .trigraph import replay_and_width

    if g.n > 10:
        raise SizeLimitError("crosscheck capped at 10 vertices")
    exact = exact_twinwidth(g)
    if planned_width is None:
        planned_width, _ = replay_and_width(g, plan_planar_sequence(g))
    report = {"exact": exact, "planned": planned_width}
    assert exact <= planned_width <= PLANAR_WIDTH_BOUND, report
    if g.bipartition() is not None:
        from .bipartite import BIPARTITE_WIDTH_BOUND, plan_bipartite_sequence
        if bipartite_width is None:
            bipartite_width, _ = replay_and_width(g, plan_bipartite_sequence(g))
        report["bipartite"] = bipartite_width
        assert exact <= bipartite_width <= BIPARTITE_WIDTH_BOUND, report
    return report
