"""Trigraph calculus: contraction semantics, replay, and sequence restriction.

A trigraph is a simple graph with a subset of edges marked red. Contracting
vertices a, b into a fresh vertex x0 keeps common black neighbours black and
turns inherited red neighbours plus the symmetric difference of the two
neighbourhoods red. The width of a sequence is the largest red degree ever
seen while replaying it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidStepError
from .graphs import Graph


@dataclass(frozen=True)
class ContractionStep:
    a: int
    b: int
    result: int


@dataclass
class ContractionSequence:
    steps: list = field(default_factory=list)
    base_vertex_count: int = 0

    def __len__(self):
        return len(self.steps)

    def is_full(self) -> bool:
        """True if replaying ends with a single live vertex."""
        return len(self.steps) == self.base_vertex_count - 1 or self.base_vertex_count <= 1


class Trigraph:
    """Mutable trigraph with live-vertex set and stem map to original ids.

    Fresh ids for contraction results are assigned by the caller; the
    deterministic policy used by planners and `replay` is
    ``base_vertex_count + step_index``.
    """

    __slots__ = ("black", "red", "stem", "live")

    def __init__(self, g: Graph = None):
        self.black = {}
        self.red = {}
        self.stem = {}
        self.live = set()
        if g is not None:
            for v in range(g.n):
                self.black[v] = set(g.adj[v])
                self.red[v] = set()
                self.stem[v] = frozenset([v])
                self.live.add(v)

    def is_live(self, v: int) -> bool:
        return v in self.live

    def red_degree(self, v: int) -> int:
        if v not in self.live:
            raise InvalidStepError(f"vertex {v} is not live", vertex=v)
        return len(self.red[v])

    def max_red_degree(self) -> int:
        return max((len(self.red[v]) for v in self.live), default=0)

    def neighbours(self, v: int):
        return self.black[v] | self.red[v]

    def contract(self, a: int, b: int, result: int = None):
        """Contract live a,b (adjacency not required) into `result`.

        Returns the new vertex id. Touched neighbour sets are updated in
        place; cost is proportional to deg(a)+deg(b).
        """
        if a == b:
            raise InvalidStepError(f"cannot contract vertex {a} with itself", vertex=a)
        for v in (a, b):
            if v not in self.live:
                raise InvalidStepError(f"vertex {v} is not live", vertex=v)
        if result is None:
            result = max(self.live) + 1 if self.live else 0
        if result in self.live:
            raise InvalidStepError(f"result id {result} already live", vertex=result)

        na = self.black[a] | self.red[a]
        nb = self.black[b] | self.red[b]
        new_black = (self.black[a] & self.black[b]) - {a, b}
        new_red = ((self.red[a] | self.red[b] | (na ^ nb)) - {a, b})

        for w in na | nb:
            self.black[w].discard(a)
            self.black[w].discard(b)
            self.red[w].discard(a)
            self.red[w].discard(b)
        for w in new_black:
            self.black[w].add(result)
        for w in new_red:
            self.red[w].add(result)

        self.black[result] = new_black
        self.red[result] = new_red
        self.stem[result] = self.stem[a] | self.stem[b]
        self.live.discard(a)
        self.live.discard(b)
        self.live.add(result)
        for v in (a, b):
            del self.black[v]
            del self.red[v]
        return result


def contract(g: Trigraph, a: int, b: int, result: int = None) -> Trigraph:
    """Pure-function flavour of Trigraph.contract (copies, then mutates)."""
    h = Trigraph()
    h.black = {v: set(s) for v, s in g.black.items()}
    h.red = {v: set(s) for v, s in g.red.items()}
    h.stem = dict(g.stem)
    h.live = set(g.live)
    h.contract(a, b, result)
    return h


def red_degree(g: Trigraph, v: int) -> int:
    return g.red_degree(v)


class _RedDegreeTracker:
    """Incremental maximum red degree via a degree histogram."""

    def __init__(self):
        self.hist = {}
        self.cur_max = 0

    def set(self, old: int, new: int):
        if old == new:
            return
        if old is not None:
            self.hist[old] -= 1
        if new is not None:
            self.hist[new] = self.hist.get(new, 0) + 1
            if new > self.cur_max:
                self.cur_max = new
        while self.cur_max > 0 and self.hist.get(self.cur_max, 0) == 0:
            self.cur_max -= 1


def replay_and_width(g0: Graph, seq: ContractionSequence, on_state=None):
    """Replay `seq` on plain graph g0; return (width, per-step max trace).

    Width is the maximum red degree over every trigraph of the sequence,
    including the initial one (always 0) and the one after the final applied
    step. The maximum is maintained incrementally: only vertices whose red
    sets changed in a step are retouched.

    `on_state(step_index, trigraph)` is invoked after each step when given
    (used by audits; slows replay down to full inspection).
    """
    if seq.base_vertex_count != g0.n:
        raise InvalidStepError(
            f"sequence declares n={seq.base_vertex_count}, graph has {g0.n}")
    t = Trigraph(g0)
    tracker = _RedDegreeTracker()
    for v in t.live:
        tracker.set(None, 0)
    trace = []
    width = 0
    for i, st in enumerate(seq.steps):
        try:
            changed = _contract_tracked(t, st, tracker)
        except InvalidStepError as e:
            raise InvalidStepError(f"step {i}: {e}", step_index=i, vertex=e.vertex) from None
        del changed
        width = max(width, tracker.cur_max)
        trace.append(tracker.cur_max)
        if on_state is not None:
            on_state(i, t)
    return width, trace


def _contract_tracked(t: Trigraph, st: ContractionStep, tracker: _RedDegreeTracker):
    a, b, result = st.a, st.b, st.result
    if a == b:
        raise InvalidStepError(f"cannot contract vertex {a} with itself", vertex=a)
    for v in (a, b):
        if v not in t.live:
            raise InvalidStepError(f"vertex {v} is not live", vertex=v)
    if result in t.live:
        raise InvalidStepError(f"result id {result} already live", vertex=result)

    na = t.black[a] | t.red[a]
    nb = t.black[b] | t.red[b]
    new_black = (t.black[a] & t.black[b]) - {a, b}
    new_red = (t.red[a] | t.red[b] | (na ^ nb)) - {a, b}

    touched = na | nb
    for w in touched:
        old = len(t.red[w])
        t.black[w].discard(a)
        t.black[w].discard(b)
        t.red[w].discard(a)
        t.red[w].discard(b)
        if w in new_black:
            t.black[w].add(result)
        elif w in new_red:
            t.red[w].add(result)
        new = len(t.red[w])
        tracker.set(old, new)
    tracker.set(len(t.red[a]), None)
    tracker.set(len(t.red[b]), None)
    tracker.set(None, len(new_red))

    t.black[result] = new_black
    t.red[result] = new_red
    t.stem[result] = t.stem[a] | t.stem[b]
    t.live.discard(a)
    t.live.discard(b)
    t.live.add(result)
    del t.black[a], t.red[a], t.black[b], t.red[b]
    return touched


# ------------------------------------------------- partition oracle

def edge_class(g: Graph, xs, ys) -> str:
    """Status of the (X, Y) bundle in plain g: 'none', 'black' or 'red'.

    black  <=>  |E(X,Y)| = |X||Y|;  none  <=>  E(X,Y) empty;  red otherwise.
    """
    cnt = 0
    for x in xs:
        cnt += sum(1 for y in ys if y in g.adj[x])
    if cnt == 0:
        return "none"
    if cnt == len(xs) * len(ys):
        return "black"
    return "red"


def partition_status(g: Graph, trig: Trigraph):
    """Recompute every live-pair status from stems; return mismatches.

    Empty result means the trigraph agrees with the partition oracle.
    """
    bad = []
    live = sorted(trig.live)
    for i, x in enumerate(live):
        for y in live[i + 1:]:
            want = edge_class(g, trig.stem[x], trig.stem[y])
            if y in trig.red[x]:
                got = "red"
            elif y in trig.black[x]:
                got = "black"
            else:
                got = "none"
            if want != got:
                bad.append((x, y, want, got))
    return bad


# ------------------------------------------------- sequence restriction

def restrict_sequence(seq: ContractionSequence, keep, base_vertex_count=None):
    """Restrict a sequence to the induced subgraph on `keep`.

    Steps with at least one original kept vertex on each side are kept and
    act on the surviving representatives; steps touching `keep` on at most
    one side are dropped. Vertices of the restricted sequence are the ranks
    in sorted(keep); fresh ids continue from len(keep) in kept-step order.
    """
    if base_vertex_count is None:
        base_vertex_count = seq.base_vertex_count
    keep = set(keep)
    order = sorted(keep)
    rank = {v: i for i, v in enumerate(order)}

    # rep[v]: id in the restricted sequence representing v's kept part, or None
    rep = {}
    for v in range(base_vertex_count):
        rep[v] = rank.get(v)
    nxt = len(order)
    out = []
    for st in seq.steps:
        ra, rb = rep.get(st.a), rep.get(st.b)
        if ra is not None and rb is not None:
            out.append(ContractionStep(ra, rb, nxt))
            rep[st.result] = nxt
            nxt += 1
        else:
            rep[st.result] = ra if ra is not None else rb
    return ContractionSequence(steps=out, base_vertex_count=len(order))
