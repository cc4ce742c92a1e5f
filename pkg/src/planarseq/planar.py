"""Width-9 contraction sequences for planar graphs.

The planner triangulates the input (keeping it induced), builds a
left-aligned BFS tree from a root on the outer triangular face, and runs a
recursive division of the region between two vertical boundary paths:

* the bottom edge of the region closes a triangular inner face; its third
  corner either shortens a boundary path (degenerate cases) or is an
  interior vertex v3 whose vertical path P3 splits the region in two;
* the two sub-regions are contracted recursively, then their survivor
  columns are merged layer by layer, top column first (tau0/tau3), then the
  left one (tau4), finishing with the shallow-layer end games (tau5).

Only pairs inside the same BFS layer are contracted, survivors thin out to
at most two in the layer under the region top and one per deeper layer, and
no intermediate trigraph is ever materialised: each recursive call returns
plain per-layer survivor lists. The realised width is at most 9 on every
intermediate trigraph; the final phase that collapses the leftover path
stays below that.

Region orientation is carried by the dart of the closing edge: the face on
its left is the region's inner face, and sub-region darts are the reversals
of that face's own darts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bfs import BfsTree, left_aligned_bfs_tree
from .counters import Counters
from .embedding import PlaneGraph, connect_components, embed, triangulate
from .errors import InvalidStepError, RegionInvariantError
from .graphs import Graph
from .trigraph import ContractionSequence, ContractionStep, Trigraph

PLANAR_WIDTH_BOUND = 9


class SeqBuilder:
    """Append-only step recorder with deterministic fresh ids."""

    def __init__(self, n, vlayer=None):
        self.n = n
        self.steps = []
        self.comments = {}
        self.next_id = n
        self.vlayer = vlayer  # id -> BFS layer, for the L-respecting check

    def emit(self, a, b, phase=None, check_layer=True):
        if self.vlayer is not None:
            la, lb = self.vlayer.get(a), self.vlayer.get(b)
            if check_layer and la != lb:
                raise RegionInvariantError(
                    f"step {len(self.steps)} contracts across layers: "
                    f"{a}@{la} with {b}@{lb}")
        rid = self.next_id
        self.next_id += 1
        if phase:
            self.comments[len(self.steps)] = phase
        self.steps.append(ContractionStep(a, b, rid))
        if self.vlayer is not None:
            self.vlayer[rid] = self.vlayer.get(a)
        return rid

    def sequence(self):
        return ContractionSequence(steps=list(self.steps), base_vertex_count=self.n)


@dataclass
class PlanResult:
    sequence: ContractionSequence          # on the original input graph
    host_sequence: ContractionSequence     # on the augmented triangulation
    host: PlaneGraph
    tree: BfsTree
    added: list
    region_steps: int                      # host steps before the final phase
    comments: dict
    counters: Counters
    boundary: tuple                        # (P1, P2) of the top region


def _fold(builder, items, phase):
    """Contract items left to right into one vertex; None-safe."""
    items = [x for x in items if x is not None]
    if not items:
        return None
    cur = items[0]
    for nxt in items[1:]:
        cur = builder.emit(cur, nxt, phase)
    return cur


class _PlanarRegionSolver:
    """Recursive region contraction, driven with an explicit stack."""

    def __init__(self, pg: PlaneGraph, tree: BfsTree, builder: SeqBuilder,
                 counters: Counters):
        self.pg = pg
        self.t = tree
        self.b = builder
        self.c = counters
        self.adj = pg.g.adj
        self.layer = tree.layer
        self.parent = tree.parent

    # .................................................. driver

    def run(self, P1, P2, fdart):
        stack = [self._solve(P1, P2, fdart)]
        ret = None
        while stack:
            self.c.peak("region_stack_peak", len(stack))
            try:
                child = stack[-1].send(ret)
            except StopIteration as stop:
                stack.pop()
                ret = stop.value
                continue
            stack.append(self._solve(*child))
            ret = None
        return ret

    # .................................................. helpers

    def _third_corner(self, v1, v2):
        # triangle face left of (v1, v2): corner precedes v1 in rot at v2
        r = self.pg.rot[v2]
        return r[self.pg.pos[v2][v1] - 1]

    def _climb(self, v3, pos1, pos2):
        """Vertical chain from v3 up to the first region-boundary vertex."""
        chain = [v3]
        w = self.parent[v3]
        while w not in pos1 and w not in pos2:
            if w < 0:
                raise RegionInvariantError(f"chain from {v3} escaped the region")
            chain.append(w)
            w = self.parent[w]
            self.c.bump("p3_edges")
        chain.append(w)
        chain.reverse()
        return chain  # [u3, ..., v3]

    def _absorb(self, v3, out, flags, ell, phase):
        """Contract a pending boundary-extension vertex into its layer cell."""
        j = self.layer[v3]
        cell = out.get(j, [])
        if j == ell + 1:
            # avoid creating a red edge at the region top: join own class
            mate = next((x for x in cell if flags.get(x)), None)
            if mate is None:
                cell.append(v3)
                out[j] = cell
                flags[v3] = True  # v3 hangs from the top by its parental edge
                return
            cell.remove(mate)
            nid = self.b.emit(v3, mate, phase)
            cell.append(nid)
            out[j] = cell
            flags.pop(mate, None)
            flags[nid] = True
            return
        if not cell:
            out[j] = [v3]
            return
        if len(cell) != 1:
            raise RegionInvariantError(f"layer {j} holds {cell} before absorbing {v3}")
        nid = self.b.emit(v3, cell[0], phase)
        out[j] = [nid]

    def _check_out(self, out, flags, ell):
        for j, cell in out.items():
            if j == ell + 1:
                if len(cell) > 2:
                    raise RegionInvariantError(f"{len(cell)} survivors in layer {j}")
                if len(cell) == 2:
                    fa, fb = flags.get(cell[0]), flags.get(cell[1])
                    if fa is None or fb is None or fa == fb:
                        raise RegionInvariantError(
                            f"top-layer pair {cell} lacks opposite adjacency classes")
            elif len(cell) > 1:
                raise RegionInvariantError(f"{len(cell)} survivors in layer {j}: {cell}")

    # .................................................. recursion

    def _solve(self, P1, P2, fdart):
        """Yield child regions; return (out, flags).

        out maps layer -> surviving vertex ids of the contracted interior;
        flags mark the survivors in layer(top)+1 that are fully adjacent to
        the region top (the others are fully non-adjacent).
        """
        self.c.bump("regions")
        pos1 = {v: i for i, v in enumerate(P1)}
        pos2 = {v: i for i, v in enumerate(P2)}
        u1 = P1[0]
        ell = self.layer[u1]
        pending = []

        while True:
            if len(P1) + len(P2) <= 3:
                out, flags = {}, {}
                break
            v1, v2 = P1[-1], P2[-1]
            x = self._third_corner(v1, v2)
            self.c.bump("face_probes")

            if x in pos1 and x == P1[-2]:
                # inner face leans on P1: drop v1, close at {x, v2}
                del pos1[v1]
                P1.pop()
                fdart = (x, v2)
                continue
            if x in pos2 and x == P2[-2]:
                del pos2[v2]
                P2.pop()
                fdart = (v1, x)
                continue
            if x in pos1 or x in pos2:
                raise RegionInvariantError(
                    f"face corner {x} lies on the boundary away from {v1}/{v2}")

            v3 = x
            chain = self._climb(v3, pos1, pos2)  # [u3, ..., v3]
            u3 = chain[0]

            if u3 == v1:
                # v3 hangs under v1: extend P1 and keep going
                if len(chain) != 2:
                    raise RegionInvariantError(
                        f"chain to {v1} has {len(chain) - 1} edges, expected 1")
                P1.append(v3)
                pos1[v3] = len(P1) - 1
                fdart = (v3, v2)
                pending.append(v3)
                self.c.bump("extend_steps")
                continue

            out, flags = yield from self._split(P1, pos1, P2, pos2, u3, chain,
                                                v1, v2, ell)
            break

        for v3 in reversed(pending):
            self._absorb(v3, out, flags, ell, "absorb extension vertex")
        self._check_out(out, flags, ell)
        return out, flags

    # _split is assigned below (kept at module level for readability)


def _split_impl(self, P1, pos1, P2, pos2, u3, chain, v1, v2, ell):
    """Main induction step: divide at P3 = chain, recurse, merge columns."""
    layer = self.layer
    u1 = P1[0]
    if u3 == u1:
        k = 0
        C1 = (list(P1), list(chain), (v1, chain[-1]))
        C2 = (list(chain), list(P2), (chain[-1], v2))
    elif u3 in pos1:
        k = 1
        idx = pos1[u3]
        C1 = (P1[idx:], list(chain), (v1, chain[-1]))
        C2 = (P1[:idx + 1] + chain[1:], list(P2), (chain[-1], v2))
    elif u3 in pos2:
        k = 2
        idx = pos2[u3]
        if u3 == v2:
            self.c.bump("u3_is_v2")
        C1 = (list(P1), P2[:idx + 1] + chain[1:], (v1, chain[-1]))
        C2 = (list(chain), P2[idx:], (chain[-1], v2))
    else:  # unreachable: _climb stops only on boundary vertices
        raise RegionInvariantError(f"u3={u3} not on the region boundary")

    LL1, fl1 = yield C1
    LL2, fl2 = yield C2

    v3 = chain[-1]
    a = layer[u3] + 1
    b = max(ell + 3, a)

    # tau0: thin the pair at the top layer of the sub-region rooted at u3
    if k != 0:
        side = LL1 if k == 1 else LL2
        cell = side.get(a)
        if cell and len(cell) == 2:
            nid = self.b.emit(cell[0], cell[1], "tau0")
            side[a] = [nid]

    # right column: survivors right of P3, plus P3's own interior vertices
    colR = LL2
    extras = []  # P3 vertices in layers handled by the end games
    for w in chain[1:]:
        if layer[w] >= b:
            colR.setdefault(layer[w], []).append(w)
        else:
            extras.append(w)

    d = max(max(colR, default=0), layer[v3])
    for j in range(d, b - 1, -1):
        cell = colR.get(j)
        if cell and len(cell) > 1:
            if len(cell) > 2:
                raise RegionInvariantError(f"tau3 layer {j} holds {cell}")
            colR[j] = [self.b.emit(cell[0], cell[1], "tau3")]

    colL = LL1
    d2 = max(max(colL, default=0), layer[v3])
    for j in range(max(d, d2), b - 1, -1):
        cell = colL.pop(j, []) + colR.get(j, [])
        if len(cell) > 2:
            raise RegionInvariantError(f"tau4 layer {j} holds {cell}")
        if len(cell) == 2:
            cell = [self.b.emit(cell[0], cell[1], "tau4")]
        if cell:
            colR[j] = cell

    out = colR
    for j, cell in colL.items():
        out.setdefault(j, []).extend(cell)

    if a >= b:
        flags = fl2 if k == 1 else fl1
        return out, flags

    # end games: u3 lies within one layer of the region top
    if k == 0:
        # P3 meets the top: pair the four possible stems beside it by their
        # adjacency class at u1, then fold the layer below onto P3's vertex
        t = extras[0] if extras and layer[extras[0]] == ell + 1 else None
        z = next((w for w in extras if layer[w] == ell + 2), None)
        groups = {True: [], False: []}
        for vid in out.pop(ell + 1, []):
            if vid in fl1:
                groups[bool(fl1[vid])].append(vid)
            elif vid in fl2:
                groups[bool(fl2[vid])].append(vid)
            else:
                raise RegionInvariantError(f"survivor {vid} has no adjacency class")
        reps = {}
        for cls in (True, False):
            g = groups[cls]
            if len(g) > 2:
                raise RegionInvariantError(f"adjacency class {cls} holds {g}")
            reps[cls] = _fold(self.b, g, "tau5 top pair")
        if t is not None:
            t_cls = u1 in self.adj[t]
            if reps[t_cls] is None:
                reps[t_cls] = t
            else:
                reps[t_cls] = self.b.emit(reps[t_cls], t, "tau5 absorb P3 top")
        flags = {}
        cell = []
        for cls in (True, False):
            if reps[cls] is not None:
                cell.append(reps[cls])
                flags[reps[cls]] = cls
        if cell:
            out[ell + 1] = cell
        x5 = out.pop(ell + 2, [])
        merged = _fold(self.b, x5 + ([z] if z is not None else []), "tau5")
        if merged is not None:
            out[ell + 2] = [merged]
        return out, flags

    # cases a/b: u3 is the neighbour of u1 on P1 (k=1) or on P2 (k=2)
    z = extras[0] if extras else None
    if z is not None and layer[z] != ell + 2:
        raise RegionInvariantError(f"unexpected shallow P3 vertex {z}")
    near = out.pop(ell + 2, [])
    if len(near) > 2:
        raise RegionInvariantError(f"end case layer {ell + 2} holds {near}")
    merged = _fold(self.b, near + ([z] if z is not None else []), "tau5")
    if merged is not None:
        out[ell + 2] = [merged]
    flags = fl2 if k == 1 else fl1
    return out, flags


_PlanarRegionSolver._split = _split_impl


def plan_planar_sequence(h: Graph, counters: Counters = None) -> ContractionSequence:
    """Full contraction sequence of width <= 9 for a simple planar graph."""
    return plan_planar(h, counters).sequence


def plan_planar(h: Graph, counters: Counters = None) -> PlanResult:
    """Like plan_planar_sequence but keeps the host artefacts for audits."""
    c = counters or Counters()
    if h.n <= 2:
        steps = []
        if h.n == 2:
            steps = [ContractionStep(0, 1, 2)]
        seq = ContractionSequence(steps=steps, base_vertex_count=h.n)
        return PlanResult(seq, seq, None, None, [], len(steps), {}, c, ((), ()))

    g, hub = connect_components(h)
    pg = embed(g)
    pg, added = triangulate(pg)
    added = hub + added
    tree = left_aligned_bfs_tree(pg, min(pg.faces[pg.outer]), counters=c)
    r = tree.root

    walk = pg.faces[pg.outer]
    i = walk.index(r)
    v2 = walk[(i + 1) % 3]   # outer walk successor: right boundary edge
    v1 = walk[(i - 1) % 3]   # predecessor: left boundary edge

    vlayer = {v: tree.layer[v] for v in range(pg.g.n)}
    builder = SeqBuilder(pg.g.n, vlayer=vlayer)
    solver = _PlanarRegionSolver(pg, tree, builder, c)
    fdart = pg.other_face_dart(v1, v2, pg.outer)
    if fdart != (v1, v2):
        raise RegionInvariantError("outer face orientation mismatch at the root")
    out, _flags = solver.run([r, v1], [r, v2], (v1, v2))
    region_steps = len(builder.steps)

    # final phase: collapse layer 1, then the leftover path, bottom up
    l1 = [v1, v2] + sorted(out.pop(1, []))
    top = _fold_final(builder, l1, "final layer 1")
    col = sorted((j, cell[0]) for j, cell in out.items() if cell)
    cur = None
    for _, vid in reversed(col):
        cur = vid if cur is None else builder.emit(cur, vid, "final path",
                                                   check_layer=False)
    for vid in (top, r):
        cur = vid if cur is None else builder.emit(cur, vid, "final path",
                                                   check_layer=False)
    host_seq = builder.sequence()

    from .trigraph import restrict_sequence
    seq = restrict_sequence(host_seq, range(h.n))
    c.bump("host_vertices", pg.g.n)
    c.bump("host_edges", pg.g.m)
    c.bump("steps", len(host_seq.steps))
    return PlanResult(seq, host_seq, pg, tree, added, region_steps,
                      builder.comments, c, ((r, v1), (r, v2)))


def _fold_final(builder, items, phase):
    cur = None
    for vid in items:
        cur = vid if cur is None else builder.emit(cur, vid, phase,
                                                   check_layer=False)
    return cur


# ------------------------------------------------------------------ audit

@dataclass
class AuditReport:
    violations: list = field(default_factory=list)
    width: int = 0
    steps: int = 0

    @property
    def ok(self):
        return not self.violations


def audit_region_conditions(pg: PlaneGraph, tree: BfsTree, boundary,
                            seq: ContractionSequence, nsteps=None,
                            max_u=PLANAR_WIDTH_BOUND, p1_cap=5, p2_cap=3,
                            p2_near_cap=4, bipartite=False) -> AuditReport:
    """Replay the region part of `seq`, asserting the numbered conditions.

    boundary is the (P1, P2) vertex-tuple pair of the audited region. After
    every step: interior stems have red degree <= max_u (I); the region top
    has no red neighbour among them, P1 vertices at most p1_cap, P2 at most
    p2_cap except the top's P2-neighbour with p2_near_cap (II); every red
    edge stays inside interior x (interior + boundary) (IV); and no P2
    vertex sees the previous layer of interior-or-P1 (V). Steps must pair
    vertices of one BFS layer. `bipartite` additionally forbids red edges
    within a layer (they must span consecutive layers).
    """
    P1, P2 = [list(p) for p in boundary]
    rep = AuditReport()
    if nsteps is None:
        nsteps = len(seq.steps)
    onC = set(P1) | set(P2)
    u1 = P1[0]
    p2_near = P2[1] if len(P2) > 1 else None
    trig = Trigraph(pg.g)
    layer = dict(enumerate(tree.layer))
    interior = {v for v in range(pg.g.n) if v not in onC}

    def red_in_U(v):
        return sum(1 for w in trig.red[v] if w in interior)

    for i, st in enumerate(seq.steps[:nsteps]):
        if st.a not in interior or st.b not in interior:
            rep.violations.append((i, "step contracts a boundary vertex"))
            return rep
        if layer[st.a] != layer[st.b]:
            rep.violations.append((i, f"not layer-respecting: {st.a},{st.b}"))
            return rep
        layer[st.result] = layer[st.a]
        try:
            trig.contract(st.a, st.b, st.result)
        except InvalidStepError as e:
            rep.violations.append((i, f"replay failure: {e}"))
            return rep
        interior.discard(st.a)
        interior.discard(st.b)
        interior.add(st.result)
        rep.steps += 1

        for v in interior:
            rd = len(trig.red[v])
            rep.width = max(rep.width, rd)
            if rd > max_u:
                rep.violations.append((i, f"(I) vertex {v} red degree {rd}"))
        if red_in_U(u1) > 0:
            rep.violations.append((i, f"(II) top {u1} has a red interior neighbour"))
        for v in P1[1:]:
            if (cap := p1_cap) < red_in_U(v):
                rep.violations.append((i, f"(II) P1 vertex {v} exceeds {cap}"))
        for v in P2[1:]:
            cap = p2_near_cap if v == p2_near else p2_cap
            if red_in_U(v) > cap:
                rep.violations.append((i, f"(II) P2 vertex {v} exceeds {cap}"))
        for v in list(trig.live):
            for w in trig.red[v]:
                if v not in interior and w not in interior:
                    rep.violations.append((i, f"(IV) red edge {v},{w} outside"))
                if bipartite and abs(layer[v] - layer[w]) != 1:
                    rep.violations.append((i, f"red edge {v},{w} within a layer"))
        for v in P2:
            for w in trig.neighbours(v):
                if layer[w] == layer[v] - 1 and (w in interior or (w in P1 and w != u1)):
                    rep.violations.append((i, f"(V) edge {v}->{w} one layer up"))
        if rep.violations:
            return rep
    return rep
