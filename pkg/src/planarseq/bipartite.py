"""Width-6 contraction sequences for bipartite planar graphs.

Same skeleton as the planar planner, adapted to quadrangulations. A region
hangs between an r-geodesic LEFT path and a vertical RIGHT path that share
their top vertex, closed at the bottom by one edge whose inner quadrangular
face drives the recursion:

* if the face leans entirely on the boundary, the region shrinks;
* if two of its other edges lie on the skeleton formed by the boundary and
  the corners' vertical paths, one sub-region remains and the one or two
  interior corners are absorbed into their layers afterwards;
* otherwise each remaining face edge spawns one piece between consecutive
  vertical paths (a piece topping right beside the region top may be split
  once more by a shortcut edge). Pieces are solved right to left and merged
  pairwise: the shared path joins the merged interior, the right column is
  collapsed layer by layer (tau3/tau4), the left piece's top pair is fixed
  through the column (tau5), and a final descending sweep (tau6) thins
  everything to one survivor per layer, two just under the top.

Because layers of a bipartite graph are independent sets, contractions only
send red edges to adjacent layers, which is what keeps the bound at 6.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bfs import left_aligned_bfs_tree
from .counters import Counters
from .embedding import connect_components, embed, quadrangulate
from .errors import ParityError, RegionInvariantError
from .graphs import Graph
from .planar import PlanResult, SeqBuilder, _fold_final
from .trigraph import ContractionSequence, ContractionStep, restrict_sequence

BIPARTITE_WIDTH_BOUND = 6


@dataclass
class _Acc:
    """Accumulated merged region while sweeping pieces right to left."""
    A: list        # left boundary, top-down (r-geodesic)
    B: list        # right boundary, top-down (vertical)
    sink: int
    LL: dict       # layer -> surviving ids
    FL: dict       # survivor id -> adjacency class at sink (top layer + 1 only)


class _BipartiteRegionSolver:
    def __init__(self, pg, tree, builder: SeqBuilder, counters: Counters):
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

    def _quad_corners(self, v1, v2):
        """Corners (b, c) of the inner face at (v1, v2); walk is v1,v2,b,c."""
        pg = self.pg
        b = pg.rot[v2][pg.pos[v2][v1] - 1]
        c = pg.rot[b][pg.pos[b][v2] - 1]
        back = pg.rot[c][pg.pos[c][b] - 1]
        if back != v1:
            raise RegionInvariantError(
                f"inner face at ({v1},{v2}) is not a quadrilateral")
        return b, c

    def _climb(self, start, pos1, pos2, extra=()):
        chain = [start]
        w = self.parent[start]
        while w not in pos1 and w not in pos2 and w not in extra:
            if w < 0:
                raise RegionInvariantError(f"chain from {start} escaped the region")
            chain.append(w)
            w = self.parent[w]
            self.c.bump("p3_edges")
        chain.append(w)
        chain.reverse()
        return chain  # [top, ..., start]

    def _absorb(self, v, out, flags, ell, u1, phase):
        """Contract a leftover face corner into its layer cell."""
        j = self.layer[v]
        cell = out.get(j, [])
        if j == ell + 1:
            cls = u1 in self.adj[v]
            mate = next((x for x in cell if flags.get(x) == cls), None)
            if mate is None:
                cell.append(v)
                out[j] = cell
                flags[v] = cls
                return
            cell.remove(mate)
            nid = self.b.emit(v, mate, phase)
            cell.append(nid)
            out[j] = cell
            flags.pop(mate, None)
            flags[nid] = cls
            return
        if not cell:
            out[j] = [v]
            return
        if len(cell) != 1:
            raise RegionInvariantError(f"layer {j} holds {cell} before absorbing {v}")
        out[j] = [self.b.emit(v, cell[0], phase)]

    def _check_out(self, out, flags, ell):
        for j, cell in out.items():
            if j == ell + 1:
                if len(cell) > 2:
                    raise RegionInvariantError(f"{len(cell)} survivors in layer {j}")
                if len(cell) == 2:
                    fa, fb = flags.get(cell[0]), flags.get(cell[1])
                    if fa is None or fb is None or fa == fb:
                        raise RegionInvariantError(
                            f"top-layer pair {cell} lacks opposite classes")
            elif len(cell) > 1:
                raise RegionInvariantError(f"{len(cell)} survivors in layer {j}")

    def _class_of(self, vid, sink, *flag_dicts):
        for fl in flag_dicts:
            if vid in fl:
                return bool(fl[vid])
        if vid < self.pg.g.n:
            return sink in self.adj[vid]
        raise RegionInvariantError(f"stem {vid} has no recorded adjacency class")

    # .................................................. recursion

    def _solve(self, P1, P2, fdart):
        self.c.bump("regions")
        pos1 = {v: i for i, v in enumerate(P1)}
        pos2 = {v: i for i, v in enumerate(P2)}
        u1 = P1[0]
        ell = self.layer[u1]

        while True:
            if len(P1) + len(P2) <= 3:
                out, flags = {}, {}
                break
            v1, v2 = P1[-1], P2[-1]
            bq, cq = self._quad_corners(v1, v2)
            self.c.bump("face_probes")
            b_on = bq in pos1 or bq in pos2
            c_on = cq in pos1 or cq in pos2

            if b_on and c_on:
                # whole face on the boundary: shrink and continue
                if bq in pos2 and cq in pos1:
                    if bq != P2[-2] or cq != P1[-2]:
                        raise RegionInvariantError("face corners off the path ends")
                    del pos1[v1], pos2[v2]
                    P1.pop()
                    P2.pop()
                    fdart = (cq, bq)
                elif bq in pos2 and cq in pos2:
                    if bq != P2[-2] or cq != P2[-3]:
                        raise RegionInvariantError("face corners off the path ends")
                    del pos2[v2], pos2[bq]
                    P2.pop()
                    P2.pop()
                    fdart = (v1, cq)
                elif bq in pos1 and cq in pos1:
                    if cq != P1[-2] or bq != P1[-3]:
                        raise RegionInvariantError("face corners off the path ends")
                    del pos1[v1], pos1[cq]
                    P1.pop()
                    P1.pop()
                    fdart = (bq, v2)
                else:
                    raise RegionInvariantError(
                        "face corners interleave the boundary paths")
                continue

            # vertical paths of the interior corners, right one first; the
            # left corner's climb also stops on the right corner's path
            chains = {}
            if not b_on:
                chains[bq] = self._climb(bq, pos1, pos2)
            if not c_on:
                chains[cq] = self._climb(cq, pos1, pos2,
                                         extra=set(chains.get(bq, ())))

            out, flags = yield from self._pieces(P1, pos1, P2, pos2, chains,
                                                 bq, cq, v1, v2, ell)
            break

        self._check_out(out, flags, ell)
        return out, flags

    # .................................................. general division

    def _pieces(self, P1, pos1, P2, pos2, chains, bq, cq, v1, v2, ell):
        layer = self.layer
        u1 = P1[0]

        yparent = {}
        for lst in (P1, P2, *chains.values()):
            for i in range(1, len(lst)):
                yparent[lst[i]] = lst[i - 1]

        def ascend(start, *stops):
            path = [start]
            while not any(path[-1] in s for s in stops):
                nxt = yparent.get(path[-1])
                if nxt is None:
                    raise RegionInvariantError(f"ascent from {start} left the tree")
                path.append(nxt)
            path.reverse()
            return path  # top-down

        def on_boundary_path(x, y):
            # face edges lying on P1 or P2 spawn no piece; edges that lie on
            # a corner's vertical path still do (an empty two-vertex piece
            # whose corner joins the merge interface)
            return (x in pos2 and y in pos2) or (x in pos1 and y in pos1)

        corners = [v2, bq, cq, v1]  # right to left along the face
        cset = {w: set(chains[w]) for w in chains}

        pieces = []

        def add_piece(q1, q2, fdart):
            if q1[0] != q2[0]:
                raise RegionInvariantError(
                    f"piece paths top at {q1[0]} != {q2[0]}")
            s = q1[0]
            # split: piece tops beside the region top, off the vertical side,
            # and a shortcut edge joins its first two off-top layers
            if (layer[s] == ell + 1 and s not in pos2
                    and len(q2) >= 2 and len(q1) >= 3):
                x, y = q2[1], q1[2]
                if layer[x] == ell + 2 and layer[y] == ell + 3 and y in self.adj[x]:
                    self.c.bump("splits")
                    pieces.append(([x] + q1[2:], q2[1:], fdart))
                    pieces.append((q1[:3], q2[:2], (y, x)))
                    return
            pieces.append((q1, q2, fdart))

        for i in range(3):
            x, y = corners[i], corners[i + 1]
            if on_boundary_path(x, y):
                continue
            right_chains = [cset[w] for w in corners[i + 1:] if w in cset]
            left_chains = [cset[w] for w in corners[1:i + 1] if w in cset]
            q2 = ascend(x, pos1, *right_chains,
                        *([{w} for w in corners[i + 1:3] if w in pos1]))
            q1 = ascend(y, pos2, *left_chains,
                        *([{w} for w in corners[1:i + 1] if w in pos2]))
            add_piece(q1, q2, (y, x))

        acc = None
        touched = {}
        for q1, q2, fdart in pieces:
            shared = sorted({w for w in q1 + q2 if w in touched},
                            key=lambda w: layer[w])
            for w in q1 + q2:
                touched[w] = True
            LLp, FLp = yield (list(q1), list(q2), fdart)
            if acc is None:
                acc = _Acc(A=list(q1), B=list(q2), sink=q1[0], LL=LLp, FL=FLp)
                continue
            acc = self._merge(acc, _Acc(A=list(q1), B=list(q2), sink=q1[0],
                                        LL=LLp, FL=FLp), shared, ell)

        if acc is None:
            raise RegionInvariantError("face division produced no piece")
        # the merged boundary is the region boundary, possibly without path
        # bottoms whose only remaining incident face was the inner one
        if not acc.A or acc.A != P1[:len(acc.A)]:
            raise RegionInvariantError("merged left boundary differs from P1")
        if not acc.B or acc.B != P2[:len(acc.B)]:
            raise RegionInvariantError("merged right boundary differs from P2")
        return acc.LL, acc.FL

    # .................................................. pairwise merge

    def _merge(self, acc: _Acc, pc: _Acc, shared, ell0) -> _Acc:
        """Merge left piece pc onto the accumulated right region acc."""
        layer = self.layer
        s1, s2 = pc.sink, acc.sink
        l1, l2 = layer[s1], layer[s2]
        if min(l1, l2) != ell0:
            raise RegionInvariantError("merged sinks both below the region top")
        s0 = s1 if l1 <= l2 else s2

        # boundary bookkeeping: the union's left side follows the new piece
        # from its sink down; whatever the piece covers of the old boundary
        # (a replaced notch or a dangling chain tail) leaves the boundary
        if l1 == l2:
            if s1 != s2:
                raise RegionInvariantError(f"distinct sinks {s1},{s2} share a layer")
            A0, B0 = pc.A, acc.B
        elif l1 < l2:
            if s2 not in pc.B:
                raise RegionInvariantError("right sink not on the left piece's side")
            A0 = pc.A
            B0 = pc.B[:pc.B.index(s2)] + acc.B
        else:
            if s1 not in acc.A:
                raise RegionInvariantError("left sink not on the accumulated side")
            i = acc.A.index(s1)
            pcset = set(pc.A)
            pcset.update(pc.B)
            A0 = acc.A[:i] + pc.A + [w for w in acc.A[i + 1:] if w not in pcset]
            B0 = acc.B
        bset = set(A0)
        bset.update(B0)
        interface = [w for w in shared if w not in bset]

        out = acc.LL
        flags = {}

        # tau3: top fixes
        if l1 == l2:
            cands = (out.pop(ell0 + 1, []) + pc.LL.pop(ell0 + 1, [])
                     + [w for w in interface if layer[w] == ell0 + 1])
            groups = {True: [], False: []}
            for vid in cands:
                groups[self._class_of(vid, s0, pc.FL, acc.FL)].append(vid)
            cell = []
            for cls in (True, False):
                grp = sorted(groups[cls])
                while len(grp) > 1:
                    grp = [self.b.emit(grp[0], grp[1], "tau3 top pairs")] + grp[2:]
                if grp:
                    cell.append(grp[0])
                    flags[grp[0]] = cls
            if cell:
                out[ell0 + 1] = cell
        else:
            if l2 > ell0:
                pair = out.get(l2 + 1)
                if pair and len(pair) == 2:
                    out[l2 + 1] = [self.b.emit(pair[0], pair[1], "tau3 sink pair")]
            for vid in out.get(ell0 + 1, []) + pc.LL.get(ell0 + 1, []):
                flags[vid] = self._class_of(vid, s0, pc.FL, acc.FL)

        # tau4: collapse the right column with the interface path
        for w in interface:
            if layer[w] >= ell0 + 2:
                out.setdefault(layer[w], []).append(w)
            elif l1 != l2:
                raise RegionInvariantError(f"interface vertex {w} too shallow")
        d = max(out, default=ell0 + 1)
        for j in range(d, ell0 + 1, -1):
            cell = out.get(j)
            if cell and len(cell) > 1:
                if len(cell) > 2:
                    raise RegionInvariantError(f"tau4 layer {j} holds {cell}")
                out[j] = [self.b.emit(cell[0], cell[1], "tau4")]

        # tau5: the left piece's pair beside its own sink
        colL = pc.LL
        p = l1
        pair = colL.get(p + 1, [])
        if p > ell0 and len(pair) == 2:
            zcell = out.get(p + 1)
            if p == ell0 + 1:
                colL[p + 1] = [self.b.emit(pair[0], pair[1], "tau5")]
            elif zcell:
                nid = self.b.emit(zcell[0], pair[0], "tau5")
                nid = self.b.emit(nid, pair[1], "tau5")
                out.pop(p + 1)
                colL[p + 1] = [nid]
            else:
                self.c.bump("tau5_no_bridge")
                colL[p + 1] = [self.b.emit(pair[0], pair[1], "tau5")]

        # tau6: final descending sweep over both columns
        d = max(max(out, default=ell0 + 1), max(colL, default=ell0 + 1))
        for j in range(d, ell0 + 1, -1):
            cell = colL.pop(j, []) + out.pop(j, [])
            if len(cell) > 2:
                raise RegionInvariantError(f"tau6 layer {j} holds {cell}")
            if len(cell) == 2:
                cell = [self.b.emit(cell[0], cell[1], "tau6")]
            if cell:
                out[j] = cell
        for j, cell in colL.items():
            out.setdefault(j, []).extend(cell)

        for vid in out.get(ell0 + 1, []):
            if vid not in flags:
                flags[vid] = self._class_of(vid, s0, pc.FL, acc.FL)
        return _Acc(A=A0, B=B0, sink=s0, LL=out, FL=flags)


def plan_bipartite_sequence(h: Graph, counters: Counters = None) -> ContractionSequence:
    """Full contraction sequence of width <= 6 for a bipartite planar graph."""
    return plan_bipartite(h, counters).sequence


def plan_bipartite(h: Graph, counters: Counters = None) -> PlanResult:
    """Like plan_bipartite_sequence but keeps the host artefacts for audits."""
    c = counters or Counters()
    if h.bipartition() is None:
        raise ParityError("input graph is not bipartite")
    if h.n <= 3:
        steps = []
        live = list(range(h.n))
        nxt = h.n
        while len(live) > 1:
            a, b = live[0], live[1]
            steps.append(ContractionStep(a, b, nxt))
            live = live[2:] + [nxt]
            nxt += 1
        seq = ContractionSequence(steps=steps, base_vertex_count=h.n)
        return PlanResult(seq, seq, None, None, [], len(steps), {}, c, ((), ()))

    g, hub = connect_components(h)
    pg = embed(g)
    pg, added = quadrangulate(pg)
    added = hub + added
    tree = left_aligned_bfs_tree(pg, min(pg.faces[pg.outer]), counters=c)
    r = tree.root

    walk = pg.faces[pg.outer]
    i = walk.index(r)
    tt = walk[(i + 1) % 4]   # right boundary edge of the outer face
    mm = walk[(i + 2) % 4]
    ss = walk[(i - 1) % 4]   # left boundary: the length-2 geodesic side
    if tree.layer[mm] != 2:
        raise RegionInvariantError("outer face corner opposite the root at layer != 2")

    vlayer = {v: tree.layer[v] for v in range(pg.g.n)}
    builder = SeqBuilder(pg.g.n, vlayer=vlayer)
    solver = _BipartiteRegionSolver(pg, tree, builder, c)
    if pg.other_face_dart(mm, tt, pg.outer) != (mm, tt):
        raise RegionInvariantError("outer face orientation mismatch at the root")
    out, _flags = solver.run([r, ss, mm], [r, tt], (mm, tt))
    region_steps = len(builder.steps)

    l1 = [ss, tt] + sorted(out.pop(1, []))
    top1 = _fold_final(builder, l1, "final layer 1")
    l2 = [mm] + sorted(out.pop(2, []))
    top2 = _fold_final(builder, l2, "final layer 2")
    col = sorted((j, cell[0]) for j, cell in out.items() if cell)
    cur = None
    for _, vid in reversed(col):
        cur = vid if cur is None else builder.emit(cur, vid, "final path",
                                                   check_layer=False)
    for vid in (top2, top1, r):
        if vid is None:
            continue
        cur = vid if cur is None else builder.emit(cur, vid, "final path",
                                                   check_layer=False)
    host_seq = builder.sequence()
    seq = restrict_sequence(host_seq, range(h.n))
    c.bump("host_vertices", pg.g.n)
    c.bump("host_edges", pg.g.m)
    c.bump("steps", len(host_seq.steps))
    return PlanResult(seq, host_seq, pg, tree, added, region_steps,
                      builder.comments, c, ((r, ss, mm), (r, tt)))
