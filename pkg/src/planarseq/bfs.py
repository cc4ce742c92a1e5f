"""BFS layerings, the left-of relation, and left-aligned BFS trees.

The layering of a rooted plane graph partitions vertices by exact distance
from the root. For adjacent u, v with neither an ancestor of the other,
"u is left of v" holds iff the fundamental cycle through their lowest common
ancestor r' has (r', u, v) counter-clockwise; equivalently, reading the
rotation at r' counter-clockwise starting from its upward anchor (parental
edge, or the outer-face wedge at the root), the edge towards u comes before
the edge towards v.

A BFS tree is left-aligned when no edge joins some u in layer i-1 to a v in
layer i with u left of v. The constructive procedure orders children in the
anchored counter-clockwise rotation and recurses depth-first in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counters import Counters
from .embedding import PlaneGraph
from .errors import AncestorRelationError, RegionInvariantError, UnreachableVertexError


@dataclass
class BfsTree:
    root: int
    layer: list          # layer[v] = distance from root
    parent: list         # parent[v], -1 at root
    order_start: list = field(default=None)  # anchored rotation start index per vertex

    def layer_of(self, v):
        return self.layer[v]

    def layers(self):
        out = {}
        for v, l in enumerate(self.layer):
            out.setdefault(l, []).append(v)
        return out

    def dump(self) -> str:
        lines = []
        for l, vs in sorted(self.layers().items()):
            lines.append(f"layer {l}: " + " ".join(map(str, sorted(vs))))
        for v in range(len(self.parent)):
            if self.parent[v] >= 0:
                lines.append(f"parent {v} = {self.parent[v]}")
        return "\n".join(lines) + "\n"


def bfs_layering(pg: PlaneGraph, r: int):
    """Exact distance of every vertex from r; raises if disconnected."""
    n = pg.g.n
    layer = [-1] * n
    layer[r] = 0
    queue = [r]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in pg.g.adj[v]:
            if layer[w] < 0:
                layer[w] = layer[v] + 1
                queue.append(w)
    for v in range(n):
        if layer[v] < 0:
            raise UnreachableVertexError(v)
    return layer


def _root_anchor_start(pg: PlaneGraph, r: int) -> int:
    """Rotation index at r that follows the outer-face wedge.

    The outer-face corner at r sits between the edge to its walk successor
    and the edge to its walk predecessor; sweeping counter-clockwise from
    the upward dummy anchor therefore starts at the predecessor edge.
    """
    walk = pg.faces[pg.outer]
    occ = [i for i, x in enumerate(walk) if x == r]
    if not occ:
        raise RegionInvariantError(f"root {r} is not on the outer face")
    i = occ[0]
    prev = walk[(i - 1) % len(walk)]
    return pg.pos[r][prev]


def left_aligned_bfs_tree(pg: PlaneGraph, r: int, counters: Counters = None) -> BfsTree:
    """Left-aligned BFS tree rooted at r (r must lie on the outer face).

    Children are attached and explored depth-first in the anchored
    counter-clockwise order, which realises the leftmost-compatible linear
    extension at every vertex. Work per vertex is proportional to its
    degree.
    """
    c = counters or Counters()
    layer = bfs_layering(pg, r)
    n = pg.g.n
    parent = [-1] * n
    start = [0] * n
    start[r] = _root_anchor_start(pg, r)
    in_tree = [False] * n
    in_tree[r] = True
    stack = [r]
    while stack:
        v = stack.pop()
        c.bump("la_visit")
        rv = pg.rot[v]
        deg = len(rv)
        s = start[v]
        children = []
        for k in range(deg):
            w = rv[(s + k) % deg]
            c.bump("la_edge")
            if not in_tree[w] and layer[w] == layer[v] + 1:
                in_tree[w] = True
                parent[w] = v
                start[w] = pg.pos[w][v]
                children.append(w)
        stack.extend(reversed(children))  # explore leftmost child first
    return BfsTree(root=r, layer=layer, parent=parent, order_start=start)


def _path_to_root(t: BfsTree, v):
    path = [v]
    while t.parent[path[-1]] >= 0:
        path.append(t.parent[path[-1]])
    return path


def is_left_of(t: BfsTree, pg: PlaneGraph, u: int, v: int) -> bool:
    """True iff u is left of v (adjacent, neither an ancestor of the other)."""
    if v not in pg.g.adj[u]:
        raise AncestorRelationError(f"{u} and {v} are not adjacent")
    # walk the deeper vertex up to equal depth, then both in lockstep
    au, av = u, v
    while t.layer[au] > t.layer[av]:
        au = t.parent[au]
    while t.layer[av] > t.layer[au]:
        av = t.parent[av]
    if au == v or av == u:
        raise AncestorRelationError(f"{u} or {v} lies on the vertical path of the other")
    cu, cv = au, av
    while au != av:
        cu, cv = au, av
        au, av = t.parent[au], t.parent[av]
    lca = au
    if lca in (u, v):
        raise AncestorRelationError(f"{u} or {v} lies on the vertical path of the other")
    # cu, cv: children of the lca towards u and v
    if lca == t.root:
        s = t.order_start[lca] if t.order_start else _root_anchor_start(pg, lca)
    else:
        s = pg.pos[lca][t.parent[lca]] + 1  # sweep starts after the parental edge
    deg = len(pg.rot[lca])
    ru = (pg.pos[lca][cu] - s) % deg
    rv = (pg.pos[lca][cv] - s) % deg
    return ru < rv


def left_alignment_violations(t: BfsTree, pg: PlaneGraph, limit=None):
    """Edges u->v with u in layer(v)-1 and u left of v; empty iff aligned."""
    bad = []
    for u, v in pg.g.edges():
        if abs(t.layer[u] - t.layer[v]) != 1:
            continue
        lo, hi = (u, v) if t.layer[u] < t.layer[v] else (v, u)
        if t.parent[hi] == lo:
            continue
        try:
            if is_left_of(t, pg, lo, hi):
                bad.append((lo, hi))
                if limit and len(bad) >= limit:
                    return bad
        except AncestorRelationError:
            continue
    return bad


def vertical_path(t: BfsTree, frm: int, upto_layer: int):
    """Parent chain from `frm` up to (and including) the vertex at upto_layer."""
    path = [frm]
    while t.layer[path[-1]] > upto_layer:
        path.append(t.parent[path[-1]])
    return path
