"""Combinatorial plane embeddings: rotation systems, faces, and augmentation.

Rotations store, for each vertex, its neighbours in counter-clockwise order.
Face walks are traced with the face on the LEFT of each directed edge
(u, v): the successor dart is (v, w) where w immediately precedes u in the
rotation at v. With that convention a triangular face left of (u, v) has
third corner rot[v][pos[v][u] - 1].

Planarity testing and the initial embedding are delegated to networkx's
left-right algorithm; everything after (face tracing, outer-face choice,
triangulation, quadrangulation) is local.
"""

from __future__ import annotations

import networkx as nx

from .errors import EmbeddingIntegrityError, FormatError, NonPlanarError, ParityError
from .graphs import Graph


class PlaneGraph:
    """Embedded simple graph: rotation system plus a marked outer face."""

    def __init__(self, g: Graph, rot, outer=None, outer_dart=None):
        self.g = g
        self.rot = rot
        self.pos = [{w: i for i, w in enumerate(r)} for r in rot]
        self._check_rotation()
        self.faces = []
        self.dart_face = {}
        self._trace_faces()
        if outer is not None:
            self.outer = outer
        elif outer_dart is not None:
            self.outer = self.dart_face[outer_dart]
        else:
            self.outer = self._default_outer()

    # ------------------------------------------------------------ basics

    @property
    def n(self):
        return self.g.n

    def _check_rotation(self):
        for v in range(self.g.n):
            if set(self.rot[v]) != self.g.adj[v] or len(self.rot[v]) != len(self.g.adj[v]):
                raise EmbeddingIntegrityError(
                    f"rotation at {v} does not list each incident edge exactly once")

    def next_dart(self, u, v):
        """Dart following (u, v) on the face to its left."""
        r = self.rot[v]
        return v, r[self.pos[v][u] - 1]

    def _trace_faces(self):
        seen = set()
        for u in range(self.g.n):
            for v in self.g.adj[u]:
                if (u, v) in seen:
                    continue
                fid = len(self.faces)
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    self.dart_face[(a, b)] = fid
                    walk.append(a)
                    a, b = self.next_dart(a, b)
                if (a, b) != (u, v):
                    raise EmbeddingIntegrityError("face walk did not close")
                self.faces.append(tuple(walk))
        if self.g.m > 0 and self.g.is_connected():
            if self.g.n - self.g.m + len(self.faces) != 2:
                raise EmbeddingIntegrityError(
                    f"embedding has genus > 0: v-e+f = "
                    f"{self.g.n}-{self.g.m}+{len(self.faces)}")

    def _default_outer(self):
        # longest face; ties by smallest contained vertex id, then by walk
        if not self.faces:
            return 0
        return max(range(len(self.faces)),
                   key=lambda i: (len(self.faces[i]), -min(self.faces[i]),
                                  tuple(-x for x in self.faces[i])))

    def face_of(self, u, v):
        """Face id on the left of dart (u, v)."""
        return self.dart_face[(u, v)]

    def other_face_dart(self, x, y, fid):
        """Dart of edge {x,y} whose left face is NOT fid.

        The edge must not have fid on both sides.
        """
        if self.dart_face[(x, y)] != fid:
            return (x, y)
        if self.dart_face[(y, x)] != fid:
            return (y, x)
        raise EmbeddingIntegrityError(f"edge ({x},{y}) has face {fid} on both sides")

    def face_len(self, fid):
        return len(self.faces[fid])

    def export_text(self) -> str:
        lines = [f"rot {v}: " + " ".join(map(str, self.rot[v])) for v in range(self.g.n)]
        lines.append("outer: " + " ".join(map(str, self.faces[self.outer])))
        return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ embed

def embed(g: Graph, outer=None) -> PlaneGraph:
    """Planarity-test g and return a deterministic combinatorial embedding.

    Raises NonPlanarError (with a Kuratowski-subgraph witness) otherwise.
    """
    if g.n == 0:
        raise FormatError("cannot embed the empty graph")
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(sorted(g.edges()))
    ok, cert = nx.check_planarity(ng, counterexample=True)
    if not ok:
        raise NonPlanarError(witness=sorted(tuple(sorted(e)) for e in cert.edges()))
    data = cert.get_data()  # neighbours in clockwise order
    rot = [list(reversed(data[v])) if v in data else [] for v in range(g.n)]
    return PlaneGraph(g, rot, outer=outer)


def connect_components(g: Graph) -> tuple[Graph, list[int]]:
    """Join the components of g through one fresh hub vertex.

    The hub is adjacent to the smallest vertex of every component, so no new
    cycle appears (bipartiteness is preserved) and g stays induced. Returns
    (augmented graph, added vertex ids).
    """
    comps = g.components()
    if len(comps) <= 1:
        return g.copy(), []
    h = Graph(g.n + 1)
    for u, v in g.edges():
        h.add_edge(u, v)
    hub = g.n
    for comp in comps:
        h.add_edge(hub, comp[0])
    return h, [hub]


# -------------------------------------------------------------- stellation

def _spoke_corners(walk, targets):
    """First walk position of each distinct target vertex, in walk order."""
    seen = set()
    out = []
    for i, v in enumerate(walk):
        if v in targets and v not in seen:
            seen.add(v)
            out.append(i)
    return out


def _stellate_pass(pg: PlaneGraph, face_targets):
    """Insert one fresh vertex per face, joined at the given corner positions.

    `face_targets` maps fid -> list of walk positions (distinct vertices).
    Returns (new rotation table, added vertex ids, marker dart of the old
    outer face). Insertions at a shared old vertex are keyed by the corner's
    walk predecessor, which identifies the wedge uniquely.
    """
    inserts = {}  # v -> {anchor_prev_neighbour: new_vertex}
    new_rots = []
    w = pg.g.n
    added = []
    for fid, spokes in face_targets.items():
        walk = pg.faces[fid]
        L = len(walk)
        new_rots.append([walk[i] for i in spokes])
        for i in spokes:
            v = walk[i]
            prv = walk[(i - 1) % L]
            inserts.setdefault(v, {})[prv] = w
        added.append(w)
        w += 1
    rot = []
    for v in range(pg.g.n):
        if v not in inserts:
            rot.append(list(pg.rot[v]))
            continue
        by_anchor = inserts[v]
        r = []
        for u in pg.rot[v]:
            if u in by_anchor:
                r.append(by_anchor[u])  # spoke sits just before the anchor
            r.append(u)
        rot.append(r)
    rot.extend(new_rots)

    outer_walk = pg.faces[pg.outer]
    marker = (outer_walk[0], outer_walk[1])
    return rot, added, marker


def _rebuild(rot, marker) -> PlaneGraph:
    g2 = Graph(len(rot))
    for v, r in enumerate(rot):
        for u in r:
            if v < u:
                g2.add_edge(v, u)
    # if the outer face was stellated, its sub-face holding the marker dart
    # inherits outer status (deterministic choice)
    return PlaneGraph(g2, rot, outer_dart=marker)


def triangulate(pg: PlaneGraph) -> tuple[PlaneGraph, list[int]]:
    """Augment to a plane triangulation keeping the input induced.

    Every face of length != 3 (or with a repeated corner) receives a fresh
    vertex joined to its distinct corners; walks through cut vertices may
    need another pass since a repeated corner gets a single spoke.
    """
    if pg.g.n < 3:
        raise FormatError("triangulate requires at least 3 vertices")
    if not pg.g.is_connected():
        raise FormatError("triangulate requires a connected graph")
    added = []
    for _ in range(1000):
        targets = {}
        for fid, walk in enumerate(pg.faces):
            if len(walk) == 3 and len(set(walk)) == 3:
                continue
            targets[fid] = _spoke_corners(walk, set(walk))
        if not targets:
            return pg, added
        rot, new_vs, marker = _stellate_pass(pg, targets)
        added.extend(new_vs)
        pg = _rebuild(rot, marker)
    raise EmbeddingIntegrityError("triangulation did not converge")


def quadrangulate(pg: PlaneGraph) -> tuple[PlaneGraph, list[int]]:
    """Augment a bipartite plane graph so every face is a quadrilateral.

    A face gets a fresh vertex joined to the corners of one colour class:
    the class of the smallest corner id, or the other one when that class
    has a single distinct vertex on the walk. Bipartiteness is preserved
    and the input stays induced.
    """
    if pg.g.n < 4:
        raise FormatError("quadrangulate requires at least 4 vertices")
    if not pg.g.is_connected():
        raise FormatError("quadrangulate requires a connected graph")
    colour = pg.g.bipartition()
    if colour is None:
        raise ParityError("quadrangulate requires a bipartite graph")
    added = []
    for _ in range(1000):
        targets = {}
        for fid, walk in enumerate(pg.faces):
            if len(walk) == 4 and len(set(walk)) == 4:
                continue
            if len(walk) % 2 != 0:
                raise ParityError(f"face {fid} has odd length {len(walk)}")
            # prefer the class whose corners are all distinct on this walk
            # (repeated corners get a single spoke and stall convergence);
            # ties resolve to the class of the smallest corner id
            sets = [{v for v in walk if colour[v] == c} for c in (0, 1)]
            occs = [sum(1 for v in walk if colour[v] == c) for c in (0, 1)]
            small = colour[min(walk)]
            cls = max((0, 1), key=lambda c: (len(sets[c]) - occs[c], c == small))
            if len(sets[cls]) < 2:
                cls ^= 1
            targets[fid] = (_spoke_corners(walk, sets[cls]), cls)
        if not targets:
            return pg, added
        rot, new_vs, marker = _stellate_pass(
            pg, {fid: sp for fid, (sp, _) in targets.items()})
        added.extend(new_vs)
        for (_, cls), _w in zip(targets.values(), new_vs):
            colour.append(cls ^ 1)
        pg = _rebuild(rot, marker)
    raise EmbeddingIntegrityError("quadrangulation did not converge")


def check_plane_graph(pg: PlaneGraph):
    """Integrity audit: Euler relation and dart coverage. Returns issues."""
    issues = []
    total = sum(len(f) for f in pg.faces)
    if total != 2 * pg.g.m:
        issues.append(f"face walk lengths sum to {total} != 2m")
    if pg.g.is_connected() and pg.g.n - pg.g.m + len(pg.faces) != 2:
        issues.append("Euler relation fails")
    return issues
