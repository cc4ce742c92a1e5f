"""Instance generation: random triangulations, quadrangulations, planar
graphs, and exhaustive small-graph corpora.

Triangulations grow by repeated vertex insertion into a uniformly chosen
face of a seed triangle, followed by random diagonal flips for variety;
planarity holds by construction and is re-verified before emission.
Quadrangulations grow by splitting a face across a diagonal pair with a
fresh vertex, which preserves bipartiteness.
"""

from __future__ import annotations

import os
import random

from .graphs import Graph


def random_triangulation(n: int, seed: int, flips: float = 1.0) -> Graph:
    """Random plane triangulation on n >= 3 vertices (3n-6 edges)."""
    if n < 3:
        raise ValueError("triangulation needs n >= 3")
    rnd = random.Random(seed)
    faces = [(0, 1, 2), (0, 1, 2)]
    edge_faces = {}  # edge -> [face ids]

    def reg(e, fid):
        edge_faces.setdefault(e, []).append(fid)

    def unreg(e, fid):
        edge_faces[e].remove(fid)

    def key(u, v):
        return (u, v) if u < v else (v, u)

    for fid, (a, b, c) in enumerate(faces):
        for e in (key(a, b), key(a, c), key(b, c)):
            reg(e, fid)

    adj = [set() for _ in range(n)]
    for u, v in ((0, 1), (0, 2), (1, 2)):
        adj[u].add(v)
        adj[v].add(u)

    for v in range(3, n):
        fid = rnd.randrange(len(faces))
        a, b, c = faces[fid]
        for e in (key(a, b), key(a, c), key(b, c)):
            unreg(e, fid)
        new = [(a, b, v), (a, c, v), (b, c, v)]
        ids = [fid, len(faces), len(faces) + 1]
        faces[fid] = new[0]
        faces.extend(new[1:])
        for f, i in zip(new, ids):
            x, y, z = f
            for e in (key(x, y), key(x, z), key(y, z)):
                reg(e, i)
        for u in (a, b, c):
            adj[u].add(v)
            adj[v].add(u)

    # random diagonal flips keep the graph a simple maximal planar graph
    edge_pool = list(edge_faces)
    for _ in range(int(flips * n)):
        e = edge_pool[rnd.randrange(len(edge_pool))]
        fs = edge_faces.get(e)
        if fs is None or len(fs) != 2:
            continue
        f1, f2 = fs
        a, b = e
        c = next(x for x in faces[f1] if x not in e)
        d = next(x for x in faces[f2] if x not in e)
        if c == d or d in adj[c]:
            continue
        for fid, tri in ((f1, faces[f1]), (f2, faces[f2])):
            x, y, z = tri
            for ee in (key(x, y), key(x, z), key(y, z)):
                unreg(ee, fid)
        del edge_faces[e]
        adj[a].discard(b)
        adj[b].discard(a)
        adj[c].add(d)
        adj[d].add(c)
        faces[f1] = (a, c, d)
        faces[f2] = (b, c, d)
        for fid in (f1, f2):
            x, y, z = faces[fid]
            for ee in (key(x, y), key(x, z), key(y, z)):
                reg(ee, fid)
        edge_pool.append(key(c, d))

    g = Graph(n)
    for u in range(n):
        for v in adj[u]:
            if u < v:
                g.add_edge(u, v)
    return g


def random_quadrangulation(n: int, seed: int) -> Graph:
    """Random simple plane quadrangulation on n >= 4 vertices (2n-4 edges)."""
    if n < 4:
        raise ValueError("quadrangulation needs n >= 4")
    rnd = random.Random(seed)
    faces = [(0, 1, 2, 3), (0, 3, 2, 1)]
    g = Graph(n)
    for u, v in ((0, 1), (1, 2), (2, 3), (3, 0)):
        g.add_edge(u, v)
    for w in range(4, n):
        fid = rnd.randrange(len(faces))
        a, b, c, d = faces[fid]
        if rnd.random() < 0.5:
            a, b, c, d = b, c, d, a
        # split across the a-c diagonal with the fresh vertex w
        faces[fid] = (a, b, c, w)
        faces.append((a, w, c, d))
        g.add_edge(w, a)
        g.add_edge(w, c)
    return g


def random_planar_graph(n: int, seed: int, keep: float = 0.72) -> Graph:
    """Connected planar graph: a random triangulation minus random edges."""
    rnd = random.Random(seed)
    tri = random_triangulation(max(n, 3), seed ^ 0x9E3779B9)
    # spanning tree edges are protected so the result stays connected
    seen = {0}
    tree_edges = set()
    stack = [0]
    while stack:
        v = stack.pop()
        for w in sorted(tri.adj[v]):
            if w not in seen:
                seen.add(w)
                tree_edges.add((min(v, w), max(v, w)))
                stack.append(w)
    g = Graph(tri.n)
    for u, v in tri.edges():
        if (u, v) in tree_edges or rnd.random() < keep:
            g.add_edge(u, v)
    return g


def random_bipartite_planar(n: int, seed: int, keep: float = 0.7) -> Graph:
    """Connected bipartite planar graph from a thinned quadrangulation."""
    rnd = random.Random(seed)
    quad = random_quadrangulation(max(n, 4), seed ^ 0x51ED2701)
    seen = {0}
    tree_edges = set()
    stack = [0]
    while stack:
        v = stack.pop()
        for w in sorted(quad.adj[v]):
            if w not in seen:
                seen.add(w)
                tree_edges.add((min(v, w), max(v, w)))
                stack.append(w)
    g = Graph(quad.n)
    for u, v in quad.edges():
        if (u, v) in tree_edges or rnd.random() < keep:
            g.add_edge(u, v)
    return g


def random_graph(n: int, seed: int, p: float = 0.5) -> Graph:
    """Erdos-Renyi graph (not necessarily planar); oracle-side test helper."""
    rnd = random.Random(seed)
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rnd.random() < p:
                g.add_edge(u, v)
    return g


# --------------------------------------------------- exhaustive corpora

def _invariant(g: Graph):
    degs = sorted(len(a) for a in g.adj)
    nbr = sorted(tuple(sorted(len(g.adj[w]) for w in g.adj[v])) for v in range(g.n))
    tri = 0
    for u, v in g.edges():
        tri += len(g.adj[u] & g.adj[v])
    return (g.n, g.m, tuple(degs), tuple(nbr), tri)


def _isomorphic(g: Graph, h: Graph) -> bool:
    import networkx as nx
    ng = nx.Graph(list(g.edges()))
    ng.add_nodes_from(range(g.n))
    nh = nx.Graph(list(h.edges()))
    nh.add_nodes_from(range(h.n))
    return nx.is_isomorphic(ng, nh)


def enumerate_connected_graphs(n: int, bipartite_only=False, planar_only=False,
                               cache_dir=None):
    """All connected graphs on n vertices up to isomorphism.

    Grown by attaching vertex n-1 to every non-empty subset of each smaller
    graph (every connected graph has a non-cut vertex, so the growth is
    exhaustive; deleting one also preserves bipartiteness and planarity,
    hence the filtered classes may be grown within themselves).
    """
    tag = "g" + ("b" if bipartite_only else "") + ("p" if planar_only else "")
    if cache_dir:
        path = os.path.join(cache_dir, f"{tag}{n}.g6")
        if os.path.exists(path):
            from .formats import graph6_loads
            with open(path) as fh:
                return [graph6_loads(line) for line in fh if line.strip()]
    if n == 1:
        result = [Graph(1)]
    else:
        import networkx as nx
        parents = enumerate_connected_graphs(
            n - 1, bipartite_only=bipartite_only, planar_only=planar_only,
            cache_dir=cache_dir)
        buckets = {}
        result = []
        for par in parents:
            for subset in range(1, 1 << (n - 1)):
                h = Graph(n)
                for u, v in par.edges():
                    h.add_edge(u, v)
                for u in range(n - 1):
                    if subset >> u & 1:
                        h.add_edge(u, n - 1)
                if bipartite_only and h.bipartition() is None:
                    continue
                if planar_only:
                    nh = nx.Graph(list(h.edges()))
                    nh.add_nodes_from(range(n))
                    if not nx.check_planarity(nh, counterexample=False)[0]:
                        continue
                key = _invariant(h)
                bucket = buckets.setdefault(key, [])
                if any(_isomorphic(h, other) for other in bucket):
                    continue
                bucket.append(h)
                result.append(h)
    if cache_dir:
        from .formats import graph6_dumps
        os.makedirs(cache_dir, exist_ok=True)
        with open(os.path.join(cache_dir, f"{tag}{n}.g6"), "w") as fh:
            for g in result:
                fh.write(graph6_dumps(g) + "\n")
    return result
