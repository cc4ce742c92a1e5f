"""Plain simple-graph container with dense 0-based vertex ids."""

from __future__ import annotations

from .errors import FormatError


class Graph:
    """Undirected simple graph on vertices 0..n-1, adjacency as sets."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges=()):
        self.n = n
        self.adj = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int):
        if u == v:
            raise FormatError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise FormatError(f"edge ({u},{v}) out of range for n={self.n}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self):
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g.adj = [set(a) for a in self.adj]
        return g

    def induced(self, keep) -> "Graph":
        """Induced subgraph on `keep`, relabelled by rank in sorted(keep)."""
        order = sorted(keep)
        rank = {v: i for i, v in enumerate(order)}
        h = Graph(len(order))
        for v in order:
            for w in self.adj[v]:
                if w in rank and v < w:
                    h.add_edge(rank[v], rank[w])
        return h

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self):
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def bipartition(self):
        """2-colouring as a list of 0/1, or None if an odd cycle exists."""
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if colour[w] < 0:
                        colour[w] = colour[v] ^ 1
                        stack.append(w)
                    elif colour[w] == colour[v]:
                        return None
        return colour

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    g = path_graph(n)
    if n > 2:
        g.add_edge(n - 1, 0)
    return g


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def grid_graph(rows: int, cols: int) -> Graph:
    g = Graph(rows * cols)
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                g.add_edge(v, v + 1)
            if r + 1 < rows:
                g.add_edge(v, v + cols)
    return g
