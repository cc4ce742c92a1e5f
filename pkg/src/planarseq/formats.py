"""File formats: graph6, edge-list text, and the contraction-sequence text format.

All formats are bit-exact and round-trip safe. The sequence format:

    tww-seq v1 n=<N>
    <a> <b> -> <result>
    ...

Lines starting with '#' are comments and ignored on parse (the writer may
emit them for provenance).
"""

from __future__ import annotations

from .errors import FormatError
from .graphs import Graph
from .trigraph import ContractionSequence, ContractionStep


# ---------------------------------------------------------------- graph6

def graph6_loads(text: str) -> Graph:
    """Decode one graph6 line (optionally with the >>graph6<< header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise FormatError("invalid graph6 character")
    if data[0] <= 62:
        n = data[0]
        idx = 1
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        idx = 4
    else:
        raise FormatError("graph6 n >= 2^18 not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    bits = data[idx:]
    if len(bits) != need:
        raise FormatError(f"graph6 length mismatch (n={n})")
    g = Graph(n)
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = bits[k // 6]
            if (byte >> (5 - k % 6)) & 1:
                g.add_edge(u, v)
            k += 1
    return g


def graph6_dumps(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n]
    elif n < (1 << 18):
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise FormatError("graph6 n >= 2^18 not supported")
    nbits = n * (n - 1) // 2
    bits = bytearray((nbits + 5) // 6)
    k = 0
    for v in range(1, n):
        for u in range(v):
            if g.has_edge(u, v):
                bits[k // 6] |= 1 << (5 - k % 6)
            k += 1
    return "".join(chr(63 + b) for b in head + list(bits))


# ------------------------------------------------------------- edge list

def edgelist_loads(text: str) -> Graph:
    """Parse the `p <n> <m>` / `e u v` line format."""
    g = None
    m_declared = None
    m_seen = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: bad header")
            g = Graph(int(parts[1]))
            m_declared = int(parts[2])
        elif parts[0] == "e":
            if g is None:
                raise FormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: bad edge line")
            u, v = int(parts[1]), int(parts[2])
            if g.has_edge(u, v):
                raise FormatError(f"line {lineno}: duplicate edge {u} {v}")
            g.add_edge(u, v)
            m_seen += 1
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if g is None:
        raise FormatError("missing `p` header")
    if m_declared != m_seen:
        raise FormatError(f"header declares m={m_declared}, found {m_seen}")
    return g


def edgelist_dumps(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> Graph:
    """Auto-detect edge-list vs graph6 input."""
    stripped = text.strip()
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("p ") or line.startswith("e "):
            return edgelist_loads(text)
        return graph6_loads(line)
    raise FormatError("no graph data found")


# ----------------------------------------------------- sequence format

SEQ_HEADER = "tww-seq v1"


def sequence_dumps(seq: ContractionSequence, comments=None) -> str:
    """Serialize; `comments` maps step index -> comment emitted before it."""
    lines = [f"{SEQ_HEADER} n={seq.base_vertex_count}"]
    for i, st in enumerate(seq.steps):
        if comments and i in comments:
            lines.append(f"# {comments[i]}")
        lines.append(f"{st.a} {st.b} -> {st.result}")
    return "\n".join(lines) + "\n"


def sequence_loads(text: str) -> ContractionSequence:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty sequence file")
    head = lines[0].split()
    if len(head) != 3 or " ".join(head[:2]) != SEQ_HEADER or not head[2].startswith("n="):
        raise FormatError(f"bad sequence header: {lines[0]!r}")
    n = int(head[2][2:])
    steps = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[2] != "->":
            raise FormatError(f"bad step line: {ln!r}")
        steps.append(ContractionStep(int(parts[0]), int(parts[1]), int(parts[3])))
    return ContractionSequence(steps=steps, base_vertex_count=n)
