"""Graph representation, graph6 I/O and classical primitives.

Graphs are immutable, vertices are the dense labels ``0..n-1`` and every
adjacency row is stored as an integer bitmask.  Vertex sets handed to the
public functions are normalised to sorted tuples of distinct labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph construction or a violated precondition."""


class Graph6Error(GraphError):
    """Malformed graph6 text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], max_n: int = MAX_VERTICES) -> "Graph":
        if not 1 <= n <= max_n:
            raise GraphError(f"vertex count {n} outside 1..{max_n}")
        rows = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def induced_connected(self, mask: int) -> bool:
        """True when the subgraph induced on the vertex bitmask is connected (and nonempty)."""
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertex_set(g: Graph, vertices: Iterable[int]) -> tuple[int, ...]:
    """Sort and deduplicate ``vertices``, checking each lies in ``0..n-1``."""
    out = tuple(sorted(set(vertices)))
    for v in out:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise GraphError(f"vertex {v!r} not in 0..{g.n - 1}")
    return out


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

_HEADER = ">>graph6<<"


def parse_graph6(line: str | bytes, max_n: int = MAX_VERTICES) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header, trailing newline ignored)."""
    if isinstance(line, bytes):
        line = line.decode("ascii", errors="replace")
    text = line.rstrip("\r\n")
    start = 0
    if text.startswith(_HEADER):
        start = len(_HEADER)
    data = text[start:]
    if not data:
        raise Graph6Error("empty graph6 string", start)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", start + i)

    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        # 8-byte headers describe n >= 258048, far beyond any supported size
        raise Graph6Error("unsupported or truncated size header", start)
    if n < 1:
        raise Graph6Error("graph6 encodes a graph with no vertices", start)
    if n > max_n:
        raise Graph6Error(f"graph has {n} vertices, limit is {max_n}", start)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes, found {len(body)}", start + pos + min(len(body), nbytes))
    rows = [0] * n
    bit = 0
    for v in range(1, n):
        for u in range(v):
            if body[bit // 6] >> (5 - bit % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit += 1
    tail = nbytes * 6 - nbits
    if tail and body[-1] & ((1 << tail) - 1):
        raise Graph6Error("nonzero padding bits", start + pos + nbytes - 1)
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    """Canonical graph6 encoding without header or newline."""
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = ["~", chr((n >> 12) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    else:  # pragma: no cover - Graph caps n far below this
        raise GraphError(f"n={n} exceeds the graph6 size limit")
    acc = nacc = 0
    for v in range(1, n):
        row = g.adj[v]
        for u in range(v):
            acc = acc << 1 | (row >> u & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str], max_n: int = MAX_VERTICES) -> Iterator[tuple[int, str, Graph | Graph6Error]]:
    """Yield ``(line_number, text, graph_or_error)`` for every nonblank line.

    Malformed lines produce a :class:`Graph6Error` in the third slot instead
    of raising, so callers can apply their own skip-and-count policy.
    """
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text:
            continue
        try:
            yield lineno, text, parse_graph6(text, max_n=max_n)
        except Graph6Error as exc:
            yield lineno, text, exc


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def degree_sequence(g: Graph) -> list[int]:
    return [row.bit_count() for row in g.adj]


def min_degree(g: Graph) -> int:
    return min(degree_sequence(g))


def max_degree(g: Graph) -> int:
    return max(degree_sequence(g))


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by smallest member."""
    left = g.all_mask
    out = []
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(tuple(iter_bits(seen)))
        left &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return g.induced_connected(g.all_mask)


class _FlowNetwork:
    """Unit-capacity residual network for vertex-disjoint path counting."""

    def __init__(self, size: int):
        self.cap: list[dict[int, int]] = [dict() for _ in range(size)]

    def add(self, a: int, b: int, c: int) -> None:
        self.cap[a][b] = self.cap[a].get(b, 0) + c
        self.cap[b].setdefault(a, 0)

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        while limit is None or flow < limit:
            parent = {s: s}
            queue = deque([s])
            while queue and t not in parent:
                a = queue.popleft()
                for b, c in self.cap[a].items():
                    if c > 0 and b not in parent:
                        parent[b] = a
                        queue.append(b)
            if t not in parent:
                break
            b = t
            while b != s:
                a = parent[b]
                self.cap[a][b] -= 1
                self.cap[b][a] += 1
                b = a
            flow += 1
        return flow


def _split_network(g: Graph, source: int) -> _FlowNetwork:
    # vertex v -> in-node 2v, out-node 2v+1; the extra node 2n is a sink
    net = _FlowNetwork(2 * g.n + 1)
    for v in range(g.n):
        if v != source:
            net.add(2 * v, 2 * v + 1, 1)
    for u, v in g.edges():
        net.add(2 * u + 1, 2 * v, 1)
        net.add(2 * v + 1, 2 * u, 1)
    return net


def local_vertex_connectivity(g: Graph, x: int, y: int) -> int:
    """Maximum number of internally disjoint x-y paths for nonadjacent x != y."""
    if x == y or g.has_edge(x, y):
        raise GraphError("local connectivity needs two distinct nonadjacent vertices")
    net = _split_network(g, x)
    return net.max_flow(2 * x + 1, 2 * y)


def vertex_connectivity(g: Graph) -> int:
    """kappa(G): n-1 for complete graphs, 0 when disconnected, else a min over Menger flows."""
    if g.is_complete():
        return g.n - 1
    if not is_connected(g):
        return 0
    best = min_degree(g)
    for x, y in combinations(range(g.n), 2):
        if not g.has_edge(x, y):
            best = min(best, local_vertex_connectivity(g, x, y))
    return best


def fan_size(g: Graph, x: int, u: Iterable[int]) -> int:
    """Size of a largest (x, U)-fan: paths from x to distinct vertices of U sharing only x."""
    targets = vertex_set(g, u)
    if not targets:
        raise GraphError("fan target set must be nonempty")
    if not 0 <= x < g.n:
        raise GraphError(f"vertex {x} not in graph")
    if x in targets:
        raise GraphError("fan source must not lie in the target set")
    net = _split_network(g, x)
    sink = 2 * g.n
    for w in targets:
        net.add(2 * w + 1, sink, 1)
    return net.max_flow(2 * x + 1, sink)


@dataclass(frozen=True)
class ComponentShape:
    kind: str  # "isolated" | "path" | "cycle" | "other"
    vertices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        tag = {"isolated": "K1", "path": f"P{self.order}", "cycle": f"C{self.order}"}.get(self.kind)
        return tag or f"other{self.order}"


def component_shapes(g: Graph) -> list[ComponentShape]:
    shapes = []
    for comp in components(g):
        degs = [g.degree(v) for v in comp]
        size = len(comp)
        m = sum(degs) // 2
        if size == 1:
            kind = "isolated"
        elif max(degs) <= 2 and m == size - 1:
            kind = "path"
        elif max(degs) == 2 and min(degs) == 2:
            kind = "cycle"
        else:
            kind = "other"
        shapes.append(ComponentShape(kind, comp))
    return shapes


def boundary_edges(g: Graph, s: Iterable[int]) -> list[tuple[int, int]]:
    """E_G[S, V-S] as sorted ``(min, max)`` pairs."""
    members = vertex_set(g, s)
    if not members or len(members) == g.n:
        raise GraphError("boundary needs a nonempty proper vertex subset")
    inside = to_mask(members)
    out = []
    for v in members:
        out.extend((min(v, w), max(v, w)) for w in iter_bits(g.adj[v] & ~inside))
    return sorted(out)


def boundary_size(g: Graph, mask: int) -> int:
    return sum((g.adj[v] & ~mask).bit_count() for v in iter_bits(mask))


def lemma3_parts(g: Graph) -> tuple[bool, bool]:
    """(premise, conclusion) of the adjacent-minimum-degree claim on a connected graph.

    premise: two adjacent vertices both have degree delta(G);
    conclusion: kappa(G) <= delta(G) - 1.
    """
    if not is_connected(g):
        raise GraphError("lemma3 check needs a connected graph")
    degs = degree_sequence(g)
    delta = min(degs)
    premise = any(degs[u] == delta and degs[v] == delta for u, v in g.edges())
    conclusion = vertex_connectivity(g) <= delta - 1
    return premise, conclusion


def lemma3_check(g: Graph) -> bool:
    """True iff the implication premise -> conclusion holds on ``g``."""
    premise, conclusion = lemma3_parts(g)
    return not premise or conclusion
