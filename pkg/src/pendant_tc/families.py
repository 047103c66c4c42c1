"""Deterministic constructors for the named graph families.

Labelling conventions:

* complete multipartite parts are sorted ascending and occupy contiguous
  label ranges in that order;
* ``W_n`` has order ``n``: rim cycle ``0..n-2`` in cyclic order, hub ``n-1``;
* paths and cycles run through ``0..n-1`` in order;
* disjoint unions place their members left to right.

Every family also has a canonical text form used by the CLI, e.g. ``K_5``,
``K_{3,3}``, ``K_{3,3,3}``, ``W_6``, ``threshold:iid``, ``compl:C7+3K1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .graph_core import Graph, GraphError, complement, degree_sequence, is_connected

__all__ = [
    "Complete", "CompleteMultipartite", "Wheel", "Path", "Cycle", "Empty",
    "Threshold", "DisjointUnion", "ComplementOf", "FamilySpec",
    "build", "build_threshold", "parse_family", "complete_bipartite",
    "threshold_weights", "observation2_report", "union_graph",
    "host_graph", "LEMMA6_HOSTS", "THEOREM6_K5_FAMILIES",
    "complement_family_for_theorem6", "ng_example_graph", "delta2_graphs",
]


@dataclass(frozen=True)
class Complete:
    n: int

    def __str__(self) -> str:
        return f"K_{self.n}"


@dataclass(frozen=True)
class CompleteMultipartite:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    def __str__(self) -> str:
        return "K_{" + ",".join(map(str, self.parts)) + "}"


def complete_bipartite(r: int, s: int) -> CompleteMultipartite:
    return CompleteMultipartite((r, s))


@dataclass(frozen=True)
class Wheel:
    n: int

    def __str__(self) -> str:
        return f"W_{self.n}"


@dataclass(frozen=True)
class Path:
    n: int

    def __str__(self) -> str:
        return f"P_{self.n}"


@dataclass(frozen=True)
class Cycle:
    n: int

    def __str__(self) -> str:
        return f"C_{self.n}"


@dataclass(frozen=True)
class Empty:
    """``n`` isolated vertices, written ``nK1``."""
    n: int

    def __str__(self) -> str:
        return f"{self.n}K1"


@dataclass(frozen=True)
class Threshold:
    creation: str  # 'i' = isolated, 'd' = dominating, read left to right

    def __str__(self) -> str:
        return f"threshold:{self.creation}"


@dataclass(frozen=True)
class DisjointUnion:
    members: tuple["FamilySpec", ...]

    def __str__(self) -> str:
        return "+".join(_union_token(m) for m in self.members)


@dataclass(frozen=True)
class ComplementOf:
    inner: "FamilySpec"

    def __str__(self) -> str:
        return f"compl:{self.inner}"


FamilySpec = Union[Complete, CompleteMultipartite, Wheel, Path, Cycle, Empty,
                   Threshold, DisjointUnion, ComplementOf]


def _union_token(spec: FamilySpec) -> str:
    if isinstance(spec, Complete) and spec.n in (1, 2):
        return f"K{spec.n}"
    if isinstance(spec, (Path, Cycle)):
        return str(spec).replace("_", "")
    return str(spec)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def union_graph(graphs: Iterable[Graph]) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def build_threshold(creation: Iterable[str] | str) -> Graph:
    seq = "".join(creation)
    if not seq:
        raise GraphError("threshold creation sequence is empty")
    edges = []
    for v, sym in enumerate(seq):
        if sym == "d":
            edges.extend((u, v) for u in range(v))
        elif sym != "i":
            raise GraphError(f"creation symbol {sym!r} at position {v} is not 'i' or 'd'")
    return Graph.from_edges(len(seq), edges)


def build(spec: FamilySpec) -> Graph:
    if isinstance(spec, Complete):
        _need(spec.n >= 1, spec)
        return Graph.from_edges(spec.n, combinations(range(spec.n), 2))
    if isinstance(spec, Empty):
        _need(spec.n >= 1, spec)
        return Graph.empty(spec.n)
    if isinstance(spec, CompleteMultipartite):
        _need(len(spec.parts) >= 1 and min(spec.parts) >= 1, spec)
        label, owner = 0, []
        for i, size in enumerate(spec.parts):
            owner.extend([i] * size)
            label += size
        return Graph.from_edges(label, ((u, v) for u, v in combinations(range(label), 2) if owner[u] != owner[v]))
    if isinstance(spec, Wheel):
        _need(spec.n >= 4, spec)
        rim = spec.n - 1
        edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
        return Graph.from_edges(spec.n, edges)
    if isinstance(spec, Path):
        _need(spec.n >= 1, spec)
        return Graph.from_edges(spec.n, ((i, i + 1) for i in range(spec.n - 1)))
    if isinstance(spec, Cycle):
        _need(spec.n >= 3, spec)
        return Graph.from_edges(spec.n, ((i, (i + 1) % spec.n) for i in range(spec.n)))
    if isinstance(spec, Threshold):
        return build_threshold(spec.creation)
    if isinstance(spec, DisjointUnion):
        _need(len(spec.members) >= 1, spec)
        return union_graph(build(m) for m in spec.members)
    if isinstance(spec, ComplementOf):
        return complement(build(spec.inner))
    raise TypeError(f"not a family spec: {spec!r}")


def _need(ok: bool, spec) -> None:
    if not ok:
        raise GraphError(f"invalid size parameters for {spec!r}")


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_SIMPLE = re.compile(r"^(K|W|P|C)_?\{?(\d+)\}?$")
_MULTI = re.compile(r"^K_?\{(\d+(?:,\d+)+)\}$")
_REPEAT = re.compile(r"^(\d+)\s*(.+)$")


def parse_family(text: str) -> FamilySpec:
    """Parse the canonical family text form; raises ``GraphError`` on failure."""
    text = text.strip()
    if not text:
        raise GraphError("empty family spec")
    if text.startswith("compl:"):
        return ComplementOf(parse_family(text[len("compl:"):]))
    if text.startswith("threshold:"):
        seq = text[len("threshold:"):]
        if not seq or set(seq) - {"i", "d"}:
            raise GraphError(f"bad threshold creation sequence {seq!r}")
        return Threshold(seq)
    if "+" in text:
        members: list[FamilySpec] = []
        for token in text.split("+"):
            members.extend(_parse_repeated(token.strip()))
        return DisjointUnion(tuple(members))
    parsed = _parse_repeated(text)
    return parsed[0] if len(parsed) == 1 else DisjointUnion(tuple(parsed))


def _parse_repeated(token: str) -> list[FamilySpec]:
    m = _REPEAT.match(token)
    if m and not token[0].isalpha():
        count, body = int(m.group(1)), m.group(2)
        if count < 1:
            raise GraphError(f"bad multiplicity in {token!r}")
        atom = _parse_atom(body)
        if isinstance(atom, Complete) and atom.n == 1:
            return [Empty(count)]
        return [atom] * count
    return [_parse_atom(token)]


def _parse_atom(token: str) -> FamilySpec:
    m = _MULTI.match(token)
    if m:
        return CompleteMultipartite(tuple(int(x) for x in m.group(1).split(",")))
    m = _SIMPLE.match(token)
    if not m:
        raise GraphError(f"cannot parse family token {token!r}")
    letter, size = m.group(1), int(m.group(2))
    spec = {"K": Complete, "W": Wheel, "P": Path, "C": Cycle}[letter](size)
    # validate sizes eagerly so parse errors surface at the CLI boundary
    build(spec)
    return spec


# ---------------------------------------------------------------------------
# threshold graphs
# ---------------------------------------------------------------------------

def threshold_weights(creation: str) -> list[int]:
    """Integer weights realising the creation sequence with threshold 1.

    Vertex added at step j (1-based) gets +j if dominating and -j if
    isolated; the first vertex always counts as isolated.  Then u ~ v iff
    w(u) + w(v) >= 1.
    """
    weights = []
    for j, sym in enumerate(creation, 1):
        weights.append(j if sym == "d" and j > 1 else -j)
    return weights


def observation2_report(g: Graph, weights: list[int]) -> dict[str, bool]:
    """Evaluate the degree/independent-set structure claims of a threshold graph.

    Vertices are ranked by weight, heaviest first.  Returned keys:
    ``degrees_nonincreasing``, ``I_independent``, ``rest_is_clique``,
    ``I_maximum``, ``nested_neighbourhoods``, ``connected_all_adjacent_to_first``.
    """
    order = sorted(range(g.n), key=lambda v: -weights[v])
    degs = degree_sequence(g)
    d = [degs[v] for v in order]
    independent = [order[i] for i in range(g.n) if d[i] <= i]  # d_i <= i-1 in 1-based terms
    rest = [v for v in order if v not in independent]
    indep_ok = all(not g.has_edge(u, v) for u, v in combinations(independent, 2))
    clique_ok = all(g.has_edge(u, v) for u, v in combinations(rest, 2))
    nested = all(set(g.neighbors(v)) == set(order[: degs[v]]) for v in independent)
    first_ok = (not is_connected(g)) or all(g.has_edge(order[0], v) for v in order[1:])
    return {
        "degrees_nonincreasing": all(d[i] >= d[i + 1] for i in range(g.n - 1)),
        "I_independent": indep_ok,
        "rest_is_clique": clique_ok,
        "I_maximum": len(independent) == _independence_number(g),
        "nested_neighbourhoods": nested,
        "connected_all_adjacent_to_first": first_ok,
    }


def _independence_number(g: Graph) -> int:
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        v = cand.bit_length() - 1
        grow(cand & ~g.adj[v] & ~(1 << v), size + 1)
        grow(cand & ~(1 << v), size)

    grow(g.all_mask, 0)
    return best


# ---------------------------------------------------------------------------
# complement host families (Delta <= 2 unions of cycles, paths, K2, K1)
# ---------------------------------------------------------------------------

_HOST_TOKEN = re.compile(r"^(C|P)(\d+)$")


def host_graph(kind: str, n: int) -> Graph:
    """Build a listed complement family on exactly ``n`` vertices.

    ``kind`` joins tokens with ``+``: ``C<i>``, ``P<i>``, ``K2`` and the fill
    token ``*K2`` (as many disjoint edges as fit).  Any remaining vertices
    become isolated, so ``"C4+C4"`` at n=10 is C4 u C4 u 2K1 and ``"C3+*K2"``
    at n=8 is C3 u 2K2 u K1.
    """
    graphs: list[Graph] = []
    used = 0
    fill_k2 = False
    for token in kind.split("+"):
        token = token.strip()
        if token == "*K2":
            fill_k2 = True
            continue
        if token == "K2":
            graphs.append(build(Path(2)))
        else:
            m = _HOST_TOKEN.match(token)
            if not m:
                raise GraphError(f"unknown host token {token!r}")
            cls = Cycle if m.group(1) == "C" else Path
            graphs.append(build(cls(int(m.group(2)))))
        used += graphs[-1].n
    if used > n:
        raise GraphError(f"host {kind!r} needs at least {used} vertices, got n={n}")
    if fill_k2:
        pairs = (n - used) // 2
        graphs.extend(build(Path(2)) for _ in range(pairs))
        used += 2 * pairs
    if n > used:
        graphs.append(Graph.empty(n - used))
    return union_graph(graphs)


LEMMA6_HOSTS: dict[tuple[int, str], tuple[str, ...]] = {
    (3, "statement"): ("C3+C3", "C3+C4", "C4+C4", "C3+*K2", "C4+*K2", "P5+*K2", "C5", "C6", "C7"),
    (4, "statement"): ("C3+C3", "C3+C4", "C4+C4", "C3+*K2", "C4+*K2", "C5+K2", "C6", "C7"),
    # the k=4 converse argument checks this list instead
    (4, "proof"): ("C3+C3", "C3+C4", "C4+C4", "C3+*K2", "C4+*K2", "P5+K2", "C5", "C6", "C7"),
}
LEMMA6_HOSTS[(3, "proof")] = LEMMA6_HOSTS[(3, "statement")]

# complements for k >= 5 at tau = n-k-2: P3, plus every Delta<=2 graph with
# >= 3 edges on at most four non-isolated vertices
THEOREM6_K5_FAMILIES: tuple[str, ...] = ("P3", "C3", "P4", "C4")


def complement_family_for_theorem6(kind: str, n: int) -> Graph:
    """The complement graph listed under ``kind``; complement it to get G."""
    return host_graph(kind, n)


def ng_example_graph(inner: Graph) -> Graph:
    """Join a path v1 v2 v3 v4 to ``inner`` through its two ends.

    The result has order inner.n + 4 and both it and its complement have
    minimum degree 2 whenever ``inner`` is nonempty.
    """
    m = inner.n
    p = [m, m + 1, m + 2, m + 3]
    edges = list(inner.edges()) + [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]
    edges += [(p[0], v) for v in range(m)] + [(p[3], v) for v in range(m)]
    return Graph.from_edges(m + 4, edges)


def delta2_graphs(n: int) -> list[tuple[str, Graph]]:
    """All graphs of order ``n`` with max degree <= 2, one per isomorphism class.

    Such graphs are disjoint unions of paths (P1 = K1 included) and cycles,
    so the classes correspond to multisets of component types.
    """
    kinds = [("P", a) for a in range(1, n + 1)] + [("C", b) for b in range(3, n + 1)]
    out = []

    def rec(start: int, left: int, acc: list[tuple[str, int]]) -> None:
        if left == 0:
            name = "+".join(f"{t}{a}" if (t, a) != ("P", 1) else "K1" for t, a in acc)
            parts = [build(Cycle(a)) if t == "C" else build(Path(a)) for t, a in acc]
            out.append((name, union_graph(parts)))
            return
        for i in range(start, len(kinds)):
            t, a = kinds[i]
            if a <= left:
                rec(i, left - a, acc + [(t, a)])

    rec(0, n, [])
    return out
