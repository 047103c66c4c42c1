"""Exact local and global pendant tree-connectivity.

A pendant S-Steiner tree is determined, up to the choice of spanning edges,
by its internal vertex set I = V(T) - S: G[I] is connected and every
terminal has a neighbour in I.  Conversely any such I carries a pendant tree
(spanning tree of G[I] plus one leaf edge per terminal).  Two pendant trees
are internally disjoint exactly when their internal sets are disjoint, so
tau_G(S) is the maximum number of pairwise disjoint connected S-dominating
subsets of V - S.  For |S| = 2 the edge between the terminals, if present,
is one extra tree with an empty internal set.

Only inclusion-minimal internal sets need to be packed: shrinking a set of
a packing keeps the packing disjoint.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graph_core import (
    Graph,
    GraphError,
    boundary_size,
    components,
    is_connected,
    iter_bits,
    to_mask,
    vertex_set,
)

DEFAULT_SOLVER_CAP = 24
DEFAULT_BUDGET = 50_000_000
BUDGET_ENV = "PENDANT_TC_BUDGET"


class CapacityError(Exception):
    """Input beyond the solver's size cap or node budget."""


class BudgetExceeded(CapacityError):
    pass


class ReductionError(GraphError):
    """An internal set that cannot carry a pendant tree."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise CapacityError(f"{BUDGET_ENV}={raw!r} is not an integer") from None
        if value <= 0:
            raise CapacityError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# trees and packings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PendantTree:
    terminals: tuple[int, ...]
    internal: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {"internal": list(self.internal), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class TreePacking:
    terminals: tuple[int, ...]
    trees: tuple[PendantTree, ...]

    def to_dict(self) -> dict:
        return {"terminals": list(self.terminals), "trees": [t.to_dict() for t in self.trees]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "TreePacking":
        terms = tuple(data["terminals"])
        trees = tuple(
            PendantTree(terms, tuple(t["internal"]), tuple(tuple(e) for e in t["edges"]))
            for t in data["trees"]
        )
        return cls(terms, trees)

    @classmethod
    def from_json(cls, text: str) -> "TreePacking":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LocalResult:
    tau: int
    witness: TreePacking
    upper_bound_used: int
    nodes_explored: int


@dataclass(frozen=True)
class GlobalResult:
    k: int
    tau_k: int
    minimizing_set: tuple[int, ...]
    witness: TreePacking
    nodes_explored: int = 0


def canonical_internal_set(t: PendantTree) -> tuple[int, ...]:
    return t.internal


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def tree_from_internal_set(g: Graph, s: Iterable[int], i: Iterable[int]) -> PendantTree:
    """Deterministic pendant tree on terminals ``s`` with internal set ``i``.

    Spanning edges come from a breadth-first search of G[i] started at its
    smallest vertex (neighbours visited in ascending order); each terminal is
    then attached to its smallest neighbour in ``i``.
    """
    terms = vertex_set(g, s)
    inner = vertex_set(g, i)
    if len(terms) < 2:
        raise ReductionError("a pendant tree needs at least two terminals")
    if set(terms) & set(inner):
        raise ReductionError(f"internal set meets terminals at {sorted(set(terms) & set(inner))}")
    if not inner:
        if len(terms) == 2 and g.has_edge(*terms):
            return PendantTree(terms, (), (terms,))
        raise ReductionError("empty internal set only works for two adjacent terminals")
    imask = to_mask(inner)
    if not g.induced_connected(imask):
        raise ReductionError(f"internal set {list(inner)} does not induce a connected subgraph")
    undominated = [t for t in terms if not g.adj[t] & imask]
    if undominated:
        raise ReductionError(f"terminal(s) {undominated} have no neighbour in the internal set")

    edges = []
    seen = 1 << inner[0]
    queue = [inner[0]]
    for v in queue:
        for w in iter_bits(g.adj[v] & imask & ~seen):
            seen |= 1 << w
            edges.append(_edge(v, w))
            queue.append(w)
    for t in terms:
        low = g.adj[t] & imask
        edges.append(_edge(t, (low & -low).bit_length() - 1))
    return PendantTree(terms, inner, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def upper_bound_tau(g: Graph, s: Iterable[int]) -> int:
    """min(n-k, floor(|E[S, V-S]| / k), min degree over S).

    For k = 2 the direct terminal edge is a tree that uses neither a free
    vertex nor a boundary edge, so the first two terms gain one when the
    terminals are adjacent.
    """
    terms = vertex_set(g, s)
    k = len(terms)
    if not 2 <= k <= g.n:
        raise GraphError(f"terminal set size {k} outside 2..{g.n}")
    if k == g.n:
        return 0
    direct = 1 if k == 2 and g.has_edge(*terms) else 0
    mask = to_mask(terms)
    return min(
        g.n - k + direct,
        boundary_size(g, mask) // k + direct,
        min(g.degree(t) for t in terms),
    )


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def minimal_internal_sets(g: Graph, terms: Sequence[int]) -> list[int]:
    """Bitmasks of all inclusion-minimal connected S-dominating subsets of V - S."""
    smask = to_mask(terms)
    free = g.all_mask & ~smask
    full = (1 << len(terms)) - 1
    dom = [0] * g.n
    for v in iter_bits(free):
        bits = 0
        for j, t in enumerate(terms):
            if g.adj[v] >> t & 1:
                bits |= 1 << j
        dom[v] = bits
    # vertices that dominate nothing can still be connectors; all free vertices stay
    found: list[int] = []
    adj = g.adj

    def extend(sub: int, ext: int, closed: int, cover: int, lowmask: int) -> None:
        # ESU-style enumeration: each connected set is produced once, rooted at its minimum
        if cover == full:
            found.append(sub)
            return
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            new_nb = adj[w] & free & ~closed & ~lowmask
            extend(sub | low, ext | new_nb, closed | new_nb, cover | dom[w], lowmask)

    for v in iter_bits(free):
        lowmask = (1 << (v + 1)) - 1
        nb = adj[v] & free & ~lowmask
        extend(1 << v, nb, nb | (1 << v), dom[v], lowmask)

    def dominating(mask: int) -> bool:
        c = 0
        for v in iter_bits(mask):
            c |= dom[v]
        return c == full

    minimal = []
    for mask in found:
        if mask.bit_count() == 1:
            minimal.append(mask)
            continue
        # single-vertex deletions suffice: any smaller valid subset is reachable by
        # repeatedly removing a leaf of a spanning tree that extends it
        if not any(
            g.induced_connected(mask ^ (1 << v)) and dominating(mask ^ (1 << v))
            for v in iter_bits(mask)
        ):
            minimal.append(mask)
    minimal.sort(key=lambda m: (m.bit_count(), m))
    return minimal


@dataclass
class _Search:
    terms: tuple[int, ...]
    term_nbrs: list[int]
    stop_at: int | None
    budget: int
    nodes: int = 0
    best: list[int] = field(default_factory=list)

    def run(self, sets: list[int], chosen: list[int]) -> bool:
        """Branch and bound; returns True once ``stop_at`` trees have been found."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes")
        if len(chosen) > len(self.best):
            self.best = list(chosen)
            if self.stop_at is not None and len(self.best) >= self.stop_at:
                return True
        if not sets:
            return False
        union = 0
        smallest = None
        for a in sets:
            union |= a
            c = a.bit_count()
            if smallest is None or c < smallest:
                smallest = c
        # every tree consumes a distinct free neighbour of each terminal
        bound = min((nb & union).bit_count() for nb in self.term_nbrs)
        bound = min(bound, union.bit_count() // smallest)
        if len(chosen) + bound <= len(self.best):
            return False
        # branch on a free neighbour of the tightest terminal
        pivot_nb = min(self.term_nbrs, key=lambda nb: ((nb & union).bit_count(), nb))
        avail = pivot_nb & union
        u = avail & -avail
        for a in sets:
            if a & u:
                rest = [b for b in sets if not b & a]
                if self.run(rest, chosen + [a]):
                    return True
        return self.run([b for b in sets if not b & u], chosen)


def local_tau(
    g: Graph,
    s: Iterable[int],
    *,
    stop_at: int | None = None,
    budget: int | None = None,
    cap: int = DEFAULT_SOLVER_CAP,
) -> LocalResult:
    """Exact tau_G(S) with a maximum witness packing.

    With ``stop_at`` the search ends as soon as that many trees are found;
    the result is then only a lower bound (``tau == stop_at``).
    """
    terms = vertex_set(g, s)
    k = len(terms)
    if not 2 <= k <= g.n:
        raise GraphError(f"terminal set size {k} outside 2..{g.n}")
    if g.n > cap:
        raise CapacityError(f"n={g.n} exceeds the solver cap {cap}")
    if budget is None:
        budget = default_budget()
    ub = upper_bound_tau(g, terms)
    if k == g.n:
        return LocalResult(0, TreePacking(terms, ()), ub, 0)

    direct = k == 2 and g.has_edge(*terms)
    sets = minimal_internal_sets(g, terms)
    smask = to_mask(terms)
    search = _Search(
        terms,
        [g.adj[t] & ~smask for t in terms],
        None if stop_at is None else max(stop_at - int(direct), 0),
        budget,
    )
    if search.stop_at != 0:
        search.run(sets, [])
    trees = [tree_from_internal_set(g, terms, list(iter_bits(m))) for m in search.best]
    if direct:
        trees.append(PendantTree(terms, (), (terms,)))
    trees.sort(key=lambda t: (t.internal, t.edges))
    return LocalResult(len(trees), TreePacking(terms, tuple(trees)), ub, search.nodes)


def tau_k(
    g: Graph,
    k: int,
    *,
    budget: int | None = None,
    cap: int = DEFAULT_SOLVER_CAP,
) -> GlobalResult:
    """Exact tau_k(G): minimum of tau_G(S) over all k-subsets.

    The minimising set is the lexicographically first k-subset attaining the
    minimum.  Disconnected graphs return 0 at once, with the first k-subset
    that meets two components as the minimiser.
    """
    if not 2 <= k <= g.n:
        raise GraphError(f"k={k} outside 2..{g.n}")
    if g.n > cap:
        raise CapacityError(f"n={g.n} exceeds the solver cap {cap}")
    if budget is None:
        budget = default_budget()

    if not is_connected(g):
        owner = {}
        for idx, comp in enumerate(components(g)):
            owner.update(dict.fromkeys(comp, idx))
        for sub in combinations(range(g.n), k):
            if len({owner[v] for v in sub}) > 1:
                return GlobalResult(k, 0, sub, TreePacking(sub, ()), 0)

    best: LocalResult | None = None
    best_set: tuple[int, ...] = ()
    spent = 0
    for sub in combinations(range(g.n), k):
        cap_here = None if best is None else best.tau
        res = local_tau(g, sub, stop_at=cap_here, budget=budget - spent, cap=cap)
        spent += res.nodes_explored
        if best is None or res.tau < best.tau:
            best, best_set = res, sub
            if best.tau == 0:
                break
    assert best is not None
    return GlobalResult(k, best.tau, best_set, best.witness, spent)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str  # e.g. "vertex shared", "terminal degree", "not a tree"
    tree: int | None
    detail: str


@dataclass(frozen=True)
class PackingVerdict:
    ok: bool
    violations: tuple[Violation, ...]
    boundary_counts: tuple[int, ...]
    k: int

    @property
    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    @property
    def boundary_exact(self) -> bool:
        """Every tree meets E[S, V-S] in exactly k edges (the canonical leaf-attached form)."""
        return all(c == self.k for c in self.boundary_counts)


def verify_packing(g: Graph, p: TreePacking) -> PackingVerdict:
    """Check every tree is a pendant S-Steiner tree of ``g`` and the packing is internally disjoint.

    For k >= 3 each tree must also contain at least k boundary edges.
    """
    bad: list[Violation] = []
    try:
        terms = vertex_set(g, p.terminals)
    except GraphError as exc:
        return PackingVerdict(False, (Violation("terminal range", None, str(exc)),), (), 0)
    k = len(terms)
    if k < 2 or tuple(p.terminals) != terms:
        bad.append(Violation("terminal set", None, f"terminals {list(p.terminals)} not a sorted set of >= 2"))
    tset = set(terms)
    counts = []
    used_vertices: dict[int, int] = {}
    used_edges: dict[tuple[int, int], int] = {}
    for idx, tree in enumerate(p.trees):
        if tuple(tree.terminals) != tuple(p.terminals):
            bad.append(Violation("terminal set", idx, "tree terminals differ from packing terminals"))
        edges = [_edge(*e) for e in tree.edges]
        verts = {v for e in edges for v in e}
        internal = set(tree.internal)
        out_of_range = [v for v in verts | internal if not (isinstance(v, int) and 0 <= v < g.n)]
        if out_of_range:
            bad.append(Violation("vertex range", idx, f"vertices {sorted(out_of_range)} not in graph"))
            counts.append(0)
            continue
        if len(set(edges)) != len(edges):
            bad.append(Violation("not a tree", idx, "repeated edge"))
        for u, v in edges:
            if u == v or not g.has_edge(u, v):
                bad.append(Violation("edge not in graph", idx, f"({u}, {v})"))
        if internal & tset:
            bad.append(Violation("internal mismatch", idx, f"internal set meets terminals at {sorted(internal & tset)}"))
        missing = tset - verts
        if missing:
            bad.append(Violation("terminal missing", idx, f"terminals {sorted(missing)} not in tree"))
        if verts - tset != internal:
            bad.append(Violation("internal mismatch", idx, f"tree vertices outside S {sorted(verts - tset)} != internal {sorted(internal)}"))
        if not _is_tree(verts, edges):
            bad.append(Violation("not a tree", idx, "edges do not form a tree"))
        deg: dict[int, int] = {}
        for u, v in edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        for t in terms:
            if t in verts and deg.get(t, 0) != 1:
                bad.append(Violation("terminal degree", idx, f"terminal {t} has degree {deg.get(t, 0)}"))
        crossing = sum(1 for u, v in edges if (u in tset) != (v in tset))
        counts.append(crossing)
        if k >= 3 and crossing < k:
            bad.append(Violation("boundary count", idx, f"{crossing} boundary edges < k={k}"))
        for v in verts - tset:
            if v in used_vertices:
                bad.append(Violation("vertex shared", idx, f"vertex {v} also in tree {used_vertices[v]}"))
            else:
                used_vertices[v] = idx
        for e in set(edges):
            if e in used_edges:
                bad.append(Violation("edge shared", idx, f"edge {e} also in tree {used_edges[e]}"))
            else:
                used_edges[e] = idx
    return PackingVerdict(not bad, tuple(bad), tuple(counts), k)


def _is_tree(verts: set[int], edges: list[tuple[int, int]]) -> bool:
    if not verts or len(edges) != len(verts) - 1:
        return False
    parent = {v: v for v in verts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True
