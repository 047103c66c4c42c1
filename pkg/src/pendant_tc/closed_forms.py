"""Closed-form values and bounds for tau_k, each tagged with the rule that produced it.

All values are floored at 0, since tau is a count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .graph_core import Graph, GraphError, boundary_size, min_degree, to_mask, vertex_connectivity


class Rule(str, Enum):
    LEMMA1 = "Lemma1"
    LEMMA2 = "Lemma2"
    THEOREM1 = "Theorem1"
    PROPOSITION1 = "Proposition1"
    LEMMA4 = "Lemma4"
    LEMMA5 = "Lemma5"
    THEOREM2 = "Theorem2"
    THEOREM3 = "Theorem3"


class Kind(str, Enum):
    EXACT = "Exact"
    UPPER = "UpperBound"
    LOWER = "LowerBound"
    NECESSARY = "NecessaryCondition"


@dataclass(frozen=True)
class BoundResult:
    value: int
    rule: Rule
    kind: Kind

    def to_dict(self) -> dict:
        return {"rule": self.rule.value, "kind": self.kind.value, "value": self.value}


def tau_complete(n: int, k: int) -> BoundResult:
    if not 3 <= k <= n:
        raise GraphError(f"need 3 <= k <= n, got k={k}, n={n}")
    return BoundResult(n - k, Rule.LEMMA4, Kind.EXACT)


def tau_complete_bipartite(r: int, s: int, k: int) -> BoundResult:
    if r < 1 or s < 1 or k < 2:
        raise GraphError(f"bad parameters r={r}, s={s}, k={k}")
    return BoundResult(max(min(r - k + 1, s - k + 1), 0), Rule.LEMMA5, Kind.EXACT)


def tau_multipartite_upper(parts: Sequence[int], k: int) -> BoundResult:
    """Upper bound for K_{n_1,...,n_t} with n_1 <= ... <= n_t.

    k >= t: floor((sum n_i - k) / 2).
    k <  t: sum of the t-k largest parts + floor((sum of the k smallest - k) / 2).
    """
    parts = list(parts)
    if parts != sorted(parts):
        raise GraphError(f"parts must be sorted ascending, got {parts}")
    if len(parts) < 2 or k < 3 or min(parts) < 1:
        raise GraphError(f"need t >= 2 parts of size >= 1 and k >= 3, got {parts}, k={k}")
    t = len(parts)
    if k >= t:
        value = (sum(parts) - k) // 2
    else:
        value = sum(parts[k:]) + (sum(parts[:k]) - k) // 2
    return BoundResult(max(value, 0), Rule.THEOREM2, Kind.UPPER)


def tau_threshold(ell: int, k: int) -> BoundResult:
    """Exact tau_k of a threshold graph with minimum degree ``ell``."""
    if ell < 0 or k < 3:
        raise GraphError(f"need ell >= 0 and k >= 3, got ell={ell}, k={k}")
    return BoundResult(0 if k > ell else ell - k + 1, Rule.THEOREM3, Kind.EXACT)


def boundary_bound(g: Graph, k: int, subsets: Iterable[Sequence[int]] | None = None) -> int:
    """min over k-subsets S of floor(|E[S, V-S]| / k); ``subsets`` restricts the minimum.

    For k = 2 an edge between the two terminals is one more tree that uses
    no boundary edge, so it adds one to that subset's term.
    """
    if subsets is None:
        subsets = combinations(range(g.n), k)
    best = None
    for s in subsets:
        if len(set(s)) != k:
            raise GraphError(f"subset {s} is not a {k}-set")
        val = boundary_size(g, to_mask(s)) // k
        if k == 2 and g.has_edge(*s):
            val += 1
        if best is None or val < best:
            best = val
    if best is None:
        raise GraphError("no subsets supplied")
    return best


FULL_BOUNDARY_LIMIT = 200_000


def necessary_upper_bounds(
    g: Graph,
    k: int,
    subsets: Iterable[Sequence[int]] | None = None,
) -> list[BoundResult]:
    """Every generic upper bound on tau_k(G) that follows from the graph's invariants.

    Lemma 1 (delta - k + 1) is only listed for k >= 3: with the two-terminal
    convention a direct edge is an extra tree and the bound fails (K_3, k=2).
    Theorem 1 uses all k-subsets when there are at most ``FULL_BOUNDARY_LIMIT``,
    otherwise the caller's ``subsets`` (omitted if none are given).
    """
    if not 2 <= k <= g.n:
        raise GraphError(f"k={k} outside 2..{g.n}")
    out = []
    if k >= 3:
        out.append(BoundResult(max(min_degree(g) - k + 1, 0), Rule.LEMMA1, Kind.NECESSARY))
    out.append(BoundResult(max(vertex_connectivity(g) - k + 2, 0), Rule.LEMMA2, Kind.NECESSARY))
    if k >= 3:
        out.append(BoundResult(g.n - k, Rule.PROPOSITION1, Kind.UPPER))
    if subsets is None and comb(g.n, k) <= FULL_BOUNDARY_LIMIT:
        out.append(BoundResult(boundary_bound(g, k), Rule.THEOREM1, Kind.UPPER))
    elif subsets is not None:
        out.append(BoundResult(boundary_bound(g, k, subsets), Rule.THEOREM1, Kind.UPPER))
    return out


def best_upper_bound(bounds: Iterable[BoundResult]) -> int:
    return min(b.value for b in bounds if b.kind in (Kind.UPPER, Kind.NECESSARY, Kind.EXACT))
