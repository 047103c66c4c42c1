"""Structural predicates for tau_k(G) in {n-k, n-k-1, n-k-2} and for tau_k(G) = 0.

Every predicate is total: when the structural statement does not cover the
input (too few vertices, k out of range) it answers ``NotApplicable`` with
the reason instead of raising.  Predictions below the order at which the
statement is claimed are flagged ``advisory`` and only the solver is
authoritative there.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .families import LEMMA6_HOSTS
from .graph_core import (
    ComponentShape,
    Graph,
    GraphError,
    complement,
    component_shapes,
    is_connected,
    max_degree,
    min_degree,
    vertex_connectivity,
)
from .solver import tau_k

NK1_MIN_ORDER = 7
NK2_MIN_ORDER = 15


class Prediction(str, Enum):
    N_MINUS_K = "ExactlyNMinusK"
    N_MINUS_K_MINUS_1 = "ExactlyNMinusKMinus1"
    N_MINUS_K_MINUS_2 = "ExactlyNMinusKMinus2"
    LOWER = "Lower"
    NOT_APPLICABLE = "NotApplicable"


_OFFSETS = {
    Prediction.N_MINUS_K: 0,
    Prediction.N_MINUS_K_MINUS_1: 1,
    Prediction.N_MINUS_K_MINUS_2: 2,
}

_NK = Prediction.N_MINUS_K
_NK1 = Prediction.N_MINUS_K_MINUS_1
_NK2 = Prediction.N_MINUS_K_MINUS_2


@dataclass(frozen=True)
class LargeTauVerdict:
    predicted: Prediction
    evidence: str
    advisory: bool = False
    # the class this classifier decides; LOWER means tau_k is strictly below it
    target: Prediction = Prediction.N_MINUS_K

    def value(self, n: int, k: int) -> int | None:
        """The predicted tau_k, or None when the verdict is not an exact value."""
        off = _OFFSETS.get(self.predicted)
        return None if off is None else n - k - off

    def agrees_with(self, n: int, k: int, tau: int) -> bool | None:
        """Compare with a solver value; None when the verdict makes no claim."""
        if self.predicted == Prediction.NOT_APPLICABLE:
            return None
        exact = self.value(n, k)
        if exact is not None:
            return tau == exact
        return tau < n - k - _OFFSETS[self.target]

    def to_dict(self) -> dict:
        return {"predicted": self.predicted.value, "evidence": self.evidence, "advisory": self.advisory}


def _not_applicable(reason: str, target: Prediction) -> LargeTauVerdict:
    return LargeTauVerdict(Prediction.NOT_APPLICABLE, reason, target=target)


def _k_range_problem(g: Graph, k: int, target: Prediction) -> str | None:
    if not 3 <= k <= g.n:
        return f"needs 3 <= k <= n, got k={k}, n={g.n}"
    if g.n - k - _OFFSETS[target] < 0:
        return f"n-k-{_OFFSETS[target]} is negative for k={k}, n={g.n}"
    return None


def matching_size(gbar: Graph) -> int | None:
    """Number of edges if ``gbar`` is a matching plus isolated vertices, else None."""
    if max_degree(gbar) > 1:
        return None
    return gbar.edge_count


# ---------------------------------------------------------------------------
# n - k and n - k - 1
# ---------------------------------------------------------------------------

def classify_nk(g: Graph, k: int) -> LargeTauVerdict:
    """tau_k(G) = n - k exactly when G is complete (for n >= 4)."""
    problem = _k_range_problem(g, k, _NK)
    if problem:
        return _not_applicable(problem, _NK)
    if g.n < 4:
        return _not_applicable(f"needs n >= 4, got n={g.n}", _NK)
    if g.is_complete():
        return LargeTauVerdict(_NK, f"K_{g.n}", target=_NK)
    missing = complement(g).edge_count
    return LargeTauVerdict(Prediction.LOWER, f"not complete, {missing} edge(s) missing", target=_NK)


def classify_nk1(g: Graph, k: int) -> LargeTauVerdict:
    """tau_k(G) = n - k - 1 exactly when the complement is rK_2 plus isolated vertices, r in {1, 2}."""
    problem = _k_range_problem(g, k, _NK1)
    if problem:
        return _not_applicable(problem, _NK1)
    if g.n < NK1_MIN_ORDER:
        return _not_applicable(f"needs n >= {NK1_MIN_ORDER}, got n={g.n}", _NK1)
    if g.is_complete():
        return LargeTauVerdict(_NK, f"K_{g.n} is in the n-k class", target=_NK1)
    r = matching_size(complement(g))
    if r in (1, 2):
        return LargeTauVerdict(_NK1, f"complement is {r}K2 + {g.n - 2 * r}K1", target=_NK1)
    if r is not None:
        return LargeTauVerdict(Prediction.LOWER, f"complement is a matching with {r} > 2 edges", target=_NK1)
    return LargeTauVerdict(Prediction.LOWER, "complement has a vertex of degree >= 2", target=_NK1)


# ---------------------------------------------------------------------------
# n - k - 2: complement hosts
# ---------------------------------------------------------------------------

@dataclass
class _Bin:
    label: str
    size: int
    cycle: bool
    free: int
    untouched: bool = True


def _host_slots(kind: str, n: int) -> tuple[list[_Bin], int] | None:
    """Path/cycle bins and the number of K2 slots of a host, or None if it needs more than n vertices."""
    bins: list[_Bin] = []
    k2 = 0
    used = 0
    fill = False
    for token in kind.split("+"):
        if token == "*K2":
            fill = True
        elif token == "K2":
            k2 += 1
            used += 2
        else:
            size = int(token[1:])
            bins.append(_Bin(token, size, token[0] == "C", size))
            used += size
    if used > n:
        return None
    if fill:
        k2 += (n - used) // 2
    return bins, k2


def _embeds(shapes: list[ComponentShape], bins: list[_Bin], k2: int) -> bool:
    """Place every nontrivial path/cycle component into the bins and K2 slots."""
    # biggest and most constrained pieces first
    order = sorted(shapes, key=lambda c: (c.kind != "cycle", -c.order))

    def place(i: int, k2_left: int) -> bool:
        if i == len(order):
            return True
        comp = order[i]
        a = comp.order
        tried: set[tuple] = set()
        for b in bins:
            key = (b.size, b.cycle, b.free, b.untouched)
            if key in tried:
                continue
            tried.add(key)
            if comp.kind == "cycle":
                if not (b.cycle and b.untouched and b.size == a):
                    continue
                b.free, b.untouched = 0, False
                if place(i + 1, k2_left):
                    return True
                b.free, b.untouched = a, True
            elif b.free >= a:
                old = (b.free, b.untouched)
                b.free, b.untouched = b.free - a, False
                if place(i + 1, k2_left):
                    return True
                b.free, b.untouched = old
        if comp.kind == "path" and a == 2 and k2_left > 0:
            return place(i + 1, k2_left - 1)
        return False

    return place(0, k2)


def embeds_in_listed_family(gbar: Graph, k: int, reading: str = "statement") -> LargeTauVerdict:
    """Is ``gbar`` a subgraph of one of the listed complement hosts for k in {3, 4}?

    ``reading`` picks the k = 4 host list: ``"statement"`` uses C5+K2 and
    the cycles C6, C7; ``"proof"`` uses P5+K2 and the cycles C5, C6, C7.
    Both readings coincide for k = 3.
    """
    if k not in (3, 4):
        raise GraphError(f"host lists exist only for k in (3, 4), got k={k}")
    if (k, reading) not in LEMMA6_HOSTS:
        raise GraphError(f"unknown reading {reading!r}")
    if max_degree(gbar) > 2:
        return LargeTauVerdict(Prediction.LOWER, "complement has a vertex of degree >= 3", target=_NK2)
    shapes = [c for c in component_shapes(gbar) if c.kind != "isolated"]
    for kind in LEMMA6_HOSTS[(k, reading)]:
        slots = _host_slots(kind, gbar.n)
        if slots is None:
            continue
        bins, k2 = slots
        if _embeds(shapes, bins, k2):
            return LargeTauVerdict(_NK2, f"complement embeds in host {kind} (n={gbar.n})", target=_NK2)
    found = "+".join(str(c) for c in shapes) or "edgeless"
    return LargeTauVerdict(Prediction.LOWER, f"complement {found} fits no host for k={k}", target=_NK2)


def k5_complement_rule(gbar: Graph) -> tuple[bool, str]:
    """The k >= 5 test on the complement: P3 plus isolated vertices, or
    1 <= max degree <= 2, at least 3 edges and at most 4 non-isolated vertices."""
    shapes = [c for c in component_shapes(gbar) if c.kind != "isolated"]
    if len(shapes) == 1 and shapes[0].kind == "path" and shapes[0].order == 3:
        return True, "complement is P3 plus isolated vertices"
    delta = max_degree(gbar)
    edges = gbar.edge_count
    active = sum(c.order for c in shapes)
    ok = 1 <= delta <= 2 and edges >= 3 and active <= 4
    return ok, f"complement max degree {delta}, {edges} edges, {active} non-isolated vertices"


def classify_nk2(g: Graph, k: int, reading: str = "statement") -> LargeTauVerdict:
    """Decide tau_k(G) = n - k - 2 from the complement.

    Complete graphs and the rK_2 complements (r in {1, 2}) are reported in
    their own classes first so the three exact classes stay disjoint.
    Below n = 15 the k in {3, 4} host test still runs but is advisory; for
    k >= 5 the verdict there is NotApplicable (see ``k5_complement_rule``).
    """
    problem = _k_range_problem(g, k, _NK2)
    if problem:
        return _not_applicable(problem, _NK2)
    advisory = g.n < NK2_MIN_ORDER
    if g.is_complete():
        return LargeTauVerdict(_NK, f"K_{g.n} is in the n-k class", advisory, target=_NK2)
    gbar = complement(g)
    if matching_size(gbar) in (1, 2):
        return LargeTauVerdict(_NK1, "complement is 1 or 2 disjoint edges", advisory, target=_NK2)
    if k in (3, 4):
        v = embeds_in_listed_family(gbar, k, reading)
        return LargeTauVerdict(v.predicted, v.evidence, advisory, _NK2)
    if advisory:
        return _not_applicable(f"k >= 5 needs n >= {NK2_MIN_ORDER}, got n={g.n}", _NK2)
    ok, evidence = k5_complement_rule(gbar)
    return LargeTauVerdict(_NK2 if ok else Prediction.LOWER, evidence, target=_NK2)


# ---------------------------------------------------------------------------
# tau_k = 0
# ---------------------------------------------------------------------------

class ZeroStatus(str, Enum):
    ZERO = "Zero"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ZeroVerdict:
    status: ZeroStatus
    reason: str | None  # "Condition1" or "Condition2" when status is ZERO
    detail: str

    def to_dict(self) -> dict:
        return {"status": self.status.value, "reason": self.reason, "detail": self.detail}


def classify_zero(g: Graph, k: int) -> ZeroVerdict:
    """Sufficient conditions for tau_k(G) = 0; never claims a nonzero value."""
    if not is_connected(g):
        raise GraphError("classify_zero needs a connected graph")
    if not 3 <= k <= g.n:
        raise GraphError(f"needs 3 <= k <= n, got k={k}, n={g.n}")
    kappa = vertex_connectivity(g)
    delta = min_degree(g)
    if kappa <= k - 2:
        return ZeroVerdict(ZeroStatus.ZERO, "Condition1", f"kappa={kappa} <= k-2={k - 2}")
    if kappa == delta == k - 1:
        return ZeroVerdict(ZeroStatus.ZERO, "Condition2", f"kappa=delta={kappa}=k-1")
    return ZeroVerdict(ZeroStatus.UNKNOWN, None, f"kappa={kappa}, delta={delta}, k={k}")


# ---------------------------------------------------------------------------
# k in {n, n-1, n-2}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NearNCheck:
    name: str
    k: int
    predicted: int
    solver: int
    advisory: bool

    @property
    def agree(self) -> bool:
        return self.predicted == self.solver

    def to_dict(self) -> dict:
        return {
            "name": self.name, "k": self.k, "predicted": self.predicted,
            "solver": self.solver, "agree": self.agree, "advisory": self.advisory,
        }


def predicted_near_n(g: Graph, k: int) -> int:
    """Predicted tau_k for k in {n, n-1, n-2} from completeness and the complement matching."""
    n = g.n
    if k == n:
        return 0
    complete = g.is_complete()
    if k == n - 1:
        return 1 if complete else 0
    if k == n - 2:
        if complete:
            return 2
        return 1 if matching_size(complement(g)) in (1, 2) else 0
    raise GraphError(f"k={k} is not within 2 of n={n}")


def corollaries_near_n(g: Graph, budget: int | None = None) -> list[NearNCheck]:
    """Compare the predicted tau_n, tau_{n-1}, tau_{n-2} with the solver (k >= 3 only)."""
    if not is_connected(g):
        raise GraphError("corollaries_near_n needs a connected graph")
    out = []
    for name, k in (("tau_n", g.n), ("tau_n-1", g.n - 1), ("tau_n-2", g.n - 2)):
        if k < 3:
            continue
        advisory = k == g.n - 2 and g.n < NK1_MIN_ORDER
        solved = tau_k(g, k, budget=budget).tau_k
        out.append(NearNCheck(name, k, predicted_near_n(g, k), solved, advisory))
    return out
