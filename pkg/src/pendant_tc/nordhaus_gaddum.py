"""Sum and product of tau_k over a graph and its complement."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

from .graph_core import Graph, GraphError, complement, is_connected, max_degree, min_degree
from .solver import tau_k


class Attainment(str, Enum):
    SUM_UPPER = "SumUpper"
    SUM_LOWER = "SumLower"
    INTERIOR = "Interior"


@dataclass(frozen=True)
class NGRecord:
    n: int
    k: int
    tau_g: int
    tau_gbar: int
    sum: int
    product: int
    sum_upper: int
    product_upper_floor_sq: int  # floor((n-k)/2)^2
    product_upper_amgm: int  # floor((n-k)^2/4)
    attainment: Attainment

    @property
    def sum_ok(self) -> bool:
        return 0 <= self.sum <= self.sum_upper

    @property
    def product_ok_floor_sq(self) -> bool:
        return 0 <= self.product <= self.product_upper_floor_sq

    @property
    def product_ok_amgm(self) -> bool:
        return 0 <= self.product <= self.product_upper_amgm

    def to_dict(self) -> dict:
        d = asdict(self)
        d["attainment"] = self.attainment.value
        d.update(
            sum_ok=self.sum_ok,
            product_ok_floor_sq=self.product_ok_floor_sq,
            product_ok_amgm=self.product_ok_amgm,
            product_tight_floor_sq=self.product == self.product_upper_floor_sq,
            product_tight_amgm=self.product == self.product_upper_amgm,
        )
        return d


def ng_evaluate(g: Graph, k: int, budget: int | None = None) -> NGRecord:
    """Solve tau_k on G and its complement and compare against the joint bounds.

    Disconnected graphs (either side) contribute 0.  When n = k the sum is
    both 0 and n-k; that case is labelled SumUpper.
    """
    if not 3 <= k <= g.n:
        raise GraphError(f"needs 3 <= k <= n, got k={k}, n={g.n}")
    a = tau_k(g, k, budget=budget).tau_k
    b = tau_k(complement(g), k, budget=budget).tau_k
    m = g.n - k
    total = a + b
    if total == m:
        att = Attainment.SUM_UPPER
    elif total == 0:
        att = Attainment.SUM_LOWER
    else:
        att = Attainment.INTERIOR
    return NGRecord(g.n, k, a, b, total, a * b, m, (m // 2) ** 2, m * m // 4, att)


@dataclass(frozen=True)
class ImplicationCheck:
    """Outcome of checking ``premise => conclusion`` on one graph."""

    name: str
    premise: bool
    conclusion: bool
    detail: str

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion

    def to_dict(self) -> dict:
        return {
            "name": self.name, "premise": self.premise, "conclusion": self.conclusion,
            "holds": self.holds, "detail": self.detail,
        }


def check_prop2(g: Graph, k: int, budget: int | None = None) -> ImplicationCheck:
    """For disconnected G: sum = n-k iff the complement is complete (G edgeless)."""
    rec = ng_evaluate(g, k, budget)
    disconnected = not is_connected(g)
    attained = rec.sum == rec.sum_upper
    edgeless = g.edge_count == 0
    return ImplicationCheck(
        "disconnected_sum_upper_iff_complement_complete",
        disconnected,
        attained == edgeless,
        f"sum={rec.sum}, n-k={rec.sum_upper}, complement complete={edgeless}",
    )


def check_prop3(g: Graph, k: int, budget: int | None = None) -> ImplicationCheck:
    """sum = n-k implies max degree - min degree <= k-1."""
    rec = ng_evaluate(g, k, budget)
    spread = max_degree(g) - min_degree(g)
    return ImplicationCheck(
        "sum_upper_implies_degree_spread",
        rec.sum == rec.sum_upper,
        spread <= k - 1,
        f"sum={rec.sum}, n-k={rec.sum_upper}, degree spread={spread}, k-1={k - 1}",
    )


@dataclass(frozen=True)
class NearNRecord:
    name: str
    k: int
    sum: int
    allowed: tuple[int, ...]
    either_complete: bool
    # sum the statement predicts from completeness of G or its complement
    predicted: int

    @property
    def in_range(self) -> bool:
        return self.sum in self.allowed

    @property
    def iff_holds(self) -> bool:
        return self.sum == self.predicted

    def to_dict(self) -> dict:
        return {
            "name": self.name, "k": self.k, "sum": self.sum, "allowed": list(self.allowed),
            "either_complete": self.either_complete, "predicted": self.predicted,
            "in_range": self.in_range, "iff_holds": self.iff_holds,
        }


def check_near_n_ng(g: Graph, budget: int | None = None) -> list[NearNRecord]:
    """Joint sums for k = n, n-1, n-2 with their value sets and iff clauses (n >= 5)."""
    if g.n < 5:
        raise GraphError(f"needs n >= 5, got n={g.n}")
    either = g.is_complete() or g.edge_count == 0
    out = []
    for name, k, allowed, on_complete in (
        ("tau_n", g.n, (0,), 0),
        ("tau_n-1", g.n - 1, (0, 1), 1),
        ("tau_n-2", g.n - 2, (0, 2), 2),
    ):
        rec = ng_evaluate(g, k, budget)
        out.append(NearNRecord(name, k, rec.sum, allowed, either, on_complete if either else 0))
    return out
