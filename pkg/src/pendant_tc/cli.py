"""Command-line front end.

    pendant-tc compute --family W_6 --k 3 --witness
    pendant-tc compute --graph graphs.g6 --k 3 --set 0,1,2
    pendant-tc scan --graphs connected7.g6 --k 3 --check all --jobs 4
    pendant-tc family --family K_{3,3} --k 3 --compare-formula

Exit codes: 0 success, 1 a check disagreed with the solver, 2 usage or
parse error, 3 node budget or size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .characterizations import (
    Prediction,
    ZeroStatus,
    classify_nk,
    classify_nk1,
    classify_nk2,
    classify_zero,
    corollaries_near_n,
)
from .closed_forms import (
    BoundResult,
    Kind,
    necessary_upper_bounds,
    tau_complete,
    tau_complete_bipartite,
    tau_multipartite_upper,
    tau_threshold,
)
from .families import Complete, CompleteMultipartite, Threshold, build, parse_family
from .graph_core import Graph, GraphError, is_connected, min_degree, read_graph6_lines, write_graph6
from .nordhaus_gaddum import ng_evaluate
from .solver import CapacityError, local_tau, tau_k, upper_bound_tau, verify_packing

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

SCHEMA_VERSION = 1
CSV_COLUMNS = ("graph6", "k", "check", "predicted", "solver", "agree", "advisory", "evidence")
CHECKS = ("thm4", "thm5", "thm6", "thm7", "ng", "corollaries")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _report(command: dict, records: list[dict], summary: dict, started: float, **extra) -> dict:
    out = {"schema": SCHEMA_VERSION, "tool": "pendant-tc", "version": __version__, "command": command}
    out.update(extra)
    out["records"] = records
    out["summary"] = summary
    out["timing"] = {"wall_seconds": round(time.perf_counter() - started, 6)}
    return out


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({c: "" if row.get(c) is None else row.get(c) for c in CSV_COLUMNS})
    return buf.getvalue()


def _emit(args: argparse.Namespace, report: dict, csv_rows: list[dict]) -> None:
    if args.format == "csv":
        text = _csv_text(csv_rows)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(json.dumps(report["summary"]))
    else:
        sys.stdout.write(text)


def _echo(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _bounds_text(bounds: Sequence[BoundResult]) -> str:
    return ";".join(f"{b.rule.value}={b.value}" for b in bounds)


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_graphs(path: str) -> tuple[list[tuple[int, str, Graph]], list[dict]]:
    good, skipped = [], []
    for lineno, text, item in read_graph6_lines(_read_lines(path)):
        if isinstance(item, GraphError):
            skipped.append({"line": lineno, "error": str(item)})
        else:
            good.append((lineno, text, item))
    return good, skipped


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def _parse_set(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--set must be comma separated integers, got {text!r}") from None


def _compute_one(g: Graph, args: argparse.Namespace, terminals: list[int] | None) -> dict:
    rec: dict = {"graph6": write_graph6(g), "n": g.n}
    if terminals is not None:
        res = local_tau(g, terminals, budget=args.budget)
        rec.update(k=len(terminals), set=list(res.witness.terminals), tau=res.tau)
        rec["local_upper_bound"] = upper_bound_tau(g, terminals)
        packing = res.witness
    else:
        res = tau_k(g, args.k, budget=args.budget)
        rec.update(k=args.k, tau=res.tau_k, minimizing_set=list(res.minimizing_set))
        packing = res.witness
    bounds = necessary_upper_bounds(g, rec["k"])
    rec["bounds"] = [b.to_dict() for b in bounds]
    if args.witness:
        rec["witness"] = packing.to_dict()
        rec["witness_valid"] = verify_packing(g, packing).ok
    return rec


def cmd_compute(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if (args.graph is None) == (args.family is None):
        raise UsageError("give exactly one of --graph or --family")
    terminals = _parse_set(args.set) if args.set else None
    if terminals is not None:
        if args.k is not None and args.k != len(set(terminals)):
            raise UsageError(f"--k {args.k} does not match the {len(set(terminals))} vertices in --set")
        args.k = len(set(terminals))
    if args.k is None:
        raise UsageError("--k is required unless --set is given")

    skipped: list[dict] = []
    if args.family is not None:
        graphs = [build(parse_family(args.family))]
    else:
        loaded, skipped = _load_graphs(args.graph)
        if skipped:
            first = skipped[0]
            raise GraphError(f"line {first['line']}: {first['error']}")
        graphs = [g for _, _, g in loaded]
        if not graphs:
            raise UsageError(f"no graphs in {args.graph}")

    records = [_compute_one(g, args, terminals) for g in graphs]
    rows = [
        {
            "graph6": r["graph6"], "k": r["k"], "check": "local" if terminals else "tau_k",
            "solver": r["tau"], "evidence": ";".join(f"{b['rule']}={b['value']}" for b in r["bounds"]),
        }
        for r in records
    ]
    summary = {"graphs": len(records)}
    _emit(args, _report(_echo(args), records, summary, started), rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _ScanJob:
    lineno: int
    text: str
    g: Graph
    k: int | None
    checks: tuple[str, ...]
    reading: str
    budget: int | None


def _row(job: _ScanJob, check: str, k, predicted, solver, agree, advisory: bool, evidence: str) -> dict:
    return {
        "line": job.lineno, "graph6": job.text, "k": k, "check": check,
        "predicted": predicted, "solver": solver, "agree": agree,
        "advisory": advisory, "evidence": evidence,
    }


def _class_row(job: _ScanJob, check: str, verdict, tau: int) -> dict:
    n, k = job.g.n, job.k
    agree = verdict.agrees_with(n, k, tau)
    advisory = verdict.advisory or verdict.predicted == Prediction.NOT_APPLICABLE
    return _row(job, check, k, verdict.predicted.value, tau, agree, advisory, verdict.evidence)


def _scan_one(job: _ScanJob) -> list[dict]:
    g = job.g
    rows: list[dict] = []
    try:
        connected = is_connected(g)
        needs_k = [c for c in job.checks if c != "corollaries"]
        tau = None
        if needs_k and connected and job.k is not None and 3 <= job.k <= g.n:
            tau = tau_k(g, job.k, budget=job.budget).tau_k
        for check in job.checks:
            if check == "corollaries":
                if not connected:
                    rows.append(_row(job, check, None, "NotApplicable", None, None, True, "graph disconnected"))
                    continue
                for c in corollaries_near_n(g, budget=job.budget):
                    rows.append(_row(job, f"corollaries:{c.name}", c.k, c.predicted, c.solver, c.agree, c.advisory, ""))
                continue
            if job.k is None or not 3 <= job.k <= g.n:
                rows.append(_row(job, check, job.k, "NotApplicable", None, None, True, f"needs 3 <= k <= n={g.n}"))
                continue
            if check == "ng":
                rec = ng_evaluate(g, job.k, budget=job.budget)
                ev = (f"tau_G={rec.tau_g};tau_complement={rec.tau_gbar};product={rec.product};"
                      f"product_floor_sq_ok={rec.product_ok_floor_sq};product_amgm_ok={rec.product_ok_amgm};"
                      f"attainment={rec.attainment.value}")
                agree = rec.sum_ok and rec.product_ok_amgm
                rows.append(_row(job, check, job.k, rec.sum_upper, rec.sum, agree, not connected, ev))
                continue
            if not connected:
                rows.append(_row(job, check, job.k, "NotApplicable", 0, None, True, "graph disconnected"))
                continue
            if check == "thm4":
                rows.append(_class_row(job, check, classify_nk(g, job.k), tau))
            elif check == "thm5":
                rows.append(_class_row(job, check, classify_nk1(g, job.k), tau))
            elif check == "thm6":
                rows.append(_class_row(job, check, classify_nk2(g, job.k, job.reading), tau))
            elif check == "thm7":
                z = classify_zero(g, job.k)
                agree = (tau == 0) if z.status == ZeroStatus.ZERO else None
                rows.append(_row(job, check, job.k, z.status.value, tau, agree, False, z.reason or z.detail))
    except CapacityError as exc:
        rows.append(_row(job, "error", job.k, None, None, None, False, f"budget: {exc}"))
    return rows


def cmd_scan(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    checks = CHECKS if args.check == "all" else (args.check,)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    loaded, skipped = _load_graphs(args.graphs)
    jobs = [_ScanJob(ln, text, g, args.k, checks, args.reading, args.budget) for ln, text, g in loaded]
    if args.jobs == 1 or len(jobs) < 2:
        results = [_scan_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    rows = [r for batch in results for r in batch]

    failures = [r for r in rows if r["agree"] is False and not r["advisory"]]
    summary = {
        "graphs": len(jobs),
        "skipped_lines": len(skipped),
        "rows": len(rows),
        "agree": sum(1 for r in rows if r["agree"] is True),
        "disagree": len(failures),
        "advisory_disagree": sum(1 for r in rows if r["agree"] is False and r["advisory"]),
        "no_claim": sum(1 for r in rows if r["agree"] is None and r["check"] != "error"),
        "budget_errors": sum(1 for r in rows if r["check"] == "error"),
        "positives": _positives(rows),
    }
    _emit(args, _report(_echo(args), rows, summary, started, skipped=skipped), rows)
    for r in failures:
        print(f"disagreement: line {r['line']} {r['graph6']} {r['check']} k={r['k']} "
              f"predicted={r['predicted']} solver={r['solver']}", file=sys.stderr)
    for s in skipped:
        print(f"skipped line {s['line']}: {s['error']}", file=sys.stderr)
    if failures:
        return EXIT_CHECK_FAILED
    if summary["budget_errors"]:
        return EXIT_BUDGET
    if not jobs and skipped:
        return EXIT_PARSE
    return EXIT_OK


def _positives(rows: list[dict]) -> dict:
    """Count of graphs placed in each exact class, per check."""
    out: dict[str, int] = {}
    targets = {"thm4": "ExactlyNMinusK", "thm5": "ExactlyNMinusKMinus1", "thm6": "ExactlyNMinusKMinus2", "thm7": "Zero"}
    for r in rows:
        if targets.get(r["check"]) == r["predicted"]:
            out[r["check"]] = out.get(r["check"], 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------

def _family_formula(spec, g: Graph, k: int) -> BoundResult | None:
    try:
        if isinstance(spec, Complete):
            return tau_complete(spec.n, k)
        if isinstance(spec, CompleteMultipartite):
            if len(spec.parts) == 2:
                return tau_complete_bipartite(spec.parts[0], spec.parts[1], k)
            return tau_multipartite_upper(spec.parts, k)
        if isinstance(spec, Threshold):
            return tau_threshold(min_degree(g), k)
    except GraphError:
        return None
    return None


def cmd_family(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    spec = parse_family(args.family)
    g = build(spec)
    if not 2 <= args.k <= g.n:
        raise UsageError(f"--k {args.k} outside 2..{g.n}")
    res = tau_k(g, args.k, budget=args.budget)
    bounds = necessary_upper_bounds(g, args.k)
    rec: dict = {
        "family": str(spec), "graph6": write_graph6(g), "n": g.n, "k": args.k,
        "solver": res.tau_k, "minimizing_set": list(res.minimizing_set),
        "bounds": [b.to_dict() for b in bounds],
    }
    agree = None
    if args.compare_formula:
        formula = _family_formula(spec, g, args.k)
        if formula is None:
            formula = min(bounds, key=lambda b: b.value)
        if formula.kind == Kind.EXACT:
            agree = res.tau_k == formula.value
            status = "Exact"
        else:
            agree = res.tau_k <= formula.value
            status = "Bound"
        rec["formula"] = formula.to_dict()
        rec["status"] = status
        rec["tight"] = res.tau_k == formula.value
        rec["agree"] = agree
    if args.witness:
        rec["witness"] = res.witness.to_dict()
        rec["witness_valid"] = verify_packing(g, res.witness).ok
    row = {
        "graph6": rec["graph6"], "k": args.k, "check": "family",
        "predicted": rec.get("formula", {}).get("value"), "solver": res.tau_k,
        "agree": agree, "advisory": False, "evidence": rec.get("formula", {}).get("rule", _bounds_text(bounds)),
    }
    _emit(args, _report(_echo(args), [rec], {"graphs": 1, "agree": agree}, started), [row])
    return EXIT_CHECK_FAILED if agree is False else EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pendant-tc", description="Pendant tree-connectivity tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--budget", type=int, default=None,
                       help="search node budget (default: $PENDANT_TC_BUDGET or built-in)")

    p = sub.add_parser("compute", help="tau_k of a graph, or local tau for one terminal set")
    p.add_argument("--graph", help="graph6 file, '-' for stdin")
    p.add_argument("--family", help="family spec such as K_6, W_6, K_{3,3}, threshold:iidd")
    p.add_argument("--k", type=int)
    p.add_argument("--set", help="terminal set v1,v2,...")
    p.add_argument("--witness", action="store_true", help="include the tree packing")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", help="compare structural predictions with the solver over a graph6 file")
    p.add_argument("--graphs", required=True, help="graph6 file, '-' for stdin")
    p.add_argument("--k", type=int)
    p.add_argument("--check", choices=CHECKS + ("all",), default="all")
    p.add_argument("--reading", choices=("statement", "proof"), default="statement",
                   help="host list used by thm6 for k=4")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("family", help="solve a named family and compare with its closed form")
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--compare-formula", action="store_true")
    p.add_argument("--witness", action="store_true")
    common(p)
    p.set_defaults(func=cmd_family)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None and args.budget <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
