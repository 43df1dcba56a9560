"""Command line entry point: ``splitarc decompose | good-pair | generate | stress``.

Exit codes: 0 success, 1 the answer is negative (an exceptional
multigraph, or no good pair), 2 invalid input or unmet hypotheses,
3 an internal check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from .branchings import GoodPair, good_pair_from_sad, good_uu_pair
from .certify import verify_decomposition, verify_pair
from .core import DirectedMultigraph, GraphError, InternalInvariantError, PreconditionViolated
from .graphfile import GraphFile, format_graph, parse_graph, relabel_canonical
from .semicomplete import ExceptionId, SearchExhausted, decompose_semicomplete
from .split_sad import decompose_split, decompose_split_traced
from .testkit import (
    GenSpec,
    GiveUp,
    TooLarge,
    gen_counterexample,
    gen_random,
    gen_semicomplete_split,
    oracle_good_pair,
    oracle_sad,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    status: str
    verification: str | None = None
    payload: dict[str, Any] = field(default_factory=dict)
    timing: float | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "status": self.status,
                "verification": self.verification,
                "payload": self.payload,
                "timing": self.timing,
            },
            indent=2,
            sort_keys=True,
        )

    def to_text(self) -> str:
        lines = [f"status: {self.status}"]
        if self.verification is not None:
            lines.append(f"verification: {self.verification}")
        for key in sorted(self.payload):
            value = self.payload[key]
            if isinstance(value, list) and value and isinstance(value[0], list):
                value = " ".join(f"{t}->{h}" for t, h in value)
            elif isinstance(value, dict):
                value = " ".join(f"{k}:{v}" for k, v in value.items())
            lines.append(f"{key}: {value}")
        if self.timing is not None:
            lines.append(f"time: {self.timing:.4f}s")
        return "\n".join(lines)


def _arc_names(gf: GraphFile, arcs) -> list[list[str]]:
    return [[gf.name(a.tail), gf.name(a.head)] for a in sorted(arcs)]


def _load(path: str) -> GraphFile:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit(report: Report, as_json: bool) -> None:
    print(report.to_json() if as_json else report.to_text())


# -- decompose ----------------------------------------------------------------


def _decompose(args: argparse.Namespace) -> tuple[Report, int]:
    gf = _load(args.file)
    if args.semicomplete:
        if gf.v1:
            raise PreconditionViolated("--semicomplete expects an empty 'v1:' line")
        try:
            res = decompose_semicomplete(gf.graph)
        except SearchExhausted as exc:
            # the default search is exhaustive, so this is a negative answer
            return Report("decompose", "no-decomposition", None, {"error": str(exc)}), EXIT_NEGATIVE
        if isinstance(res, ExceptionId):
            payload = {
                "exception": res.which,
                "bijection": {gf.name(v): f"v{c + 1}" for v, c in sorted(res.iso.items())},
            }
            return Report("decompose", "exception", None, payload), EXIT_NEGATIVE
        sad = res
    else:
        sad = decompose_split(gf.split())
    verdict = verify_decomposition(gf.graph, sad.a1, sad.a2)
    status = "decomposed" if verdict else "internal-error"
    payload: dict[str, Any] = {}
    if not args.verify_only:
        payload = {"A1": _arc_names(gf, sad.a1), "A2": _arc_names(gf, sad.a2)}
    if not verdict:
        payload["problems"] = list(verdict.problems)
        return Report("decompose", status, "fail", payload), EXIT_INTERNAL
    return Report("decompose", status, "pass", payload), EXIT_OK


# -- good-pair -------------------------------------------------------------------


def _pair_payload(gf: GraphFile, out_arcs, in_arcs, route: str) -> dict[str, Any]:
    return {
        "route": route,
        "out_parent": {gf.name(a.head): gf.name(a.tail) for a in sorted(out_arcs)},
        "in_successor": {gf.name(a.tail): gf.name(a.head) for a in sorted(in_arcs)},
    }


def _good_pair(args: argparse.Namespace) -> tuple[Report, int]:
    gf = _load(args.file)
    ids = gf.ids()
    for root in (args.root_out, args.root_in):
        if root not in ids:
            raise PreconditionViolated(f"unknown root vertex {root!r}")
    u, v = ids[args.root_out], ids[args.root_in]
    g = gf.graph
    if args.oracle:
        found = oracle_good_pair(g, u, v, bound=args.oracle_bound)
        if found is None:
            return Report("good-pair", "no-pair", None, {"route": "oracle"}), EXIT_NEGATIVE
        out_arcs, in_arcs = found
        route = "oracle"
    else:
        d = gf.split()
        gp: GoodPair
        same_root_set = d.v2 | {u}
        if u == v and g.induced(same_root_set).is_semicomplete():
            gp = good_uu_pair(g, same_root_set, u)
            route = "same-root"
        else:
            gp = good_pair_from_sad(decompose_split(d), u, v)
            route = "decomposition"
        out_arcs, in_arcs = gp.out.arcs, gp.in_.arcs
    verdict = verify_pair(g, u, out_arcs, v, in_arcs)
    payload = _pair_payload(gf, out_arcs, in_arcs, route)
    if not verdict:
        payload["problems"] = list(verdict.problems)
        return Report("good-pair", "internal-error", "fail", payload), EXIT_INTERNAL
    return Report("good-pair", "found", "pass", payload), EXIT_OK


# -- generate ---------------------------------------------------------------------


def _random_tournament(k: int, seed: int) -> DirectedMultigraph:
    rng = random.Random(seed)
    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            pairs.append((i, j) if rng.random() < 0.5 else (j, i))
    return DirectedMultigraph.from_pairs(pairs, range(k))


def _generate(args: argparse.Namespace) -> str:
    if args.family in ("D1", "D2"):
        # W consists of the designated vertex plus --w-size further vertices
        w = _random_tournament(args.w_size + 1, args.seed)
        ce = gen_counterexample(args.family, w, designated=0)
        d, names = ce.split, ce.names
    elif args.family == "semicomplete-split":
        d = gen_semicomplete_split(args.n1, args.n2, args.seed, args.orientation_bias)
        names = None
    else:
        spec = GenSpec(
            n1=args.n1,
            n2=args.n2,
            cross_density=args.cross_density,
            orientation_bias=args.orientation_bias,
            order_bias=args.order_bias,
            seed=args.seed,
            enforce=tuple(args.enforce),
        )
        d = gen_random(spec)
        names = None
    graph, v1, v2, labels = relabel_canonical(d.graph, d.v1, d.v2, names)
    return format_graph(graph, v1, v2, labels)


# -- stress -----------------------------------------------------------------------


def stress_spec(seed: int, three_arc_strong: bool = False) -> GenSpec:
    """Instance distribution of the stress run: 1..5 V1 and 4..9 V2 vertices."""
    rng = random.Random(seed)
    enforce = ("three_arc_strong",) if three_arc_strong else ("two_arc_strong", "v1_degree_3")
    return GenSpec(
        n1=rng.randint(1, 5),
        n2=rng.randint(4, 9),
        cross_density=rng.choice([0.4, 0.6, 0.8]),
        orientation_bias=rng.choice([0.0, 0.1, 0.3]),
        order_bias=rng.choice([0.5, 0.8, 0.95]),
        seed=seed,
        enforce=enforce,
    )


def stress_one(job: tuple[int, bool, int]) -> dict[str, Any]:
    seed, three, bound = job
    row: dict[str, Any] = {"seed": seed}
    try:
        d = gen_random(stress_spec(seed, three))
    except GiveUp:
        row["outcome"] = "skipped"
        return row
    row["arcs"] = d.graph.m
    start = time.perf_counter()
    try:
        sad, trace = decompose_split_traced(d)
        ok = bool(verify_decomposition(d.graph, sad.a1, sad.a2))
        row["outcome"] = "decomposed" if ok else "failed"
        row["route"] = trace.route
    except (InternalInvariantError, GraphError) as exc:
        ok = False
        row["outcome"] = "failed"
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["seconds"] = time.perf_counter() - start
    if d.graph.m <= bound:
        row["oracle"] = oracle_sad(d.graph, bound) is not None
        row["agrees"] = row["oracle"] == ok
    return row


def _stress(args: argparse.Namespace) -> tuple[Report, int]:
    jobs = [(args.seed + i, args.three_arc_strong, args.oracle_bound) for i in range(args.count)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(stress_one, jobs))
    else:
        rows = [stress_one(j) for j in jobs]
    outcomes = Counter(r["outcome"] for r in rows)
    checked = [r for r in rows if "oracle" in r]
    payload: dict[str, Any] = {
        "instances": args.count,
        "decomposed": outcomes["decomposed"],
        "failed": outcomes["failed"],
        "skipped": outcomes["skipped"],
        "oracle_checked": len(checked),
        "oracle_agreements": sum(r["agrees"] for r in checked),
        "routes": dict(sorted(Counter(r["route"] for r in rows if "route" in r).items())),
        "failures": [f"seed {r['seed']}: {r.get('error', 'verification failed')}" for r in rows
                     if r["outcome"] == "failed"],
    }
    timing = None
    if args.timing:
        times = [r["seconds"] for r in rows if "seconds" in r]
        payload["max_seconds"] = round(max(times), 4) if times else 0.0
        timing = sum(times)
    bad = payload["failed"] or payload["oracle_agreements"] != payload["oracle_checked"]
    status = "failures" if bad else "decomposed"
    return Report("stress", status, "fail" if bad else "pass", payload, timing), (
        EXIT_INTERNAL if bad else EXIT_OK
    )


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitarc", description="Strong arc decompositions and good pairs of split digraphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="find and verify a strong arc decomposition")
    p.add_argument("file", help="graph file, or - for standard input")
    p.add_argument("--verify-only", action="store_true", help="report the verdict without arc lists")
    p.add_argument("--json", action="store_true")
    p.add_argument("--semicomplete", action="store_true", help="input is a semicomplete multigraph (empty v1)")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("good-pair", help="arc-disjoint out- and in-branching with given roots")
    p.add_argument("file")
    p.add_argument("--root-out", required=True, help="root of the out-branching (vertex name)")
    p.add_argument("--root-in", required=True, help="root of the in-branching (vertex name)")
    p.add_argument("--oracle", action="store_true", help="exhaustive search instead of construction")
    p.add_argument("--oracle-bound", type=int, default=40, help="arc limit for the exhaustive search")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("generate", help="write a generated instance as a graph file")
    p.add_argument("family", choices=["random", "semicomplete-split", "D1", "D2"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n1", type=int, default=3)
    p.add_argument("--n2", type=int, default=6)
    p.add_argument("--cross-density", type=float, default=0.6)
    p.add_argument("--orientation-bias", type=float, default=0.3)
    p.add_argument("--order-bias", type=float, default=0.5)
    p.add_argument(
        "--enforce",
        nargs="+",
        default=["two_arc_strong", "v1_degree_3"],
        choices=["none", "two_arc_strong", "three_arc_strong", "v1_degree_3"],
    )
    p.add_argument("--w-size", type=int, default=0, help="vertices of W besides the designated one")

    p = sub.add_parser("stress", help="decompose many random instances and cross-check small ones")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--three-arc-strong", action="store_true")
    p.add_argument("--oracle-bound", type=int, default=18)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        try:
            sys.stdout.write(_generate(args))
        except (GraphError, GiveUp, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        return EXIT_OK
    handler = {"decompose": _decompose, "good-pair": _good_pair, "stress": _stress}[args.command]
    start = time.perf_counter()
    try:
        report, code = handler(args)
    except PreconditionViolated as exc:
        report, code = Report(args.command, "violated-precondition", None, {"error": str(exc)}), EXIT_INVALID
    except (GraphError, TooLarge, OSError) as exc:
        report, code = Report(args.command, "invalid", None, {"error": str(exc)}), EXIT_INVALID
    except InternalInvariantError as exc:
        report, code = Report(args.command, "internal-error", "fail", {"error": str(exc)}), EXIT_INTERNAL
    if args.timing and report.timing is None:
        report.timing = time.perf_counter() - start
    if not args.timing:
        report.timing = None
    _emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
