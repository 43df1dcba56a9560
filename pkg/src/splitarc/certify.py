"""Independent certificate checks.

These functions deliberately avoid the connectivity routines in ``core`` so
that a construction bug cannot be masked by the same bug in its checker.
Arcs are compared by (tail, head, key) identity only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class Verdict:
    ok: bool
    problems: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def _ident(a) -> tuple[int, int, int]:
    return (a.tail, a.head, a.key)


def _spans_strongly(vertices: Iterable[int], pairs: Iterable[tuple[int, int]]) -> bool:
    vs = sorted(set(vertices))
    if len(vs) <= 1:
        return True
    fwd: dict[int, set[int]] = {v: set() for v in vs}
    bwd: dict[int, set[int]] = {v: set() for v in vs}
    for u, v in pairs:
        if u not in fwd or v not in fwd:
            return False
        fwd[u].add(v)
        bwd[v].add(u)
    for adj in (fwd, bwd):
        seen = {vs[0]}
        frontier = [vs[0]]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        if len(seen) != len(vs):
            return False
    return True


def verify_decomposition(graph, a1: Iterable, a2: Iterable) -> Verdict:
    """Check that (a1, a2) partitions the arcs of ``graph`` into two strong spanning subgraphs."""
    problems = []
    c1 = Counter(_ident(a) for a in a1)
    c2 = Counter(_ident(a) for a in a2)
    whole = Counter(_ident(a) for a in graph.arcs)
    if any(c > 1 for c in c1.values()) or any(c > 1 for c in c2.values()):
        problems.append("a class lists the same arc twice")
    shared = set(c1) & set(c2)
    if shared:
        problems.append(f"arcs in both classes: {sorted(shared)[:3]}")
    if c1 + c2 != whole:
        missing = whole - (c1 + c2)
        extra = (c1 + c2) - whole
        if missing:
            problems.append(f"arcs in no class: {sorted(missing)[:3]}")
        if extra:
            problems.append(f"arcs not in the graph: {sorted(extra)[:3]}")
    vertices = list(graph.vertices)
    for name, c in (("A1", c1), ("A2", c2)):
        if not _spans_strongly(vertices, ((t, h) for t, h, _ in c)):
            problems.append(f"class {name} is not strong on all vertices")
    return Verdict(not problems, tuple(problems))


def verify_branching(vertices: Iterable[int], root: int, arcs: Iterable, direction: str) -> Verdict:
    """Check an out-branching (``direction='out'``) or in-branching rooted at ``root``."""
    vs = set(vertices)
    arcs = list(arcs)
    problems = []
    if root not in vs:
        return Verdict(False, (f"root {root} is not a vertex",))
    if len(arcs) != len(vs) - 1:
        problems.append(f"expected {len(vs) - 1} arcs, got {len(arcs)}")
    # in an out-branching every non-root has one entering arc; mirror for in
    ends = Counter(a.head if direction == "out" else a.tail for a in arcs)
    for v in sorted(vs):
        want = 0 if v == root else 1
        if ends[v] != want:
            problems.append(f"vertex {v} has {ends[v]} tree arcs on the wrong side")
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for a in arcs:
        if a.tail not in vs or a.head not in vs:
            problems.append(f"arc {a.tail}->{a.head} leaves the vertex set")
            continue
        if direction == "out":
            adj[a.tail].append(a.head)
        else:
            adj[a.head].append(a.tail)
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != vs:
        problems.append(f"vertices not connected to the root: {sorted(vs - seen)}")
    return Verdict(not problems, tuple(problems))


def verify_pair(graph, out_root: int, out_arcs: Iterable, in_root: int, in_arcs: Iterable) -> Verdict:
    out_arcs = list(out_arcs)
    in_arcs = list(in_arcs)
    problems = []
    present = {_ident(a) for a in graph.arcs}
    for a in out_arcs + in_arcs:
        if _ident(a) not in present:
            problems.append(f"arc {a.tail}->{a.head} key {a.key} is not in the graph")
    shared = {_ident(a) for a in out_arcs} & {_ident(a) for a in in_arcs}
    for t, h, k in sorted(shared):
        problems.append(f"arc {t}->{h} key {k} is used by both branchings")
    v_out = verify_branching(graph.vertices, out_root, out_arcs, "out")
    v_in = verify_branching(graph.vertices, in_root, in_arcs, "in")
    problems += [f"out-branching: {p}" for p in v_out.problems]
    problems += [f"in-branching: {p}" for p in v_in.problems]
    return Verdict(not problems, tuple(problems))
