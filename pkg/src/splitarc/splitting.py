"""Splitting off arc pairs at V1 vertices, and lifting them back.

Splitting off the pair (u->t, t->v) at ``t`` replaces the two arcs by a
single arc u->v. The produced arc remembers the pair in ``Arc.origin`` so
that any arc-set partition of the split graph can be lifted back to the
original arcs deterministically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    Arc,
    DirectedMultigraph,
    GraphError,
    InternalInvariantError,
    Path,
    SplitDigraph,
    is_strong,
    path_vertices,
)


class LoopWouldForm(GraphError):
    pass


class ArcMissing(GraphError):
    pass


class InvalidFeasibleSet(GraphError):
    pass


class NotAPartition(GraphError):
    pass


@dataclass(frozen=True)
class SplitRecord:
    via: int
    in_arc: Arc
    out_arc: Arc
    produced: Arc


def split_off_pair(
    d: DirectedMultigraph,
    in_arc: Arc,
    out_arc: Arc,
    v1: Iterable[int] | None = None,
) -> tuple[DirectedMultigraph, SplitRecord]:
    """Replace ``in_arc`` = u->t and ``out_arc`` = t->v by a new arc u->v."""
    if in_arc not in d or out_arc not in d:
        raise ArcMissing("both arcs of the pair must be present")
    if in_arc.head != out_arc.tail:
        raise GraphError("the two arcs do not meet at a common vertex")
    t = in_arc.head
    if v1 is not None and t not in set(v1):
        raise GraphError(f"vertex {t} is not in V1")
    u, v = in_arc.tail, out_arc.head
    if u == v:
        raise LoopWouldForm(f"splitting at {t} would create a loop at {u}")
    produced = Arc(u, v, d.next_key(u, v), origin=(in_arc, out_arc))
    g = d.without_arcs((in_arc, out_arc)).with_arcs((produced,))
    return g, SplitRecord(t, in_arc, out_arc, produced)


def check_path(d: DirectedMultigraph, path: Sequence[Arc]) -> None:
    if not path:
        raise GraphError("empty path")
    for a, b in zip(path, path[1:]):
        if a.head != b.tail:
            raise GraphError("consecutive arcs do not meet")
    vs = path_vertices(path)
    if len(set(vs)) != len(vs):
        raise GraphError("path repeats a vertex")
    for a in path:
        if a not in d:
            raise ArcMissing(f"arc {a.tail}->{a.head} key {a.key} not in graph")


def split_off_path(
    d: DirectedMultigraph, path: Sequence[Arc], v1: Iterable[int]
) -> tuple[DirectedMultigraph, list[SplitRecord]]:
    """Split off the pair around every V1 vertex of ``path``."""
    v1 = frozenset(v1)
    check_path(d, path)
    vs = path_vertices(path)
    if vs[0] in v1 or vs[-1] in v1:
        raise GraphError("path endpoints must lie in V2")
    records = []
    for i in range(1, len(path)):
        if path[i].tail in v1:
            d, rec = split_off_pair(d, path[i - 1], path[i])
            records.append(rec)
    return d, records


@dataclass(frozen=True)
class FeasibleSet:
    """Arc-disjoint paths: two (X, Y)-paths first, then two-arc paths through V1."""

    paths: tuple[Path, ...]
    gamma: int
    x: frozenset[int]
    y: frozenset[int]
    usage: dict[int, int] = field(compare=False)

    @classmethod
    def build(
        cls,
        d: SplitDigraph,
        paths: Sequence[Sequence[Arc]],
        gamma: int,
        x: Iterable[int],
        y: Iterable[int],
    ) -> FeasibleSet:
        x = frozenset(x)
        y = frozenset(y)
        paths = tuple(tuple(p) for p in paths)
        if len(paths) < 2:
            raise InvalidFeasibleSet("need at least two paths")
        seen: set[Arc] = set()
        for p in paths:
            check_path(d.graph, p)
            for a in p:
                if a in seen:
                    raise InvalidFeasibleSet(f"arc {a.tail}->{a.head} used twice")
                seen.add(a)
        for p in paths[:2]:
            vs = path_vertices(p)
            if vs[0] not in x or vs[-1] not in y:
                raise InvalidFeasibleSet(f"path {vs} does not run from X to Y")
            if any(v in x or v in y for v in vs[1:-1]):
                raise InvalidFeasibleSet(f"path {vs} has an interior vertex in X or Y")
        for p in paths[2:]:
            vs = path_vertices(p)
            if len(vs) != 3 or vs[1] not in d.v1 or vs[0] not in d.v2 or vs[2] not in d.v2:
                raise InvalidFeasibleSet(f"path {vs} is not of the form u t v with t in V1")
        usage: Counter[int] = Counter()
        for p in paths:
            for v in path_vertices(p):
                if v in d.v1:
                    usage[v] += 1
        over = {t: c for t, c in usage.items() if c > gamma}
        if over:
            raise InvalidFeasibleSet(f"V1 vertices on more than {gamma} paths: {sorted(over)}")
        return cls(paths, gamma, x, y, dict(usage))

    @property
    def alpha(self) -> int:
        return len(self.paths)

    def arcs(self) -> frozenset[Arc]:
        return frozenset(a for p in self.paths for a in p)


@dataclass(frozen=True)
class SplitResult:
    graph: DirectedMultigraph
    records: tuple[SplitRecord, ...]
    v1: frozenset[int]
    v2: frozenset[int]
    w_plus: frozenset[int]
    w_minus: frozenset[int]

    @property
    def v2_graph(self) -> DirectedMultigraph:
        return self.graph.induced(self.v2)

    @property
    def score(self) -> int:
        return len(self.w_plus) + len(self.w_minus)

    def splits_at(self) -> Counter[int]:
        return Counter(r.via for r in self.records)


def deficiency_sets(g: DirectedMultigraph, v2: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """V2 vertices of out-degree, resp. in-degree, exactly one inside V2."""
    h = g.induced(v2)
    w_plus = frozenset(v for v in h.vertices if h.out_degree(v) == 1)
    w_minus = frozenset(v for v in h.vertices if h.in_degree(v) == 1)
    return w_plus, w_minus


def split_off_paths(d: SplitDigraph, paths: Iterable[Sequence[Arc]]) -> SplitResult:
    g = d.graph
    records: list[SplitRecord] = []
    for p in paths:
        g, recs = split_off_path(g, p, d.v1)
        records.extend(recs)
    w_plus, w_minus = deficiency_sets(g, d.v2)
    return SplitResult(g, tuple(records), d.v1, d.v2, w_plus, w_minus)


def build_dq(d: SplitDigraph, q: FeasibleSet) -> SplitResult:
    """Split off every path of ``q``; the V2 part is guaranteed strong."""
    sr = split_off_paths(d, q.paths)
    if not is_strong(sr.v2_graph):
        raise InternalInvariantError("splitting off an (X,Y)-path left the V2 part non-strong")
    return sr


def lift_all(
    sr: SplitResult, chosen: Sequence[Iterable[Arc]]
) -> tuple[frozenset[Arc], ...]:
    """Replace every splitting arc in each class by the arcs it stands for."""
    classes = [frozenset(c) for c in chosen]
    total = sum(len(c) for c in classes)
    union = frozenset().union(*classes)
    if len(union) != total:
        raise NotAPartition("classes overlap")
    if union != sr.v2_graph.arc_set:
        raise NotAPartition("classes do not cover the arcs of the V2 part exactly")
    return tuple(frozenset(b for a in c for b in a.lifted()) for c in classes)
