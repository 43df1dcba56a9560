"""Directed multigraphs, split digraphs and connectivity primitives.

Vertices are dense non-negative integers. Arcs carry a ``key`` that tells
parallel copies apart, so arc sets can be partitioned and deleted without
ambiguity. Graph values are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Path = tuple["Arc", ...]


class GraphError(ValueError):
    """Malformed graph or graph that violates a structural requirement."""


class LoopArc(GraphError):
    pass


class ParallelArc(GraphError):
    def __init__(self, tail: int, head: int):
        super().__init__(f"parallel arcs {tail}->{head}")
        self.pair = (tail, head)


class IndependenceViolation(GraphError):
    def __init__(self, arc: Arc):
        super().__init__(f"arc {arc.tail}->{arc.head} joins two vertices of V1")
        self.arc = arc


class SemicompletenessViolation(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} of V2 are not adjacent")
        self.pair = (u, v)


class BadPartition(GraphError):
    pass


class NotStrong(GraphError):
    pass


class PreconditionViolated(GraphError):
    """Input is well formed but outside the hypotheses of the requested construction."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class InternalInvariantError(RuntimeError):
    """A guarantee of the construction failed; this indicates a bug."""


@dataclass(frozen=True, order=True)
class Arc:
    tail: int
    head: int
    key: int = 0
    # (in_arc, out_arc) replaced by this arc when it was produced by splitting off
    origin: tuple[Arc, Arc] | None = field(default=None, compare=False, repr=False)

    @property
    def is_splitting(self) -> bool:
        return self.origin is not None

    def reversed(self) -> Arc:
        origin = None
        if self.origin is not None:
            first, second = self.origin
            origin = (second.reversed(), first.reversed())
        return Arc(self.head, self.tail, self.key, origin)

    def lifted(self) -> tuple[Arc, ...]:
        """The original arcs this arc stands for."""
        if self.origin is None:
            return (self,)
        return self.origin[0].lifted() + self.origin[1].lifted()


def path_vertices(path: Sequence[Arc]) -> list[int]:
    if not path:
        return []
    return [path[0].tail] + [a.head for a in path]


def reverse_path(path: Sequence[Arc]) -> Path:
    return tuple(a.reversed() for a in reversed(path))


class DirectedMultigraph:
    """Finite directed multigraph without loops."""

    __slots__ = ("_vertices", "_vertex_set", "_arcs", "_arc_set", "_out", "_in")

    def __init__(self, vertices: Iterable[int], arcs: Iterable[Arc] = ()):
        vertex_set = frozenset(vertices)
        arc_list = sorted(arcs)
        out: dict[int, list[Arc]] = {v: [] for v in vertex_set}
        inn: dict[int, list[Arc]] = {v: [] for v in vertex_set}
        seen: set[Arc] = set()
        for a in arc_list:
            if a.tail == a.head:
                raise LoopArc(f"loop at vertex {a.tail}")
            if a.tail not in vertex_set or a.head not in vertex_set:
                raise GraphError(f"arc {a.tail}->{a.head} has an endpoint outside the vertex set")
            if a in seen:
                raise GraphError(f"duplicate arc identity {a.tail}->{a.head} key {a.key}")
            seen.add(a)
            out[a.tail].append(a)
            inn[a.head].append(a)
        self._vertex_set = vertex_set
        self._vertices = tuple(sorted(vertex_set))
        self._arcs = tuple(arc_list)
        self._arc_set = frozenset(seen)
        self._out = {v: tuple(lst) for v, lst in out.items()}
        self._in = {v: tuple(lst) for v, lst in inn.items()}

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None
    ) -> DirectedMultigraph:
        """Build from (tail, head) pairs; repeated pairs become parallel copies."""
        pairs = list(pairs)
        counts: Counter[tuple[int, int]] = Counter()
        arcs = []
        for u, v in pairs:
            arcs.append(Arc(u, v, counts[(u, v)]))
            counts[(u, v)] += 1
        if vertices is None:
            vertices = {x for p in pairs for x in p}
        return cls(vertices, arcs)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset[int]:
        return self._vertex_set

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def arc_set(self) -> frozenset[Arc]:
        return self._arc_set

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._arcs)

    def __contains__(self, arc: object) -> bool:
        return arc in self._arc_set

    def out_arcs(self, v: int) -> tuple[Arc, ...]:
        return self._out[v]

    def in_arcs(self, v: int) -> tuple[Arc, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def out_neighbors(self, v: int) -> list[int]:
        return sorted({a.head for a in self._out[v]})

    def in_neighbors(self, v: int) -> list[int]:
        return sorted({a.tail for a in self._in[v]})

    def arcs_between(self, u: int, v: int) -> list[Arc]:
        return [a for a in self._out[u] if a.head == v]

    def has_arc(self, u: int, v: int) -> bool:
        return any(a.head == v for a in self._out[u])

    def pair_counts(self) -> Counter[tuple[int, int]]:
        return Counter((a.tail, a.head) for a in self._arcs)

    def is_simple(self) -> bool:
        return all(c == 1 for c in self.pair_counts().values())

    def is_semicomplete(self) -> bool:
        return all(
            self.has_arc(u, v) or self.has_arc(v, u) for u, v in combinations(self._vertices, 2)
        )

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> DirectedMultigraph:
        keep = frozenset(vertices)
        return DirectedMultigraph(
            keep, (a for a in self._arcs if a.tail in keep and a.head in keep)
        )

    def spanning(self, arcs: Iterable[Arc]) -> DirectedMultigraph:
        """Spanning subgraph on the same vertex set with the given arcs."""
        arcs = list(arcs)
        missing = [a for a in arcs if a not in self._arc_set]
        if missing:
            raise GraphError(f"arcs not in graph: {missing[:3]}")
        return DirectedMultigraph(self._vertex_set, arcs)

    def without_arcs(self, arcs: Iterable[Arc]) -> DirectedMultigraph:
        drop = set(arcs)
        return DirectedMultigraph(self._vertex_set, (a for a in self._arcs if a not in drop))

    def with_arcs(self, arcs: Iterable[Arc]) -> DirectedMultigraph:
        return DirectedMultigraph(self._vertex_set, self._arcs + tuple(arcs))

    def next_key(self, u: int, v: int) -> int:
        keys = [a.key for a in self._out[u] if a.head == v]
        return max(keys) + 1 if keys else 0

    def reversed(self) -> DirectedMultigraph:
        return DirectedMultigraph(self._vertex_set, (a.reversed() for a in self._arcs))

    def relabeled(self, mapping: Mapping[int, int]) -> DirectedMultigraph:
        return DirectedMultigraph(
            (mapping[v] for v in self._vertices),
            (Arc(mapping[a.tail], mapping[a.head], a.key) for a in self._arcs),
        )

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self._vertex_set == other._vertex_set and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._vertex_set, self._arcs))

    def __repr__(self) -> str:
        return f"DirectedMultigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SplitDigraph:
    """A simple digraph with V1 independent and V2 inducing a semicomplete digraph."""

    graph: DirectedMultigraph
    v1: frozenset[int]
    v2: frozenset[int]

    def reversed(self) -> SplitDigraph:
        return SplitDigraph(self.graph.reversed(), self.v1, self.v2)

    @property
    def v2_graph(self) -> DirectedMultigraph:
        return self.graph.induced(self.v2)


def validate_split(
    graph: DirectedMultigraph,
    v1: Iterable[int],
    v2: Iterable[int],
    *,
    allow_empty_v1: bool = False,
) -> SplitDigraph:
    """Check the split-digraph axioms and return the validated value.

    Raises the specific :class:`GraphError` subclass naming the first
    violated clause together with its witness.
    """
    v1 = frozenset(v1)
    v2 = frozenset(v2)
    if v1 & v2:
        raise BadPartition(f"V1 and V2 intersect in {sorted(v1 & v2)}")
    if v1 | v2 != graph.vertex_set:
        raise BadPartition("V1 and V2 do not cover the vertex set exactly")
    if not v2 or (not v1 and not allow_empty_v1):
        raise BadPartition("both parts must be non-empty")
    for (u, v), c in sorted(graph.pair_counts().items()):
        if c > 1:
            raise ParallelArc(u, v)
    for a in graph.arcs:
        if a.tail in v1 and a.head in v1:
            raise IndependenceViolation(a)
    for u, v in combinations(sorted(v2), 2):
        if not graph.has_arc(u, v) and not graph.has_arc(v, u):
            raise SemicompletenessViolation(u, v)
    return SplitDigraph(graph, v1, v2)


# -- strong connectivity -----------------------------------------------


@dataclass(frozen=True)
class StrongComponentOrdering:
    components: tuple[frozenset[int], ...]
    membership: Mapping[int, int]

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def initial(self) -> frozenset[int]:
        return self.components[0]

    @property
    def terminal(self) -> frozenset[int]:
        return self.components[-1]


def strong_components(g: DirectedMultigraph) -> StrongComponentOrdering:
    """Strong components in an acyclic order (no arc from a later to an earlier one)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    found: list[frozenset[int]] = []
    counter = 0
    succ = {v: g.out_neighbors(v) for v in g.vertices}

    for root in g.vertices:
        if root in index:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                found.append(frozenset(comp))

    # Tarjan emits sink components first
    comps = tuple(reversed(found))
    membership = {v: i for i, c in enumerate(comps) for v in c}
    return StrongComponentOrdering(comps, membership)


def _reach(
    vertices: Iterable[int],
    arcs: Iterable[Arc],
    root: int,
    backward: bool = False,
) -> set[int]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for a in arcs:
        if backward:
            adj[a.head].append(a.tail)
        else:
            adj[a.tail].append(a.head)
    seen = {root}
    todo = [root]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_strong_arcs(vertices: Sequence[int] | frozenset[int], arcs: Iterable[Arc]) -> bool:
    """Strongness of the spanning digraph (vertices, arcs)."""
    vs = list(vertices)
    if len(vs) <= 1:
        return True
    arcs = list(arcs)
    root = min(vs)
    n = len(vs)
    return len(_reach(vs, arcs, root)) == n and len(_reach(vs, arcs, root, True)) == n


def is_strong(g: DirectedMultigraph) -> bool:
    return is_strong_arcs(g.vertices, g.arcs)


def _bfs_tree_arcs(g: DirectedMultigraph, root: int, backward: bool) -> list[Arc]:
    seen = {root}
    queue = deque([root])
    tree = []
    while queue:
        v = queue.popleft()
        for a in g.in_arcs(v) if backward else g.out_arcs(v):
            w = a.tail if backward else a.head
            if w not in seen:
                seen.add(w)
                tree.append(a)
                queue.append(w)
    return tree


def cut_arcs(g: DirectedMultigraph) -> frozenset[Arc]:
    """Arcs whose deletion destroys strong connectivity."""
    if not is_strong(g):
        raise NotStrong("cut arcs are only defined for strong graphs")
    if g.n <= 1:
        return frozenset()
    root = g.vertices[0]
    counts = g.pair_counts()
    # only arcs of a fixed out-tree or in-tree can be critical
    candidates = set(_bfs_tree_arcs(g, root, False)) | set(_bfs_tree_arcs(g, root, True))
    result = set()
    for a in candidates:
        if counts[(a.tail, a.head)] > 1:
            continue
        if not is_strong_arcs(g.vertices, (b for b in g.arcs if b != a)):
            result.add(a)
    return frozenset(result)


# -- unit-capacity flow --------------------------------------------------


def _max_flow(
    g: DirectedMultigraph,
    sources: frozenset[int],
    sinks: frozenset[int],
    limit: int,
    usable: Sequence[Arc] | None = None,
) -> set[Arc]:
    """Arc set of a maximum (or ``limit``-capped) unit-capacity flow.

    Augmenting paths come from BFS that scans vertices and arcs in
    increasing order, so the result is deterministic.
    """
    arcs = g.arcs if usable is None else tuple(sorted(usable))
    out: dict[int, list[Arc]] = {v: [] for v in g.vertices}
    inn: dict[int, list[Arc]] = {v: [] for v in g.vertices}
    for a in arcs:
        out[a.tail].append(a)
        inn[a.head].append(a)
    flow: set[Arc] = set()
    value = 0
    while value < limit:
        parent: dict[int, tuple[Arc, bool] | None] = {s: None for s in sorted(sources)}
        queue = deque(sorted(sources))
        end = None
        while queue and end is None:
            v = queue.popleft()
            steps = [(a.head, a, True) for a in out[v] if a not in flow]
            steps += [(a.tail, a, False) for a in inn[v] if a in flow]
            steps.sort(key=lambda s: (s[0], s[1]))
            for w, a, forward in steps:
                if w in parent:
                    continue
                parent[w] = (a, forward)
                if w in sinks:
                    end = w
                    break
                queue.append(w)
        if end is None:
            break
        v = end
        while parent[v] is not None:
            a, forward = parent[v]
            if forward:
                flow.add(a)
                v = a.tail
            else:
                flow.discard(a)
                v = a.head
        value += 1
    return flow


def local_arc_connectivity(g: DirectedMultigraph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of arc-disjoint (s, t)-paths, capped at ``limit``."""
    cap = g.m if limit is None else limit
    flow = _max_flow(g, frozenset([s]), frozenset([t]), cap)
    return sum(1 for a in flow if a.tail == s) - sum(1 for a in flow if a.head == s)


def is_k_arc_strong(g: DirectedMultigraph, k: int) -> bool:
    """True iff ``g`` stays strong after deleting any ``k - 1`` arcs."""
    if g.n < 2:
        raise GraphError("arc-strong connectivity needs at least two vertices")
    if k <= 0:
        return True
    if any(g.out_degree(v) < k or g.in_degree(v) < k for v in g.vertices):
        return False
    if k == 1:
        return is_strong(g)
    root = g.vertices[0]
    for v in g.vertices[1:]:
        if local_arc_connectivity(g, root, v, k) < k:
            return False
        if local_arc_connectivity(g, v, root, k) < k:
            return False
    return True


def arc_strong_connectivity(g: DirectedMultigraph) -> int:
    if g.n < 2:
        raise GraphError("arc-strong connectivity needs at least two vertices")
    root = g.vertices[0]
    best = g.m
    for v in g.vertices[1:]:
        best = min(best, local_arc_connectivity(g, root, v, best), local_arc_connectivity(g, v, root, best))
    return best


def _strip_cycles(vertices: list[int], arcs: list[Arc]) -> list[Arc]:
    """Shortcut a walk into a path by cutting out closed sub-walks."""
    out_vs = [vertices[0]]
    out_arcs: list[Arc] = []
    pos = {vertices[0]: 0}
    for a in arcs:
        w = a.head
        if w in pos:
            cut = pos[w]
            for v in out_vs[cut + 1:]:
                del pos[v]
            out_vs = out_vs[: cut + 1]
            out_arcs = out_arcs[:cut]
        else:
            out_vs.append(w)
            out_arcs.append(a)
            pos[w] = len(out_vs) - 1
    return out_arcs


def arc_disjoint_paths(
    g: DirectedMultigraph,
    sources: Iterable[int],
    sinks: Iterable[int],
    count: int,
) -> list[Path] | None:
    """``count`` pairwise arc-disjoint (sources, sinks)-paths, or None.

    Each path starts in ``sources``, ends in ``sinks`` and has no other
    vertex in either set.
    """
    src = frozenset(sources)
    dst = frozenset(sinks)
    if not src or not dst:
        raise GraphError("sources and sinks must be non-empty")
    if src & dst:
        raise GraphError("sources and sinks must be disjoint")
    usable = [a for a in g.arcs if a.head not in src and a.tail not in dst]
    flow = _max_flow(g, src, dst, count, usable)
    if sum(1 for a in flow if a.tail in src) < count:
        return None
    remaining: dict[int, list[Arc]] = {}
    for a in sorted(flow):
        remaining.setdefault(a.tail, []).append(a)
    paths = []
    for s in sorted(src):
        while remaining.get(s):
            walk_vs = [s]
            walk_arcs: list[Arc] = []
            v = s
            while v not in dst:
                a = remaining[v].pop(0)
                walk_arcs.append(a)
                v = a.head
                walk_vs.append(v)
            paths.append(tuple(_strip_cycles(walk_vs, walk_arcs)))
    return paths[:count]
