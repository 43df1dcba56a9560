"""Strong arc decompositions of 2-arc-strong semicomplete multigraphs.

Four small multigraphs on four vertices have no decomposition; everything
else does. This module detects those exceptions and otherwise finds a
decomposition by exact search. It also provides the two ways of growing a
decomposition of a subgraph into one of the whole split digraph: attaching
vertices that see the covered part twice in each direction, and lifting
splitting arcs back through V1 and patching single-class V1 vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Mapping, Sequence

from .certify import verify_decomposition
from .core import (
    Arc,
    DirectedMultigraph,
    GraphError,
    InternalInvariantError,
    PreconditionViolated,
    SplitDigraph,
    cut_arcs,
    is_k_arc_strong,
    is_strong_arcs,
)
from .splitting import SplitResult, lift_all


class SearchExhausted(InternalInvariantError):
    """The search found nothing although the input matches no catalog member.

    With the default exhaustive search this proves that no decomposition
    exists. Some 4-vertex multigraphs outside the catalog (S4 with two extra
    parallel arcs sharing their tail, or sharing their head) are like that.
    """


class DegreeHypothesisFails(GraphError):
    def __init__(self, vertex: int, message: str):
        super().__init__(message)
        self.vertex = vertex


class PatchUnavailable(InternalInvariantError):
    pass


@dataclass(frozen=True)
class StrongArcDecomposition:
    a1: frozenset[Arc]
    a2: frozenset[Arc]
    over: DirectedMultigraph

    def check(self) -> StrongArcDecomposition:
        verdict = verify_decomposition(self.over, self.a1, self.a2)
        if not verdict:
            raise InternalInvariantError("; ".join(verdict.problems))
        return self


# -- exception catalog ---------------------------------------------------

CATALOG_NAMES = ("S4", "S4_1", "S4_2", "S4_3")

_S4 = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)]
_CATALOG_PAIRS = {
    "S4": _S4,
    "S4_1": _S4 + [(2, 0)],
    "S4_2": _S4 + [(0, 1)],
    "S4_3": _S4 + [(1, 3), (2, 0)],
}
# the 4-cycle whose arcs are never parallel in any catalog member
CATALOG_CYCLE = ((0, 1), (1, 2), (2, 3), (3, 0))


def exception_catalog() -> dict[str, DirectedMultigraph]:
    return {
        name: DirectedMultigraph.from_pairs(pairs, range(4))
        for name, pairs in _CATALOG_PAIRS.items()
    }


@dataclass(frozen=True)
class ExceptionId:
    which: str
    # input vertex -> catalog vertex (0..3 standing for v1..v4)
    iso: Mapping[int, int]

    def inverse(self) -> dict[int, int]:
        return {c: v for v, c in self.iso.items()}


def match_exception(g: DirectedMultigraph) -> ExceptionId | None:
    if g.n != 4:
        return None
    counts = g.pair_counts()
    for name, pairs in _CATALOG_PAIRS.items():
        if len(pairs) != g.m:
            continue
        target = Counter(pairs)
        for perm in permutations(range(4)):
            iso = dict(zip(g.vertices, perm))
            mapped = Counter({(iso[u], iso[v]): c for (u, v), c in counts.items()})
            if mapped == target:
                return ExceptionId(name, iso)
    return None


# -- exact search ----------------------------------------------------------

SearchFn = Callable[[DirectedMultigraph], "tuple[frozenset[Arc], frozenset[Arc]] | None"]


def search_decomposition(g: DirectedMultigraph) -> tuple[frozenset[Arc], frozenset[Arc]] | None:
    """Exact search over 2-colourings of the arcs.

    For each class c the "potential" graph (arcs coloured c plus uncoloured
    arcs) must stay strong, and its uncoloured cut arcs are forced into c.
    The search stops as soon as one class is strong on its own while the
    other potential graph is strong.
    """
    vertices = g.vertices
    arcs = g.arcs
    if not is_strong_arcs(vertices, arcs):
        return None

    def propagate(colour: dict[Arc, int]) -> bool:
        changed = True
        while changed:
            changed = False
            for c in (0, 1):
                potential = [a for a in arcs if colour.get(a, c) == c]
                if not is_strong_arcs(vertices, potential):
                    return False
                forced = [
                    a for a in cut_arcs(DirectedMultigraph(vertices, potential)) if a not in colour
                ]
                for a in forced:
                    colour[a] = c
                    changed = True
        return True

    def finish(colour: dict[Arc, int]) -> tuple[frozenset[Arc], frozenset[Arc]] | None:
        for c in (0, 1):
            own = [a for a in arcs if colour.get(a) == c]
            if is_strong_arcs(vertices, own):
                other = frozenset(a for a in arcs if colour.get(a) != c)
                own_set = frozenset(own)
                return (own_set, other) if c == 0 else (other, own_set)
        return None

    def solve(colour: dict[Arc, int]) -> tuple[frozenset[Arc], frozenset[Arc]] | None:
        if not propagate(colour):
            return None
        done = finish(colour)
        if done is not None:
            return done
        free = [a for a in arcs if a not in colour]
        if not free:
            return None
        # branch on an arc at the vertex with the fewest free arcs
        load: Counter[int] = Counter()
        for a in free:
            load[a.tail] += 1
            load[a.head] += 1
        pick = min(free, key=lambda a: (min(load[a.tail], load[a.head]), a))
        for c in (0, 1):
            trial = dict(colour)
            trial[pick] = c
            found = solve(trial)
            if found is not None:
                return found
        return None

    return solve({})


def decompose_semicomplete(
    g: DirectedMultigraph, search: SearchFn = search_decomposition
) -> StrongArcDecomposition | ExceptionId:
    """Decomposition of a 2-arc-strong semicomplete multigraph, or its catalog match."""
    if g.n < 4:
        raise PreconditionViolated(f"need at least 4 vertices, got {g.n}", g.n)
    if not g.is_semicomplete():
        raise PreconditionViolated("input is not semicomplete")
    if not is_k_arc_strong(g, 2):
        raise PreconditionViolated("input is not 2-arc-strong")
    ex = match_exception(g)
    if ex is not None:
        return ex
    found = search(g)
    if found is None:
        raise SearchExhausted("the input matches no catalog member but the search found no decomposition")
    return StrongArcDecomposition(found[0], found[1], g).check()


# -- growing decompositions ------------------------------------------------


def extend_by_covered_vertices(
    d: DirectedMultigraph, x: Iterable[int], sad: StrongArcDecomposition
) -> StrongArcDecomposition:
    """Attach every vertex outside ``x`` to both classes of a decomposition of ``d<x>``.

    Each outside vertex needs two distinct in-neighbours and two distinct
    out-neighbours in ``x``. All remaining arcs join the first class.
    """
    x = frozenset(x)
    if not sad.over.vertex_set == x:
        raise GraphError("decomposition is not over the covered vertex set")
    a1 = set(sad.a1)
    a2 = set(sad.a2)
    for v in sorted(d.vertex_set - x):
        ins: dict[int, Arc] = {}
        for a in d.in_arcs(v):
            if a.tail in x:
                ins.setdefault(a.tail, a)
        outs: dict[int, Arc] = {}
        for a in d.out_arcs(v):
            if a.head in x:
                outs.setdefault(a.head, a)
        if len(ins) < 2 or len(outs) < 2:
            raise DegreeHypothesisFails(
                v, f"vertex {v} lacks two in-neighbours and two out-neighbours in the covered set"
            )
        (i1, i2), (o1, o2) = sorted(ins)[:2], sorted(outs)[:2]
        a1 |= {ins[i1], outs[o1]}
        a2 |= {ins[i2], outs[o2]}
    rest = d.arc_set - a1 - a2
    return StrongArcDecomposition(frozenset(a1 | rest), frozenset(a2), d).check()


def complete_on(
    d: DirectedMultigraph, x: Iterable[int], c1: Iterable[Arc], c2: Iterable[Arc]
) -> StrongArcDecomposition:
    """Turn two strong classes on ``d<x>`` into a decomposition of all of ``d``.

    Arcs of ``d<x>`` outside both classes join the first class, then the
    remaining vertices are attached.
    """
    x = frozenset(x)
    sub = d.induced(x)
    c1 = frozenset(c1)
    c2 = frozenset(c2)
    if c1 & c2:
        raise InternalInvariantError("classes overlap")
    if not (c1 | c2) <= sub.arc_set:
        raise InternalInvariantError("class arcs leave the covered subgraph")
    rest = sub.arc_set - c1 - c2
    partial = StrongArcDecomposition(c1 | rest, c2, sub).check()
    return extend_by_covered_vertices(d, x, partial)


def lift_and_patch(
    d: SplitDigraph, sr: SplitResult, sad: StrongArcDecomposition
) -> StrongArcDecomposition:
    """Lift a decomposition of the split-off V2 part back to a decomposition of ``d``.

    V1 vertices that end up in only one class receive an unused in/out arc
    pair in the other class (lexicographically smallest choice).
    """
    lifted = lift_all(sr, (sad.a1, sad.a2))
    classes = [set(lifted[0]), set(lifted[1])]
    touched = [
        {v for a in c for v in (a.tail, a.head)} & d.v1 for c in classes
    ]
    used = classes[0] | classes[1]
    splits = sr.splits_at()
    for i in (0, 1):
        for t in sorted(touched[i] - touched[1 - i]):
            if splits[t] > 2:
                raise InternalInvariantError(
                    f"vertex {t} carries {splits[t]} split pairs but lies in one class only"
                )
            ins = [a for a in d.graph.in_arcs(t) if a not in used]
            outs = [a for a in d.graph.out_arcs(t) if a not in used]
            if not ins or not outs:
                raise PatchUnavailable(f"vertex {t} has no unused in/out pair")
            pair = {min(ins), min(outs)}
            classes[1 - i] |= pair
            used |= pair
    covered = d.v2 | touched[0] | touched[1]
    return complete_on(d.graph, covered, classes[0], classes[1])
