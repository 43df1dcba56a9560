"""Good pairs: an out-branching and an in-branching with no common arc.

A strong arc decomposition yields a good pair for any two roots by growing
a search tree inside each class. For a vertex ``u`` of a 2-arc-strong
digraph containing a semicomplete induced subgraph S around ``u`` (with
every outside vertex seeing S twice in each direction) a good pair with
both roots at ``u`` is built directly from two arc-disjoint paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .certify import Verdict, verify_branching
from .core import (
    Arc,
    DirectedMultigraph,
    InternalInvariantError,
    Path,
    PreconditionViolated,
    arc_disjoint_paths,
    is_k_arc_strong,
    path_vertices,
    strong_components,
)
from .semicomplete import DegreeHypothesisFails, StrongArcDecomposition

Direction = Literal["out", "in"]


@dataclass(frozen=True)
class Branching:
    root: int
    arcs: frozenset[Arc]
    direction: Direction
    # the spanned vertex set; a vertex with no tree arc would otherwise be invisible
    vertices: frozenset[int]

    def parents(self) -> dict[int, int]:
        """Tree neighbour of each non-root vertex: its parent (out) or its successor (in)."""
        if self.direction == "out":
            return {a.head: a.tail for a in self.arcs}
        return {a.tail: a.head for a in self.arcs}

    def reversed(self) -> Branching:
        flipped: Direction = "in" if self.direction == "out" else "out"
        return Branching(self.root, frozenset(a.reversed() for a in self.arcs), flipped, self.vertices)


@dataclass(frozen=True)
class GoodPair:
    out: Branching
    in_: Branching

    @property
    def roots(self) -> tuple[int, int]:
        return self.out.root, self.in_.root


def verify_good_pair(gp: GoodPair, graph: DirectedMultigraph | None = None) -> Verdict:
    """Check both branchings and their arc-disjointness; optionally that all arcs lie in ``graph``."""
    problems: list[str] = []
    if gp.out.direction != "out" or gp.in_.direction != "in":
        problems.append("branching directions are not (out, in)")
    if gp.out.vertices != gp.in_.vertices:
        problems.append("the branchings span different vertex sets")
    if graph is not None and graph.vertex_set != gp.out.vertices:
        problems.append("the branchings do not span the graph")
    ident = lambda a: (a.tail, a.head, a.key)  # noqa: E731
    shared = {ident(a) for a in gp.out.arcs} & {ident(a) for a in gp.in_.arcs}
    for t, h, k in sorted(shared):
        problems.append(f"arc {t}->{h} key {k} is used by both branchings")
    if graph is not None:
        present = {ident(a) for a in graph.arcs}
        for a in sorted(gp.out.arcs | gp.in_.arcs):
            if ident(a) not in present:
                problems.append(f"arc {a.tail}->{a.head} key {a.key} is not in the graph")
    for name, b in (("out-branching", gp.out), ("in-branching", gp.in_)):
        v = verify_branching(b.vertices, b.root, b.arcs, b.direction)
        problems += [f"{name}: {p}" for p in v.problems]
    return Verdict(not problems, tuple(problems))


def _checked(gp: GoodPair, graph: DirectedMultigraph) -> GoodPair:
    verdict = verify_good_pair(gp, graph)
    if not verdict:
        raise InternalInvariantError("; ".join(verdict.problems))
    return gp


# -- trees inside a fixed arc set --------------------------------------------


def search_tree(
    vertices: Iterable[int], arcs: Iterable[Arc], root: int, direction: Direction
) -> Branching:
    """Breadth-first tree from ``root`` (out) or towards it (in), lowest ids first.

    Raises InternalInvariantError if some vertex is not reached.
    """
    vs = frozenset(vertices)
    step: dict[int, list[tuple[int, Arc]]] = {v: [] for v in vs}
    for a in sorted(arcs):
        if a.tail in vs and a.head in vs:
            if direction == "out":
                step[a.tail].append((a.head, a))
            else:
                step[a.head].append((a.tail, a))
    seen = {root}
    frontier = [root]
    chosen: list[Arc] = []
    while frontier:
        nxt = []
        for v in sorted(frontier):
            for w, a in sorted(step[v], key=lambda p: (p[0], p[1])):
                if w not in seen:
                    seen.add(w)
                    chosen.append(a)
                    nxt.append(w)
        frontier = nxt
    if seen != vs:
        raise InternalInvariantError(f"{direction}-tree from {root} misses {sorted(vs - seen)}")
    return Branching(root, frozenset(chosen), direction, vs)


def good_pair_from_sad(sad: StrongArcDecomposition, u: int, v: int) -> GoodPair:
    """Out-branching at ``u`` inside the first class, in-branching at ``v`` inside the second."""
    vs = sad.over.vertex_set
    gp = GoodPair(search_tree(vs, sad.a1, u, "out"), search_tree(vs, sad.a2, v, "in"))
    return _checked(gp, sad.over)


# -- hanging outside vertices ------------------------------------------------------


def extend_good_pair(d: DirectedMultigraph, x: Iterable[int], gp: GoodPair) -> GoodPair:
    """Extend a good pair on ``d<x>`` to ``d``.

    Each vertex outside ``x`` enters the out-branching from its lowest
    in-neighbour in ``x`` and leaves towards its lowest out-neighbour in ``x``
    in the in-branching.
    """
    x = frozenset(x)
    if gp.out.vertices != x:
        raise PreconditionViolated("good pair does not span the given vertex set")
    out_arcs = set(gp.out.arcs)
    in_arcs = set(gp.in_.arcs)
    for w in sorted(d.vertex_set - x):
        ins = sorted(a for a in d.in_arcs(w) if a.tail in x)
        outs = sorted(a for a in d.out_arcs(w) if a.head in x)
        if not ins or not outs:
            raise DegreeHypothesisFails(w, f"vertex {w} lacks an in- or out-neighbour in the covered set")
        out_arcs.add(ins[0])
        in_arcs.add(outs[0])
    vs = d.vertex_set
    return GoodPair(
        Branching(gp.out.root, frozenset(out_arcs), "out", vs),
        Branching(gp.in_.root, frozenset(in_arcs), "in", vs),
    )


# -- same-root pairs around a semicomplete subgraph ---------------------------------


def _first_arc(d: DirectedMultigraph, u: int, v: int) -> Arc:
    found = d.arcs_between(u, v)
    if not found:
        raise InternalInvariantError(f"expected arc {u}->{v}")
    return found[0]


def check_uu_hypotheses(d: DirectedMultigraph, s: frozenset[int], u: int) -> None:
    if u not in s:
        raise PreconditionViolated(f"root {u} is not in the semicomplete set", u)
    if not s <= d.vertex_set:
        raise PreconditionViolated("the semicomplete set has vertices outside the digraph")
    if not d.induced(s).is_semicomplete():
        raise PreconditionViolated("the given set does not induce a semicomplete subgraph")
    for w in sorted(d.vertex_set - s):
        if len(set(d.in_neighbors(w)) & s) < 2 or len(set(d.out_neighbors(w)) & s) < 2:
            raise PreconditionViolated(
                f"vertex {w} needs two in- and two out-neighbours in the semicomplete set", w
            )
    if d.n < 2 or not is_k_arc_strong(d, 2):
        raise PreconditionViolated("the digraph is not 2-arc-strong")


def good_uu_pair(d: DirectedMultigraph, s: Iterable[int], u: int) -> GoodPair:
    """Good pair with both roots at ``u``, built around a semicomplete induced subgraph."""
    s = frozenset(s)
    check_uu_hypotheses(d, s, u)
    outs = set(d.out_neighbors(u)) & s
    ins = set(d.in_neighbors(u)) & s
    if outs - ins:
        gp = _uu_core(d, s, u)
    elif ins - outs:
        gp = _uu_core(d.reversed(), s, u)
        gp = GoodPair(gp.in_.reversed(), gp.out.reversed())
    else:
        # every neighbour in S forms a 2-cycle with u: a star each way
        others = sorted(s - {u})
        gp = GoodPair(
            Branching(u, frozenset(_first_arc(d, u, r) for r in others), "out", s),
            Branching(u, frozenset(_first_arc(d, r, u) for r in others), "in", s),
        )
    return _checked(extend_good_pair(d, gp.out.vertices, gp), d)


def _uu_core(d: DirectedMultigraph, s: frozenset[int], u: int) -> GoodPair:
    """The construction when u has an out-neighbour in S that is not an in-neighbour.

    Returns a good pair spanning S together with the two connecting paths.
    """
    outs = set(d.out_neighbors(u)) & s
    ins = set(d.in_neighbors(u)) & s
    a_set, b_set, c_set = outs - ins, ins - outs, outs & ins
    ter_a = strong_components(d.induced(a_set)).terminal
    ini_b = strong_components(d.induced(b_set)).initial if b_set else frozenset({u})
    found = arc_disjoint_paths(d, ter_a, ini_b, 2)
    if found is None:
        raise InternalInvariantError("two arc-disjoint connecting paths must exist")
    p1_path, p2_path = found

    # Q1 runs from the start of P1 to its first vertex in B, C or u
    stop1 = b_set | c_set | {u}
    k1 = next(i for i, a in enumerate(p1_path) if a.head in stop1)
    q1: Path = p1_path[: k1 + 1]
    # Q2 runs from the last vertex of P2 in A, C or u to its end
    start2 = a_set | c_set | {u}
    vs2 = path_vertices(p2_path)
    k2 = max(i for i, v in enumerate(vs2) if v in start2)
    q2: Path = p2_path[k2:]
    p1 = path_vertices(q1)[0]
    q1_vs = path_vertices(q1)
    q2_vs = path_vertices(q2) if q2 else [u]
    tail2 = q2_vs[-1]

    in_arcs: set[Arc] = set(q1)
    in_arcs |= search_tree(ter_a, d.induced(ter_a).arcs, p1, "in").arcs
    in_arcs |= {_first_arc(d, r, u) for r in sorted(b_set | c_set)}
    in_arcs |= {_first_arc(d, r, p1) for r in sorted(a_set - ter_a - set(q1_vs))}

    out_arcs: set[Arc] = set(q2)
    out_arcs |= {_first_arc(d, u, r) for r in sorted(a_set | c_set)}
    if b_set:
        out_arcs |= search_tree(ini_b, d.induced(ini_b).arcs, tail2, "out").arcs
        out_arcs |= {_first_arc(d, tail2, r) for r in sorted(b_set - ini_b - set(q2_vs))}

    outside = d.vertex_set - s
    # an outside vertex only on Q2 still needs a way out in I, avoiding its Q2 successor
    for i, w in enumerate(q2_vs):
        if w in outside and w not in q1_vs:
            succ = q2_vs[i + 1]
            cand = sorted(a for a in d.out_arcs(w) if a.head in s and a.head != succ)
            in_arcs.add(cand[0])
    # and an outside vertex only on Q1 needs a way in for O, avoiding its Q1 predecessor
    for i, w in enumerate(q1_vs):
        if w in outside and w not in q2_vs:
            pred = q1_vs[i - 1]
            cand = sorted(a for a in d.in_arcs(w) if a.tail in s and a.tail != pred)
            out_arcs.add(cand[0])

    covered = s | set(q1_vs) | set(q2_vs)
    return GoodPair(
        Branching(u, frozenset(out_arcs), "out", frozenset(covered)),
        Branching(u, frozenset(in_arcs), "in", frozenset(covered)),
    )
