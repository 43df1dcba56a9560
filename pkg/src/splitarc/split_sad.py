"""Strong arc decompositions of split digraphs.

Input: a 2-arc-strong split digraph whose V1 vertices all have in- and
out-degree at least 3. The construction splits off a small system of
arc-disjoint paths through V1 so that the semicomplete part becomes a
2-arc-strong multigraph, decomposes that multigraph, and lifts the result
back to the original arcs.

The path system (a "feasible set") starts as two arc-disjoint paths from
the sink end X of the semicomplete part to its source end Y. It is then
improved by local exchange moves until no V2 vertex has out- or in-degree
exactly one in the split-off V2 part, or until a rigid leftover structure
is reached that a final augmentation resolves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Sequence

from .certify import verify_decomposition
from .core import (
    Arc,
    DirectedMultigraph,
    InternalInvariantError,
    Path,
    PreconditionViolated,
    SplitDigraph,
    arc_disjoint_paths,
    cut_arcs,
    is_k_arc_strong,
    path_vertices,
    reverse_path,
    strong_components,
)
from .nice import NiceDecomposition, initial_block, nice_decompose, terminal_block
from .semicomplete import (
    CATALOG_CYCLE,
    ExceptionId,
    SearchFn,
    StrongArcDecomposition,
    complete_on,
    decompose_semicomplete,
    lift_and_patch,
    search_decomposition,
)
from .splitting import (
    FeasibleSet,
    InvalidFeasibleSet,
    SplitResult,
    build_dq,
    split_off_paths,
)


class NoTwoPaths(PreconditionViolated):
    pass


class ShapeMismatch(InternalInvariantError):
    pass


class StructureMismatch(InternalInvariantError):
    pass


@dataclass(frozen=True)
class XYSelection:
    x: frozenset[int]
    y: frozenset[int]
    sk_size: int
    s1_size: int
    terminal_nd: NiceDecomposition | None = None
    initial_nd: NiceDecomposition | None = None


@dataclass(frozen=True)
class C1State:
    q: FeasibleSet
    dq: SplitResult

    @property
    def score(self) -> int:
        return self.dq.score


@dataclass
class Trace:
    """What the construction did, for reports and tests."""

    route: str = ""
    moves: list[str] = field(default_factory=list)
    repairs: int = 0
    paths: tuple[tuple[int, ...], ...] = ()
    exception: str | None = None


# -- preconditions and small cases -----------------------------------------


def check_preconditions(d: SplitDigraph) -> None:
    for t in sorted(d.v1):
        if d.graph.in_degree(t) < 3 or d.graph.out_degree(t) < 3:
            raise PreconditionViolated(
                f"V1 vertex {t} has in-degree {d.graph.in_degree(t)} and "
                f"out-degree {d.graph.out_degree(t)}; both must be at least 3",
                t,
            )
    if d.graph.n < 2 or not is_k_arc_strong(d.graph, 2):
        raise PreconditionViolated("the digraph is not 2-arc-strong")


def _arc(g: DirectedMultigraph, u: int, v: int) -> Arc:
    found = g.arcs_between(u, v)
    if not found:
        raise StructureMismatch(f"expected arc {u}->{v}")
    return found[0]


def small_case(d: SplitDigraph) -> StrongArcDecomposition:
    """Explicit decompositions when the semicomplete part has three vertices."""
    if len(d.v2) != 3:
        raise PreconditionViolated(f"small case needs |V2| = 3, got {len(d.v2)}")
    g = d.graph
    v2 = sorted(d.v2)
    v1 = sorted(d.v1)
    t = v1[0]
    for s1, s2, s3 in permutations(v2):
        if g.has_arc(s1, s2) and g.has_arc(s2, s3) and g.has_arc(s3, s1):
            e = lambda u, v: _arc(g, u, v)  # noqa: E731
            c1 = {e(t, s1), e(s1, s2), e(s2, s3), e(s3, t)}
            c2 = {e(t, s3), e(s3, s1), e(s1, t), e(t, s2), e(s2, t)}
            return complete_on(g, d.v2 | {t}, c1, c2)
    if len(v1) < 2:
        raise PreconditionViolated("acyclic three-vertex part needs two V1 vertices")
    t2 = v1[1]
    for s1, s2, s3 in permutations(v2):
        if g.has_arc(s1, s2) and g.has_arc(s2, s3):
            e = lambda u, v: _arc(g, u, v)  # noqa: E731
            c1 = {e(t, s1), e(s1, s2), e(s2, t2), e(t2, s3), e(s3, t)}
            c2 = {e(t, s2), e(s2, s3), e(s3, t2), e(t2, s1), e(s1, t)}
            return complete_on(g, d.v2 | {t, t2}, c1, c2)
    raise StructureMismatch("semicomplete part on three vertices has no hamiltonian path")


# -- X and Y ----------------------------------------------------------------


def select_xy(d: SplitDigraph) -> XYSelection:
    h = d.v2_graph
    comps = strong_components(h)
    sk, s1 = comps.terminal, comps.initial
    tnd = ind = None
    if len(sk) >= 4:
        tnd = nice_decompose(h.induced(sk))
        x = terminal_block(tnd)
    else:
        x = sk
    if len(s1) >= 4:
        ind = tnd if s1 == sk else nice_decompose(h.induced(s1))
        y = initial_block(ind)
    else:
        y = s1
    if x == y:
        raise StructureMismatch("X and Y coincide")
    return XYSelection(frozenset(x), frozenset(y), len(sk), len(s1), tnd, ind)


def initial_feasible(d: SplitDigraph, xy: XYSelection) -> FeasibleSet:
    paths = arc_disjoint_paths(d.graph, xy.x, xy.y, 2)
    if paths is None:
        raise NoTwoPaths("no two arc-disjoint (X,Y)-paths; the digraph is not 2-arc-strong")
    return FeasibleSet.build(d, paths, 2, xy.x, xy.y)


def _state(d: SplitDigraph, paths: Sequence[Path], x, y, gamma: int = 2) -> C1State:
    q = FeasibleSet.build(d, paths, gamma, x, y)
    return C1State(q, build_dq(d, q))


# -- exchange moves -----------------------------------------------------------


def _wplus_moves(
    d: SplitDigraph, paths: Sequence[Path], x_set, w_plus
) -> Iterator[tuple[str, list[Path]]]:
    """Candidate path systems that may remove a vertex from W+."""
    g = d.graph
    paths = list(paths)
    used = {a for p in paths for a in p}
    usage: dict[int, int] = {}
    for p in paths:
        for v in path_vertices(p):
            if v in d.v1:
                usage[v] = usage.get(v, 0) + 1
    for x in sorted(w_plus):
        for xt in g.out_arcs(x):
            t = xt.head
            if t not in d.v1 or xt in used:
                continue
            on = [i for i, p in enumerate(paths) if t in path_vertices(p)]
            # add x t y' when t is on at most one path
            if usage.get(t, 0) <= 1:
                for ty in g.out_arcs(t):
                    if ty.head != x and ty not in used:
                        yield "append", paths + [(xt, ty)]
            # reroute a two-arc path w t z through x
            for i in on:
                if i < 2:
                    continue
                wt, tz = paths[i]
                rest_used = used - {wt, tz}
                outs = sorted(g.out_arcs(t), key=lambda a: (a != tz, a))
                for tt in outs:
                    if tt.head != x and tt not in rest_used:
                        yield "reroute", paths[:i] + paths[i + 1:] + [(xt, tt)]
            for i in on:
                if i >= 2:
                    continue
                p = paths[i]
                k = next(j for j, a in enumerate(p) if a.head == t)
                # insert x between t's predecessor and t
                pred = p[k].tail
                if x not in path_vertices(p):
                    for px in g.arcs_between(pred, x):
                        if px not in used:
                            newp = p[:k] + (px, xt) + p[k + 1:]
                            yield "insert", paths[:i] + [newp] + paths[i + 1:]
                # restart the path at x (or at an X-vertex right before x)
                prefix, suffix = p[: k + 1], p[k + 1:]
                salvage = [
                    (prefix[j - 1], prefix[j])
                    for j in range(1, len(prefix))
                    if prefix[j].tail in d.v1
                ]
                freed = used - set(prefix)
                starts: list[tuple[Arc, ...]] = []
                if x in x_set:
                    starts.append((xt,))
                else:
                    for sx in g.in_arcs(x):
                        if sx.tail in x_set and sx not in freed:
                            starts.append((sx, xt))
                for head in starts:
                    newp = head + suffix
                    yield "promote", paths[:i] + [newp] + paths[i + 1:] + salvage


def _reverse_world(d: SplitDigraph) -> SplitDigraph:
    return SplitDigraph(d.graph.reversed(), d.v1, d.v2)


def _candidate_moves(
    d: SplitDigraph, rd: SplitDigraph, st: C1State
) -> Iterator[tuple[str, list[Path]]]:
    q = st.q
    yield from _wplus_moves(d, q.paths, q.x, st.dq.w_plus)
    rpaths = [reverse_path(p) for p in q.paths]
    for name, cand in _wplus_moves(rd, rpaths, q.y, st.dq.w_minus):
        yield name + "-reversed", [reverse_path(p) for p in cand]


def improve_to_c1(
    d: SplitDigraph, st: C1State, history: list[str] | None = None
) -> C1State:
    """Apply score-decreasing exchange moves until none applies."""
    rd = _reverse_world(d)
    bound = 2 * len(d.v2) + 1
    for _ in range(bound):
        if st.score == 0:
            return st
        for name, cand in _candidate_moves(d, rd, st):
            try:
                new = _state(d, cand, st.q.x, st.q.y)
            except InvalidFeasibleSet:
                continue
            if new.score < st.score:
                if history is not None:
                    history.append(name)
                st = new
                break
        else:
            return st
    raise InternalInvariantError("exchange moves did not terminate within the score bound")


# -- cut-arc repair -------------------------------------------------------------


def _repair_forward(
    d: SplitDigraph, paths: list[Path], cut: Arc
) -> Iterator[list[Path]]:
    """Reroute the companion path z t' x of a terminal 3-cycle cut arc x->y."""
    h = d.v2_graph
    comps = strong_components(h)
    sk = comps.terminal
    x, y = cut.tail, cut.head
    if len(sk) != 3 or x not in sk or y not in sk:
        return
    if any(path_vertices(p)[0] != y for p in paths[:2]):
        return
    (z,) = sk - {x, y}
    g = d.graph
    used = {a for p in paths for a in p}
    companions = [
        i for i, p in enumerate(paths) if i >= 2 and path_vertices(p)[0] == z and path_vertices(p)[2] == x
    ]
    for i in companions:
        zt, _ = paths[i]
        t = zt.head
        for tw in g.out_arcs(t):
            if tw.head not in (x, z) and tw not in used:
                yield paths[:i] + paths[i + 1:] + [(zt, tw)]
    # when t' is the second vertex of an (X,Y)-path, trade first arcs with
    # it: that path then starts at z and the companion becomes a t' x
    for i in companions:
        zt, tx = paths[i]
        for k in (0, 1):
            first = paths[k][0]
            if first.head == zt.head and first.tail != x:
                swapped = list(paths)
                swapped[k] = (zt,) + paths[k][1:]
                swapped[i] = (first, tx)
                yield swapped
    # the companion's V1 vertex may have no free arc left; route z through
    # another V1 vertex instead, replacing the companion or alongside it
    for zt in g.out_arcs(z):
        if zt.head not in d.v1 or zt in used:
            continue
        for tw in g.out_arcs(zt.head):
            if tw.head in (x, z) or tw in used:
                continue
            for i in companions:
                yield paths[:i] + paths[i + 1:] + [(zt, tw)]
            yield paths + [(zt, tw)]


def cutarc_repair(d: SplitDigraph, st: C1State) -> C1State:
    """One repair step removing cut arcs of the split-off V2 part."""
    h = st.dq.v2_graph
    cuts = sorted(cut_arcs(h))
    if not cuts:
        return st
    rd = _reverse_world(d)
    before = len(cuts)
    for cut in cuts:
        if cut.is_splitting:
            raise InternalInvariantError(f"splitting arc {cut.tail}->{cut.head} is a cut arc")
        options = [list(c) for c in _repair_forward(d, list(st.q.paths), cut)]
        rpaths = [reverse_path(p) for p in st.q.paths]
        for c in _repair_forward(rd, rpaths, cut.reversed()):
            options.append([reverse_path(p) for p in c])
        best = None
        for cand in options:
            try:
                new = _state(d, cand, st.q.x, st.q.y)
            except InvalidFeasibleSet:
                continue
            if new.score != 0:
                continue
            left = len(cut_arcs(new.dq.v2_graph))
            if left == 0:
                return new
            if left < before and best is None:
                best = new
        if best is not None:
            return best
    raise ShapeMismatch("no cut arc of the split-off part has the repairable shape")


# -- final augmentation --------------------------------------------------------


def _terminal_cycle(d: SplitDigraph, paths: Sequence[Path], w_plus) -> tuple[int, int, list[Arc]]:
    """Return (u3, t, admissible t->z arcs) for the rigid terminal 3-cycle."""
    h = d.v2_graph
    sk = strong_components(h).terminal
    if len(sk) != 3 or h.induced(sk).m != 3:
        raise StructureMismatch("terminal component is not a 3-cycle")
    if len(w_plus) != 1 or not w_plus <= sk:
        raise StructureMismatch(f"W+ = {sorted(w_plus)} is not a single terminal vertex")
    (u3,) = w_plus
    vs = [path_vertices(p) for p in paths[:2]]
    if {v[0] for v in vs} != sk - {u3} or vs[0][1] != vs[1][1]:
        raise StructureMismatch("the two (X,Y)-paths do not leave the 3-cycle through one V1 vertex")
    t = vs[0][1]
    if t not in d.v1:
        raise StructureMismatch("second vertex of the (X,Y)-paths is not in V1")
    return u3, t, []


def final_augment(d: SplitDigraph, st: C1State) -> C1State:
    """Add u3 t z (and symmetrically w t' v3) to reach W+ = W- = empty."""
    paths = list(st.q.paths)
    g = d.graph
    forward: list[list[Path]] = [[]]
    backward: list[list[Path]] = [[]]
    if st.dq.w_plus:
        u3, t, _ = _terminal_cycle(d, paths, st.dq.w_plus)
        forward = []
        for u3t in g.arcs_between(u3, t):
            for tz in g.out_arcs(t):
                if tz.head != u3:
                    forward.append([(u3t, tz)])
    if st.dq.w_minus:
        rd = _reverse_world(d)
        rpaths = [reverse_path(p) for p in paths]
        v3, t2, _ = _terminal_cycle(rd, rpaths, st.dq.w_minus)
        backward = []
        for v3t in rd.graph.arcs_between(v3, t2):
            for tw in rd.graph.out_arcs(t2):
                if tw.head != v3:
                    backward.append([reverse_path((v3t, tw))])
    if not forward or not backward:
        raise StructureMismatch("no admissible completing path")
    for extra_f in forward:
        for extra_b in backward:
            cand = paths + extra_f + extra_b
            try:
                q = FeasibleSet.build(d, cand, 4, st.q.x, st.q.y)
            except InvalidFeasibleSet:
                continue
            sr = build_dq(d, q)
            if sr.score == 0 and is_k_arc_strong(sr.v2_graph, 2):
                return C1State(q, sr)
    raise StructureMismatch("no completing path makes the split-off part 2-arc-strong")


# -- exceptional multigraphs ------------------------------------------------


def _first(arcs, what: str) -> Arc:
    arcs = sorted(arcs)
    if not arcs:
        raise ShapeMismatch(f"missing {what}")
    return arcs[0]


def exception_case(d: SplitDigraph, sr: SplitResult, ex: ExceptionId) -> StrongArcDecomposition:
    """Decompose ``d`` when its split-off V2 part is one of the four exceptions."""
    g = d.graph
    h = sr.v2_graph
    lab = ex.inverse()
    v1_, v2_, v3_, v4_ = (lab[i] for i in range(4))

    def original(u: int, v: int) -> list[Arc]:
        return [a for a in h.arcs_between(u, v) if not a.is_splitting]

    def in_from(t: int, sources, avoid=()) -> list[Arc]:
        return [a for a in g.in_arcs(t) if a.tail in sources and a not in avoid]

    def out_to(t: int, sinks, avoid=()) -> list[Arc]:
        return [a for a in g.out_arcs(t) if a.head in sinks and a not in avoid]

    cycle = {_first(original(lab[i], lab[j]), "original cycle arc") for i, j in CATALOG_CYCLE}
    splitting = [a for a in h.arcs if a.is_splitting]
    odd, even = {v1_, v3_}, {v2_, v4_}

    if not splitting:
        t = min(d.v1)
        diag = {_first(original(u, v), "diagonal arc") for u, v in
                ((v1_, v3_), (v3_, v1_), (v2_, v4_), (v4_, v2_))}
        around = {
            _first(in_from(t, odd), "in-arc from {v1,v3}"),
            _first(out_to(t, odd), "out-arc to {v1,v3}"),
            _first(in_from(t, even), "in-arc from {v2,v4}"),
            _first(out_to(t, even), "out-arc to {v2,v4}"),
        }
        c1 = around | diag
        rest = {_first(in_from(t, d.v2, c1), "spare in-arc"), _first(out_to(t, d.v2, c1), "spare out-arc")}
        return complete_on(g, d.v2 | {t}, c1, cycle | rest)

    def diagonal_cycle(u: int, v: int) -> tuple[set[Arc], int | None]:
        sp = [a for a in splitting if {a.tail, a.head} == {u, v}]
        for a in sorted(sp):
            back = original(a.head, a.tail)
            if back:
                return set(a.lifted()) | {back[0]}, a.origin[0].head
        if sp:
            raise ShapeMismatch(f"no original arc closes a cycle with splitting arcs on {u},{v}")
        return {_first(original(u, v), "diagonal"), _first(original(v, u), "diagonal")}, None

    c_odd, t1 = diagonal_cycle(v1_, v3_)
    c_even, t2 = diagonal_cycle(v2_, v4_)

    if t1 is None and t2 is None:
        # only the extra copy v1->v2 of S4_2 is a splitting arc
        if ex.which != "S4_2" or len(splitting) != 1:
            raise ShapeMismatch("unexpected splitting arcs outside the diagonals")
        (sp,) = splitting
        in_arc, out_arc = sp.origin
        t = in_arc.head
        first = {in_arc, out_arc}
        pre = _first(in_from(t, even, first), "in-arc from {v2,v4}")
        post = _first(out_to(t, odd, first), "out-arc to {v1,v3}")
        taken = first | {pre, post}
        e_minus = _first(in_from(t, d.v2, taken), "spare in-arc")
        e_plus = _first(out_to(t, d.v2, taken), "spare out-arc")
        diag = {_first(original(u, v), "diagonal arc") for u, v in
                ((v1_, v3_), (v3_, v1_), (v2_, v4_), (v4_, v2_))}
        return complete_on(g, d.v2 | {t}, cycle | {e_minus, e_plus}, taken | diag)

    if t1 is not None and t1 == t2:
        both = c_odd | c_even
        pair = {_first(in_from(t1, d.v2, both), "spare in-arc"), _first(out_to(t1, d.v2, both), "spare out-arc")}
        return complete_on(g, d.v2 | {t1}, cycle | pair, both)

    pairs: dict[int, set[Arc]] = {}
    if t1 is not None:
        pairs[t1] = {_first(in_from(t1, even), "in-arc from {v2,v4}"), _first(out_to(t1, even), "out-arc to {v2,v4}")}
    if t2 is not None:
        pairs[t2] = {_first(in_from(t2, odd), "in-arc from {v1,v3}"), _first(out_to(t2, odd), "out-arc to {v1,v3}")}
    tj = t1 if t1 is not None else t2
    other = t2 if t1 is not None else None
    c2 = c_odd | c_even | pairs[tj]
    spare = {_first(in_from(tj, d.v2, c2), "spare in-arc"), _first(out_to(tj, d.v2, c2), "spare out-arc")}
    c1 = cycle | spare
    if other is not None:
        c1 |= pairs[other]
    covered = d.v2 | {tj} | ({other} if other is not None else set())
    return complete_on(g, covered, c1, c2)


# -- orchestration ------------------------------------------------------------


def _finish(d: SplitDigraph, sr: SplitResult, search: SearchFn, trace: Trace) -> StrongArcDecomposition:
    res = decompose_semicomplete(sr.v2_graph, search)
    if isinstance(res, ExceptionId):
        trace.exception = res.which
        return exception_case(d, sr, res)
    return lift_and_patch(d, sr, res)


def decompose_split_traced(
    d: SplitDigraph, search: SearchFn = search_decomposition
) -> tuple[StrongArcDecomposition, Trace]:
    check_preconditions(d)
    trace = Trace()
    if len(d.v2) <= 3:
        trace.route = "small"
        sad = small_case(d)
    elif is_k_arc_strong(d.v2_graph, 2):
        trace.route = "direct"
        sad = _finish(d, split_off_paths(d, []), search, trace)
    else:
        xy = select_xy(d)
        q = initial_feasible(d, xy)
        st = C1State(q, build_dq(d, q))
        sad = None
        for _ in range(g_bound(d)):
            st = improve_to_c1(d, st, trace.moves)
            if st.score == 0:
                if is_k_arc_strong(st.dq.v2_graph, 2):
                    trace.route = "feasible"
                    trace.paths = tuple(tuple(path_vertices(p)) for p in st.q.paths)
                    sad = _finish(d, st.dq, search, trace)
                    break
                st = cutarc_repair(d, st)
                trace.repairs += 1
            else:
                st = final_augment(d, st)
                trace.route = "augmented"
                trace.paths = tuple(tuple(path_vertices(p)) for p in st.q.paths)
                sad = _finish(d, st.dq, search, trace)
                break
        if sad is None:
            raise InternalInvariantError("path system did not stabilise within |A(D)| rounds")
    verdict = verify_decomposition(d.graph, sad.a1, sad.a2)
    if not verdict:
        raise InternalInvariantError("; ".join(verdict.problems))
    return sad, trace


def g_bound(d: SplitDigraph) -> int:
    return max(1, d.graph.m)


def decompose_split(d: SplitDigraph, search: SearchFn = search_decomposition) -> StrongArcDecomposition:
    """Verified strong arc decomposition of a split digraph meeting the degree hypotheses."""
    return decompose_split_traced(d, search)[0]
