"""Instance generators and exhaustive oracles.

The oracles here are intentionally naive: plain backtracking over arc
colourings or branchings with simple necessary-condition pruning. They are
meant as ground truth for small instances, independent of the constructive
algorithms.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Iterator

from .core import (
    Arc,
    DirectedMultigraph,
    GraphError,
    SplitDigraph,
    is_k_arc_strong,
    is_strong,
    validate_split,
)

CLAUSES = frozenset({"none", "two_arc_strong", "three_arc_strong", "v1_degree_3"})


class GiveUp(RuntimeError):
    def __init__(self, attempts: int, accepted: int = 0):
        super().__init__(
            f"no instance met the constraints after {attempts} attempts "
            f"(acceptance rate {accepted}/{attempts})"
        )
        self.attempts = attempts


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n1: int
    n2: int
    cross_density: float = 0.6
    # probability that a V2 pair is joined by a 2-cycle rather than one arc
    orientation_bias: float = 0.3
    seed: int = 0
    enforce: tuple[str, ...] = ("none",)
    # probability that a single V2 arc points from the lower to the higher id;
    # 0.5 is a uniform random orientation, values near 1 give near-transitive parts
    order_bias: float = 0.5
    max_attempts: int = 2000


def _clauses(enforce) -> frozenset[str]:
    if isinstance(enforce, str):
        enforce = (enforce,)
    got = frozenset(enforce)
    unknown = got - CLAUSES
    if unknown:
        raise ValueError(f"unknown enforce clauses {sorted(unknown)}")
    return got - {"none"}


def _meets(d: SplitDigraph, clauses: frozenset[str]) -> bool:
    g = d.graph
    if "v1_degree_3" in clauses:
        if any(g.in_degree(t) < 3 or g.out_degree(t) < 3 for t in d.v1):
            return False
    if "three_arc_strong" in clauses and not is_k_arc_strong(g, 3):
        return False
    if "two_arc_strong" in clauses and not is_k_arc_strong(g, 2):
        return False
    return True


def gen_random(spec: GenSpec) -> SplitDigraph:
    """A random split digraph meeting ``spec.enforce``; deterministic per seed.

    V2 gets ids ``0..n2-1`` and V1 gets ``n2..n2+n1-1``.
    """
    if spec.n2 < 1 or spec.n1 < 0:
        raise ValueError("need n2 >= 1 and n1 >= 0")
    clauses = _clauses(spec.enforce)
    rng = random.Random(spec.seed)
    v2 = list(range(spec.n2))
    v1 = list(range(spec.n2, spec.n2 + spec.n1))
    for attempt in range(1, spec.max_attempts + 1):
        pairs: list[tuple[int, int]] = []
        for i, j in combinations(v2, 2):
            if rng.random() < spec.orientation_bias:
                pairs += [(i, j), (j, i)]
            elif rng.random() < spec.order_bias:
                pairs.append((i, j))
            else:
                pairs.append((j, i))
        for t in v1:
            outs = {s for s in v2 if rng.random() < spec.cross_density}
            ins = {s for s in v2 if rng.random() < spec.cross_density}
            if "v1_degree_3" in clauses or "three_arc_strong" in clauses:
                for chosen in (outs, ins):
                    missing = [s for s in v2 if s not in chosen]
                    rng.shuffle(missing)
                    while len(chosen) < min(3, len(v2)) and missing:
                        chosen.add(missing.pop())
            pairs += [(t, s) for s in sorted(outs)] + [(s, t) for s in sorted(ins)]
        g = DirectedMultigraph.from_pairs(pairs, v1 + v2)
        d = validate_split(g, v1, v2, allow_empty_v1=True)
        if _meets(d, clauses):
            return d
    raise GiveUp(spec.max_attempts)


def gen_semicomplete_split(
    n1: int, n2: int, seed: int = 0, two_cycle_bias: float = 0.3, max_attempts: int = 2000
) -> SplitDigraph:
    """A random 2-arc-strong split digraph in which every V1 vertex is adjacent to all of V2.

    Each V1-V2 pair and each V2 pair gets a 2-cycle with probability
    ``two_cycle_bias`` and otherwise one arc of uniformly random direction.
    """
    rng = random.Random(seed)
    v2 = list(range(n2))
    v1 = list(range(n2, n2 + n1))
    for _ in range(max_attempts):
        pairs: list[tuple[int, int]] = []
        for i, j in [*combinations(v2, 2), *product(v1, v2)]:
            if rng.random() < two_cycle_bias:
                pairs += [(i, j), (j, i)]
            else:
                pairs.append((i, j) if rng.random() < 0.5 else (j, i))
        g = DirectedMultigraph.from_pairs(pairs, v1 + v2)
        if g.n >= 2 and is_k_arc_strong(g, 2):
            return validate_split(g, v1, v2, allow_empty_v1=True)
    raise GiveUp(max_attempts)


def meets_decomposition_hypotheses(d: SplitDigraph) -> bool:
    return _meets(d, frozenset({"two_arc_strong", "v1_degree_3"}))


# -- counterexample families ---------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    split: SplitDigraph
    u: int
    v: int
    names: dict[int, str]


def transitive_tournament(k: int) -> DirectedMultigraph:
    return DirectedMultigraph.from_pairs(
        [(i, j) for i, j in combinations(range(k), 2)], range(k)
    )


def gen_counterexample(
    family: str, w: DirectedMultigraph | None = None, designated: int | None = None
) -> Counterexample:
    """The two families of 2-strong split digraphs without a good (u, v)-pair.

    ``w`` is any semicomplete digraph; ``designated`` is its vertex playing
    the role of u_t^+ (default: its smallest vertex). The default ``w`` is a
    single vertex.
    """
    if family not in ("D1", "D2"):
        raise ValueError("family must be 'D1' or 'D2'")
    if w is None:
        w = DirectedMultigraph([0])
    if not w.is_semicomplete():
        raise GraphError("W must be semicomplete")
    if designated is None:
        designated = w.vertices[0]
    if designated not in w.vertex_set:
        raise GraphError("designated vertex is not in W")

    names: dict[int, str] = {}
    ids: dict[str, int] = {}

    def vid(name: str) -> int:
        if name not in ids:
            ids[name] = len(ids)
            names[ids[name]] = name
        return ids[name]

    wmap = {}
    for x in w.vertices:
        wmap[x] = vid("ut+" if x == designated else f"w{x}")
    if family == "D1":
        top = ["b", "v"]
        bottom = ["u", "a"]
        v1_names = ["vt", "w", "ut"]
    else:
        top = ["v", "b"]
        bottom = ["a", "u"]
        v1_names = ["vt", "ut"]
    for nm in top + bottom + v1_names:
        vid(nm)
    pairs: list[tuple[int, int]] = [(wmap[a.tail], wmap[a.head]) for a in w.arcs]
    # V2 outside W: every arc runs downward in the order top, W, bottom
    order = [ids[n] for n in top] + [None] + [ids[n] for n in bottom]
    for i, j in combinations(range(len(order)), 2):
        up, down = order[i], order[j]
        ups = list(wmap.values()) if up is None else [up]
        downs = list(wmap.values()) if down is None else [down]
        for p, q in product(ups, downs):
            pairs.append((p, q))
    if family == "D2":
        flip = {(ids["u"], ids["a"]), (ids["a"], ids["b"]), (ids["b"], ids["v"])}
        pairs = [(q, p) if (q, p) in flip else (p, q) for p, q in pairs]
    n = ids
    ut_plus = wmap[designated]
    cross = [
        (n["a"], n["ut"]), (n["u"], n["ut"]), (n["ut"], n["u"]), (n["ut"], ut_plus),
        (ut_plus, n["vt"]), (n["v"], n["vt"]), (n["vt"], n["v"]), (n["vt"], n["b"]),
    ]
    if family == "D1":
        cross += [(n["a"], n["w"]), (n["w"], n["a"]), (n["b"], n["w"]), (n["w"], n["b"])]
    g = DirectedMultigraph.from_pairs(pairs + cross, range(len(ids)))
    v1 = {n[x] for x in v1_names}
    d = validate_split(g, v1, set(range(len(ids))) - v1)
    return Counterexample(d, n["u"], n["v"], names)


def is_vertex_two_strong(g: DirectedMultigraph) -> bool:
    """Strong, at least three vertices, and strong after deleting any one vertex."""
    if g.n < 3 or not is_strong(g):
        return False
    return all(is_strong(g.induced(g.vertex_set - {v})) for v in g.vertices)


# -- oracles -------------------------------------------------------------------


def _strong(vertices, arcs) -> bool:
    vs = list(vertices)
    fwd = {v: [] for v in vs}
    bwd = {v: [] for v in vs}
    for a in arcs:
        fwd[a.tail].append(a.head)
        bwd[a.head].append(a.tail)
    for adj in (fwd, bwd):
        seen = {vs[0]}
        stack = [vs[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) < len(vs):
            return False
    return True


def oracle_sad(g: DirectedMultigraph, bound: int = 18) -> tuple[frozenset[Arc], frozenset[Arc]] | None:
    """Exhaustive search for a strong arc decomposition."""
    if g.m > bound:
        raise TooLarge(f"{g.m} arcs exceed the oracle bound {bound}")
    vs = g.vertices
    arcs = list(g.arcs)
    if g.n == 1:
        return frozenset(arcs), frozenset()
    # arcs of low-degree vertices first so the coverage pruning bites early
    degree = Counter()
    for a in arcs:
        degree[a.tail] += 1
        degree[a.head] += 1
    arcs.sort(key=lambda a: (min(degree[a.tail], degree[a.head]), a))
    m = len(arcs)
    remaining_out = [Counter() for _ in range(m + 1)]
    remaining_in = [Counter() for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        remaining_out[i] = remaining_out[i + 1].copy()
        remaining_in[i] = remaining_in[i + 1].copy()
        remaining_out[i][arcs[i].tail] += 1
        remaining_in[i][arcs[i].head] += 1
    colour = [0] * m

    def feasible(i: int) -> bool:
        for c in (0, 1):
            outs = Counter(arcs[j].tail for j in range(i) if colour[j] == c)
            ins = Counter(arcs[j].head for j in range(i) if colour[j] == c)
            for v in vs:
                if outs[v] + remaining_out[i][v] < 1 or ins[v] + remaining_in[i][v] < 1:
                    return False
            potential = [arcs[j] for j in range(i) if colour[j] == c] + arcs[i:]
            if not _strong(vs, potential):
                return False
        return True

    def go(i: int) -> bool:
        if not feasible(i):
            return False
        if i == m:
            return True
        for c in (0, 1):
            colour[i] = c
            if go(i + 1):
                return True
        return False

    if not go(0):
        return None
    a1 = frozenset(arcs[j] for j in range(m) if colour[j] == 0)
    a2 = frozenset(arcs[j] for j in range(m) if colour[j] == 1)
    return a1, a2


def _out_branchings(
    g: DirectedMultigraph, root: int, viable: Callable[[set[Arc]], bool]
) -> Iterator[list[Arc]]:
    """Out-branchings rooted at ``root`` whose partial arc sets stay ``viable``.

    Each non-root vertex picks its entering arc in turn; a partial choice is
    abandoned when it closes a cycle or ``viable`` rejects it.
    """
    others = [v for v in g.vertices if v != root]
    choices = {v: sorted(g.in_arcs(v)) for v in others}
    others.sort(key=lambda v: (len(choices[v]), v))
    picked: dict[int, Arc] = {}

    def acyclic_from(v: int) -> bool:
        seen = set()
        w = v
        while w != root and w in picked:
            if w in seen:
                return False
            seen.add(w)
            w = picked[w].tail
        return True

    def go(i: int) -> Iterator[list[Arc]]:
        if i == len(others):
            yield list(picked.values())
            return
        v = others[i]
        for a in choices[v]:
            picked[v] = a
            if acyclic_from(v) and viable(set(picked.values())):
                yield from go(i + 1)
            del picked[v]

    yield from go(0)


def _has_in_branching(g: DirectedMultigraph, root: int, allowed: Iterable[Arc]) -> bool:
    allowed = list(allowed)
    back = {v: [] for v in g.vertices}
    for a in allowed:
        back[a.head].append(a.tail)
    seen = {root}
    stack = [root]
    while stack:
        for w in back[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _in_branching_arcs(g: DirectedMultigraph, root: int, allowed: Iterable[Arc]) -> list[Arc]:
    into: dict[int, list[Arc]] = {v: [] for v in g.vertices}
    for a in sorted(allowed):
        into[a.head].append(a)
    seen = {root}
    order = [root]
    tree = []
    for v in order:
        for a in into[v]:
            if a.tail not in seen:
                seen.add(a.tail)
                order.append(a.tail)
                tree.append(a)
    return tree


def oracle_good_pair(
    g: DirectedMultigraph, u: int, v: int, bound: int = 40
) -> tuple[list[Arc], list[Arc]] | None:
    """Exhaustive search for an arc-disjoint out-branching at u and in-branching at v."""
    if g.m > bound:
        raise TooLarge(f"{g.m} arcs exceed the oracle bound {bound}")
    everything = set(g.arcs)
    # the unused arcs must still let every vertex reach v
    viable = lambda used: _has_in_branching(g, v, everything - used)  # noqa: E731
    for out in _out_branchings(g, u, viable):
        return out, _in_branching_arcs(g, v, everything - set(out))
    return None


# -- small semicomplete multigraphs --------------------------------------------


def _canonical(n: int, counts: dict[tuple[int, int], int]) -> tuple:
    best = None
    for perm in _perms(n):
        key = tuple(sorted(((perm[a], perm[b]), c) for (a, b), c in counts.items()))
        if best is None or key < best:
            best = key
    return best


def _perms(n: int):
    return list(permutations(range(n)))


def semicomplete_multigraphs(n: int, max_arcs: int) -> Iterator[DirectedMultigraph]:
    """All semicomplete multigraphs on ``n`` vertices with at most ``max_arcs`` arcs, up to isomorphism."""
    pairs = list(combinations(range(n), 2))
    seen = set()

    def go(i: int, counts: dict[tuple[int, int], int], total: int):
        if i == len(pairs):
            key = _canonical(n, counts)
            if key not in seen:
                seen.add(key)
                yield DirectedMultigraph.from_pairs(
                    [p for p, c in counts.items() for _ in range(c)], range(n)
                )
            return
        a, b = pairs[i]
        budget = max_arcs - total - (len(pairs) - i - 1)
        for forward in range(budget + 1):
            for backward in range(budget + 1 - forward):
                if forward + backward == 0:
                    continue
                nxt = dict(counts)
                if forward:
                    nxt[(a, b)] = forward
                if backward:
                    nxt[(b, a)] = backward
                yield from go(i + 1, nxt, total + forward + backward)

    yield from go(0, {}, 0)
