"""Hand-built fixtures with known answers, shared by several test modules."""

from __future__ import annotations

from itertools import combinations

from splitarc.core import Arc, DirectedMultigraph, SplitDigraph, validate_split


def path(g: DirectedMultigraph, *vs: int) -> tuple[Arc, ...]:
    """The path through ``vs`` using the lowest-keyed arc at each step."""
    return tuple(g.arcs_between(a, b)[0] for a, b in zip(vs, vs[1:]))


def pairs_of(arcs) -> list[tuple[int, int]]:
    return sorted((a.tail, a.head) for a in arcs)


def two_cycle_lift() -> SplitDigraph:
    """V2 = s1..s4 (ids 0..3), V1 = t (4), t' (5); both V1 vertices form 2-cycles with s1, s2, s3."""
    s1, s2, s3, s4, t, tp = range(6)
    pairs = [(s1, s2), (s3, s2), (s3, s4), (s4, s3), (s2, s4), (s3, s1), (s4, s1)]
    for x in (t, tp):
        for s in (s1, s2, s3):
            pairs += [(x, s), (s, x)]
    g = DirectedMultigraph.from_pairs(pairs, range(6))
    return validate_split(g, {t, tp}, {s1, s2, s3, s4})


def transitive_with_paths() -> SplitDigraph:
    """Transitive tournament v1..v5 (ids 0..4, i -> j for i < j) with V1 = u (5), v (6), w (7)."""
    v1, v2, v3, v4, v5 = range(5)
    u, v, w = 5, 6, 7
    pairs = list(combinations(range(5), 2))
    pairs += [(v5, w), (v4, w), (w, v3), (w, v2), (v5, v), (v, v1), (v3, u), (u, v1)]
    g = DirectedMultigraph.from_pairs(pairs, range(8))
    return validate_split(g, {u, v, w}, set(range(5)))


def terminal_cut_arc() -> SplitDigraph:
    """x y z b = 0..3 with terminal 3-cycle x y z; V1 = u (4), v (5), t' (6)."""
    x, y, z, b, u, v, tp = range(7)
    pairs = [
        (x, y), (y, z), (z, x), (x, z), (b, y), (b, z), (b, x),
        (y, u), (u, b), (y, v), (v, b), (z, tp), (tp, y), (tp, x),
    ]
    g = DirectedMultigraph.from_pairs(pairs, range(7))
    return validate_split(g, {u, v, tp}, {x, y, z, b})


LAYER_V, LAYER_W, LAYER_U = (0, 1, 2), (3, 4, 5), (6, 7, 8)
LAYER_T, LAYER_TP = 9, 10


def layered_cycles() -> SplitDigraph:
    """Three 3-cycles stacked top (v) to bottom (u), all cross arcs pointing down.

    t (9) enters from every u_i and leaves to u1, w2, w3; t' (10) enters
    from every w_i and leaves to every v_i.
    """
    pairs = []
    for layer in (LAYER_V, LAYER_W, LAYER_U):
        pairs += [(layer[0], layer[1]), (layer[1], layer[2]), (layer[2], layer[0])]
    for top, bottom in ((LAYER_V, LAYER_W), (LAYER_V, LAYER_U), (LAYER_W, LAYER_U)):
        pairs += [(a, b) for a in top for b in bottom]
    t, tp = LAYER_T, LAYER_TP
    pairs += [(s, t) for s in LAYER_U] + [(t, LAYER_U[0]), (t, LAYER_W[1]), (t, LAYER_W[2])]
    pairs += [(s, tp) for s in LAYER_W] + [(tp, s) for s in LAYER_V]
    g = DirectedMultigraph.from_pairs(pairs, range(11))
    return validate_split(g, {t, tp}, set(range(9)))


def five_block_semicomplete() -> DirectedMultigraph:
    """Tournament with blocks {0} {1} {2,3,4} {5} {6} and backward arcs 6->5, 5->1, 2->0."""
    blocks = [[0], [1], [2, 3, 4], [5], [6]]
    ind = {v: i for i, block in enumerate(blocks) for v in block}
    backward = {(6, 5), (5, 1), (2, 0)}
    pairs = [(2, 3), (3, 4), (4, 2)]
    for a, b in combinations(range(7), 2):
        if ind[a] == ind[b]:
            continue
        pairs.append((b, a) if (b, a) in backward else (a, b))
    return DirectedMultigraph.from_pairs(pairs, range(7))


def four_tournament() -> DirectedMultigraph:
    """a b c d = 0..3 with a->b, b->c, c->d, a->c, b->d, d->a."""
    return DirectedMultigraph.from_pairs([(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (3, 0)], range(4))
