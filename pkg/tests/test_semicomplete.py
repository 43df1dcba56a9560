from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from figures import pairs_of, path, two_cycle_lift
from oracles import nx_strong
from splitarc.certify import verify_decomposition
from splitarc.core import DirectedMultigraph, PreconditionViolated, is_k_arc_strong
from splitarc.semicomplete import (
    CATALOG_NAMES,
    DegreeHypothesisFails,
    ExceptionId,
    SearchExhausted,
    StrongArcDecomposition,
    complete_on,
    decompose_semicomplete,
    exception_catalog,
    extend_by_covered_vertices,
    lift_and_patch,
    match_exception,
    search_decomposition,
)
from splitarc.splitting import split_off_paths
from splitarc.testkit import oracle_sad

S4 = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)]
# S4 plus two parallel copies sharing a tail or a head: no decomposition, yet outside the catalog
NON_CATALOG_EXTRAS = [[(1, 2), (1, 2)], [(1, 2), (1, 3)], [(1, 3), (2, 3)], [(1, 3), (1, 3)]]


@st.composite
def semicomplete_multigraphs(draw, min_n: int = 4, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    pairs = []
    for i, j in combinations(range(n), 2):
        fwd, back = draw(st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2)]))
        pairs += [(i, j)] * fwd + [(j, i)] * back
    perm = draw(st.permutations(range(n)))
    return DirectedMultigraph.from_pairs([(perm[a], perm[b]) for a, b in pairs], range(n))


# -- catalog -----------------------------------------------------------------------------


def test_catalog_as_drawn():
    cat = exception_catalog()
    assert tuple(cat) == CATALOG_NAMES
    extras = {"S4": [], "S4_1": [(2, 0)], "S4_2": [(0, 1)], "S4_3": [(1, 3), (2, 0)]}
    for name, g in cat.items():
        assert pairs_of(g.arcs) == sorted(S4 + extras[name])
        assert is_k_arc_strong(g, 2)
        assert oracle_sad(g) is None


@given(st.sampled_from(CATALOG_NAMES), st.permutations(range(4)))
def test_match_exception_recovers_the_isomorphism(name, perm):
    g = exception_catalog()[name].relabeled(dict(enumerate(perm)))
    found = match_exception(g)
    assert found is not None and found.which == name
    mapped = DirectedMultigraph.from_pairs(
        [(found.iso[a.tail], found.iso[a.head]) for a in g.arcs], range(4)
    )
    assert pairs_of(mapped.arcs) == pairs_of(exception_catalog()[name].arcs)
    assert found.inverse()[found.iso[perm[0]]] == perm[0]


def test_decompose_returns_the_exception_id():
    res = decompose_semicomplete(exception_catalog()["S4_3"])
    assert isinstance(res, ExceptionId) and res.which == "S4_3"


def test_match_exception_up_to_rotation_and_size():
    # any extra copy of a 4-cycle arc is S4_2 after rotating the labels
    assert match_exception(DirectedMultigraph.from_pairs(S4 + [(3, 0)], range(4))).which == "S4_2"
    assert match_exception(DirectedMultigraph.from_pairs(S4 + [(1, 2), (1, 2)], range(4))) is None
    assert match_exception(DirectedMultigraph.from_pairs([(0, 1), (1, 0)])) is None


@pytest.mark.parametrize("extra", NON_CATALOG_EXTRAS)
def test_non_catalog_multigraphs_without_decomposition(extra):
    g = DirectedMultigraph.from_pairs(S4 + extra, range(4))
    assert is_k_arc_strong(g, 2) and match_exception(g) is None
    assert search_decomposition(g) is None
    assert oracle_sad(g) is None
    with pytest.raises(SearchExhausted):
        decompose_semicomplete(g)


# -- decomposition vs. oracle ------------------------------------------------------------


@given(semicomplete_multigraphs())
def test_decompose_agrees_with_oracle(g):
    if not is_k_arc_strong(g, 2) or g.m > 18:
        return
    expected = oracle_sad(g)
    try:
        res = decompose_semicomplete(g)
    except SearchExhausted:
        assert expected is None
        return
    if isinstance(res, ExceptionId):
        assert expected is None
        return
    assert expected is not None
    assert verify_decomposition(g, res.a1, res.a2)


@pytest.mark.parametrize(
    "pairs",
    [
        [(0, 1), (1, 2), (2, 0)],
        [(0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (2, 1), (3, 2), (0, 3)],
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
    ],
)
def test_decompose_preconditions(pairs):
    with pytest.raises(PreconditionViolated):
        decompose_semicomplete(DirectedMultigraph.from_pairs(pairs))


def test_search_is_pluggable():
    g = DirectedMultigraph.from_pairs(
        [(i, j) for i in range(4) for j in range(4) if i != j], range(4)
    )
    calls = []

    def spy(h):
        calls.append(h)
        return search_decomposition(h)

    sad = decompose_semicomplete(g, search=spy)
    assert calls == [g] and isinstance(sad, StrongArcDecomposition)


# -- growing a decomposition -----------------------------------------------------------------


def complete_graph(n: int) -> DirectedMultigraph:
    return DirectedMultigraph.from_pairs([(i, j) for i in range(n) for j in range(n) if i != j], range(n))


def test_extend_by_covered_vertices_attaches_outside_vertices():
    core = complete_graph(4)
    sad = decompose_semicomplete(core)
    pairs = [(a.tail, a.head) for a in core.arcs] + [(4, 0), (4, 1), (2, 4), (3, 4)]
    d = DirectedMultigraph.from_pairs(pairs, range(5))
    sad = StrongArcDecomposition(sad.a1, sad.a2, d.induced(range(4)))
    ext = extend_by_covered_vertices(d, range(4), sad)
    assert verify_decomposition(d, ext.a1, ext.a2)
    assert sad.a1 <= ext.a1 and sad.a2 <= ext.a2


def test_extend_needs_two_neighbours_each_way():
    core = complete_graph(4)
    d = DirectedMultigraph.from_pairs(
        [(a.tail, a.head) for a in core.arcs] + [(4, 0), (4, 1), (2, 4)], range(5)
    )
    sad = decompose_semicomplete(d.induced(range(4)))
    with pytest.raises(DegreeHypothesisFails) as info:
        extend_by_covered_vertices(d, range(4), sad)
    assert info.value.vertex == 4


def test_lift_and_patch_gives_the_missing_class_a_pair():
    d = two_cycle_lift()
    g = d.graph
    s1, s2, s3, s4, t, tp = range(6)
    sr = split_off_paths(d, [path(g, s1, t, s2), path(g, s2, t, s3)])
    h = sr.v2_graph
    assert is_k_arc_strong(h, 2)

    def arc(u, v, split=False):
        return next(a for a in h.arcs_between(u, v) if a.is_splitting == split)

    a1 = {arc(s4, s1), arc(s1, s2, True), arc(s2, s3, True), arc(s3, s4)}
    a2 = {arc(s1, s2), arc(s4, s3), arc(s2, s4), arc(s3, s1)}
    sad = complete_on(h, h.vertex_set, a1, a2)
    # s3->s2 lies in neither class and joins the first
    assert (s3, s2) in pairs_of(sad.a1)
    res = lift_and_patch(d, sr, sad)
    assert verify_decomposition(g, res.a1, res.a2)
    # after lifting, t only sees the first class; the patch gives the second s3->t and t->s1
    t_second = pairs_of(a for a in res.a2 if t in (a.tail, a.head))
    assert t_second == [(s3, t), (t, s1)]
    assert nx_strong(g, res.a1) and nx_strong(g, res.a2)
