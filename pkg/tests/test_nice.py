from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from figures import five_block_semicomplete, four_tournament
from oracles import all_tournaments, nice_oracle, nx_strong, strong_not_2_strong
from splitarc.core import DirectedMultigraph, GraphError, NotStrong
from splitarc.nice import (
    NotSemicomplete,
    TooSmall,
    initial_block,
    nice_decompose,
    prop_chain_holds,
    terminal_block,
)


def test_four_tournament_frozen_values():
    # oracle-derived: a=0 b=1 c=2 d=3
    nd = nice_decompose(four_tournament())
    assert nd.blocks == (frozenset({1}), frozenset({0}), frozenset({3}), frozenset({2}))
    assert [(a.tail, a.head) for a in nd.backward_arcs] == [(2, 3), (3, 0), (0, 1)]
    assert terminal_block(nd) == {2} and initial_block(nd) == {1}
    assert prop_chain_holds(nd)
    assert nice_oracle(four_tournament()) == [nd.blocks]


def test_five_blocks_with_a_cycle_block():
    nd = nice_decompose(five_block_semicomplete())
    assert nd.blocks == tuple(frozenset(b) for b in ([0], [1], [2, 3, 4], [5], [6]))
    assert [(a.tail, a.head) for a in nd.backward_arcs] == [(6, 5), (5, 1), (2, 0)]
    ind = nd.ind
    xs = [ind[a.tail] for a in nd.backward_arcs]
    ys = [ind[a.head] for a in nd.backward_arcs]
    # the head of the first backward arc is the tail block of the second
    assert ys[0] == xs[1]
    assert prop_chain_holds(nd)


def test_two_arc_strong_input_is_one_block():
    pairs = [(i, j) for i in range(4) for j in range(4) if i != j]
    nd = nice_decompose(DirectedMultigraph.from_pairs(pairs, range(4)))
    assert nd.l == 1 and nd.backward_arcs == ()


@pytest.mark.parametrize(
    "pairs, error",
    [
        ([(0, 1), (1, 2), (2, 0)], TooSmall),
        ([(0, 1), (1, 2), (2, 3), (3, 0)], NotSemicomplete),
        ([(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)], NotStrong),
        ([(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)], GraphError),
    ],
)
def test_rejected_inputs(pairs, error):
    with pytest.raises(error):
        nice_decompose(DirectedMultigraph.from_pairs(pairs))


@given(st.integers(4, 7), st.integers(0, 10**6))
def test_matches_axiom_search(n, seed):
    g = strong_not_2_strong(random.Random(seed), n)
    if g is None:
        return
    nd = nice_decompose(g)
    assert nice_oracle(g) == [nd.blocks]
    assert prop_chain_holds(nd)
    for block in nd.blocks:
        assert nx_strong(g.induced(block))


def test_all_strong_four_tournaments():
    seen = 0
    for g in all_tournaments(4):
        if nx_strong(g):
            seen += 1
            nd = nice_decompose(g)
            assert nice_oracle(g) == [nd.blocks] and prop_chain_holds(nd)
    assert seen == 24
