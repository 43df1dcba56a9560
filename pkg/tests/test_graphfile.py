from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitarc.core import ParallelArc
from splitarc.graphfile import GraphFileError, format_graph, parse_graph, relabel_canonical
from splitarc.testkit import GenSpec, gen_random

TEXT = """\
# a 3-cycle with a hub
v1: t
v2: a b c
arcs:
a b
b c
c a
t a   # trailing comment
a t
t b
b t
t c
c t
"""


def test_parse_assigns_v2_ids_first():
    gf = parse_graph(TEXT)
    assert gf.ids() == {"a": 0, "b": 1, "c": 2, "t": 3}
    assert gf.v1 == {3} and gf.v2 == {0, 1, 2}
    assert gf.graph.m == 9 and gf.name(3) == "t"
    gf.split()


def test_format_is_canonical_and_round_trips():
    gf = parse_graph(TEXT)
    text = format_graph(gf.graph, gf.v1, gf.v2, gf.names)
    assert text.startswith("v1: t\nv2: a b c\narcs:\na b\na t\n")
    again = parse_graph(text)
    assert format_graph(again.graph, again.v1, again.v2, again.names) == text


def test_repeated_lines_are_parallel_copies():
    gf = parse_graph("v1:\nv2: a b\narcs:\na b\na b\nb a\n")
    assert gf.graph.m == 3 and not gf.graph.is_simple()
    with pytest.raises(ParallelArc):
        gf.split(allow_empty_v1=True)


@pytest.mark.parametrize(
    "text, line",
    [
        ("v1: t\nv2: a\narcs:\na\n", 4),
        ("v1: t\nv2: a\narcs:\na x\n", 4),
        ("v1: t\nv2: a\narcs:\na a\n", 4),
        ("v1: t\nv2: a\nnonsense\n", 3),
        ("v1: t\nv2: a\narcs:\narcs:\n", 4),
        ("v1: t\narcs:\n", 0),
        ("v1: t\nv2: a\n", 0),
        ("v1: t\nv2: t\narcs:\n", 0),
        ("v1: t\nv1: s\nv2: a\narcs:\n", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFileError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


@given(st.integers(0, 10**6))
def test_generated_instances_round_trip(seed):
    d = gen_random(GenSpec(n1=2, n2=4, seed=seed))
    graph, v1, v2, names = relabel_canonical(d.graph, d.v1, d.v2)
    text = format_graph(graph, v1, v2, names)
    gf = parse_graph(text)
    assert gf.graph == graph and gf.v1 == v1 and gf.v2 == v2
    assert format_graph(gf.graph, gf.v1, gf.v2, gf.names) == text
