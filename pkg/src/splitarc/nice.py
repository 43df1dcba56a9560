"""Nice decompositions of strong semicomplete digraphs.

A nice decomposition orders the vertex set into blocks ``U_1..U_l`` that
each induce a strong digraph, such that the backward arcs (tail in a later
block than head) are exactly the cut arcs. For semicomplete digraphs on at
least four vertices it exists and is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    Arc,
    DirectedMultigraph,
    GraphError,
    InternalInvariantError,
    NotStrong,
    cut_arcs,
    is_strong,
    strong_components,
)


class TooSmall(GraphError):
    pass


class NotSemicomplete(GraphError):
    pass


class VerificationFailed(InternalInvariantError):
    pass


@dataclass(frozen=True)
class NiceDecomposition:
    blocks: tuple[frozenset[int], ...]
    ind: Mapping[int, int]
    # natural ordering: strictly decreasing tail index
    backward_arcs: tuple[Arc, ...]

    @property
    def l(self) -> int:
        return len(self.blocks)


def terminal_block(nd: NiceDecomposition) -> frozenset[int]:
    return nd.blocks[-1]


def initial_block(nd: NiceDecomposition) -> frozenset[int]:
    return nd.blocks[0]


def nice_decompose(s: DirectedMultigraph) -> NiceDecomposition:
    """Compute and verify the nice decomposition of ``s``.

    Block indices in ``ind`` are 0-based.
    """
    if s.n < 4:
        raise TooSmall(f"need at least 4 vertices, got {s.n}")
    if not s.is_semicomplete():
        raise NotSemicomplete("input is not semicomplete")
    if not s.is_simple():
        raise GraphError("input must be a digraph without parallel arcs")
    if not is_strong(s):
        raise NotStrong("input is not strong")

    cuts = cut_arcs(s)
    comps = strong_components(s.without_arcs(cuts))
    member = comps.membership
    k = comps.k

    # precedence between blocks: ordinary arcs point forward, cut arcs backward
    after: dict[int, set[int]] = {i: set() for i in range(k)}
    for a in s.arcs:
        i, j = member[a.tail], member[a.head]
        if i == j:
            continue
        if a in cuts:
            after[j].add(i)
        else:
            after[i].add(j)
    indeg = {i: 0 for i in range(k)}
    for i in after:
        for j in after[i]:
            indeg[j] += 1
    ready = [i for i in range(k) if indeg[i] == 0]
    order: list[int] = []
    while ready:
        if len(ready) > 1:
            raise VerificationFailed("block order is not unique")
        i = ready.pop()
        order.append(i)
        for j in sorted(after[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) != k:
        raise VerificationFailed("block precedence constraints are cyclic")

    blocks = tuple(comps.components[i] for i in order)
    ind = {v: b for b, block in enumerate(blocks) for v in block}
    backward = tuple(sorted(cuts, key=lambda a: (-ind[a.tail], ind[a.head], a)))
    nd = NiceDecomposition(blocks, ind, backward)
    verify_nice(s, nd, cuts)
    return nd


def prop_chain_holds(nd: NiceDecomposition) -> bool:
    """The index inequalities satisfied by the natural ordering of backward arcs."""
    ind = nd.ind
    xs = [ind[a.tail] for a in nd.backward_arcs]
    ys = [ind[a.head] for a in nd.backward_arcs]
    r = len(xs)
    if r == 0:
        return True
    if xs[0] != nd.l - 1 or ys[-1] != 0:
        return False
    for j in range(r - 1):
        if not (ys[j + 1] < ys[j] <= xs[j + 1] < xs[j]):
            return False
    for j in range(r - 2):
        if not (ys[j + 1] <= xs[j + 2] < ys[j]):
            return False
    return True


def verify_nice(
    s: DirectedMultigraph, nd: NiceDecomposition, cuts: frozenset[Arc] | None = None
) -> None:
    if cuts is None:
        cuts = cut_arcs(s)
    for block in nd.blocks:
        if not is_strong(s.induced(block)):
            raise VerificationFailed(f"block {sorted(block)} is not strong")
    backward = {a for a in s.arcs if nd.ind[a.tail] > nd.ind[a.head]}
    if backward != set(cuts):
        raise VerificationFailed("backward arcs differ from cut arcs")
    tails = [nd.ind[a.tail] for a in nd.backward_arcs]
    if any(tails[i] <= tails[i + 1] for i in range(len(tails) - 1)):
        raise VerificationFailed("backward arcs are not in natural order")
    if not prop_chain_holds(nd):
        raise VerificationFailed("index inequality chain violated")
