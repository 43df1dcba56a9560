"""Follow one split digraph through the decomposition pipeline.

Run: python demos/decompose_walkthrough.py [seed]
"""

from __future__ import annotations

import sys

from splitarc.certify import verify_decomposition
from splitarc.cli import stress_spec
from splitarc.core import is_k_arc_strong
from splitarc.split_sad import decompose_split_traced, select_xy
from splitarc.testkit import gen_random


def main(seed: int) -> None:
    d = gen_random(stress_spec(seed))
    g = d.graph
    print(f"seed {seed}: |V1| = {len(d.v1)}, |V2| = {len(d.v2)}, {g.m} arcs")
    print(f"semicomplete part 2-arc-strong: {is_k_arc_strong(d.v2_graph, 2)}")
    if not is_k_arc_strong(d.v2_graph, 2):
        xy = select_xy(d)
        print(f"X (sink end) = {sorted(xy.x)}, Y (source end) = {sorted(xy.y)}")

    sad, trace = decompose_split_traced(d)
    print(f"route: {trace.route}")
    if trace.moves:
        print(f"exchange moves: {', '.join(trace.moves)}")
    if trace.repairs:
        print(f"cut-arc repairs: {trace.repairs}")
    for i, p in enumerate(trace.paths):
        kind = "(X,Y)-path" if i < 2 else "extra path"
        print(f"  {kind}: {' -> '.join(map(str, p))}")
    if trace.exception:
        print(f"split-off part matched the exceptional multigraph {trace.exception}")

    verdict = verify_decomposition(g, sad.a1, sad.a2)
    print(f"A1 has {len(sad.a1)} arcs, A2 has {len(sad.a2)} arcs, verified: {verdict.ok}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 162)
