"""The two families of 2-strong split digraphs without a good (u, v)-pair.

For each family and |W| = 1..3 the script checks vertex 2-strongness,
searches exhaustively for a good (u, v)-pair and for a strong arc
decomposition, and shows that the reversed roots (v, u) do have a pair.

Run: python demos/counterexamples.py
"""

from __future__ import annotations

from splitarc.certify import verify_pair
from splitarc.testkit import (
    gen_counterexample,
    is_vertex_two_strong,
    oracle_good_pair,
    oracle_sad,
    transitive_tournament,
)


def main() -> None:
    for family in ("D1", "D2"):
        for k in (1, 2, 3):
            ce = gen_counterexample(family, transitive_tournament(k))
            g = ce.split.graph
            pair = oracle_good_pair(g, ce.u, ce.v, bound=g.m)
            back = oracle_good_pair(g, ce.v, ce.u, bound=g.m)
            print(
                f"{family} |W|={k}: {g.n} vertices, {g.m} arcs, "
                f"2-strong={is_vertex_two_strong(g)}, "
                f"good (u,v)-pair={'yes' if pair else 'no'}, "
                f"good (v,u)-pair={'yes' if back and verify_pair(g, ce.v, back[0], ce.u, back[1]) else 'no'}"
            )
            if k == 1:
                # the decomposition search is the slow part; the smallest member suffices here
                print(f"    strong arc decomposition: {'yes' if oracle_sad(g, bound=g.m) else 'no'}")


if __name__ == "__main__":
    main()
