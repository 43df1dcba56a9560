"""Good pairs with both roots at one vertex of a semicomplete split digraph.

Run: python demos/same_root_pairs.py [seed]
"""

from __future__ import annotations

import sys

from splitarc.branchings import good_uu_pair, verify_good_pair
from splitarc.testkit import gen_semicomplete_split


def main(seed: int) -> None:
    d = gen_semicomplete_split(2, 5, seed)
    g = d.graph
    print(f"V2 = {sorted(d.v2)}, V1 = {sorted(d.v1)}, {g.m} arcs")
    for u in g.vertices:
        s = d.v2 | {u}
        outs = set(g.out_neighbors(u)) & s
        ins = set(g.in_neighbors(u)) & s
        gp = good_uu_pair(g, s, u)
        parents = " ".join(f"{c}<-{p}" for c, p in sorted(gp.out.parents().items()))
        print(
            f"root {u}: out-only {sorted(outs - ins)}, in-only {sorted(ins - outs)}, "
            f"both {sorted(outs & ins)} | out-tree {parents} | verified {verify_good_pair(gp, g).ok}"
        )


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
