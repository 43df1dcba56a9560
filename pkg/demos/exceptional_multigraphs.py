"""Enumerate small semicomplete multigraphs and list those without a decomposition.

The four catalog members show up as expected, together with four further
multigraphs: S4 with two added parallel arcs that share a tail or a head.

Run: python demos/exceptional_multigraphs.py
"""

from __future__ import annotations

from collections import Counter

from splitarc.core import is_k_arc_strong
from splitarc.semicomplete import ExceptionId, SearchExhausted, decompose_semicomplete
from splitarc.testkit import oracle_sad, semicomplete_multigraphs


def describe(g) -> str:
    return " ".join(
        f"{t}{h}x{c}" if c > 1 else f"{t}{h}" for (t, h), c in sorted(g.pair_counts().items())
    )


def main() -> None:
    tally: Counter[str] = Counter()
    for g in semicomplete_multigraphs(4, 10):
        if not is_k_arc_strong(g, 2):
            continue
        try:
            res = decompose_semicomplete(g)
        except SearchExhausted:
            tally["outside the catalog"] += 1
            print(f"no decomposition, no catalog match: {describe(g)}  (oracle: {oracle_sad(g)})")
            continue
        if isinstance(res, ExceptionId):
            tally[res.which] += 1
            print(f"catalog member {res.which}: {describe(g)}")
        else:
            tally["decomposed"] += 1
    print(dict(tally))


if __name__ == "__main__":
    main()
