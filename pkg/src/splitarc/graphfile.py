"""Plain-text graph files.

A file lists the two vertex classes and then the arcs, one per line::

    # a comment
    v1: t
    v2: a b c
    arcs:
    a b
    b c
    ...

Vertex names are arbitrary whitespace-free tokens. V2 names get ids
``0..|V2|-1`` in listed order and V1 names follow, so a parsed file keeps
its names for output. Repeating an arc line gives a parallel copy; the
split-digraph checks reject those, semicomplete mode accepts them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DirectedMultigraph, GraphError, SplitDigraph, validate_split


class GraphFileError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GraphFile:
    graph: DirectedMultigraph
    v1: frozenset[int]
    v2: frozenset[int]
    names: dict[int, str]

    def ids(self) -> dict[str, int]:
        return {name: i for i, name in self.names.items()}

    def split(self, *, allow_empty_v1: bool = False) -> SplitDigraph:
        return validate_split(self.graph, self.v1, self.v2, allow_empty_v1=allow_empty_v1)

    def name(self, v: int) -> str:
        return self.names[v]


def parse_graph(text: str) -> GraphFile:
    """Parse the text format; errors carry the offending line number."""
    parts: dict[str, list[str]] = {}
    arc_lines: list[tuple[int, str, str]] = []
    in_arcs = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        key = head.strip().lower()
        if sep and key in ("v1", "v2", "arcs"):
            if key == "arcs":
                if rest.strip():
                    raise GraphFileError(lineno, "'arcs:' takes no values on its own line")
                if in_arcs:
                    raise GraphFileError(lineno, "second 'arcs:' section")
                in_arcs = True
                continue
            if in_arcs:
                raise GraphFileError(lineno, f"'{key}:' after the arcs section")
            if key in parts:
                raise GraphFileError(lineno, f"'{key}:' given twice")
            parts[key] = rest.split()
            continue
        if not in_arcs:
            raise GraphFileError(lineno, "expected 'v1:', 'v2:' or 'arcs:'")
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFileError(lineno, f"an arc line needs two names, got {len(tokens)}")
        arc_lines.append((lineno, tokens[0], tokens[1]))
    for key in ("v1", "v2"):
        if key not in parts:
            raise GraphFileError(0, f"missing '{key}:' line")
    if not in_arcs:
        raise GraphFileError(0, "missing 'arcs:' section")

    ids: dict[str, int] = {}
    for name in parts["v2"] + parts["v1"]:
        if name in ids:
            raise GraphFileError(0, f"vertex {name!r} listed twice")
        ids[name] = len(ids)
    pairs = []
    for lineno, t, h in arc_lines:
        for name in (t, h):
            if name not in ids:
                raise GraphFileError(lineno, f"unknown vertex {name!r}")
        if t == h:
            raise GraphFileError(lineno, f"loop at {t!r}")
        pairs.append((ids[t], ids[h]))
    graph = DirectedMultigraph.from_pairs(pairs, range(len(ids)))
    return GraphFile(
        graph,
        frozenset(ids[n] for n in parts["v1"]),
        frozenset(ids[n] for n in parts["v2"]),
        {i: n for n, i in ids.items()},
    )


def format_graph(
    graph: DirectedMultigraph,
    v1,
    v2,
    names: dict[int, str] | None = None,
) -> str:
    """Canonical text: V2 ids in increasing order then V1 ids, arcs sorted by id.

    Formatting a parsed canonical file reproduces it byte for byte.
    """
    name = (lambda v: names[v]) if names is not None else str
    v2_order = sorted(v2)
    v1_order = sorted(v1)
    lines = [
        "v1: " + " ".join(name(v) for v in v1_order),
        "v2: " + " ".join(name(v) for v in v2_order),
        "arcs:",
    ]
    lines += [f"{name(a.tail)} {name(a.head)}" for a in graph.arcs]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def relabel_canonical(
    graph: DirectedMultigraph, v1, v2, names: dict[int, str] | None = None
) -> tuple[DirectedMultigraph, frozenset[int], frozenset[int], dict[int, str]]:
    """Renumber so that V2 comes first, as the parser numbers vertices."""
    order = sorted(v2) + sorted(v1)
    mapping = {old: new for new, old in enumerate(order)}
    new_names = {mapping[v]: (names[v] if names else str(v)) for v in order}
    return (
        graph.relabeled(mapping),
        frozenset(mapping[v] for v in v1),
        frozenset(mapping[v] for v in v2),
        new_names,
    )
