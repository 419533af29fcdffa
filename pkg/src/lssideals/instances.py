"""Built-in example instances whose edge ideals are complete intersections but not radical.

Each instance carries the graph, the relevant number of coordinate columns d,
and the row set of the d x d minor of the variable matrix that witnesses
non-radicality.  The third example is bipartite (left part 1..5, right part
6..9); its witness is a minor of the left factor, which coincides with rows
of the stacked variable matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph


@dataclass(frozen=True)
class NonradicalInstance:
    name: str
    graph: Graph
    d: int
    witness_rows: tuple[int, ...]


NONRADICAL_INSTANCES: dict[str, NonradicalInstance] = {
    "nrad1": NonradicalInstance(
        "nrad1",
        Graph.of(6, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 6), (3, 5), (4, 6)]),
        3,
        (1, 5, 6),
    ),
    "nrad2": NonradicalInstance(
        "nrad2",
        Graph.of(
            7,
            [(1, 2), (1, 4), (1, 5), (2, 3), (2, 7), (3, 4), (3, 7), (4, 5), (5, 6), (6, 7)],
        ),
        3,
        (1, 2, 4),
    ),
    "nrad3": NonradicalInstance(
        "nrad3",
        Graph.of(
            9,
            [
                (1, 6), (1, 7), (1, 8), (1, 9),
                (2, 6), (2, 7),
                (3, 7), (3, 8),
                (4, 8), (4, 9),
                (5, 6), (5, 9),
            ],
        ),
        3,
        (1, 2, 4),
    ),
}
