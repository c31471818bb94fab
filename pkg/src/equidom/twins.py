"""Twin partition and quotient graph."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, iter_bits, lowest, members

SINGLETON = "singleton"
CLIQUE_CLASS = "clique_class"
STABLE_CLASS = "stable_class"


@dataclass(frozen=True)
class TwinClass:
    members: int  # bitmask
    kind: str

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def first(self) -> int:
        return lowest(self.members)

    def vertices(self) -> list[int]:
        return members(self.members)


def twin_partition(G: Graph) -> list[TwinClass]:
    """Maximal twin classes, ordered by smallest member.

    True twins share N[v], false twins share N(v); a vertex cannot have both
    kinds, so grouping by closed neighborhoods first is unambiguous.
    """
    by_closed: dict[int, int] = {}
    for v in range(G.n):
        key = G.adj[v] | (1 << v)
        by_closed[key] = by_closed.get(key, 0) | (1 << v)
    assigned = 0
    classes = []
    for group in by_closed.values():
        if group.bit_count() > 1:
            classes.append(TwinClass(group, CLIQUE_CLASS))
            assigned |= group
    by_open: dict[int, int] = {}
    for v in range(G.n):
        if assigned >> v & 1:
            continue
        by_open[G.adj[v]] = by_open.get(G.adj[v], 0) | (1 << v)
    for group in by_open.values():
        kind = STABLE_CLASS if group.bit_count() > 1 else SINGLETON
        classes.append(TwinClass(group, kind))
    classes.sort(key=lambda c: c.first)
    return classes


def class_index(G: Graph, classes: list) -> list[int]:
    """Map each vertex to the position of its class in ``classes``."""
    where = [-1] * G.n
    for i, c in enumerate(classes):
        for v in iter_bits(c.members):
            where[v] = i
    return where


def quotient_graph(G: Graph, P: list[TwinClass] | None = None) -> Graph:
    if P is None:
        P = twin_partition(G)
    reps = [c.first for c in P]
    adj = [0] * len(P)
    for i, ri in enumerate(reps):
        for j, rj in enumerate(reps):
            if i != j and G.has_edge(ri, rj):
                adj[i] |= 1 << j
    return Graph(len(P), adj)


def sees(G: Graph, A: int, B: int) -> bool:
    """Whether some vertex of ``A`` is adjacent to some vertex of ``B``."""
    return any(G.adj[v] & B for v in iter_bits(A))
