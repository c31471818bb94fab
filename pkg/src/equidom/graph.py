"""Simple undirected graphs on vertices ``0..n-1`` with bitmask adjacency.

Vertex sets are plain Python ints used as bitmasks: bit ``v`` is set iff
vertex ``v`` is a member. ``mask`` and ``members`` convert between masks and
iterables.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed graph text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(m: int) -> Iterator[int]:
    """Yield the set bits of ``m`` in ascending order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def members(m: int) -> list[int]:
    return list(iter_bits(m))


def lowest(m: int) -> int:
    return (m & -m).bit_length() - 1


class Graph:
    """Immutable simple graph. ``adj[v]`` is the open neighborhood of ``v``."""

    __slots__ = ("n", "adj", "full")

    def __init__(self, n: int, adj: Iterable[int]):
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        full = (1 << n) - 1
        for v, nb in enumerate(adj):
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbor out of range")
            for u in iter_bits(nb):
                if not adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {u},{v}")
        self.n = n
        self.adj = adj
        self.full = full

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u},{v} out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def edgeless(cls, n: int) -> Graph:
        return cls(n, [0] * n)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending order."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def complement(self) -> Graph:
        return Graph(self.n, [self.full ^ nb ^ (1 << v) for v, nb in enumerate(self.adj)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def closed_neighborhood(G: Graph, v: int) -> int:
    return G.closed(v)


def closed_neighborhood_of_set(G: Graph, S: int) -> int:
    out = S
    for v in iter_bits(S):
        out |= G.adj[v]
    return out


def private_neighbors(G: Graph, v: int, S: int) -> int:
    """``pn[v,S] = N[v] \\ N[S - v]``."""
    if not S >> v & 1:
        raise ValueError(f"vertex {v} is not a member of S")
    return G.closed(v) & ~closed_neighborhood_of_set(G, S & ~(1 << v))


def is_dominating(G: Graph, D: int) -> bool:
    need = G.full & ~D
    for v in iter_bits(D):
        need &= ~G.adj[v]
        if not need:
            return True
    return not need


def is_mds(G: Graph, D: int) -> bool:
    if not is_dominating(G, D):
        return False
    # a private neighbor of v is a vertex of N[v] dominated exactly once
    once = 0
    twice = 0
    for v in iter_bits(D):
        nv = G.adj[v] | (1 << v)
        twice |= once & nv
        once |= nv
    exactly_once = once & ~twice
    return all(G.closed(v) & exactly_once for v in iter_bits(D))


def induced_subgraph(G: Graph, W: int) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``W`` relabeled order-preservingly; returns the map old->new."""
    if not W:
        raise ValueError("induced subgraph needs a non-empty vertex set")
    keep = members(W)
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        nb = 0
        for u in iter_bits(G.adj[v] & W):
            nb |= 1 << index[u]
        adj.append(nb)
    return Graph(len(keep), adj), index


def adjacency_lists(G: Graph) -> list[list[int]]:
    """Sorted neighbor lists of all vertices.

    All masks are laid out as one matrix of 64-bit words and scanned by numpy, which
    beats bit-by-bit extraction once ``n`` reaches the thousands.
    """
    if G.n == 0:
        return []
    words = (G.n + 63) // 64
    raw = b"".join(a.to_bytes(8 * words, "little") for a in G.adj)
    rows = np.frombuffer(raw, dtype="<u8").reshape(G.n, words)
    r, c = np.nonzero(rows)
    chunks = rows[r, c].astype("<u8").view(np.uint8).reshape(-1, 8)
    bits = np.unpackbits(chunks, axis=1, bitorder="little")
    rr, bb = np.nonzero(bits)
    vs = r[rr]
    us = c[rr] * 64 + bb
    out: list[list[int]] = [[] for _ in range(G.n)]
    bounds = np.searchsorted(vs, np.arange(G.n + 1))
    flat = us.tolist()
    for v in range(G.n):
        out[v] = flat[bounds[v]:bounds[v + 1]]
    return out


def connected_components(G: Graph, W: int | None = None) -> list[int]:
    """Components of ``G[W]`` as masks, ordered by smallest member."""
    rest = G.full if W is None else W
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= G.adj[v]
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


# -- text format ------------------------------------------------------------

def parse_graph(text: str | bytes) -> Graph:
    """Parse the 1-based ``p n m`` / ``e u v`` format. Duplicate edges collapse."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    declared_m = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c "):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            nums = parts[1:]
            # tolerate "p edge n m" as in classic DIMACS
            if nums and not nums[0].lstrip("-").isdigit():
                nums = nums[1:]
            if len(nums) != 2:
                raise GraphFormatError("header must be 'p <n> <m>'", lineno)
            try:
                n, declared_m = int(nums[0]), int(nums[1])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n <= 0:
                raise GraphFormatError("graph must have at least one vertex", lineno)
            if declared_m < 0:
                raise GraphFormatError("negative edge count", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer vertex id", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex id out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p <n> <m>' header")
    return Graph.from_edges(n, edges)


def serialize_graph(G: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    edges = G.edges()
    lines.append(f"p {G.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())
