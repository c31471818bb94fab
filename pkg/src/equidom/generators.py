"""Graph families and seeded random generators.

Randomness always comes from ``random.Random(seed)`` (Mersenne Twister
MT19937), so a seed reproduces the same graph on every platform.
"""

from __future__ import annotations

import random

from .graph import Graph, iter_bits

# vertex order of the weighted example: a, b, c1, c2, d, e, s1, s2
EXAMPLE_NAMES = ("a", "b", "c1", "c2", "d", "e", "s1", "s2")
EXAMPLE_WEIGHTS = (16, 7, 3, 3, 4, 3, 11, 5)
EXAMPLE_T = 23


def weighted_example() -> Graph:
    """8-vertex graph with a known structure (EXAMPLE_WEIGHTS, t = EXAMPLE_T)."""
    a, b, c1, c2, d, e, s1, s2 = range(8)
    return Graph.from_edges(8, [
        (a, s1), (a, s2), (a, c1), (a, c2), (a, b),
        (c1, c2), (c1, e), (c2, e), (c1, b), (c2, b),
        (b, e), (b, d),
    ])


def two_bundle_example() -> Graph:
    """Two clique bundles, each three clique classes of sizes 3/2/4 and 2/2/4."""
    sizes = [3, 2, 4, 2, 2, 4]
    blocks, start = [], 0
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s
    joins = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (1, 3), (2, 4)]
    edges = []
    for blk in blocks:
        edges += [(u, v) for i, u in enumerate(blk) for v in blk[i + 1:]]
    for i, j in joins:
        edges += [(u, v) for u in blocks[i] for v in blocks[j]]
    return Graph.from_edges(start, edges)


def complete(n: int) -> Graph:
    return Graph.complete(n)


def edgeless(n: int) -> Graph:
    return Graph.edgeless(n)


def k2n_minus_ne(n: int) -> Graph:
    """``K_{2n}`` minus a perfect matching; vertex ``2i`` misses ``2i+1``."""
    g = Graph.complete(2 * n)
    adj = list(g.adj)
    for i in range(n):
        adj[2 * i] &= ~(1 << (2 * i + 1))
        adj[2 * i + 1] &= ~(1 << (2 * i))
    return Graph(2 * n, adj)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def corona(G: Graph) -> Graph:
    """Attach a pendant vertex ``n + v`` to every vertex ``v``."""
    edges = G.edges() + [(v, G.n + v) for v in range(G.n)]
    return Graph.from_edges(2 * G.n, edges)


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    off = G1.n
    edges = G1.edges() + [(u + off, v + off) for u, v in G2.edges()]
    return Graph.from_edges(G1.n + G2.n, edges)


def add_universal_vertex(G: Graph) -> Graph:
    """New vertex ``n`` adjacent to everything."""
    return Graph.from_edges(G.n + 1, G.edges() + [(v, G.n) for v in range(G.n)])


def universal_vertices(G: Graph) -> list[int]:
    return [v for v in range(G.n) if G.degree(v) == G.n - 1]


def parse_nesting(spec: str) -> list[tuple[int, int]]:
    """``"i,c;j,d"``: the i-th universal vertex of G1 (1-based) sees the first c of G2's."""
    pairs = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        fields = part.split(",")
        if len(fields) != 2:
            raise ValueError(f"bad nesting entry {part!r}; expected 'i,c'")
        i, c = int(fields[0]), int(fields[1])
        pairs.append((i, c))
    return pairs


def chain_join(G1: Graph, G2: Graph, nesting: list[tuple[int, int]] | dict[int, int]) -> Graph:
    """Chain-join: disjoint union plus a chain graph between the universal sets.

    ``nesting`` maps the i-th universal vertex of ``G1`` (1-based, ascending
    id) to a count c; it is joined to the first c universal vertices of
    ``G2``. Prefix neighborhoods are nested, so the cross edges always form a
    chain graph.
    """
    U1, U2 = universal_vertices(G1), universal_vertices(G2)
    items = nesting.items() if isinstance(nesting, dict) else nesting
    seen = set()
    cross = []
    for i, c in items:
        if not 1 <= i <= len(U1):
            raise ValueError(f"nesting index {i} outside 1..{len(U1)}")
        if i in seen:
            raise ValueError(f"nesting index {i} given twice")
        if not 0 <= c <= len(U2):
            raise ValueError(f"nesting count {c} outside 0..{len(U2)}")
        seen.add(i)
        cross += [(U1[i - 1], G1.n + U2[j]) for j in range(c)]
    return Graph.from_edges(G1.n + G2.n, disjoint_union(G1, G2).edges() + cross)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def graph_from_code(n: int, code: int) -> Graph:
    """Labeled graph whose edge set is the bit pattern ``code`` over pairs (u<v) in order."""
    edges = []
    bit = 0
    for u in range(n):
        for v in range(u + 1, n):
            if code >> bit & 1:
                edges.append((u, v))
            bit += 1
    return Graph.from_edges(n, edges)


def all_labeled_graphs(n: int):
    for code in range(1 << (n * (n - 1) // 2)):
        yield graph_from_code(n, code)


def inflate(G: Graph, clique: dict[int, int] | None = None, bundle: dict[int, int] | None = None) -> Graph:
    """Blow up vertices: ``clique[v] = s`` turns v into s true twins;
    ``bundle[v] = s`` turns v into ``K_{2s} - se`` (s false-twin pairs) sharing
    v's external neighborhood."""
    clique = clique or {}
    bundle = bundle or {}
    copies: list[list[int]] = []
    pairs: dict[int, list[tuple[int, int]]] = {}
    nxt = 0
    for v in range(G.n):
        if v in bundle:
            ps = [(nxt + 2 * i, nxt + 2 * i + 1) for i in range(bundle[v])]
            pairs[v] = ps
            copies.append([x for p in ps for x in p])
            nxt += 2 * bundle[v]
        else:
            s = clique.get(v, 1)
            copies.append(list(range(nxt, nxt + s)))
            nxt += s
    edges = []
    for v in range(G.n):
        cv = copies[v]
        if v in pairs:
            twin = {a: b for a, b in pairs[v]} | {b: a for a, b in pairs[v]}
            edges += [(x, y) for i, x in enumerate(cv) for y in cv[i + 1:] if twin[x] != y]
        else:
            edges += [(x, y) for i, x in enumerate(cv) for y in cv[i + 1:]]
        for u in iter_bits(G.adj[v]):
            if u > v:
                edges += [(x, y) for x in copies[v] for y in copies[u]]
    return Graph.from_edges(nxt, edges)


def random_hereditary(n_target: int, rng: random.Random, max_leaf: int = 3, universal: float = 0.25) -> Graph:
    """Random graph built only from basic graphs, universal vertices and chain-joins.

    ``universal`` is the chance of adding a universal vertex at each step
    (higher values give denser graphs).
    """
    if n_target <= 1:
        return Graph.edgeless(1)
    roll = rng.random()
    if n_target >= 4 and roll < 0.15:
        half = min(n_target // 2, max_leaf)
        if half >= 2:
            return k2n_minus_ne(half)
    if roll < 0.15 + universal:
        return add_universal_vertex(random_hereditary(n_target - 1, rng, max_leaf, universal))
    left = rng.randint(1, n_target - 1)
    G1 = random_hereditary(left, rng, max_leaf, universal)
    G2 = random_hereditary(n_target - left, rng, max_leaf, universal)
    U1, U2 = universal_vertices(G1), universal_vertices(G2)
    nesting = {i + 1: rng.randint(0, len(U2)) for i in range(len(U1))}
    return chain_join(G1, G2, nesting)


def relabel_random(G: Graph, rng: random.Random) -> Graph:
    perm = list(range(G.n))
    rng.shuffle(perm)
    return Graph.from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])



def hereditary_instance(n: int, edges_per_vertex: float = 4.0, seed: int = 0, piece: int = 24) -> Graph:
    """Large hereditarily equidominating graph: disjoint random hereditary pieces.

    Each piece's universal-vertex rate is picked to steer ``m / n`` towards
    ``edges_per_vertex``. Vertices are shuffled so pieces are not contiguous.
    """
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    used = 0
    while used < n:
        size = min(rng.randint(piece // 2, piece), n - used)
        dense = len(edges) < edges_per_vertex * used
        H = random_hereditary(size, rng, universal=0.75 if dense else 0.2)
        edges += [(u + used, v + used) for u, v in H.edges()]
        used += H.n
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])
