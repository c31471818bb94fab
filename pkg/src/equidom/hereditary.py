"""Hereditarily equidominating graphs: recognition, forbidden subgraphs, structures.

A graph is hereditarily equidominating iff it avoids seven 5-vertex induced
subgraphs, iff it is built from basic graphs (``K_1`` and ``K_2n - ne``) by
adding universal vertices and chain-joins. Recognition peels that
construction off recursively; the resulting decomposition tree is then folded
into an explicit equidominating structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Graph, adjacency_lists, iter_bits, lowest
from .structure import WeightStructure

BASIC = "basic"
UNIVERSAL = "universal_vertex"
CHAIN_JOIN = "chain_join"
COMPONENTS = "component_split"


# -- forbidden subgraphs --------------------------------------------------------

FORBIDDEN: dict[str, tuple[tuple[int, int], ...]] = {
    "P5": ((0, 1), (1, 2), (2, 3), (3, 4)),
    "C5": ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4)),
    # triangle 0-1-2 with pendants on 1 and 2
    "bull": ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4)),
    # 4-cycle 1-2-4-3 with pendant 0 on 1
    "banner": ((0, 1), (1, 2), (1, 3), (2, 4), (3, 4)),
    "house": ((0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4)),
    "K2,3": ((0, 1), (0, 2), (0, 4), (3, 1), (3, 2), (3, 4)),
    "co-(P2+P3)": ((0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 3), (3, 4)),
}

_PAIRS5 = tuple(itertools.combinations(range(5), 2))


def _code5(edges) -> int:
    es = {frozenset(e) for e in edges}
    return sum(1 << i for i, p in enumerate(_PAIRS5) if frozenset(p) in es)


def _build_lookup() -> list[str | None]:
    table: list[str | None] = [None] * (1 << len(_PAIRS5))
    for name, edges in FORBIDDEN.items():
        for perm in itertools.permutations(range(5)):
            table[_code5((perm[u], perm[v]) for u, v in edges)] = name
    return table


# edge code of a labeled 5-vertex graph -> catalog name (or None)
_LOOKUP = _build_lookup()


def forbidden_graph(name: str) -> Graph:
    return Graph.from_edges(5, FORBIDDEN[name])


def match_forbidden(G: Graph, vs) -> str | None:
    """Name of the catalog graph induced by the five vertices ``vs``, if any."""
    code = 0
    for i, (a, b) in enumerate(_PAIRS5):
        if G.adj[vs[a]] >> vs[b] & 1:
            code |= 1 << i
    return _LOOKUP[code]


def forbidden_subgraph_search(G: Graph) -> tuple[str, tuple[int, ...]] | None:
    """First 5-subset in lexicographic order that induces a catalog graph."""
    for vs in itertools.combinations(range(G.n), 5):
        name = match_forbidden(G, vs)
        if name is not None:
            return name, vs
    return None


# -- basic tests ------------------------------------------------------------------

def _is_basic_mask(G: Graph, W: int) -> bool:
    size = W.bit_count()
    if size == 1:
        return True
    if size < 4 or size % 2:
        return False
    return all((G.adj[v] & W).bit_count() == size - 2 for v in iter_bits(W))


def is_basic(G: Graph) -> bool:
    """``K_1`` or ``K_2n - ne`` with n >= 2 (every degree equals n - 2)."""
    return G.n > 0 and _is_basic_mask(G, G.full)


def _cochain_mask(G: Graph, X: int, Y: int) -> bool:
    for A in (X, Y):
        for v in iter_bits(A):
            if (A & ~(1 << v)) & ~G.adj[v]:
                return False
    cross = sorted((G.adj[v] & Y for v in iter_bits(X)), key=int.bit_count, reverse=True)
    return all(b & ~a == 0 for a, b in zip(cross, cross[1:]))


def is_cochain_with_coclasses(H: Graph, X, Y) -> bool:
    """Are ``X`` and ``Y`` cliques whose cross-neighborhoods are nested?"""
    X = X if isinstance(X, int) else _mask(X)
    Y = Y if isinstance(Y, int) else _mask(Y)
    if X & Y or (X | Y) != H.full:
        raise ValueError("X and Y must partition the vertex set")
    return _cochain_mask(H, X, Y)


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


# -- decomposition tree -------------------------------------------------------------

@dataclass
class DecompositionNode:
    """One step of the decomposition; vertex ids refer to the input graph.

    ``universal_vertex`` nodes have one child (the graph minus ``apex``),
    ``chain_join`` nodes two (the side holding ``xs``, then the side holding
    ``ys``), ``component_split`` nodes one per component in smallest-id
    order. Basic leaves list their missing edges in ``nonedges``.
    """

    kind: str
    vertices: tuple[int, ...]
    children: list[DecompositionNode] = field(default_factory=list)
    apex: int | None = None
    xs: tuple[int, ...] = ()
    ys: tuple[int, ...] = ()
    cross: tuple[tuple[int, int], ...] = ()
    nonedges: tuple[tuple[int, int], ...] = ()

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[DecompositionNode]:
        return [nd for nd in self.walk() if not nd.children]


def _components(G: Graph, W: int) -> list[int]:
    comps = []
    while W:
        comp = frontier = W & -W
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= G.adj[v]
            frontier = reach & W & ~comp
            comp |= frontier
        comps.append(comp)
        W &= ~comp
    return comps


class _Recognizer:
    """Runs the decomposition on one graph with local ids ``0..n-1``.

    ``names[v]`` is the input id of local vertex ``v``. Pending work sits on
    an explicit stack since long universal-vertex chains would exceed the
    recursion limit.
    """

    def __init__(self, G: Graph, names: list[int]):
        self.G = G
        self.names = names
        self.reason = ""
        self._stack: list[tuple[DecompositionNode, int]] = []

    def _ids(self, W: int) -> tuple[int, ...]:
        return tuple(sorted(self.names[v] for v in iter_bits(W)))

    def _pending(self, W: int) -> DecompositionNode:
        node = DecompositionNode("", self._ids(W))
        self._stack.append((node, W))
        return node

    def run(self) -> DecompositionNode | None:
        root = self._pending(self.G.full)
        while self._stack:
            node, W = self._stack.pop()
            comps = _components(self.G, W)
            if len(comps) > 1:
                node.kind = COMPONENTS
                node.children = [self._pending(C) for C in comps]
            elif not self._expand(node, W):
                return None
        return root

    def _basic_leaf(self, node: DecompositionNode, H: int) -> None:
        node.kind = BASIC
        adj = self.G.adj
        node.nonedges = tuple(sorted(
            (min(self.names[v], self.names[u]), max(self.names[v], self.names[u]))
            for v in iter_bits(H) for u in iter_bits(H & ~adj[v]) if u > v
        ))

    def _expand(self, node: DecompositionNode, H: int) -> bool:
        """Decompose the connected vertex set ``H`` one level."""
        adj = self.G.adj
        size = H.bit_count()
        deg = {v: (adj[v] & H).bit_count() for v in iter_bits(H)}
        if _is_basic_mask(self.G, H):
            self._basic_leaf(node, H)
            return True
        for v in iter_bits(H):
            if deg[v] == size - 1:
                node.kind = UNIVERSAL
                node.apex = self.names[v]
                node.children = [self._pending(H & ~(1 << v))]
                return True
        x = max(iter_bits(H), key=lambda u: (deg[u], -u))
        v = lowest(H & ~adj[x] & ~(1 << x))
        y = max(iter_bits(adj[v] & H), key=lambda u: (deg[u], -u))
        Nx, Ny = adj[x] & H, adj[y] & H
        cx, cy = Nx | 1 << x, Ny | 1 << y
        X = Nx & ~cy
        Y = Ny & ~cx
        S = cx & cy
        if not S:
            # x and y always meet in a hereditary graph; this also keeps H - S shrinking
            self.reason = "x and y have no common closed neighbor"
            return False
        Xp = 0
        for u in iter_bits(S):
            if adj[u] & X:
                Xp |= 1 << u
        Yp = S & ~Xp
        if not _cochain_mask(self.G, Xp, Yp):
            self.reason = "S is not a co-chain graph with co-classes X', Y'"
            return False
        for u in iter_bits(Xp):
            if X & ~adj[u] or Y & adj[u]:
                self.reason = "a vertex of X' misses X or sees Y"
                return False
        for u in iter_bits(Yp):
            if Y & ~adj[u] or X & adj[u]:
                self.reason = "a vertex of Y' misses Y or sees X"
                return False
        sides = self._split_sides(H, Xp, Yp)
        if sides is None:
            self.reason = "removing the X'-Y' edges does not leave a chain-join"
            return False
        H1, H2 = sides
        node.kind = CHAIN_JOIN
        node.xs, node.ys = self._ids(Xp), self._ids(Yp)
        node.cross = tuple(sorted(
            (self.names[a], self.names[b]) for a in iter_bits(Xp) for b in iter_bits(adj[a] & Yp)
        ))
        node.children = [self._side(H1, Xp), self._side(H2, Yp)]
        return True

    def _split_sides(self, H: int, Xp: int, Yp: int) -> tuple[int, int] | None:
        """Components of ``H - E(X', Y')``; each co-class must be universal on its side."""
        if not Xp or not Yp:
            return None
        adj = self.G.adj
        H1 = frontier = Xp & -Xp
        while frontier:
            reach = 0
            for u in iter_bits(frontier):
                reach |= adj[u] & ~Yp if Xp >> u & 1 else adj[u]
            frontier = reach & H & ~H1
            H1 |= frontier
        H2 = H & ~H1
        if Xp & ~H1 or Yp & ~H2:
            return None
        for A, side in ((Xp, H1), (Yp, H2)):
            for u in iter_bits(A):
                if side & ~adj[u] & ~(1 << u):
                    return None
        return H1, H2

    def _side(self, side: int, co: int) -> DecompositionNode:
        """One chain-join side: its co-class peeled off as universal vertices, then the rest."""
        top: DecompositionNode | None = None
        cur: DecompositionNode | None = None
        for u in iter_bits(co):
            rest = side & ~(1 << u)
            if rest:
                nd = DecompositionNode(UNIVERSAL, self._ids(side), apex=self.names[u])
            else:
                nd = DecompositionNode(BASIC, self._ids(side))
            if cur is None:
                top = nd
            else:
                cur.children = [nd]
            cur = nd
            side = rest
        if side:
            cur.children = [self._pending(side)]
        return top


def _split_components(G: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components as relabeled graphs, via adjacency lists (linear time)."""
    nbrs = adjacency_lists(G)
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for v in comp:
            for u in nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        comp.sort()
        local = {v: i for i, v in enumerate(comp)}
        adj = []
        for v in comp:
            m = 0
            for u in nbrs[v]:
                m |= 1 << local[u]
            adj.append(m)
        out.append((Graph(len(comp), adj), comp))
    return out


def _recognize(G: Graph) -> tuple[DecompositionNode | None, str]:
    if G.n == 0:
        raise ValueError("empty graph")
    parts = []
    # small local graphs keep every mask as short as its component
    for H, names in _split_components(G):
        rec = _Recognizer(H, names)
        tree = rec.run()
        if tree is None:
            return None, rec.reason
        parts.append(tree)
    if len(parts) == 1:
        return parts[0], ""
    return DecompositionNode(COMPONENTS, tuple(range(G.n)), parts), ""


def recognize_hereditary(G: Graph) -> tuple[bool, DecompositionNode | None]:
    tree, _ = _recognize(G)
    return tree is not None, tree


def rejection_reason(G: Graph) -> str | None:
    """Why recognition fails, or None when ``G`` is hereditarily equidominating."""
    tree, reason = _recognize(G)
    return None if tree is not None else reason


# -- structures -----------------------------------------------------------------------

def _combine(s1: tuple[dict, int], s2: tuple[dict, int]) -> tuple[dict, int]:
    """Chain-join rule: the second graph's weights are scaled by ``1 + w1(V(G1))``."""
    w1, t1 = s1
    w2, t2 = s2
    c = 1 + sum(w1.values())
    w = dict(w1)
    for v, wt in w2.items():
        w[v] = c * wt
    return w, t1 + c * t2


def structure_from_tree(tree: DecompositionNode) -> WeightStructure:
    """Fold a decomposition tree bottom-up into an equidominating structure."""
    done: dict[int, tuple[dict, int]] = {}
    stack: list[tuple[DecompositionNode, bool]] = [(tree, False)]
    while stack:
        node, ready = stack.pop()
        if not ready:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
            continue
        kids = [done.pop(id(c)) for c in node.children]
        if node.kind == BASIC:
            ones = {v: 1 for v in node.vertices}
            res = (ones, 1 if len(ones) == 1 else 2)
        elif node.kind == UNIVERSAL:
            w, t = kids[0]
            w = dict(w)
            w[node.apex] = t
            res = (w, t)
        elif node.kind in (CHAIN_JOIN, COMPONENTS):
            # a disjoint union is a chain-join without cross edges
            res = kids[0]
            for k in kids[1:]:
                res = _combine(res, k)
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        done[id(node)] = res
    w, t = done[id(tree)]
    return WeightStructure(w, t)


def construct_structure_hereditary(G: Graph) -> WeightStructure | None:
    ok, tree = recognize_hereditary(G)
    return structure_from_tree(tree) if ok else None


def reassemble(tree: DecompositionNode) -> Graph:
    """Rebuild the graph described by a decomposition tree."""
    n = max(tree.vertices) + 1
    edges: set[tuple[int, int]] = set()
    for node in tree.walk():
        if node.kind == BASIC:
            missing = set(node.nonedges)
            vs = node.vertices
            edges.update((a, b) for i, a in enumerate(vs) for b in vs[i + 1:] if (a, b) not in missing)
        elif node.kind == UNIVERSAL:
            edges.update((min(node.apex, u), max(node.apex, u)) for u in node.vertices if u != node.apex)
        elif node.kind == CHAIN_JOIN:
            edges.update((min(a, b), max(a, b)) for a, b in node.cross)
    return Graph.from_edges(n, sorted(edges))


def format_tree(tree: DecompositionNode) -> str:
    """Indented text rendering with 1-based vertex ids."""

    def ids(vs) -> str:
        return " ".join(str(v + 1) for v in vs)

    lines = []
    stack = [(tree, 0)]
    while stack:
        node, depth = stack.pop()
        pad = "  " * depth
        if node.kind == BASIC:
            k = len(node.vertices)
            label = "K1" if k == 1 else f"K{k}-{k // 2}e"
            lines.append(f"{pad}basic {label}: {ids(node.vertices)}")
        elif node.kind == UNIVERSAL:
            lines.append(f"{pad}universal_vertex {node.apex + 1}")
        elif node.kind == CHAIN_JOIN:
            cross = " ".join(f"{a + 1}-{b + 1}" for a, b in node.cross) or "none"
            lines.append(f"{pad}chain_join X'={{{ids(node.xs)}}} Y'={{{ids(node.ys)}}} cross: {cross}")
        else:
            lines.append(f"{pad}component_split: {len(node.children)} components")
        stack.extend((c, depth + 1) for c in reversed(node.children))
    return "\n".join(lines) + "\n"
