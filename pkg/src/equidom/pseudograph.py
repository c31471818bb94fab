"""mu-vectors, pseudo graphs and dense sets.

A pseudo graph abstracts a graph as a partition of its vertices plus, per
vertex, a vector ``mu(v)`` saying how many members of each block suffice to
dominate ``v``. A set is dense when every element has a block whose count
meets its (non-zero) requirement; dense and minimal dense sets of the pseudo
graph of ``G`` are exactly the dominating and minimal dominating sets of ``G``.
"""

from __future__ import annotations

from typing import Iterable

from .errors import IntegrityError
from .graph import Graph, is_dominating, iter_bits
from .pseudo import CLIQUE_BUNDLE, KINDS, STABLE_BUNDLE, PseudoClass, pseudo_class_partition
from .twins import STABLE_CLASS


def extends_to_mds(G: Graph, Q: int, allowed: int | None = None) -> bool:
    """Is there a minimal dominating set ``D`` with ``Q <= D <= Q | allowed``?

    Such a ``D`` exists iff every ``x`` in ``Q`` can be given a private
    neighbor ``p(x)`` in ``N[x] - N[Q - x]`` such that
    ``Q | (allowed - N[p(Q)])`` still dominates; greedy pruning of that set
    then yields ``D``. Only inclusion-minimal closed neighborhoods need to be
    tried for each ``p(x)``.
    """
    if allowed is None:
        allowed = G.full
    options = []
    for x in iter_bits(Q):
        others = 0
        for y in iter_bits(Q & ~(1 << x)):
            others |= G.closed(y)
        nbhds = {G.closed(p) for p in iter_bits(G.closed(x) & ~others)}
        if not nbhds:
            return False
        minimal = [a for a in nbhds if not any(b != a and b & a == b for b in nbhds)]
        options.append(sorted(minimal))
    options.sort(key=len)

    def rec(i: int, used: int) -> bool:
        if not is_dominating(G, Q | (allowed & ~used)):
            return False
        if i == len(options):
            return True
        return any(rec(i + 1, used | nb) for nb in options[i])

    return rec(0, 0)


def mu_vector(G: Graph, P: list[PseudoClass], v: int) -> tuple[int, ...]:
    cv = G.closed(v)
    # clique bundles v does not belong to; only they may dominate v "by count"
    bundles = 0
    for block in P:
        if block.kind == CLIQUE_BUNDLE and not block.members >> v & 1:
            bundles |= block.members
    out = []
    for block in P:
        B = block.members
        if B >> v & 1:
            if block.kind == STABLE_BUNDLE:
                out.append(2)
            elif block.kind == STABLE_CLASS:
                out.append(block.size)
            else:
                out.append(1)
        elif block.kind != CLIQUE_BUNDLE:
            out.append(1 if G.adj[v] & B else 0)
        elif not G.adj[v] & B:
            out.append(0)
        else:
            need = (B & ~cv).bit_count() + 1
            outside = G.full & ~cv
            if is_dominating(G, outside | B):
                # some mds meets N[v] only inside B; exchangeability gives it >= need members of B
                out.append(need)
                continue
            # v may also be dominated jointly by several bundles. By exchangeability an
            # mds of that shape with >= need members of B exists iff the `need`
            # smallest members of B extend to one.
            members_ = block.vertices()
            Q = 0
            for u in members_[:need]:
                Q |= 1 << u
            ok = need <= len(members_) and extends_to_mds(G, Q, outside | bundles)
            out.append(need if ok else 0)
    return tuple(out)


class PseudoGraph:
    """Triple (elements, blocks, mu). Element ids are arbitrary non-negative ints."""

    def __init__(self, blocks: Iterable[tuple[str, Iterable[int]]], mu: dict[int, tuple[int, ...]]):
        self.blocks: list[tuple[str, tuple[int, ...]]] = [
            (kind, tuple(sorted(ids))) for kind, ids in blocks
        ]
        self.mu = {v: tuple(m) for v, m in mu.items()}
        s = len(self.blocks)
        seen: set[int] = set()
        for kind, ids in self.blocks:
            if kind not in KINDS:
                raise ValueError(f"unknown block kind {kind!r}")
            if not ids:
                raise ValueError("empty block")
            for v in ids:
                if v in seen:
                    raise ValueError(f"element {v} in two blocks")
                seen.add(v)
        if seen != set(self.mu):
            raise ValueError("mu must be defined exactly on the block elements")
        if not seen:
            raise ValueError("pseudo graph needs at least one element")
        for v, m in self.mu.items():
            if len(m) != s:
                raise ValueError(f"mu({v}) has {len(m)} components, expected {s}")
            if any(c < 0 for c in m):
                raise ValueError(f"mu({v}) has a negative component")
            if not any(m):
                raise IntegrityError(f"mu({v}) is the zero vector")
        self.elements = sorted(seen)
        self.block_of = {v: i for i, (_, ids) in enumerate(self.blocks) for v in ids}
        self.groups = [self._groups(kind, ids) for kind, ids in self.blocks]
        # distinct requirement lists: [(block, need), ...] with need > 0
        self._requirements = sorted({
            tuple((i, c) for i, c in enumerate(m) if c > 0) for m in self.mu.values()
        })

    def _groups(self, kind: str, ids: tuple[int, ...]) -> list[tuple[int, ...]]:
        if kind != CLIQUE_BUNDLE:
            return [ids]
        by_mu: dict[tuple[int, ...], list[int]] = {}
        for v in ids:
            by_mu.setdefault(self.mu[v], []).append(v)
        return sorted((tuple(g) for g in by_mu.values()), key=lambda g: g[0])

    @property
    def s(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PseudoGraph) and self.blocks == other.blocks and self.mu == other.mu

    def __repr__(self) -> str:
        return f"PseudoGraph(|V|={len(self)}, s={self.s})"

    def counts(self, X: Iterable[int]) -> list[int]:
        c = [0] * self.s
        for v in X:
            c[self.block_of[v]] += 1
        return c

    def dense_counts(self, counts: list[int]) -> bool:
        return all(any(need <= counts[i] for i, need in req) for req in self._requirements)

    def minimal_dense_counts(self, counts: list[int]) -> bool:
        if not self.dense_counts(counts):
            return False
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                still = self.dense_counts(counts)
                counts[i] += 1
                if still:
                    return False
        return True

    def relabel(self, mapping: dict[int, int]) -> PseudoGraph:
        return PseudoGraph(
            [(kind, [mapping[v] for v in ids]) for kind, ids in self.blocks],
            {mapping[v]: m for v, m in self.mu.items()},
        )

    def restrict(self, keep: Iterable[int]) -> PseudoGraph:
        """Delete all elements not in ``keep``; blocks and mu values are unchanged."""
        keep = set(keep)
        blocks = [(kind, [v for v in ids if v in keep]) for kind, ids in self.blocks]
        if any(not ids for _, ids in blocks):
            raise ValueError("restriction would empty a block")
        return PseudoGraph(blocks, {v: m for v, m in self.mu.items() if v in keep})


def build_pseudo_graph(G: Graph, P: list[PseudoClass] | None = None) -> PseudoGraph:
    if P is None:
        P = pseudo_class_partition(G)
    mu = {v: mu_vector(G, P, v) for v in range(G.n)}
    return PseudoGraph([(p.kind, p.vertices()) for p in P], mu)


def is_dense(PG: PseudoGraph, X: Iterable[int]) -> bool:
    return PG.dense_counts(PG.counts(X))


def is_minimal_dense(PG: PseudoGraph, X: Iterable[int]) -> bool:
    """Single-deletion test; enough because density is monotone."""
    return PG.minimal_dense_counts(PG.counts(X))


# -- text format ------------------------------------------------------------

def serialize_pseudo_graph(PG: PseudoGraph) -> str:
    lines = [f"pg {len(PG)} {PG.s}"]
    for kind, ids in PG.blocks:
        lines.append(" ".join(["b", kind] + [str(v + 1) for v in ids]))
    for v in PG.elements:
        lines.append(" ".join(["m", str(v + 1)] + [str(c) for c in PG.mu[v]]))
    return "\n".join(lines) + "\n"


def parse_pseudo_graph(text: str | bytes) -> PseudoGraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    blocks = []
    mu = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "pg":
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "b":
                blocks.append((parts[1], [int(x) - 1 for x in parts[2:]]))
            elif parts[0] == "m":
                v = int(parts[1]) - 1
                if v in mu:
                    raise ValueError(f"duplicate mu line for {v + 1}")
                mu[v] = tuple(int(x) for x in parts[2:])
            else:
                raise ValueError(f"unknown line type {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if header is None:
        raise ValueError("missing 'pg <|V|> <s>' header")
    PG = PseudoGraph(blocks, mu)
    if header != (len(PG), PG.s):
        raise ValueError(f"header declares {header}, content has {(len(PG), PG.s)}")
    return PG
