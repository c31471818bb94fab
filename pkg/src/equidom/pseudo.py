"""mds-exchangeability, bundle detection and the pseudo-class partition."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError
from .graph import Graph, is_dominating, iter_bits, lowest, members
from .twins import CLIQUE_CLASS, SINGLETON, STABLE_CLASS, TwinClass, twin_partition

CLIQUE_BUNDLE = "clique_bundle"
STABLE_BUNDLE = "stable_bundle"

KINDS = (SINGLETON, CLIQUE_CLASS, STABLE_CLASS, CLIQUE_BUNDLE, STABLE_BUNDLE)


@dataclass(frozen=True)
class PseudoClass:
    members: int  # bitmask
    kind: str
    twins: tuple[int, ...] = ()  # constituent twin classes, for bundles

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def first(self) -> int:
        return lowest(self.members)

    def vertices(self) -> list[int]:
        return members(self.members)


def mds_exchangeable_adjacent(G: Graph, x: int, y: int) -> bool:
    """Decide mds-exchangeability of two adjacent vertices.

    For both orientations ``(v1, v2)`` and every ``v'`` in ``N(v1) - N[v2]``:
    if ``{v1} | (V - (N[v'] | {v2}))`` dominates, some mds has ``v'`` as a
    private neighbor of ``v1`` that ``v2`` cannot take over.
    """
    if not G.has_edge(x, y):
        raise ValueError(f"vertices {x} and {y} are not adjacent")
    for v1, v2 in ((x, y), (y, x)):
        for vp in iter_bits(G.adj[v1] & ~G.closed(v2)):
            D = (G.full & ~(G.closed(vp) | (1 << v2))) | (1 << v1)
            if is_dominating(G, D):
                return False
    return True


def detect_stable_set_bundles(G: Graph, T: list[TwinClass] | None = None) -> list[int]:
    """Maximal unions of >= 2 size-2 stable classes with one common exterior.

    Two size-2 stable classes ``{a,a'}`` and ``{b,b'}`` belong together iff
    ``N(a) | {a,a'} == N(b) | {b,b'}``; equal keys force mutual adjacency, and
    the relation is an equivalence, so grouping by key is exact.
    """
    if T is None:
        T = twin_partition(G)
    groups: dict[int, int] = {}
    counts: dict[int, int] = {}
    for c in T:
        if c.kind != STABLE_CLASS or c.size != 2:
            continue
        key = G.adj[c.first] | c.members
        groups[key] = groups.get(key, 0) | c.members
        counts[key] = counts.get(key, 0) + 1
    bundles = [groups[k] for k in groups if counts[k] >= 2]
    bundles.sort(key=lowest)
    return bundles


def _exchangeable_classes(G: Graph, cands: list[TwinClass]) -> dict[tuple[int, int], bool]:
    """The exchangeability test on one representative per class pair; adjacent pairs only."""
    rel = {}
    for i, ci in enumerate(cands):
        for j in range(i + 1, len(cands)):
            cj = cands[j]
            if G.has_edge(ci.first, cj.first):
                rel[i, j] = mds_exchangeable_adjacent(G, ci.first, cj.first)
    return rel


def detect_clique_bundles(
    G: Graph, T: list[TwinClass] | None = None, exclude: int = 0
) -> list[int]:
    """Maximal cliques of pairwise mds-exchangeable vertices spanning >= 2 twin classes.

    Candidates are singleton and clique classes outside ``exclude``. Classes are
    grouped by connected components of the "adjacent and exchangeable"
    relation; each component must then be a clique of pairwise exchangeable
    classes, otherwise ``IntegrityError`` is raised.
    """
    if T is None:
        T = twin_partition(G)
    cands = [c for c in T if c.kind in (SINGLETON, CLIQUE_CLASS) and not c.members & exclude]
    rel = _exchangeable_classes(G, cands)
    parent = list(range(len(cands)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (i, j), ok in rel.items():
        if ok:
            parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(len(cands)):
        comps.setdefault(find(i), []).append(i)
    bundles = []
    for idx in comps.values():
        if len(idx) < 2:
            continue
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if not rel.get((idx[a], idx[b]), False):
                    raise IntegrityError(
                        "clique-bundle candidates overlap: classes "
                        f"{cands[idx[a]].vertices()} and {cands[idx[b]].vertices()} "
                        "are linked but not adjacent-and-exchangeable"
                    )
        m = 0
        for i in idx:
            m |= cands[i].members
        bundles.append(m)
    bundles.sort(key=lowest)
    return bundles


def pseudo_class_partition(G: Graph, T: list[TwinClass] | None = None) -> list[PseudoClass]:
    if T is None:
        T = twin_partition(G)
    stable = detect_stable_set_bundles(G, T)
    covered = 0
    for b in stable:
        covered |= b
    clique = detect_clique_bundles(G, T, exclude=covered)
    out = []
    for b in stable:
        out.append(PseudoClass(b, STABLE_BUNDLE, tuple(c.members for c in T if c.members & b)))
    for b in clique:
        covered |= b
        out.append(PseudoClass(b, CLIQUE_BUNDLE, tuple(c.members for c in T if c.members & b)))
    for c in T:
        if not c.members & covered:
            out.append(PseudoClass(c.members, c.kind, (c.members,)))
    out.sort(key=lambda p: p.first)
    return out
