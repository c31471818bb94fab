"""Reduction rules, the two kernel pipelines and structure lifting.

Every reduction keeps the smallest ids and records, for each deleted vertex,
a surviving representative from the same clique class, bundle or mu-equal
group. Lifting walks those records backwards and copies weights, which is
sound because equidominating functions are constant on such groups.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import ceil

from .errors import IntegrityError
from .graph import Graph, induced_subgraph, iter_bits, lowest
from .pseudo import detect_stable_set_bundles, pseudo_class_partition
from .pseudograph import PseudoGraph, build_pseudo_graph
from .structure import WeightStructure
from .twins import CLIQUE_CLASS, STABLE_CLASS, twin_partition

CLIQUE_RULE = "clique_class"
BUNDLE_RULE = "stable_set_bundle"
PSEUDO_RULE = "pseudo_graph"
ISOLATED_RULE = "isolated_stable_class"
RULES = (CLIQUE_RULE, BUNDLE_RULE, PSEUDO_RULE, ISOLATED_RULE)


@dataclass(frozen=True)
class TraceRecord:
    rule: str
    deleted: int
    representative: int


@dataclass(frozen=True)
class ReductionTrace:
    """Deletions in application order.

    ``kept[j]`` is the input id of vertex ``j`` of the reduced graph (for
    pseudo graphs the ids are never renumbered and ``kept`` lists the
    surviving elements). ``isolated_class`` holds the surviving part of a
    trimmed isolated stable class, if any.
    """

    records: tuple[TraceRecord, ...]
    kept: tuple[int, ...]
    isolated_class: tuple[int, ...] = ()

    @classmethod
    def identity(cls, vertices) -> ReductionTrace:
        return cls((), tuple(vertices))

    def then(self, inner: ReductionTrace) -> ReductionTrace:
        """Compose with a trace whose ids are positions in ``self.kept``."""
        k = self.kept
        recs = self.records + tuple(
            TraceRecord(r.rule, k[r.deleted], k[r.representative]) for r in inner.records
        )
        iso = self.isolated_class + tuple(k[v] for v in inner.isolated_class)
        return ReductionTrace(recs, tuple(k[j] for j in inner.kept), iso)

    def deleted(self) -> list[int]:
        return [r.deleted for r in self.records]


@dataclass(frozen=True)
class NotEquidominating:
    reason: str
    detail: str = ""


@dataclass(frozen=True)
class PseudoKernel:
    pseudo_graph: PseudoGraph  # element ids are vertex ids of the input graph
    trace: ReductionTrace


@dataclass(frozen=True)
class GraphKernel:
    graph: Graph  # vertex j is input vertex trace.kept[j]
    trace: ReductionTrace


@dataclass(frozen=True)
class Classified:
    """Decided without a kernel (the k = 1 classification)."""

    structure: WeightStructure | None
    reason: str = ""
    meta: dict = field(default_factory=dict, compare=False)


KernelOutcome = NotEquidominating | PseudoKernel | GraphKernel | Classified

# reason tags
STABLE_CLASS_TOO_BIG = "stable class larger than t"
TOO_MANY_CLASSES = "more pseudo classes than the parameter"
MU_TOO_BIG = "mu component exceeds bound"
TWO_BIG_CLASSES = "two big pseudo classes, one a stable class"
BIG_STABLE_CLASS_NOT_ISOLATED = "big non-isolated stable class"
NOT_ONE_EQUIDOMINATING = "not K_n, edgeless or K_2n - ne"


def _apply(G: Graph, deleted: dict[int, int], rule: str) -> tuple[Graph, ReductionTrace]:
    if not deleted:
        return G, ReductionTrace.identity(range(G.n))
    gone = 0
    for v in deleted:
        gone |= 1 << v
    H, old_to_new = induced_subgraph(G, G.full & ~gone)
    kept = tuple(sorted(old_to_new, key=old_to_new.get))
    recs = tuple(TraceRecord(rule, v, deleted[v]) for v in sorted(deleted))
    return H, ReductionTrace(recs, kept)


def reduce_clique_classes(G: Graph, r: int) -> tuple[Graph, ReductionTrace]:
    """Trim every clique class to its ``r`` smallest members."""
    if r < 1:
        raise ValueError("r must be >= 1")
    deleted = {}
    for c in twin_partition(G):
        if c.kind == CLIQUE_CLASS and c.size > r:
            vs = c.vertices()
            for v in vs[r:]:
                deleted[v] = vs[0]
    return _apply(G, deleted, CLIQUE_RULE)


def reduce_stable_set_bundles(G: Graph, r: int) -> tuple[Graph, ReductionTrace]:
    """Keep the ``r`` stable classes (pairs) with the smallest members in each bundle.

    With ``r = 1`` the remaining pair is an ordinary stable class of ``G'``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    T = twin_partition(G)
    deleted = {}
    for bundle in detect_stable_set_bundles(G, T):
        pairs = sorted((c.members for c in T if c.members & bundle), key=lowest)
        if len(pairs) <= r:
            continue
        rep = lowest(pairs[0])
        for p in pairs[r:]:
            for v in iter_bits(p):
                deleted[v] = rep
    return _apply(G, deleted, BUNDLE_RULE)


def reduce_pseudo_graph(PG: PseudoGraph, r: int) -> tuple[PseudoGraph, ReductionTrace]:
    """Trim every mu-equal group inside a clique-bundle block to ``r`` elements."""
    if r < 1:
        raise ValueError("r must be >= 1")
    bad = [v for v, m in PG.mu.items() if max(m) > r]
    if bad:
        raise ValueError(f"mu component above r={r} at element {bad[0]}")
    recs = []
    for groups in PG.groups:
        for g in groups:
            if len(g) > r:
                recs += [TraceRecord(PSEUDO_RULE, v, g[0]) for v in g[r:]]
    if not recs:
        return PG, ReductionTrace.identity(PG.elements)
    gone = {rec.deleted for rec in recs}
    keep = [v for v in PG.elements if v not in gone]
    recs.sort(key=lambda rec: rec.deleted)
    return PG.restrict(keep), ReductionTrace(tuple(recs), tuple(keep))


def block_size_bound(r: int, blocks: int) -> int:
    """Per-block element bound ``r (r+1)^(blocks-1)`` for reduced pseudo graphs."""
    return r * (r + 1) ** max(blocks - 1, 0)


def _pseudo_pipeline(G: Graph, param: int, r: int) -> KernelOutcome:
    """Clique classes -> stable bundles -> rebuild -> pseudo-graph rule."""
    G1, tr = reduce_clique_classes(G, r)
    G2, tr2 = reduce_stable_set_bundles(G1, ceil(r / 2))
    tr = tr.then(tr2)
    # recheck on the reduced graph: the rebuilt partition can differ, and both
    # tests stay necessary conditions there since the reduction is safe
    P2 = pseudo_class_partition(G2)
    if len(P2) > param:
        return NotEquidominating(TOO_MANY_CLASSES, f"{len(P2)} after reduction")
    PG = build_pseudo_graph(G2, P2).relabel(dict(enumerate(tr.kept)))
    worst = max(max(m) for m in PG.mu.values())
    if worst > r:
        return NotEquidominating(MU_TOO_BIG, f"{worst} > {r} after reduction")
    PG3, tr3 = reduce_pseudo_graph(PG, r)
    recs = tr.records + tr3.records
    return PseudoKernel(PG3, ReductionTrace(recs, tr3.kept))


def kernel_target_t(G: Graph, t: int) -> KernelOutcome:
    if t < 1:
        raise ValueError("t must be >= 1")
    T = twin_partition(G)
    for c in T:
        if c.kind == STABLE_CLASS and c.size > t:
            return NotEquidominating(STABLE_CLASS_TOO_BIG, f"size {c.size} > {t}")
    P = pseudo_class_partition(G, T)
    if len(P) > t:
        return NotEquidominating(TOO_MANY_CLASSES, f"{len(P)} > {t}")
    PG = build_pseudo_graph(G, P)
    worst = max(max(m) for m in PG.mu.values())
    if worst > t:
        return NotEquidominating(MU_TOO_BIG, f"{worst} > {t}")
    return _pseudo_pipeline(G, t, t)


def classify_one_equidominating(G: Graph) -> WeightStructure | None:
    """The 1-equidominating graphs: K_n (t=1), edgeless (t=n), K_2n - ne (t=2)."""
    ones = {v: 1 for v in range(G.n)}
    degs = [G.degree(v) for v in range(G.n)]
    if all(d == G.n - 1 for d in degs):
        return WeightStructure(ones, 1)
    if all(d == 0 for d in degs):
        return WeightStructure(ones, G.n)
    if G.n >= 4 and G.n % 2 == 0 and all(d == G.n - 2 for d in degs):
        return WeightStructure(ones, 2)
    return None


def kernel_k(G: Graph, k: int) -> KernelOutcome:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        s = classify_one_equidominating(G)
        return Classified(s, "" if s else NOT_ONE_EQUIDOMINATING)
    T = twin_partition(G)
    P = pseudo_class_partition(G, T)
    if len(P) > k:
        return NotEquidominating(TOO_MANY_CLASSES, f"{len(P)} > {k}")
    big = [p for p in P if p.size >= k * k]
    big_stable = [p for p in big if p.kind == STABLE_CLASS]
    if len(big) >= 2 and big_stable:
        return NotEquidominating(TWO_BIG_CLASSES)
    if big_stable:
        S = big_stable[0]
        if S.size < k ** 5:
            return GraphKernel(G, ReductionTrace.identity(range(G.n)))
        if any(G.adj[v] for v in iter_bits(S.members)):
            return NotEquidominating(BIG_STABLE_CLASS_NOT_ISOLATED, f"|S| = {S.size}")
        vs = S.vertices()
        H, tr = _apply(G, {v: vs[0] for v in vs[k ** 5:]}, ISOLATED_RULE)
        iso = tuple(vs[: k ** 5])
        return GraphKernel(H, ReductionTrace(tr.records, tr.kept, iso))
    r = k ** 3 + k ** 2
    PG = build_pseudo_graph(G, P)
    worst = max(max(m) for m in PG.mu.values())
    if worst > r:
        return NotEquidominating(MU_TOO_BIG, f"{worst} > {r}")
    return _pseudo_pipeline(G, k, r)


def lift_structure(G: Graph, trace: ReductionTrace, s: WeightStructure) -> WeightStructure:
    """Extend a structure on the kernel (keyed by input ids) to all of ``G``."""
    weights = dict(s.weights)
    t = s.t
    if trace.isolated_class:
        # make the structure constant on the kept part of the isolated class
        vals = [weights[v] for v in trace.isolated_class]
        counts = Counter(vals)
        i = min(counts, key=lambda w: (-counts[w], w))
        t = t - sum(vals) + i * len(vals)
        for v in trace.isolated_class:
            weights[v] = i
    for rec in reversed(trace.records):
        if rec.representative not in weights:
            raise IntegrityError(f"representative {rec.representative} has no weight")
        weights[rec.deleted] = weights[rec.representative]
        if rec.rule == ISOLATED_RULE:
            t += weights[rec.deleted]
    missing = set(range(G.n)) - set(weights)
    if missing:
        raise IntegrityError(f"lifted structure misses vertices {sorted(missing)[:5]}")
    return WeightStructure(weights, t, dict(s.meta))


def serialize_trace(trace: ReductionTrace) -> str:
    return "".join(f"{r.rule} {r.deleted + 1} {r.representative + 1}\n" for r in trace.records)


def parse_trace(text: str) -> list[TraceRecord]:
    recs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in RULES:
            raise ValueError(f"line {lineno}: expected '<rule> <deleted> <representative>'")
        recs.append(TraceRecord(parts[0], int(parts[1]) - 1, int(parts[2]) - 1))
    return recs
