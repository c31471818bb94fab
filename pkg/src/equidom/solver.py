"""Exhaustive search for equidominating / equidense structures.

Weight functions are only tried up to the equivalence "same number of
vertices of each weight in every block"; one canonical representative per
class is generated directly. For a fixed function, subsets are grouped by how
many vertices of each weight they take, and one representative per group is
tested, since interchangeable vertices make the whole group behave alike.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .errors import IntegrityError
from .graph import Graph, is_dominating, is_mds
from .kernel import (
    Classified,
    GraphKernel,
    NotEquidominating,
    PseudoKernel,
    kernel_k,
    kernel_target_t,
    lift_structure,
)
from .oracle import verify_structure
from .pseudo import PseudoClass, pseudo_class_partition
from .pseudograph import PseudoGraph
from .structure import WeightStructure
from .twins import CLIQUE_CLASS, STABLE_CLASS

# structures returned by the decide_* functions are re-checked by brute force up to this size
VERIFY_LIMIT = 16


@dataclass(frozen=True)
class Block:
    kind: str
    elements: tuple[int, ...]  # canonical order: sub-group, then id
    splittable: bool  # may carry several weights


class DominationInstance:
    """Elements, their block partition and a monotone "covering" predicate.

    Minimal covering sets are the solutions: minimal dominating sets for a
    graph, minimal dense sets for a pseudo graph. Elements are addressed by
    position in ``elements``; subsets are bitmasks over positions.
    """

    def __init__(self, elements: list[int], blocks: list[Block], covers, solution, label: str):
        self.elements = list(elements)
        self.blocks = blocks
        self.pos = {v: i for i, v in enumerate(self.elements)}
        self.full = (1 << len(self.elements)) - 1
        self._covers = covers
        self._solution = solution
        self.label = label
        self._cache: dict[int, bool] = {}

    @classmethod
    def from_graph(cls, G: Graph, P: list[PseudoClass] | None = None) -> DominationInstance:
        if P is None:
            P = pseudo_class_partition(G)
        blocks = [
            Block(p.kind, tuple(p.vertices()), p.kind in (CLIQUE_CLASS, STABLE_CLASS)) for p in P
        ]
        return cls(
            list(range(G.n)), blocks, lambda m: is_dominating(G, m), lambda m: is_mds(G, m), "graph"
        )

    @classmethod
    def from_pseudo_graph(cls, PG: PseudoGraph) -> DominationInstance:
        blocks = []
        for (kind, _), groups in zip(PG.blocks, PG.groups):
            elems = tuple(v for g in groups for v in g)
            blocks.append(Block(kind, elems, kind in (CLIQUE_CLASS, STABLE_CLASS)))
        elements = PG.elements
        pos = {v: i for i, v in enumerate(elements)}
        bmasks = []
        for _, ids in PG.blocks:
            m = 0
            for v in ids:
                m |= 1 << pos[v]
            bmasks.append(m)

        def counts(m: int) -> list[int]:
            return [(m & b).bit_count() for b in bmasks]

        return cls(
            elements,
            blocks,
            lambda m: PG.dense_counts(counts(m)),
            lambda m: PG.minimal_dense_counts(counts(m)),
            "pseudo_graph",
        )

    def covers(self, mask: int) -> bool:
        return self._covers(mask)

    def is_solution(self, mask: int) -> bool:
        hit = self._cache.get(mask)
        if hit is None:
            hit = self._cache[mask] = self._solution(mask)
        return hit

    def mask_of(self, elems) -> int:
        m = 0
        for v in elems:
            m |= 1 << self.pos[v]
        return m

    def elements_of(self, mask: int) -> list[int]:
        return [self.elements[i] for i in range(len(self.elements)) if mask >> i & 1]

    def greedy_solution(self, order: list[int]) -> int:
        mask = self.full
        for v in order:
            bit = 1 << self.pos[v]
            if self._covers(mask & ~bit):
                mask &= ~bit
        return mask


def find_any_minimal_solution(inst: DominationInstance) -> list[int]:
    """Delete elements in descending id order while the rest still covers."""
    return inst.elements_of(inst.greedy_solution(sorted(inst.elements, reverse=True)))


# -- canonical weight functions ---------------------------------------------

def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, n), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _block_options(block: Block, available: list[int]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(ascending weights, interval lengths) choices for one block."""
    size = len(block.elements)
    most = min(size, len(available)) if block.splittable else 1
    for parts in range(1, most + 1):
        for ws in itertools.combinations(available, parts):
            for comp in _compositions(size, parts):
                yield ws, comp


def _omega(inst: DominationInstance, k: int, target: int | None, D: int) -> Iterator[dict[int, int]]:
    """Canonical weight functions, grouped by largest weight used (small first).

    With ``target`` set, partial sums of ``w(D)`` prune branches that cannot
    land exactly on it.
    """
    blocks = inst.blocks
    nb = len(blocks)
    # positions (within canonical order) of D's members in each block
    d_idx = []
    for b in blocks:
        d_idx.append([j for j, v in enumerate(b.elements) if D >> inst.pos[v] & 1])
    d_after = [0] * (nb + 1)
    for j in range(nb - 1, -1, -1):
        d_after[j] = d_after[j + 1] + len(d_idx[j])
    choice: list = [None] * nb

    def rec(j: int, used: frozenset, top: int, partial: int):
        if j == nb:
            if top in used:
                w = {}
                for b, (ws, comp) in zip(blocks, choice):
                    i = 0
                    for wt, ln in zip(ws, comp):
                        for v in b.elements[i:i + ln]:
                            w[v] = wt
                        i += ln
                yield w
            return
        available = [x for x in range(1, top + 1) if x not in used]
        for ws, comp in _block_options(blocks[j], available):
            gain = 0
            if d_idx[j]:
                bounds = list(itertools.accumulate(comp))
                for idx in d_idx[j]:
                    gain += ws[next(p for p, b in enumerate(bounds) if idx < b)]
            if target is not None and partial + gain + d_after[j + 1] > target:
                continue
            choice[j] = (ws, comp)
            yield from rec(j + 1, used | frozenset(ws), top, partial + gain)

    for top in range(1, k + 1):
        yield from rec(0, frozenset(), top, 0)


def enumerate_omega(inst: DominationInstance, k: int) -> Iterator[dict[int, int]]:
    """One weight function ``V -> [k]`` per equivalence class; none if blocks > k."""
    if len(inst.blocks) > k:
        return iter(())
    return _omega(inst, k, None, 0)


def representative_subset(inst: DominationInstance, w: dict[int, int], x: dict[int, int] | tuple) -> list[int]:
    """For each weight ``i``, the ``x_i`` smallest-id elements of weight ``i``.

    ``x`` is either a dict weight -> count or a tuple indexed by weight - 1.
    """
    counts = dict(x) if isinstance(x, dict) else {i + 1: c for i, c in enumerate(x)}
    by_weight: dict[int, list[int]] = {}
    for v in sorted(w):
        by_weight.setdefault(w[v], []).append(v)
    out = []
    for i, c in counts.items():
        if c > len(by_weight.get(i, ())):
            raise ValueError(f"x_{i} = {c} exceeds the {len(by_weight.get(i, ()))} elements of weight {i}")
        out += by_weight.get(i, [])[:c]
    return sorted(out)


def _probe_solutions(inst: DominationInstance, count: int = 6) -> list[int]:
    """A few minimal solutions, used to discard weight functions early."""
    rng = random.Random(0)
    found = {inst.greedy_solution(sorted(inst.elements)),
             inst.greedy_solution(sorted(inst.elements, reverse=True))}
    for _ in range(count):
        order = list(inst.elements)
        rng.shuffle(order)
        found.add(inst.greedy_solution(order))
    return sorted(found)


def _check(inst: DominationInstance, w: dict[int, int], t_w: int, probes: list[int]) -> bool:
    wpos = [0] * len(inst.elements)
    for v, wt in w.items():
        wpos[inst.pos[v]] = wt
    for m in probes:
        if sum(wpos[i] for i in range(len(wpos)) if m >> i & 1) != t_w:
            return False
    by_weight: dict[int, list[int]] = {}
    for v in sorted(w):
        by_weight.setdefault(w[v], []).append(inst.pos[v])
    weights = sorted(by_weight)
    prefixes = []
    for i in weights:
        pre = [0]
        for p in by_weight[i]:
            pre.append(pre[-1] | (1 << p))
        prefixes.append(pre)
    for x in itertools.product(*(range(len(p)) for p in prefixes)):
        mask = 0
        total = 0
        for wt, c, pre in zip(weights, x, prefixes):
            mask |= pre[c]
            total += wt * c
        if inst.is_solution(mask) != (total == t_w):
            return False
    return True


def _solve(inst: DominationInstance, k: int, target: int | None) -> WeightStructure | None:
    if len(inst.blocks) > k:
        return None
    D = inst.mask_of(find_any_minimal_solution(inst))
    probes = _probe_solutions(inst)
    tried = 0
    for w in _omega(inst, k, target, D):
        tried += 1
        t_w = sum(w[v] for v in inst.elements_of(D))
        if target is not None and t_w != target:
            continue
        if _check(inst, w, t_w, probes):
            return WeightStructure(w, t_w, {"omega_tried": tried})
    return None


def solve_k(inst: DominationInstance, k: int) -> WeightStructure | None:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _solve(inst, k, None)


def solve_target_t(inst: DominationInstance, t: int) -> WeightStructure | None:
    if t < 1:
        raise ValueError("t must be >= 1")
    return _solve(inst, t, t)


# -- end-to-end decisions -----------------------------------------------------

@dataclass(frozen=True)
class Yes:
    structure: WeightStructure
    info: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class No:
    reason: str
    info: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return False


Decision = Yes | No
NO_STRUCTURE_ON_KERNEL = "no structure on the kernel"


def _finish(G: Graph, outcome, solve, verify: bool) -> Decision:
    if isinstance(outcome, NotEquidominating):
        return No(outcome.reason, {"detail": outcome.detail})
    if isinstance(outcome, Classified):
        if outcome.structure is None:
            return No(outcome.reason, {"kernel": "classified"})
        s = outcome.structure
        info = {"kernel": "classified"}
    else:
        if isinstance(outcome, PseudoKernel):
            inst = DominationInstance.from_pseudo_graph(outcome.pseudo_graph)
            info = {"kernel": "pseudo_graph", "kernel_size": len(outcome.pseudo_graph),
                    "blocks": outcome.pseudo_graph.s}
        else:
            inst = DominationInstance.from_graph(outcome.graph)
            info = {"kernel": "graph", "kernel_size": outcome.graph.n, "blocks": len(inst.blocks)}
        found = solve(inst)
        if found is None:
            return No(NO_STRUCTURE_ON_KERNEL, info)
        if isinstance(outcome, GraphKernel):
            kept = outcome.trace.kept
            found = WeightStructure({kept[v]: wt for v, wt in found.weights.items()}, found.t)
        s = lift_structure(G, outcome.trace, found)
    if verify and G.n <= VERIFY_LIMIT:
        if not verify_structure(G, s):
            raise IntegrityError("lifted structure fails verification")
        info["verified"] = True
    return Yes(s, info)


def decide_k_equidomination(G: Graph, k: int, verify: bool = True) -> Decision:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _finish(G, kernel_k(G, k), lambda inst: solve_k(inst, k), verify)


def decide_target_t(G: Graph, t: int, verify: bool = True) -> Decision:
    if t < 1:
        raise ValueError("t must be >= 1")
    return _finish(G, kernel_target_t(G, t), lambda inst: solve_target_t(inst, t), verify)
