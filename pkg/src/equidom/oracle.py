"""Brute-force ground truth for minimal dominating sets and equidominating structures.

Nothing here calls into the twin, pseudo-class, kernel or solver modules; the
only shared code is the ``Graph`` container.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .graph import Graph
from .structure import WeightStructure


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 25
    max_nodes: int = 20_000_000  # search nodes for the weight-function sweeps

    @classmethod
    def from_env(cls) -> Budget:
        """Read ``EQUIDOM_BUDGET``: a bare int (vertex cap) or ``key=value,...``."""
        raw = os.environ.get("EQUIDOM_BUDGET", "").strip()
        if not raw:
            return cls()
        if raw.isdigit():
            return cls(max_vertices=int(raw))
        fields = {}
        for part in raw.split(","):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in ("max_vertices", "max_nodes"):
                raise ValueError(f"unknown EQUIDOM_BUDGET key {key!r}")
            fields[key] = int(float(value))
        return cls(**fields)


def _budget(budget: Budget | None) -> Budget:
    return Budget.from_env() if budget is None else budget


def _check_size(G: Graph, budget: Budget) -> None:
    if G.n > budget.max_vertices:
        raise BudgetExceeded(
            f"oracle refuses n={G.n} (cap {budget.max_vertices}; raise via EQUIDOM_BUDGET)"
        )


def _bits(m: int) -> list[int]:
    return [i for i in range(m.bit_length()) if m >> i & 1]


def subset_tables(G: Graph, budget: Budget | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Boolean arrays over all ``2**n`` subsets: (dominating, minimal dominating)."""
    budget = _budget(budget)
    _check_size(G, budget)
    n = G.n
    size = 1 << n
    closed = [G.adj[v] | (1 << v) for v in range(n)]
    dom = np.zeros(size, dtype=np.uint32)
    for i in range(n):
        dom[1 << i : 1 << (i + 1)] = dom[: 1 << i] | np.uint32(closed[i])
    dominating = dom == np.uint32((1 << n) - 1)
    idx = np.arange(size, dtype=np.uint32)
    redundant = np.zeros(size, dtype=bool)
    for i in range(n):
        bit = np.uint32(1 << i)
        redundant |= ((idx & bit) != 0) & dominating[idx ^ bit]
    return dominating, dominating & ~redundant


def enumerate_mds(G: Graph, budget: Budget | None = None) -> list[int]:
    """All minimal dominating sets as masks, in lexicographic order of sorted members."""
    _, mds = subset_tables(G, budget)
    found = [int(m) for m in np.flatnonzero(mds)]
    found.sort(key=_bits)
    return found


def _weight_t_subsets(weights: list[int], t: int):
    """Yield every subset mask of total weight exactly ``t``.

    Depth-first over vertices sorted by descending weight, pruned by the
    remaining suffix sum.
    """
    order = sorted(range(len(weights)), key=lambda v: -weights[v])
    w = [weights[v] for v in order]
    suffix = [0] * (len(w) + 1)
    for i in range(len(w) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + w[i]

    def rec(i, remaining, m):
        if remaining == 0:
            yield m
            return
        if i == len(w) or suffix[i] < remaining:
            return
        if w[i] <= remaining:
            yield from rec(i + 1, remaining - w[i], m | (1 << order[i]))
        yield from rec(i + 1, remaining, m)

    yield from rec(0, t, 0)


def verify_structure(G: Graph, s: WeightStructure, budget: Budget | None = None) -> bool:
    """Check both directions of ``D is an mds <=> w(D) == t``."""
    if set(s.weights) != set(range(G.n)):
        return False
    _, mds = subset_tables(G, budget)
    weights = s.as_list(G.n)
    for m in np.flatnonzero(mds):
        if sum(weights[v] for v in _bits(int(m))) != s.t:
            return False
    return all(mds[m] for m in _weight_t_subsets(weights, s.t))


def _search_weights(G: Graph, k: int, target: int | None, budget: Budget):
    """Lexicographically first ``w: V -> [k]`` whose mds all weigh the same.

    Vertices are assigned in id order with ascending values, so the first
    complete assignment that also passes the converse check is the
    lexicographically smallest equidominating function. Each mds with
    partial sum ``p`` and ``r`` unassigned members can still reach any total
    in ``[p + r, p + k r]``; a branch dies once these intervals (and the
    ``target``, if given) no longer share a point.

    Swapping two twins is an automorphism, so the lexicographically first
    solution is non-decreasing along each twin class; values below the
    previous twin's are skipped.
    """
    _, mds_table = subset_tables(G, budget)
    mds_list = [_bits(int(m)) for m in np.flatnonzero(mds_table)]
    n = G.n
    touching = [np.array([j for j, D in enumerate(mds_list) if v in D], dtype=np.int64)
                for v in range(n)]
    partial = np.zeros(len(mds_list), dtype=np.int64)
    left = np.array([len(D) for D in mds_list], dtype=np.int64)
    weights = [0] * n
    nodes = 0
    floor_of = [None] * n  # previous vertex with the same open or closed neighborhood
    seen: dict[tuple[str, int], int] = {}
    for v in range(n):
        for key in (("open", G.adj[v]), ("closed", G.adj[v] | (1 << v))):
            if key in seen:
                floor_of[v] = seen[key]
            seen[key] = v

    def feasible() -> bool:
        lo = int((partial + left).max())
        hi = int((partial + k * left).min())
        if target is not None:
            return lo <= target <= hi
        return lo <= hi

    def rec(v):
        nonlocal nodes
        if v == n:
            t = int(partial[0])
            if all(mds_table[m] for m in _weight_t_subsets(weights, t)):
                return WeightStructure(dict(enumerate(weights)), t)
            return None
        idx = touching[v]
        left[idx] -= 1
        found = None
        start = 1 if floor_of[v] is None else weights[floor_of[v]]
        for value in range(start, k + 1):
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetExceeded(f"oracle search exceeded {budget.max_nodes} nodes")
            weights[v] = value
            partial[idx] += value
            if feasible():
                found = rec(v + 1)
            partial[idx] -= value
            if found is not None:
                break
        left[idx] += 1
        if found is None:
            weights[v] = 0
        return found

    return rec(0)


def brute_force_k_equidominating(
    G: Graph, k: int, budget: Budget | None = None
) -> WeightStructure | None:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _search_weights(G, k, None, _budget(budget))


def brute_force_target_t(G: Graph, t: int, budget: Budget | None = None) -> WeightStructure | None:
    """Structure with target exactly ``t``; weights above ``t`` are useless
    because every vertex lies in some mds."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return _search_weights(G, t, t, _budget(budget))


def mds_exchangeable_bruteforce(G: Graph, x: int, y: int, budget: Budget | None = None) -> bool:
    _, mds = subset_tables(G, budget)
    pair = (1 << x) | (1 << y)
    witnessed = False
    for m in np.flatnonzero(mds):
        m = int(m)
        if (m & pair).bit_count() == 1:
            witnessed = True
            if not mds[m ^ pair]:
                return False
    return witnessed
