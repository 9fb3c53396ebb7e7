"""Matching-based upper bound on the shortest superstring length.

Pairing strings so that the summed pairwise overlap is maximal gives a
superstring of length at most ``sum(|x|) - mu(S)``, where ``mu(S)`` is the
weight of a maximum-weight matching in the overlap graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx
import numpy as np

from ._jit import njit, pick
from .errors import CapacityError, ContractError
from .strings_core import build_overlap_table, collection, merge, reduce_to_maximal

ORACLE_LIMIT = 24


@dataclass(frozen=True)
class WeightedOverlapGraph:
    """Undirected weighted graph; edge keys are ``(u, v)`` with ``u < v``.

    ``orientation[(u, v)]`` is the ordered pair whose directed overlap attains
    the edge weight.
    """

    vertices: tuple[int, ...]
    weights: Mapping[tuple[int, int], int]
    orientation: Mapping[tuple[int, int], tuple[int, int]]

    def weight(self, u: int, v: int) -> int:
        return self.weights.get((min(u, v), max(u, v)), 0)

    def matrix(self) -> np.ndarray:
        pos = {v: p for p, v in enumerate(self.vertices)}
        w = np.zeros((len(self.vertices),) * 2, dtype=np.int64)
        for (u, v), wt in self.weights.items():
            w[pos[u], pos[v]] = w[pos[v], pos[u]] = wt
        return w


@dataclass(frozen=True)
class MatchingResult:
    edges: tuple[tuple[int, int], ...]
    total_weight: int
    orientation: Mapping[tuple[int, int], tuple[int, int]]


def build_weighted_graph(S) -> WeightedOverlapGraph:
    """Complete overlap graph on the maximal distinct strings of ``S``."""
    M, _ = reduce_to_maximal(collection(S))
    table = build_overlap_table(M)
    ov = table.proper()
    ids = table.ids
    weights, orient = {}, {}
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            fwd, back = int(ov[a, b]), int(ov[b, a])
            key = (ids[a], ids[b])
            weights[key] = max(fwd, back)
            orient[key] = key if fwd >= back else (ids[b], ids[a])
    return WeightedOverlapGraph(tuple(ids), weights, orient)


def max_weight_matching(G: WeightedOverlapGraph) -> MatchingResult:
    """Exact maximum-weight matching (Edmonds' blossom algorithm via networkx)."""
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_weighted_edges_from((u, v, w) for (u, v), w in G.weights.items() if w > 0)
    pairs = sorted((min(u, v), max(u, v)) for u, v in nx.max_weight_matching(g))
    total = sum(G.weights[e] for e in pairs)
    orient = {e: G.orientation.get(e, e) for e in pairs}
    return MatchingResult(tuple(pairs), total, orient)


# ---------------------------------------------------------------- oracle


@njit
def _matching_dp_jit(w):
    n = w.shape[0]
    f = np.zeros(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        i = 0
        while not (mask >> i) & 1:
            i += 1
        rest = mask ^ (1 << i)
        best = f[rest]
        for j in range(i + 1, n):
            if (rest >> j) & 1:
                v = w[i, j] + f[rest ^ (1 << j)]
                if v > best:
                    best = v
        f[mask] = best
    return f


def _matching_dp_numpy(w):
    n = w.shape[0]
    f = np.zeros(1 << n, dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    low = masks & -masks
    lowest = np.zeros_like(masks)
    for b in range(n):
        lowest[low == (1 << b)] = b
    pc = np.zeros_like(masks)
    for b in range(n):
        pc += (masks >> b) & 1
    for p in range(1, n + 1):
        layer = masks[pc == p]
        li = lowest[layer]
        rest = layer ^ (1 << li)
        best = f[rest]
        for j in range(n):
            has = ((rest >> j) & 1).astype(bool)
            cand = w[li[has], j] + f[rest[has] ^ (1 << j)]
            best[has] = np.maximum(best[has], cand)
        f[layer] = best
    return f


matching_dp = pick(_matching_dp_jit, _matching_dp_numpy)


def max_weight_matching_bruteforce(G: WeightedOverlapGraph, limit: int = ORACLE_LIMIT) -> int:
    """Test oracle: maximum matching weight by DP over vertex subsets."""
    n = len(G.vertices)
    if n > limit:
        raise CapacityError(f"{n} vertices exceed the subset-DP limit {limit}")
    if n == 0:
        return 0
    return int(matching_dp(G.matrix())[-1])


# ---------------------------------------------------------------- superstrings


def matching_superstring(S, M: MatchingResult) -> bytes:
    """Merge every matched pair in its heavier direction, then append the rest."""
    S = collection(S)
    Mx, _ = reduce_to_maximal(S)
    vertices = set(Mx.ids)
    seen: set[int] = set()
    order: list[int] = []
    for e in M.edges:
        a, b = M.orientation.get(e, e)
        if {a, b} != set(e) or a in seen or b in seen or not {a, b} <= vertices:
            raise ContractError(f"{e} is not an edge of a matching in G(S)")
        seen.update(e)
        order += [a, b]
    order += [i for i in Mx.ids if i not in seen]
    acc = b""
    for i in order:
        acc = merge(acc, Mx.get(i).data) if acc else Mx.get(i).data
    return acc


def matching_bound(S) -> int:
    """``sum(|x|) - mu(S)``: an upper bound on the optimal superstring length."""
    S = collection(S)
    return S.total_length - max_weight_matching(build_weighted_graph(S)).total_weight


def greedy_superstring(S) -> bytes:
    """Baseline: repeatedly merge the pair with the largest overlap."""
    M, _ = reduce_to_maximal(collection(S))
    pool = list(M.strings)
    while len(pool) > 1:
        table = build_overlap_table(pool)
        ov = table.proper()
        np.fill_diagonal(ov, -1)
        i, j = np.unravel_index(int(np.argmax(ov)), ov.shape)
        merged = merge(pool[i], pool[j])
        rest = [s for p, s in enumerate(pool) if p not in (i, j) and s not in merged]
        pool = [merged] + rest
    return pool[0]
