"""Exact shortest superstring by dynamic programming over subsets.

Only inclusion-maximal distinct strings take part in the search; every other
string is a substring of one of them and is placed right after its image in
the reported order.  The polynomial-space inclusion-exclusion variant is not
provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ._jit import njit, pick
from .errors import CapacityError, InputError
from .strings_core import (
    WeightedCollection,
    build_overlap_table,
    collection,
    merge,
    reduce_to_maximal,
    superstring_from_order,
)

DEFAULT_WIDTH = 24
BRUTEFORCE_LIMIT = 9
_INF32 = np.iinfo(np.int32).max // 2


@dataclass(frozen=True)
class ExactResult:
    superstring: bytes
    length: int
    order: tuple[int, ...]


def _transition_costs(M: WeightedCollection) -> np.ndarray:
    """``cost[i, j]``: symbols added when ``s_j`` follows ``s_i``."""
    table = build_overlap_table(M)
    cost = table.lengths[None, :] - table.proper()
    np.fill_diagonal(cost, 0)
    return cost.astype(np.int32)


@njit
def _remaining_cost_jit(cost):
    # g[mask, last]: least symbols needed to append every string in mask after `last`
    n = cost.shape[0]
    full = 1 << n
    into = np.ascontiguousarray(cost.T)  # into[j, last] = cost[last, j]
    g = np.empty((full, n), dtype=np.int32)
    g[0, :] = 0
    row = np.empty(n, dtype=np.int32)
    for mask in range(1, full):
        row[:] = _INF32
        for j in range(n):
            if not (mask >> j) & 1:
                continue
            prev = g[mask ^ (1 << j), j]
            cj = into[j]
            for last in range(n):
                v = cj[last] + prev
                if v < row[last]:
                    row[last] = v
        g[mask, :] = row
    return g


def _popcount(x: np.ndarray) -> np.ndarray:
    c = np.zeros_like(x)
    y = x.copy()
    while y.any():
        c += y & 1
        y >>= 1
    return c


def _remaining_cost_numpy(cost):
    n = cost.shape[0]
    full = 1 << n
    g = np.empty((full, n), dtype=np.int32)
    g[0, :] = 0
    masks = np.arange(full, dtype=np.int64)
    pc = _popcount(masks)
    for p in range(1, n + 1):
        layer = masks[pc == p]
        best = np.full((layer.shape[0], n), _INF32, dtype=np.int32)
        for j in range(n):
            has = ((layer >> j) & 1).astype(bool)
            prev = g[layer[has] ^ (1 << j), j]
            cand = prev[:, None] + cost[:, j][None, :]
            best[has] = np.minimum(best[has], cand)
        g[layer] = best
    return g


remaining_cost = pick(_remaining_cost_jit, _remaining_cost_numpy)


def _expand_order(max_order, mapping) -> tuple[int, ...]:
    followers: dict[int, list[int]] = {}
    for orig, image in sorted(mapping.items()):
        if orig != image:
            followers.setdefault(image, []).append(orig)
    out: list[int] = []
    for i in max_order:
        out.append(i)
        out.extend(followers.get(i, ()))
    return tuple(out)


def _result(S, max_order, mapping, expected_length=None) -> ExactResult:
    order = _expand_order(max_order, mapping)
    s = superstring_from_order(order, S)
    if expected_length is not None and len(s) != expected_length:
        raise AssertionError(f"fold length {len(s)} != DP optimum {expected_length}")
    return ExactResult(superstring=s, length=len(s), order=order)


def shortest_superstring_dp(S, max_width: int = DEFAULT_WIDTH) -> ExactResult:
    """Minimum-length superstring of the whole multiset ``S``.

    Among optimal orders of the maximal strings the lexicographically
    smallest id sequence is returned.
    """
    S = collection(S)
    if len(S) == 0:
        raise InputError("collection is empty")
    M, mapping = reduce_to_maximal(S)
    n = len(M)
    if n > max_width:
        raise CapacityError(f"{n} maximal strings exceed the bitmask width {max_width}")
    if M.total_length >= _INF32:
        raise CapacityError("total length does not fit the DP table dtype")
    lengths = np.array([len(x) for x in M.strings], dtype=np.int64)
    cost = _transition_costs(M)
    g = remaining_cost(cost)
    full = (1 << n) - 1

    starts = [int(lengths[i]) + int(g[full ^ (1 << i), i]) for i in range(n)]
    best = min(starts)
    last = starts.index(best)
    seq = [last]
    rest = full ^ (1 << last)
    while rest:
        target = g[rest, last]
        for j in range(n):
            if rest >> j & 1 and cost[last, j] + g[rest ^ (1 << j), j] == target:
                break
        seq.append(j)
        rest ^= 1 << j
        last = j
    ids = M.ids
    return _result(S, [ids[p] for p in seq], mapping, expected_length=best)


def shortest_superstring_bruteforce(S, limit: int = BRUTEFORCE_LIMIT) -> ExactResult:
    """Test oracle: fold ``merge`` over every permutation of the maximal strings."""
    S = collection(S)
    if len(S) == 0:
        raise InputError("collection is empty")
    M, mapping = reduce_to_maximal(S)
    if len(M) > limit:
        raise CapacityError(f"{len(M)} maximal strings exceed the brute-force limit {limit}")
    best_len, best_perm = None, None
    for perm in permutations(M.ids):
        acc = b""
        for i in perm:
            acc = merge(acc, M.get(i).data) if acc else M.get(i).data
        if best_len is None or len(acc) < best_len:
            best_len, best_perm = len(acc), perm
    return _result(S, best_perm, mapping)


def optimal_length(S, max_width: int = DEFAULT_WIDTH) -> int:
    S = collection(S)
    if len(S) == 0:
        return 0
    return shortest_superstring_dp(S, max_width).length


def decide(S, ell: int, max_width: int = DEFAULT_WIDTH) -> bool:
    """Is there a superstring of ``S`` of length at most ``ell``?"""
    if ell < 0:
        raise InputError("ell must be non-negative")
    return optimal_length(S, max_width) <= ell
