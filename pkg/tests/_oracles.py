"""Slow reference implementations that share no code with the package."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np


def naive_overlap_len(s: bytes, t: bytes) -> int:
    if s in t:
        return len(s)
    if t in s:
        return len(t)
    for L in range(min(len(s), len(t)) - 1, 0, -1):
        if s[-L:] == t[:L]:
            return L
    return 0


def naive_merge(s: bytes, t: bytes) -> bytes:
    if s in t:
        return t
    if t in s:
        return s
    return s + t[naive_overlap_len(s, t):]


def maximal(strings) -> list[bytes]:
    distinct = sorted(set(strings))
    return [x for x in distinct if not any(x != y and x in y for y in distinct)]


def naive_shortest(strings) -> int:
    """Optimal superstring length by folding merges over every permutation."""
    M = maximal(strings)
    if not M:
        return 0
    best = None
    for perm in permutations(M):
        acc = perm[0]
        for s in perm[1:]:
            acc = naive_merge(acc, s)
        best = len(acc) if best is None else min(best, len(acc))
    return best


def naive_partial(strings, k: int, ell: int, weights=None) -> int | None:
    """Heaviest k-subset (by position) whose shortest superstring fits in ell."""
    weights = weights or [1] * len(strings)
    best = None
    for combo in combinations(range(len(strings)), k):
        if naive_shortest([strings[p] for p in combo]) <= ell:
            w = sum(weights[p] for p in combo)
            best = w if best is None else max(best, w)
    return best


def naive_matching(w: np.ndarray) -> int:
    """Maximum matching weight by recursion on the lowest vertex."""
    n = w.shape[0]
    memo: dict[int, int] = {}

    def go(mask: int) -> int:
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        best = go(rest)
        for j in range(n):
            if rest >> j & 1:
                best = max(best, int(w[i, j]) + go(rest & ~(1 << j)))
        memo[mask] = best
        return best

    return go((1 << n) - 1)


def random_strings(rng, n: int, max_len: int, alphabet: bytes = b"01", min_len: int = 1) -> list[bytes]:
    return [
        bytes(rng.choice(list(alphabet), size=int(rng.integers(min_len, max_len + 1))).tolist())
        for _ in range(n)
    ]
