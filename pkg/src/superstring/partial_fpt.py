"""Color-coding solver for Partial (Weighted) Superstring.

``colorful_dp`` finds, for a fixed coloring, the heaviest selection of ``k``
strings with pairwise distinct colors that fits in a superstring of length
at most ``ell``.  ``solve_weighted`` repeats it over random colorings
(one-sided Monte Carlo) or over an exhaustively verified perfect coloring
family (exact).  ``solve_partial`` handles the unweighted multiset problem by
collapsing copies into weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from ._jit import njit, pick
from .errors import CapacityError, ContractError, InputError
from .exact_solver import shortest_superstring_dp
from .strings_core import (
    WeightedCollection,
    build_overlap_table,
    collection,
    superstring_from_order,
)

INFEASIBLE = -1
DEFAULT_DELTA = 0.01
DEFAULT_BUDGET = 200_000

RANDOMIZED = "randomized"
DETERMINISTIC = "deterministic"


@dataclass(frozen=True)
class ColorAssignment:
    """Colors ``0..k-1`` by item position; ``seed`` is None for enumerated ones."""

    colors: tuple[int, ...]
    k: int
    seed: int | None = None

    def __post_init__(self):
        if any(not 0 <= c < self.k for c in self.colors):
            raise InputError("color out of range")

    def by_id(self, S: WeightedCollection) -> dict[int, int]:
        return dict(zip(S.ids, self.colors))


@dataclass(frozen=True)
class PartialAnswer:
    found: bool
    chosen: tuple[int, ...] = ()
    superstring: bytes = b""
    weight: int = 0
    trials: int = 0


@dataclass(frozen=True)
class ColorfulDpTable:
    """``W[X, x, h]`` over color masks ``X``, positions ``x`` and lengths ``h``.

    ``parent`` records which transition produced each entry: ``-1`` for the
    single-string base case, ``y`` when substring ``y`` of ``x`` was added,
    ``n + y`` when ``x`` was appended after ``y``.
    """

    W: np.ndarray
    parent: np.ndarray

    def value(self, X: int, x: int, h: int) -> int | None:
        v = int(self.W[X, x, h])
        return None if v == INFEASIBLE else v


# ---------------------------------------------------------------- kernels


@njit
def _colorful_jit(colors, weights, lengths, ov, sub, k, ell):
    n = colors.shape[0]
    full = 1 << k
    W = np.full((full, n, ell + 1), -1, dtype=np.int64)
    par = np.full((full, n, ell + 1), -2, dtype=np.int32)
    for X in range(1, full):
        for x in range(n):
            c = colors[x]
            if not (X >> c) & 1:
                continue
            if X == (1 << c):
                for h in range(lengths[x], ell + 1):
                    W[X, x, h] = weights[x]
                    par[X, x, h] = -1
                continue
            Xc = X ^ (1 << c)
            for h in range(ell + 1):
                best = -1
                bp = -2
                for y in range(n):
                    if y == x or not sub[y, x]:
                        continue
                    cy = colors[y]
                    if cy == c or not (X >> cy) & 1:
                        continue
                    v = W[X ^ (1 << cy), x, h]
                    if v >= 0 and v + weights[y] > best:
                        best = v + weights[y]
                        bp = y
                for y in range(n):
                    if y == x or sub[y, x] or sub[x, y]:
                        continue
                    hh = h - lengths[x] + ov[y, x]
                    if hh < 0:
                        continue
                    v = W[Xc, y, hh]
                    if v >= 0 and v + weights[x] > best:
                        best = v + weights[x]
                        bp = n + y
                W[X, x, h] = best
                par[X, x, h] = bp
    return W, par


def _colorful_numpy(colors, weights, lengths, ov, sub, k, ell):
    n = colors.shape[0]
    full = 1 << k
    W = np.full((full, n, ell + 1), -1, dtype=np.int64)
    par = np.full((full, n, ell + 1), -2, dtype=np.int32)
    hs = np.arange(ell + 1)
    idx = np.arange(n)
    for X in range(1, full):
        in_x = ((X >> colors) & 1).astype(bool)
        for x in range(n):
            c = colors[x]
            if not in_x[x]:
                continue
            if X == (1 << c):
                fits = hs >= lengths[x]
                W[X, x, fits] = weights[x]
                par[X, x, fits] = -1
                continue
            best = np.full(ell + 1, -1, dtype=np.int64)
            bp = np.full(ell + 1, -2, dtype=np.int32)

            ys = idx[sub[:, x] & (idx != x) & in_x & (colors != c)]
            if ys.size:
                prev = W[X ^ (1 << colors[ys]), x, :]
                cand = np.where(prev >= 0, prev + weights[ys, None], -1)
                arg = np.argmax(cand, axis=0)
                top = cand[arg, hs]
                take = top > best
                best[take] = top[take]
                bp[take] = ys[arg[take]]

            ys = idx[~sub[:, x] & ~sub[x, :] & (idx != x)]
            if ys.size:
                hh = hs[None, :] - lengths[x] + ov[ys, x][:, None]
                ok = hh >= 0
                prev = W[X ^ (1 << c), ys[:, None], np.maximum(hh, 0)]
                cand = np.where(ok & (prev >= 0), prev + weights[x], -1)
                arg = np.argmax(cand, axis=0)
                top = cand[arg, hs]
                take = top > best
                best[take] = top[take]
                bp[take] = n + ys[arg[take]]

            W[X, x, :] = best
            par[X, x, :] = bp
    return W, par


colorful_kernel = pick(_colorful_jit, _colorful_numpy)


# ---------------------------------------------------------------- solver


class _Prepared:
    """Per-instance arrays shared by every coloring."""

    def __init__(self, S: WeightedCollection):
        table = build_overlap_table(S)
        self.S = S
        self.n = len(S)
        self.data = S.strings
        self.lengths = table.lengths
        self.weights = np.array(S.weights, dtype=np.int64)
        self.ov = table.proper()
        sub = table.sub.copy()
        np.fill_diagonal(sub, False)
        self.sub = sub

    def run(self, colors: np.ndarray, k: int, ell: int) -> ColorfulDpTable:
        W, par = colorful_kernel(
            colors.astype(np.int64), self.weights, self.lengths, self.ov, self.sub, k, ell
        )
        return ColorfulDpTable(W, par)

    def witness(self, table: ColorfulDpTable, colors, k: int, ell: int):
        full = (1 << k) - 1
        final = table.W[full, :, ell]
        x = int(np.argmax(final))
        if final[x] == INFEASIBLE:
            return None
        chosen: list[int] = []
        pieces: list[bytes] = []
        X, h = full, ell
        while True:
            p = int(table.parent[X, x, h])
            if p == -1:
                chosen.append(x)
                pieces.append(self.data[x])
                break
            if p < self.n:
                chosen.append(p)
                X ^= 1 << int(colors[p])
                continue
            y = p - self.n
            o = int(self.ov[y, x])
            chosen.append(x)
            pieces.append(self.data[x][o:])
            X ^= 1 << int(colors[x])
            h = h - int(self.lengths[x]) + o
            x = y
        s = b"".join(reversed(pieces))
        ids = tuple(sorted(self.S.ids[i] for i in chosen))
        return PartialAnswer(True, ids, s, int(final.max()))


def _certify(ans: PartialAnswer, S: WeightedCollection, k: int, ell: int, W: int) -> PartialAnswer:
    if not ans.found:
        return ans
    problems = []
    if len(ans.superstring) > ell:
        problems.append("too long")
    if len(set(ans.chosen)) != k or len(ans.chosen) != k:
        problems.append("wrong cardinality")
    if any(S.get(i).data not in ans.superstring for i in ans.chosen):
        problems.append("missing string")
    if sum(S.weight(i) for i in ans.chosen) != ans.weight or ans.weight < W:
        problems.append("weight mismatch")
    if problems:
        raise ContractError(f"invalid witness: {', '.join(problems)}")
    return ans


def colorful_dp(S, coloring: ColorAssignment, k: int, ell: int):
    """Best rainbow selection for one coloring.

    Returns ``(weight, answer)``; ``weight`` is None when no selection of
    ``k`` distinctly colored strings fits in length ``ell``.
    """
    S = collection(S)
    if coloring.k != k or len(coloring.colors) != len(S):
        raise InputError("coloring must assign one of k colors to every item")
    if ell < 0:
        raise InputError("ell must be non-negative")
    prep = _Prepared(S)
    colors = np.array(coloring.colors, dtype=np.int64)
    table = prep.run(colors, k, ell)
    ans = prep.witness(table, colors, k, ell)
    if ans is None:
        return None, PartialAnswer(False)
    return ans.weight, _certify(ans, S, k, ell, 0)


def trials_needed(k: int, delta: float) -> int:
    """Random colorings needed for failure probability at most ``delta``."""
    if not 0 < delta < 1:
        raise InputError("delta must lie in (0, 1)")
    return max(1, math.ceil(math.exp(k) * math.log(1 / delta)))


def perfect_family(n: int, k: int, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[np.ndarray]:
    """Colorings under which every ``k``-subset of ``range(n)`` is rainbow.

    Seeded random colorings are kept while they cover new subsets; subsets
    still uncovered afterwards get a dedicated coloring.  Coverage is checked
    against the full subset enumeration, so the family is exact.
    """
    if k <= 1:
        return [np.zeros(n, dtype=np.int64)]
    total = math.comb(n, k)
    if total > budget:
        raise CapacityError(f"C({n},{k}) = {total} subsets exceed the budget {budget}")
    subsets = np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)

    def rainbow(col):
        cs = np.sort(col[subsets], axis=1)
        return np.all(np.diff(cs, axis=1) > 0, axis=1)

    uncovered = np.ones(total, dtype=bool)
    family: list[np.ndarray] = []
    rng = np.random.default_rng(seed)
    for _ in range(math.ceil(math.exp(k) * math.log(total + 1)) + 1):
        col = rng.integers(0, k, size=n)
        hit = rainbow(col)
        if (hit & uncovered).any():
            family.append(col)
            uncovered &= ~hit
            if not uncovered.any():
                return family
    for s in np.nonzero(uncovered)[0]:
        if not uncovered[s]:
            continue
        col = np.zeros(n, dtype=np.int64)
        col[subsets[s]] = np.arange(k)
        family.append(col)
        uncovered &= ~rainbow(col)
    return family


def _heaviest(S: WeightedCollection, k: int, ell: int, W: int) -> PartialAnswer:
    picked = sorted(S.items, key=lambda it: (-S.weight(it.id), it.id))[:k]
    ids = tuple(sorted(it.id for it in picked))
    s = superstring_from_order(list(ids), S.subset(ids))
    weight = sum(S.weight(i) for i in ids)
    if weight < W:
        return PartialAnswer(False)
    return PartialAnswer(True, ids, s, weight)


def solve_weighted(
    S,
    k: int,
    ell: int,
    W: int,
    mode: str = RANDOMIZED,
    delta: float = DEFAULT_DELTA,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> PartialAnswer:
    """Is there a superstring of length <= ``ell`` of ``k`` strings weighing >= ``W``?

    Randomized mode never reports a false yes; a no is wrong with
    probability at most ``delta``.  Deterministic mode is exact.
    """
    S = collection(S)
    if k < 1 or ell < 0 or W < 0:
        raise InputError("need k >= 1, ell >= 0, W >= 0")
    if mode not in (RANDOMIZED, DETERMINISTIC):
        raise InputError(f"unknown mode {mode!r}")
    n = len(S)
    if k > n:
        return PartialAnswer(False)
    if ell >= k * S.max_length:
        return _certify(_heaviest(S, k, ell, W), S, k, ell, W)

    prep = _Prepared(S)
    if mode == RANDOMIZED:
        colorings = (
            np.random.default_rng([seed, t]).integers(0, k, size=n)
            for t in range(trials_needed(k, delta))
        )
    else:
        colorings = iter(perfect_family(n, k, seed=seed, budget=budget))

    trials = 0
    for colors in colorings:
        trials += 1
        table = prep.run(colors, k, ell)
        ans = prep.witness(table, colors, k, ell)
        if ans is not None and ans.weight >= W:
            ans = PartialAnswer(True, ans.chosen, ans.superstring, ans.weight, trials)
            return _certify(ans, S, k, ell, W)
    return PartialAnswer(False, trials=trials)


def dedupe_to_weighted(S, k: int | None = None) -> tuple[WeightedCollection, int]:
    """Collapse equal strings into one item weighted by multiplicity.

    The retained item carries the lowest id among its copies.  The returned
    threshold is ``k`` (all copies when ``k`` is None).
    """
    S = collection(S)
    counts: dict[bytes, list[int]] = {}
    for it in sorted(S.items, key=lambda it: it.id):
        counts.setdefault(it.data, []).append(it.id)
    groups = sorted(counts.items(), key=lambda kv: kv[1][0])
    items = tuple(S.get(ids[0]) for _, ids in groups)
    weights = tuple(len(ids) for _, ids in groups)
    return WeightedCollection(items, weights), (len(S) if k is None else k)


def solve_partial(
    S,
    k: int,
    ell: int,
    mode: str = RANDOMIZED,
    delta: float = DEFAULT_DELTA,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> PartialAnswer:
    """Superstring of length <= ``ell`` covering at least ``k`` strings of the multiset."""
    S = collection(S)
    S = WeightedCollection(S.items, (1,) * len(S))
    if k < 0 or ell < 0:
        raise InputError("need k >= 0 and ell >= 0")
    if k == 0:
        return PartialAnswer(True)
    if k > len(S):
        return PartialAnswer(False)
    D, W = dedupe_to_weighted(S, k)
    copies: dict[bytes, list[int]] = {}
    for it in sorted(S.items, key=lambda it: it.id):
        copies.setdefault(it.data, []).append(it.id)
    # weights are >= 1, so some selection of at most k distinct strings suffices
    bound = min(len(D), k, ell * (ell + 1) // 2)
    trials = 0
    for kk in range(1, bound + 1):
        ans = solve_weighted(D, kk, ell, W, mode=mode, delta=delta, seed=seed, budget=budget)
        trials += ans.trials
        if ans.found:
            covered = [i for d in ans.chosen for i in copies[D.get(d).data]]
            chosen = tuple(sorted(covered[:k]))
            out = PartialAnswer(True, chosen, ans.superstring, k, trials)
            return _certify(out, S, k, ell, k)
    return PartialAnswer(False, trials=trials)


def partial_bruteforce(
    S, k: int, ell: int, W: int | None = None, budget: int = DEFAULT_BUDGET
) -> PartialAnswer:
    """Test oracle: try every ``k``-subset with the exact solver.

    Returns the heaviest feasible subset (first in lexicographic position
    order on ties); with ``W`` given it is reported found only if it reaches
    ``W``.
    """
    S = collection(S)
    if k < 0 or ell < 0:
        raise InputError("need k >= 0 and ell >= 0")
    if k == 0:
        return PartialAnswer(True)
    n = len(S)
    if k > n:
        return PartialAnswer(False)
    if math.comb(n, k) > budget:
        raise CapacityError(f"C({n},{k}) subsets exceed the budget {budget}")
    best: PartialAnswer | None = None
    for combo in combinations(range(n), k):
        ids = [S.items[p].id for p in combo]
        res = shortest_superstring_dp(S.subset(ids))
        if res.length > ell:
            continue
        weight = sum(S.weights[p] for p in combo)
        if best is None or weight > best.weight:
            best = PartialAnswer(True, tuple(sorted(ids)), res.superstring, weight)
    if best is None or (W is not None and best.weight < W):
        return PartialAnswer(False)
    return best


def max_rainbow_bruteforce(S, colors: Sequence[int], k: int, ell: int) -> int | None:
    """Test oracle: heaviest feasible ``k``-subset whose colors are pairwise distinct."""
    S = collection(S)
    best = None
    for combo in combinations(range(len(S)), k):
        if len({colors[p] for p in combo}) != k:
            continue
        ids = [S.items[p].id for p in combo]
        if shortest_superstring_dp(S.subset(ids)).length > ell:
            continue
        weight = sum(S.weights[p] for p in combo)
        best = weight if best is None else max(best, weight)
    return best
