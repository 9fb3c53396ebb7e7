"""Hardness-reduction instance generators and the graph oracles that check them.

* ``hampath_to_longtrail``: Hamiltonian Path -> Long Trail with target
  ``|V(G')| - 1``.
* ``longtrail_to_partial``: several Long Trail instances on the same vertex
  count -> one Partial Superstring instance over ``{0, 1}``.
* ``longtrail_to_below_matching``: Long Trail with target ``n - 1`` ->
  Shortest Superstring asking for one symbol below the matching bound.

Vertices are 0-based in ``DiGraph``; binary encodings use the 1-based index.
The superstring-to-trail direction of the below-matching reduction is not
checked end to end (exact solving at ``n >= 64`` is out of reach); its string
properties, matching weight and trail-to-superstring direction are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Iterable, Sequence

import numpy as np

from .bounds import build_weighted_graph, max_weight_matching
from .errors import CapacityError, InputError
from .strings_core import (
    WeightedCollection,
    build_overlap_table,
    superstring_from_order,
)

TRAIL_BUDGET = 18
HAMPATH_LIMIT = 9
CROSSCOMP = "longtrail_to_partial"
BELOW_MATCHING = "longtrail_to_below_matching"


@dataclass(frozen=True)
class DiGraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        seen = set()
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u}, {v}) out of range")
            if u == v:
                raise InputError("loops are not allowed")
            if (u, v) in seen:
                raise InputError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "DiGraph":
        return cls(n, tuple(sorted((int(u), int(v)) for u, v in arcs)))

    @property
    def m(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class GeneratedInstance:
    strings: WeightedCollection
    params: dict[str, int]
    provenance: dict[str, Any] = field(default_factory=dict)


def random_digraph(n: int, p: float, rng: np.random.Generator) -> DiGraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return DiGraph.from_arcs(n, arcs)


def _bits(value: int, width: int) -> str:
    if value >= 1 << width:
        raise CapacityError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b")


# ---------------------------------------------------------------- Hamiltonian path -> long trail


def hampath_to_longtrail(G: DiGraph) -> tuple[DiGraph, int]:
    """Split every vertex into an arc and add a universal source and sink.

    ``v`` becomes ``2v -> 2v+1``; arc ``(u, v)`` becomes ``(2u+1, 2v)``; the
    source ``2n`` feeds every ``2v`` and every ``2v+1`` feeds the sink
    ``2n+1``.  ``G`` has a Hamiltonian path iff the result has a trail of
    length ``2n + 1``.
    """
    n = G.n
    s, t = 2 * n, 2 * n + 1
    arcs = [(2 * v, 2 * v + 1) for v in range(n)]
    arcs += [(2 * u + 1, 2 * v) for u, v in G.arcs]
    arcs += [(s, 2 * v) for v in range(n)] + [(2 * v + 1, t) for v in range(n)]
    H = DiGraph.from_arcs(2 * n + 2, arcs)
    return H, H.n - 1


def longest_trail_bruteforce(G: DiGraph, budget: int = TRAIL_BUDGET, stop_at: int | None = None) -> int:
    """Longest trail by DFS over arcs with used-arc marking.

    With ``stop_at`` the search ends as soon as a trail that long is found and
    that length is returned.
    """
    if G.m > budget:
        raise CapacityError(f"{G.m} arcs exceed the trail budget {budget}")
    out: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for idx, (u, v) in enumerate(G.arcs):
        out[u].append((idx, v))
    used = [False] * G.m
    best = 0

    class _Done(Exception):
        pass

    def dfs(v: int, length: int) -> None:
        nonlocal best
        if length > best:
            best = length
            if stop_at is not None and best >= stop_at:
                raise _Done
        for idx, w in out[v]:
            if not used[idx]:
                used[idx] = True
                dfs(w, length + 1)
                used[idx] = False

    try:
        for v in range(G.n):
            dfs(v, 0)
    except _Done:
        pass
    return best


def hamiltonian_path_bruteforce(G: DiGraph, limit: int = HAMPATH_LIMIT) -> bool:
    if G.n > limit:
        raise CapacityError(f"{G.n} vertices exceed the permutation limit {limit}")
    arcs = set(G.arcs)
    return any(
        all((a, b) in arcs for a, b in zip(perm, perm[1:])) for perm in permutations(range(G.n))
    )


# ---------------------------------------------------------------- long trail -> partial superstring


def crosscomp_width(n: int, t: int) -> int:
    return max(n.bit_length() - 1, t.bit_length() - 1) + 2


def _crosscomp_string(graph_index: int, tail: int, head: int, r: int) -> str:
    xi, star = _bits(graph_index, r), "1" * r
    return "".join([xi, star, xi, _bits(tail, r), xi, star, xi, _bits(head, r), xi, star, xi])


def longtrail_to_partial(graphs: Sequence[DiGraph], ell: int, allow_long: bool = False) -> GeneratedInstance:
    """One string per arc of every graph; yes iff some graph has an ``ell``-arc trail.

    Consecutive arcs of a trail give strings overlapping in exactly ``7r``
    symbols, every other ordered pair overlaps in fewer.  The resulting
    instance asks for ``k = ell`` strings within length ``4r*ell + 7r``.
    """
    if not graphs:
        raise InputError("need at least one graph")
    n = graphs[0].n
    if n < 1 or any(g.n != n for g in graphs):
        raise InputError("all graphs must share one positive vertex count")
    if ell < 1:
        raise InputError("ell must be positive")
    if ell >= n and not allow_long:
        raise InputError(f"target {ell} >= vertex count {n}; pass allow_long to generate anyway")
    t = len(graphs)
    r = crosscomp_width(n, t)
    strings, arcs = [], []
    for gi, g in enumerate(graphs, start=1):
        for u, v in g.arcs:
            strings.append(_crosscomp_string(gi, u + 1, v + 1, r))
            arcs.append([gi, u, v])
    inst = GeneratedInstance(
        WeightedCollection.from_strings(strings),
        {"k": ell, "ell": 4 * r * ell + 7 * r},
        {
            "construction": CROSSCOMP,
            "n": n,
            "t": t,
            "target": ell,
            "r": r,
            "long_target": ell >= n,
            "graphs": [[list(a) for a in g.arcs] for g in graphs],
            "arcs": arcs,
        },
    )
    _assert_composable_overlaps(inst)
    return inst


def _assert_composable_overlaps(inst: GeneratedInstance) -> None:
    r = inst.provenance["r"]
    strings = inst.strings.strings
    by_tail: dict[tuple[int, int], list[int]] = {}
    for p, (gi, u, _) in enumerate(inst.provenance["arcs"]):
        by_tail.setdefault((gi, u), []).append(p)
    for p, (gi, _, v) in enumerate(inst.provenance["arcs"]):
        for q in by_tail.get((gi, v), ()):
            a, b = strings[p], strings[q]
            if a[-7 * r:] != b[: 7 * r] or any(a[-L:] == b[:L] for L in range(7 * r + 1, 11 * r)):
                raise AssertionError(f"composable strings {p}, {q} do not overlap in exactly 7r")


# ---------------------------------------------------------------- long trail -> below matching


def below_matching_blocks(n: int) -> tuple[int, int]:
    p = math.ceil((n - 1) / 3)
    return p, n - 1 - 2 * p


def _below_matching_pair(h: int, tail: int, head: int, n: int) -> tuple[str, str]:
    p, q = below_matching_blocks(n)
    z, zs = "0" + "1" * (p - 1), "1" * p
    y = _bits(2 * h, q)
    xi, xj = _bits(tail, q - 1), _bits(head, q - 1)
    return z + y + zs + z + xi + zs + z + xj + zs, z + xi + zs + z + xj + zs + z + y + zs


def longtrail_to_below_matching(G: DiGraph) -> GeneratedInstance:
    """Two strings per arc; yes iff ``G`` has a trail of length ``n - 1``.

    Item ids ``2(h-1)`` and ``2(h-1)+1`` hold the pair built from arc ``h``
    (1-based, in ``G.arcs`` order).
    """
    n, m = G.n, G.m
    if n < 64:
        raise InputError("the construction needs at least 64 vertices")
    if m < 1:
        raise InputError("the construction needs at least one arc")
    strings = []
    for h, (u, v) in enumerate(G.arcs, start=1):
        strings.extend(_below_matching_pair(h, u + 1, v + 1, n))
    S = WeightedCollection.from_strings(strings)
    mu = 2 * (n - 2) * m
    p, q = below_matching_blocks(n)
    return GeneratedInstance(
        S,
        {"ell": S.total_length - mu - 1, "mu": mu},
        {
            "construction": BELOW_MATCHING,
            "n": n,
            "m": m,
            "p": p,
            "q": q,
            "arcs": [list(a) for a in G.arcs],
        },
    )


def below_matching_superstring(inst: GeneratedInstance, trail: Sequence[int]) -> bytes:
    """Superstring built from a trail given as 0-based arc indices.

    Trail arcs contribute ``s'_h, s_h`` in trail order, the remaining arcs
    ``s_h, s'_h`` in index order.
    """
    arcs = inst.provenance["arcs"]
    if len(set(trail)) != len(trail):
        raise InputError("a trail may not repeat an arc")
    for a, b in zip(trail, trail[1:]):
        if arcs[a][1] != arcs[b][0]:
            raise InputError(f"arcs {a} and {b} are not consecutive")
    order = []
    for h in trail:
        order += [2 * h + 1, 2 * h]
    for h in range(len(arcs)):
        if h not in set(trail):
            order += [2 * h, 2 * h + 1]
    return superstring_from_order(order, inst.strings)


# ---------------------------------------------------------------- verification


@dataclass
class Report:
    construction: str
    checks: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_construction(inst: GeneratedInstance) -> Report:
    """Recompute overlaps and parameters and compare them with the construction's claims."""
    kind = inst.provenance.get("construction")
    if kind == CROSSCOMP:
        return _verify_crosscomp(inst)
    if kind == BELOW_MATCHING:
        return _verify_below_matching(inst)
    raise InputError(f"unknown construction {kind!r}")


def _common_checks(rep: Report, inst: GeneratedInstance, expected: list[str], length: int) -> None:
    got = inst.strings.strings
    rep.checks["alphabet"] = all(set(s) <= set(b"01") for s in got)
    rep.checks["template"] = got == [s.encode() for s in expected]
    rep.checks["lengths"] = all(len(s) == length for s in got)


def _verify_crosscomp(inst: GeneratedInstance) -> Report:
    pv = inst.provenance
    r, n, t, ell = pv["r"], pv["n"], pv["t"], pv["target"]
    rep = Report(CROSSCOMP)
    arcs = pv["arcs"]
    expected = [_crosscomp_string(gi, u + 1, v + 1, r) for gi, u, v in arcs]
    _common_checks(rep, inst, expected, 11 * r)
    rep.checks["width"] = r == crosscomp_width(n, t)
    rep.checks["params"] = inst.params == {"k": ell, "ell": 4 * r * ell + 7 * r}

    table = build_overlap_table(inst.strings)
    N = len(arcs)
    off = ~np.eye(N, dtype=bool)
    rep.checks["no_containment"] = not table.sub[off].any()
    ov = table.ov
    composable = np.array(
        [[a[0] == b[0] and a[2] == b[1] for b in arcs] for a in arcs], dtype=bool
    ).reshape(N, N)
    rep.checks["overlap_cap"] = bool((ov[off] <= 7 * r).all())
    rep.checks["overlap_equality"] = bool(((ov == 7 * r) == composable)[off].all())
    rep.notes["max_overlap"] = int(ov[off].max()) if N > 1 else 0
    return rep


def _verify_below_matching(inst: GeneratedInstance) -> Report:
    pv = inst.provenance
    n, arcs = pv["n"], pv["arcs"]
    m = len(arcs)
    p, q = below_matching_blocks(n)
    rep = Report(BELOW_MATCHING)
    expected = []
    for h, (u, v) in enumerate(arcs, start=1):
        expected.extend(_below_matching_pair(h, u + 1, v + 1, n))
    _common_checks(rep, inst, expected, 6 * p + 3 * q - 2)

    ov = build_overlap_table(inst.strings).ov
    s_idx = np.arange(m) * 2
    sp_idx = s_idx + 1
    rep.checks["property_i"] = bool(
        (ov[s_idx, sp_idx] == 2 * (n - 2)).all() and (ov[sp_idx, s_idx] == n - 1).all()
    )
    heads = np.array([a[1] for a in arcs])
    tails = np.array([a[0] for a in arcs])
    chain = heads[:, None] == tails[None, :]
    off = ~np.eye(m, dtype=bool)
    cross = ov[np.ix_(s_idx, sp_idx)]
    rep.checks["property_ii"] = bool((np.where(chain, cross == n - 2, cross == 0))[off].all())
    rep.checks["property_iii"] = bool(
        (ov[np.ix_(sp_idx, s_idx)][off] == 0).all()
        and (ov[np.ix_(s_idx, s_idx)][off] == 0).all()
        and (ov[np.ix_(sp_idx, sp_idx)][off] == 0).all()
    )
    mu = max_weight_matching(build_weighted_graph(inst.strings)).total_weight
    rep.notes["mu"] = mu
    rep.checks["matching"] = mu == 2 * (n - 2) * m
    rep.checks["params"] = inst.params == {
        "ell": inst.strings.total_length - 2 * (n - 2) * m - 1,
        "mu": 2 * (n - 2) * m,
    }
    return rep
