"""Polynomial kernel for Shortest Superstring parameterized by compression.

The parameter is ``r = sum(|x|) - ell``: the number of symbols a solution
must save over plain concatenation.  ``kernelize`` either decides the
instance or returns an equivalent one with at most ``2h^3 + 4h^2 + h``
strings of length at most ``2r`` each, where ``h <= 2(r - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import CapacityError, ContractError, InputError
from .strings_core import (
    StringItem,
    WeightedCollection,
    build_overlap_table,
    collection,
    overlap,
)


@dataclass(frozen=True)
class RuleFiring:
    rule: str
    ids: tuple[int, ...]
    detail: dict[str, Any] = field(default_factory=dict)

    def as_record(self) -> dict[str, Any]:
        return {"rule": self.rule, "ids": list(self.ids), **self.detail}


@dataclass(frozen=True)
class KernelOutcome:
    """Either a decision (``answer`` set) or a reduced instance."""

    answer: bool | None
    rule: str
    strings: WeightedCollection | None
    ell: int | None
    r: int
    h: int | None
    trace: tuple[RuleFiring, ...]

    @property
    def decided(self) -> bool:
        return self.answer is not None

    @property
    def size_bound(self) -> int | None:
        if self.h is None:
            return None
        h = self.h
        return 2 * h**3 + 4 * h**2 + h


@dataclass(frozen=True)
class MatchingContext:
    """Conflict graph, a greedy maximal matching and the cover/independent split."""

    edges: tuple[tuple[int, int], ...]
    matching: tuple[tuple[int, int], ...]
    X: tuple[int, ...]
    Y: tuple[int, ...]


class _State:
    def __init__(self, S: WeightedCollection, ell: int):
        self.items: dict[int, bytes] = {it.id: it.data for it in S}
        self.ell = ell
        self.trace: list[RuleFiring] = []

    @property
    def r(self) -> int:
        return sum(len(x) for x in self.items.values()) - self.ell

    def collection(self) -> WeightedCollection:
        ids = sorted(self.items)
        return WeightedCollection(
            tuple(StringItem(i, self.items[i]) for i in ids), (1,) * len(ids)
        )

    def fire(self, rule: str, ids, **detail) -> None:
        self.trace.append(RuleFiring(rule, tuple(ids), detail))

    def outcome(self, answer, rule, strings=None, ell=None, h=None) -> KernelOutcome:
        return KernelOutcome(answer, rule, strings, ell, self.r, h, tuple(self.trace))


def _rule1(st: _State):
    """Delete one string contained in another; equal copies lose the higher id."""
    ids = sorted(st.items)
    for x in ids:
        sx = st.items[x]
        for y in ids:
            if y == x:
                continue
            sy = st.items[y]
            if sx in sy and (sx != sy or x > y):
                del st.items[x]
                st.fire("rule1", (x, y), r=st.r)
                return True
    return False


def _rule2(st: _State, table):
    ov = table.ov
    for p, x in enumerate(table.ids):
        if len(table.ids) == 1 or (
            not np.any(np.delete(ov[p], p)) and not np.any(np.delete(ov[:, p], p))
        ):
            st.ell -= len(st.items.pop(x))
            st.fire("rule2", (x,), ell=st.ell)
            return True
    return False


def _rule3(st: _State, table):
    ov = table.proper()
    np.fill_diagonal(ov, -1)
    hits = np.argwhere(ov >= st.r)
    if hits.size:
        i, j = hits[0]
        return table.ids[i], table.ids[j], int(ov[i, j])
    return None


_SEPARATORS = b"#$%&*+@|~^!" + bytes(range(256))


def _overlap_profile(x: bytes, others) -> list[tuple[int, int, bool, bool]]:
    return [(len(overlap(x, y)), len(overlap(y, x)), x in y, y in x) for y in others]


def _rule4(st: _State, mode: str):
    """Shorten one string longer than ``2r``.

    ``mode="literal"`` keeps ``prefix_r + suffix_r``.  That can create new
    overlaps of length > r across the junction, so the default keeps
    ``prefix_{r-1} + sep + suffix_{r-1}`` with a byte ``sep`` absent from the
    current strings, which preserves every overlap and containment relation.
    """
    r = st.r
    for x in sorted(st.items):
        s = st.items[x]
        if len(s) <= 2 * r:
            continue
        if mode == "literal":
            new = s[:r] + s[-r:]
            sep = None
        else:
            others = [v for k, v in st.items.items() if k != x]
            used = set(b"".join(st.items.values()))
            before = _overlap_profile(s, others)
            for sep in _SEPARATORS:
                if sep in used:
                    continue
                new = s[: r - 1] + bytes([sep]) + s[len(s) - r + 1:]
                if _overlap_profile(new, others) == before:
                    break
            else:
                raise CapacityError("no separator byte keeps the overlap profile")
        st.items[x] = new
        st.ell -= len(s) - len(new)
        st.fire("rule4", (x,), r=r, ell=st.ell, separator=sep)
        return True
    return False


def build_conflict_graph(S) -> MatchingContext:
    """Adjacency by nonzero overlap in either direction, matched greedily in id order."""
    S = collection(S)
    table = build_overlap_table(S)
    ov = table.proper()
    ids = table.ids
    order = np.argsort(ids, kind="stable")
    edges = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            if ov[i, j] > 0 or ov[j, i] > 0:
                edges.append((ids[i], ids[j]))
    used: set[int] = set()
    matching = []
    for u, v in edges:
        if u not in used and v not in used:
            matching.append((u, v))
            used.update((u, v))
    X = tuple(sorted(used))
    Y = tuple(i for i in sorted(ids) if i not in used)
    if any(u not in used and v not in used for u, v in edges):
        raise ContractError("matched endpoints do not cover the conflict graph")
    return MatchingContext(tuple(edges), tuple(matching), X, Y)


def candidate_sets(ctx: MatchingContext, S):
    """R, S and T candidate families over the independent side ``Y``.

    Each family keeps the first ``min(2h, |Y|)`` elements of ``Y`` ordered by
    decreasing overlap key, ties by ascending id.  ``R`` is keyed by ordered
    pairs of distinct ``X`` ids.
    """
    S = collection(S)
    table = build_overlap_table(S)
    ov = table.proper()
    pos = {i: p for p, i in enumerate(table.ids)}
    h = len(ctx.X)
    cap = min(2 * h, len(ctx.Y))

    def top(key):
        return tuple(sorted(ctx.Y, key=lambda y: (-key(pos[y]), y))[:cap])

    R = {}
    for xi in ctx.X:
        for xj in ctx.X:
            if xi != xj:
                pi, pj = pos[xi], pos[xj]
                R[(xi, xj)] = top(lambda q: ov[pi, q] + ov[q, pj])
    S_fam = {xi: top(lambda q, p=pos[xi]: ov[q, p]) for xi in ctx.X}
    T_fam = {xi: top(lambda q, p=pos[xi]: ov[p, q]) for xi in ctx.X}
    return R, S_fam, T_fam


def kernelize(S, ell: int, rule4: str = "separator") -> KernelOutcome:
    S = collection(S)
    if rule4 not in ("separator", "literal"):
        raise InputError(f"unknown rule4 mode {rule4!r}")
    if ell < 0:
        raise InputError("ell must be non-negative")
    st = _State(S, ell)
    if not st.items:
        st.fire("rule2", (), ell=st.ell)
        return st.outcome(True, "rule2")

    while True:
        if _rule1(st):
            if st.r <= 0:
                return st.outcome(True, "rule1")
            continue
        table = build_overlap_table(st.collection())
        if _rule2(st, table):
            if st.ell < 0:
                return st.outcome(False, "rule2")
            if not st.items:
                return st.outcome(True, "rule2")
            continue
        hit = _rule3(st, table)
        if hit is not None:
            x, y, o = hit
            st.fire("rule3", (x, y), overlap=o, r=st.r)
            return st.outcome(True, "rule3")
        # Rules 1-3 are at a fixpoint here; Rule 4 shortens one string and restarts
        if _rule4(st, rule4):
            if st.ell < 0:
                return st.outcome(False, "rule4")
            continue
        break

    current = st.collection()
    ctx = build_conflict_graph(current)
    r = st.r
    if len(ctx.matching) >= r:
        st.fire("rule5", tuple(i for e in ctx.matching for i in e), matching=[list(e) for e in ctx.matching])
        return st.outcome(True, "rule5")

    R, S_fam, T_fam = candidate_sets(ctx, current)
    kept = set(ctx.X)
    for fam in (R, S_fam, T_fam):
        for members in fam.values():
            kept.update(members)
    dropped = [i for i in sorted(st.items) if i not in kept]
    ell_reduced = st.ell - sum(len(st.items[i]) for i in dropped)
    h = len(ctx.X)
    st.fire("rule6", tuple(sorted(kept)), dropped=dropped, ell=ell_reduced, h=h)
    if ell_reduced < 0:
        return st.outcome(False, "rule6", h=h)
    reduced = current.subset(kept)
    return KernelOutcome(None, "rule6", reduced, ell_reduced, r, h, tuple(st.trace))


def replay(S, ell: int, trace) -> KernelOutcome:
    """Re-apply a recorded trace to the original instance.

    Only the recorded deletions and shortenings are performed; no rule is
    re-searched.  The result must equal the outcome that produced the trace.
    """
    S = collection(S)
    st = _State(S, ell)
    for f in trace:
        st.trace.append(f)
        if f.rule == "rule1":
            del st.items[f.ids[0]]
            if st.r <= 0:
                return st.outcome(True, "rule1")
        elif f.rule == "rule2":
            if f.ids:
                st.ell -= len(st.items.pop(f.ids[0]))
            if st.ell < 0:
                return st.outcome(False, "rule2")
            if not st.items:
                return st.outcome(True, "rule2")
        elif f.rule == "rule3":
            return st.outcome(True, "rule3")
        elif f.rule == "rule4":
            x, r, sep = f.ids[0], f.detail["r"], f.detail["separator"]
            s = st.items[x]
            if sep is None:
                new = s[:r] + s[-r:]
            else:
                new = s[: r - 1] + bytes([sep]) + s[len(s) - r + 1:]
            st.items[x] = new
            st.ell -= len(s) - len(new)
            if st.ell < 0:
                return st.outcome(False, "rule4")
        elif f.rule == "rule5":
            return st.outcome(True, "rule5")
        elif f.rule == "rule6":
            r = st.r
            dropped = f.detail["dropped"]
            ell_reduced = st.ell - sum(len(st.items[i]) for i in dropped)
            h = f.detail["h"]
            if ell_reduced < 0:
                return st.outcome(False, "rule6", h=h)
            reduced = st.collection().subset(f.ids)
            return KernelOutcome(None, "rule6", reduced, ell_reduced, r, h, tuple(st.trace))
        else:
            raise InputError(f"unknown rule {f.rule!r} in trace")
    raise InputError("trace ends without a terminal rule")
