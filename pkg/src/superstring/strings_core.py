"""String algebra: overlaps, overlap-merges, orderings and compression.

Conventions follow the usual superstring literature: when one string is a
substring of the other, ``overlap`` returns the contained string and
``merge`` returns the containing one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from ._jit import njit, pick
from .errors import ContractError, InputError

BytesLike = Union[bytes, str, "StringItem"]

_INT64_MAX = np.iinfo(np.int64).max
# Diagonal of OverlapTable.ov; never a valid overlap length.
NO_SELF = -1


def as_bytes(s: BytesLike) -> bytes:
    if isinstance(s, StringItem):
        return s.data
    if isinstance(s, str):
        return s.encode("utf-8")
    if isinstance(s, (bytes, bytearray, memoryview)):
        return bytes(s)
    raise InputError(f"expected bytes or str, got {type(s).__name__}")


@dataclass(frozen=True)
class StringItem:
    id: int
    data: bytes

    def __len__(self) -> int:
        return len(self.data)


@dataclass(frozen=True)
class WeightedCollection:
    """A multiset of non-empty byte strings with non-negative integer weights.

    Items keep the id they were given at ingestion; ids are unique even when
    the bytes repeat.  Positions (``0..n-1``) index the numeric tables.
    """

    items: tuple[StringItem, ...]
    weights: tuple[int, ...]
    _pos: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.items) != len(self.weights):
            raise InputError("items and weights differ in length")
        pos: dict[int, int] = {}
        for p, item in enumerate(self.items):
            if not isinstance(item.data, bytes):
                raise InputError("string data must be bytes")
            if len(item.data) == 0:
                raise InputError("empty strings are not allowed")
            if item.id in pos:
                raise InputError(f"duplicate item id {item.id}")
            pos[item.id] = p
        for w in self.weights:
            if int(w) != w or w < 0:
                raise InputError(f"weights must be non-negative integers, got {w!r}")
        if sum(self.weights) > _INT64_MAX or sum(len(it) for it in self.items) > _INT64_MAX:
            raise InputError("total weight or total length overflows int64")
        object.__setattr__(self, "_pos", pos)

    @classmethod
    def from_strings(
        cls, strings: Iterable[BytesLike], weights: Iterable[int] | None = None
    ) -> "WeightedCollection":
        data = [as_bytes(s) for s in strings]
        ws = [1] * len(data) if weights is None else [int(w) for w in weights]
        return cls(tuple(StringItem(i, b) for i, b in enumerate(data)), tuple(ws))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def ids(self) -> list[int]:
        return [it.id for it in self.items]

    @property
    def strings(self) -> list[bytes]:
        return [it.data for it in self.items]

    @property
    def total_length(self) -> int:
        return sum(len(it) for it in self.items)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def max_length(self) -> int:
        return max((len(it) for it in self.items), default=0)

    def position(self, item_id: int) -> int:
        try:
            return self._pos[item_id]
        except KeyError:
            raise InputError(f"unknown item id {item_id}") from None

    def get(self, item_id: int) -> StringItem:
        return self.items[self.position(item_id)]

    def weight(self, item_id: int) -> int:
        return self.weights[self.position(item_id)]

    def subset(self, item_ids: Iterable[int]) -> "WeightedCollection":
        """Sub-collection in ascending id order, ids preserved."""
        chosen = sorted(set(item_ids))
        return WeightedCollection(
            tuple(self.get(i) for i in chosen), tuple(self.weight(i) for i in chosen)
        )


def collection(S: Union[WeightedCollection, Iterable[BytesLike]]) -> WeightedCollection:
    """Coerce a plain iterable of strings into a unit-weight collection."""
    if isinstance(S, WeightedCollection):
        return S
    return WeightedCollection.from_strings(S)


# ---------------------------------------------------------------- kernels


@njit
def failure_function(pat):
    """KMP border table: ``f[i]`` is the longest proper border of ``pat[:i]``."""
    m = pat.shape[0]
    f = np.empty(m + 1, dtype=np.int64)
    f[0] = -1
    for i in range(1, m + 1):
        k = f[i - 1]
        while k >= 0 and pat[k] != pat[i - 1]:
            k = f[k]
        f[i] = k + 1
    return f


@njit
def kmp_scan(text, pat, f):
    """Run the KMP automaton of ``pat`` over ``text``.

    Returns ``(found, state)``: whether ``pat`` occurs in ``text`` and, if it
    does not, the length of the longest suffix of ``text`` that is a prefix of
    ``pat``.
    """
    m = pat.shape[0]
    k = 0
    for c in text:
        while k >= 0 and (k == m or pat[k] != c):
            k = f[k]
        k += 1
        if k == m:
            return True, m
    return False, k


@njit
def _overlap_table_jit(buf, offsets):
    n = offsets.shape[0] - 1
    ov = np.full((n, n), NO_SELF, dtype=np.int64)
    sub = np.zeros((n, n), dtype=np.bool_)
    for j in range(n):
        pat = buf[offsets[j]:offsets[j + 1]]
        f = failure_function(pat)
        for i in range(n):
            if i == j:
                continue
            text = buf[offsets[i]:offsets[i + 1]]
            found, state = kmp_scan(text, pat, f)
            if found:
                sub[j, i] = True
            else:
                ov[i, j] = state
    for i in range(n):
        for j in range(n):
            if i != j and sub[i, j]:
                li = offsets[i + 1] - offsets[i]
                ov[i, j] = li
                ov[j, i] = li
    return ov, sub


def _overlap_table_numpy(buf, offsets):
    n = offsets.shape[0] - 1
    strings = [buf[offsets[i]:offsets[i + 1]].tobytes() for i in range(n)]
    ov = np.full((n, n), NO_SELF, dtype=np.int64)
    sub = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i != j:
                sub[i, j] = strings[i] in strings[j]
    for j in range(n):
        pat = np.frombuffer(strings[j], dtype=np.uint8)
        tj = pat.shape[0]
        for i in range(n):
            if i == j:
                continue
            if sub[i, j]:
                ov[i, j] = ov[j, i] = len(strings[i])
                continue
            if sub[j, i]:
                continue
            text = np.frombuffer(strings[i], dtype=np.uint8)
            ti = text.shape[0]
            # candidate lengths whose boundary symbols agree, checked longest first
            L = np.arange(min(ti, tj), 0, -1)
            L = L[(pat[L - 1] == text[-1]) & (text[ti - L] == pat[0])]
            best = 0
            for cand in L:
                if np.array_equal(text[ti - cand:], pat[:cand]):
                    best = int(cand)
                    break
            ov[i, j] = best
    return ov, sub


_overlap_table = pick(_overlap_table_jit, _overlap_table_numpy)


def pack(strings: Sequence[bytes]) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate strings into one uint8 buffer plus an offsets array."""
    offsets = np.zeros(len(strings) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(s) for s in strings])
    buf = np.frombuffer(b"".join(strings), dtype=np.uint8)
    return buf, offsets


# ---------------------------------------------------------------- string ops


def overlap(s: BytesLike, t: BytesLike) -> bytes:
    a, b = as_bytes(s), as_bytes(t)
    if a in b:
        return a
    if b in a:
        return b
    pat = np.frombuffer(b, dtype=np.uint8)
    _, k = kmp_scan(np.frombuffer(a, dtype=np.uint8), pat, failure_function(pat))
    return b[:k]


def merge(s: BytesLike, t: BytesLike) -> bytes:
    """Concatenation with overlap, ``s ∘ t``."""
    a, b = as_bytes(s), as_bytes(t)
    if a in b:
        return b
    if b in a:
        return a
    return a + b[len(overlap(a, b)):]


@dataclass(frozen=True)
class OverlapTable:
    """Pairwise overlap lengths and substring flags, indexed by position.

    ``ov[i, j] = |overlap(s_i, s_j)|`` for ``i != j``; the diagonal holds
    ``NO_SELF``.  ``sub[i, j]`` is true when ``s_i`` is a substring of ``s_j``.
    """

    ids: tuple[int, ...]
    lengths: np.ndarray
    ov: np.ndarray
    sub: np.ndarray

    @property
    def n(self) -> int:
        return len(self.ids)

    def overlap_len(self, i: int, j: int) -> int:
        if i == j:
            raise ContractError("self-overlap is undefined")
        return int(self.ov[i, j])

    def proper(self) -> np.ndarray:
        """Overlap lengths with containment pairs and the diagonal zeroed."""
        out = np.where(self.sub | self.sub.T, 0, self.ov)
        np.fill_diagonal(out, 0)
        return out


def build_overlap_table(S) -> OverlapTable:
    S = collection(S)
    strings = S.strings
    buf, offsets = pack(strings)
    ov, sub = _overlap_table(buf, offsets)
    return OverlapTable(
        ids=tuple(S.ids),
        lengths=np.array([len(s) for s in strings], dtype=np.int64),
        ov=ov,
        sub=sub,
    )


def _check_order(order: Sequence[int], S: WeightedCollection) -> None:
    if len(order) != len(S) or set(order) != set(S.ids):
        raise InputError("order must list every item id exactly once")


def superstring_from_order(order: Sequence[int], S) -> bytes:
    """Left fold of ``merge`` over the strings in ``order``."""
    S = collection(S)
    _check_order(order, S)
    acc = b""
    for item_id in order:
        acc = merge(acc, S.get(item_id).data) if acc else S.get(item_id).data
    return acc


def is_superstring(s: bytes, S) -> bool:
    return all(x in s for x in collection(S).strings)


def compression(S, s: BytesLike) -> int:
    S = collection(S)
    s = as_bytes(s)
    missing = [it.id for it in S if it.data not in s]
    if missing:
        raise ContractError(f"not a superstring: items {missing} are not contained")
    return S.total_length - len(s)


def reduce_to_maximal(S) -> tuple[WeightedCollection, dict[int, int]]:
    """Inclusion-maximal distinct strings and a map from every id to one of them.

    Among equal strings the lowest id is retained; a string contained in
    several retained strings maps to the lowest retained id.  Retained items
    keep their weights.
    """
    S = collection(S)
    order = sorted(S.items, key=lambda it: it.id)
    first: dict[bytes, int] = {}
    for it in order:
        first.setdefault(it.data, it.id)
    distinct = sorted(first.items(), key=lambda kv: kv[1])
    retained = [
        (data, i)
        for data, i in distinct
        if not any(data != other and data in other for other, _ in distinct)
    ]
    mapping: dict[int, int] = {}
    for it in order:
        for data, i in retained:
            if it.data in data:
                mapping[it.id] = i
                break
    return S.subset(i for _, i in retained), mapping
