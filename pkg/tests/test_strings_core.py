import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstring.errors import ContractError, InputError
from superstring.strings_core import (
    NO_SELF,
    WeightedCollection,
    build_overlap_table,
    compression,
    is_superstring,
    merge,
    overlap,
    reduce_to_maximal,
    superstring_from_order,
)

from _oracles import naive_overlap_len

binary = st.binary(min_size=1, max_size=12).map(lambda b: bytes(48 + (x & 1) for x in b))
small_alpha = st.text(alphabet="abc", min_size=1, max_size=10).map(str.encode)


@pytest.mark.parametrize(
    "s, t, expected",
    [(b"abcab", b"cabde", b"cab"), (b"aaa", b"aaa", b"aaa"), (b"ab", b"cd", b""), (b"abab", b"babb", b"bab")],
)
def test_overlap_examples(s, t, expected):
    assert overlap(s, t) == expected


def test_overlap_containment_returns_contained():
    assert overlap(b"bc", b"abcd") == b"bc"
    assert overlap(b"abcd", b"bc") == b"bc"


@pytest.mark.parametrize(
    "s, t, expected", [(b"abc", b"bcd", b"abcd"), (b"ab", b"ab", b"ab"), (b"ab", b"cd", b"abcd")]
)
def test_merge_examples(s, t, expected):
    assert merge(s, t) == expected


def test_merge_returns_container():
    assert merge(b"b", b"abc") == b"abc"
    assert merge(b"abc", b"b") == b"abc"


def test_overlap_table_examples():
    t = build_overlap_table([b"abc", b"bcd"])
    assert t.ov[0, 1] == 2 and t.ov[1, 0] == 0
    assert not t.sub.any()
    assert t.ov[0, 0] == NO_SELF

    t = build_overlap_table([b"ab", b"abc"])
    assert t.sub[0, 1] and not t.sub[1, 0]
    assert t.ov[0, 1] == t.ov[1, 0] == 2

    t = build_overlap_table([b"aaaa", b"aaa"])
    assert t.sub[1, 0] and not t.sub[0, 1]
    assert t.ov[0, 1] == t.ov[1, 0] == 3


def test_diagonal_read_is_contract_violation():
    t = build_overlap_table([b"ab", b"ba"])
    with pytest.raises(ContractError):
        t.overlap_len(1, 1)
    assert t.overlap_len(0, 1) == 1


def test_proper_zeroes_containment_and_diagonal():
    t = build_overlap_table([b"ab", b"abc", b"cx"])
    p = t.proper()
    assert p[0, 1] == p[1, 0] == 0
    assert p[1, 2] == 1
    assert (np.diag(p) == 0).all()


def test_superstring_from_order_examples():
    S = WeightedCollection.from_strings([b"abc", b"bcd", b"cde"])
    assert superstring_from_order([0, 1, 2], S) == b"abcde"
    assert superstring_from_order([0], [b"xyz"]) == b"xyz"
    assert superstring_from_order([0, 1], [b"ab", b"cd"]) == b"abcd"


@pytest.mark.parametrize("order", [[0, 0, 1], [0, 1], [0, 1, 3]])
def test_superstring_from_order_rejects_bad_orders(order):
    with pytest.raises(InputError):
        superstring_from_order(order, [b"ab", b"bc", b"cd"])


def test_compression_examples():
    assert compression([b"abc", b"bcd", b"cde"], b"abcde") == 4
    assert compression([b"a"], b"a") == 0
    assert compression([b"ab", b"ab"], b"ab") == 2
    with pytest.raises(ContractError):
        compression([b"ab", b"cd"], b"abc")


def test_reduce_to_maximal_examples():
    M, mp = reduce_to_maximal([b"ab", b"abc", b"abc"])
    assert M.strings == [b"abc"] and M.ids == [1]
    assert mp == {0: 1, 1: 1, 2: 1}

    M, mp = reduce_to_maximal([b"ab", b"cd"])
    assert M.strings == [b"ab", b"cd"] and mp == {0: 0, 1: 1}

    M, mp = reduce_to_maximal([b"aba", b"bab", b"ab"])
    assert M.strings == [b"aba", b"bab"]
    assert mp[2] == 0


def test_collection_validation():
    with pytest.raises(InputError):
        WeightedCollection.from_strings([b"ab", b""])
    with pytest.raises(InputError):
        WeightedCollection.from_strings([b"ab"], [-1])
    with pytest.raises(InputError):
        WeightedCollection.from_strings([b"ab"], [2**62, 2**62])
    S = WeightedCollection.from_strings(["ab", "cd"], [3, 4])
    assert S.total_weight == 7 and S.total_length == 4 and S.weight(1) == 4
    assert S.subset([1]).ids == [1]


@given(small_alpha, small_alpha)
def test_overlap_matches_naive(s, t):
    assert len(overlap(s, t)) == naive_overlap_len(s, t)


@given(binary, binary)
def test_merge_length_and_containment(s, t):
    m = merge(s, t)
    assert s in m and t in m
    if s not in t and t not in s:
        assert len(m) == len(s) + len(t) - len(overlap(s, t))


@given(st.lists(small_alpha, min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_fold_is_superstring_within_total(strings, rnd):
    order = list(range(len(strings)))
    rnd.shuffle(order)
    s = superstring_from_order(order, strings)
    assert is_superstring(s, strings)
    assert len(s) <= sum(map(len, strings))


@given(st.lists(small_alpha, min_size=1, max_size=7))
def test_table_matches_naive(strings):
    t = build_overlap_table(strings)
    for i, a in enumerate(strings):
        for j, b in enumerate(strings):
            if i != j:
                assert t.ov[i, j] == naive_overlap_len(a, b)
                assert t.sub[i, j] == (a in b)


@given(st.lists(binary, min_size=1, max_size=8))
def test_reduce_to_maximal_properties(strings):
    M, mp = reduce_to_maximal(strings)
    kept = M.strings
    assert len(set(kept)) == len(kept)
    assert not any(a != b and a in b for a in kept for b in kept)
    for i, s in enumerate(strings):
        assert s in M.get(mp[i]).data
