import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstring.bounds import (
    MatchingResult,
    WeightedOverlapGraph,
    _matching_dp_jit,
    _matching_dp_numpy,
    build_weighted_graph,
    greedy_superstring,
    matching_bound,
    matching_superstring,
    max_weight_matching,
    max_weight_matching_bruteforce,
)
from superstring.errors import CapacityError, ContractError
from superstring.exact_solver import optimal_length
from superstring.strings_core import compression, is_superstring, reduce_to_maximal

from _oracles import naive_matching

words = st.lists(
    st.text(alphabet="01", min_size=1, max_size=6).map(str.encode), min_size=1, max_size=7
)


def graph_from_matrix(w):
    n = w.shape[0]
    weights = {(u, v): int(w[u, v]) for u in range(n) for v in range(u + 1, n)}
    return WeightedOverlapGraph(tuple(range(n)), weights, {e: e for e in weights})


def test_weighted_graph_examples():
    assert build_weighted_graph([b"abc", b"bcd"]).weight(0, 1) == 2
    assert build_weighted_graph([b"ab", b"cd"]).weight(0, 1) == 0
    G = build_weighted_graph([b"ab", b"ba"])
    assert G.weight(1, 0) == 1 and G.orientation[(0, 1)] == (0, 1)


def test_weighted_graph_drops_contained_strings():
    G = build_weighted_graph([b"abc", b"b", b"cd", b"abc"])
    assert G.vertices == (0, 2)


def test_orientation_prefers_heavier_direction():
    G = build_weighted_graph([b"cab", b"abc"])
    assert G.weight(0, 1) == 2 and G.orientation[(0, 1)] == (0, 1)
    G = build_weighted_graph([b"bcx", b"abc"])
    assert G.orientation[(0, 1)] == (1, 0)


def test_matching_examples():
    G = WeightedOverlapGraph((0, 1, 2), {(0, 1): 3, (1, 2): 4, (0, 2): 1}, {})
    M = max_weight_matching(G)
    assert M.edges == ((1, 2),) and M.total_weight == 4
    M = max_weight_matching(build_weighted_graph([b"ab", b"cd", b"ef"]))
    assert M.edges == () and M.total_weight == 0


def test_matching_superstring_examples():
    S = [b"abc", b"bcd", b"xy"]
    M = max_weight_matching(build_weighted_graph(S))
    s = matching_superstring(S, M)
    assert s in (b"abcdxy", b"xyabcd") and compression(S, s) >= 2

    empty = MatchingResult((), 0, {})
    assert matching_superstring([b"ab", b"cd"], empty) == b"abcd"

    S = [b"ab", b"ba"]
    s = matching_superstring(S, max_weight_matching(build_weighted_graph(S)))
    assert len(s) == 3 and compression(S, s) == 1


def test_matching_superstring_rejects_non_matching():
    bad = MatchingResult(((0, 1), (1, 2)), 2, {(0, 1): (0, 1), (1, 2): (1, 2)})
    with pytest.raises(ContractError):
        matching_superstring([b"ab", b"bc", b"cd"], bad)


def test_greedy_examples():
    assert greedy_superstring([b"abc", b"bcd", b"cde"]) == b"abcde"
    assert greedy_superstring([b"xyz"]) == b"xyz"
    assert len(greedy_superstring([b"ab", b"cd"])) == 4


def test_oracle_capacity():
    G = graph_from_matrix(np.zeros((25, 25), dtype=np.int64))
    with pytest.raises(CapacityError):
        max_weight_matching_bruteforce(G)


def test_dp_kernels_agree(rng):
    for n in range(0, 12):
        w = rng.integers(0, 9, size=(n, n))
        w = np.triu(w, 1)
        w = w + w.T
        assert np.array_equal(_matching_dp_jit(w), _matching_dp_numpy(w))


def test_random_weighted_graphs(rng):
    for _ in range(60):
        n = int(rng.integers(1, 11))
        w = np.triu(rng.integers(0, 10, size=(n, n)), 1)
        w = w + w.T
        G = graph_from_matrix(w)
        expect = naive_matching(w)
        assert max_weight_matching(G).total_weight == expect
        assert max_weight_matching_bruteforce(G) == expect


@given(words)
def test_bound_dominates_optimum(strings):
    assert matching_bound(strings) >= optimal_length(strings)


@given(words)
def test_matching_superstring_compression(strings):
    M = max_weight_matching(build_weighted_graph(strings))
    s = matching_superstring(strings, M)
    assert is_superstring(s, strings)
    assert compression(strings, s) >= M.total_weight
    # contained strings come for free; the bound holds even without them
    Mx, _ = reduce_to_maximal(strings)
    assert Mx.total_length - len(s) >= M.total_weight


@given(words)
def test_greedy_is_superstring(strings):
    s = greedy_superstring(strings)
    assert is_superstring(s, strings)
    assert len(s) >= optimal_length(strings)
