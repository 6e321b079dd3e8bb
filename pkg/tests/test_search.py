"""
Tests for pauli_cycles.search.

Small cases are cross-checked against a brute-force subset scan.
"""

import pytest

from pauli_cycles.realizations import Realization, verify_faithful
from pauli_cycles.search import (
    BUDGET,
    FOUND,
    IMPOSSIBLE,
    NotFound,
    SearchConfig,
    classify,
    enumerate_realizations,
    find_realization,
    naive_cycle_exists,
    realizability_table,
)


def assert_faithful(r):
    assert isinstance(r, Realization)
    assert verify_faithful(r.graph, r).faithful


class TestSearchConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"m": 0, "size": 4},
            {"m": 2, "size": 2},
            {"m": 2, "size": 1, "kind": "path"},
            {"m": 2, "size": 4, "kind": "tree"},
            {"m": 2, "size": 4, "node_budget": 0},
            {"m": 2, "size": 4, "thread_count": 0},
        ],
    )
    def test_invalid_configs(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


class TestFindRealization:
    def test_two_qubit_table(self):
        table = realizability_table(2, range(3, 8))
        assert table == {3: FOUND, 4: FOUND, 5: FOUND, 6: FOUND, 7: IMPOSSIBLE}

    def test_bound_short_circuits(self):
        result = find_realization(SearchConfig(2, 7))
        assert isinstance(result, NotFound)
        assert result.exhausted
        assert result.nodes == 0

    def test_exhaustive_search_agrees_with_bound(self):
        result = find_realization(SearchConfig(2, 7, apply_bound=False))
        assert isinstance(result, NotFound)
        assert result.exhausted
        assert result.nodes > 0
        assert classify(result) == IMPOSSIBLE

    def test_canonicalization_does_not_change_answers(self):
        canonical = realizability_table(2, range(3, 8), apply_bound=False)
        full = realizability_table(2, range(3, 8), canonicalize=False, apply_bound=False)
        assert canonical == full

    @pytest.mark.parametrize("n", range(3, 8))
    def test_agrees_with_brute_force(self, n):
        result = find_realization(SearchConfig(2, n, apply_bound=False))
        assert isinstance(result, Realization) == naive_cycle_exists(2, n)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_found_cycles_are_faithful(self, n):
        r = find_realization(SearchConfig(2, n))
        assert_faithful(r)
        assert (r.n, r.m) == (n, 2)
        assert r.graph.is_cycle()

    def test_found_triangle_uses_distinct_operators(self):
        r = find_realization(SearchConfig(2, 3))
        assert_faithful(r)
        assert len(set(r.labels())) == 3

    def test_canonical_prefix(self):
        r = find_realization(SearchConfig(3, 5))
        assert r.labels()[:2] == ["XII", "IXI"]

    def test_single_qubit_has_no_triangle(self):
        result = find_realization(SearchConfig(1, 3))
        assert classify(result) == IMPOSSIBLE

    def test_path_search(self):
        r = find_realization(SearchConfig(2, 5, kind="path"))
        assert_faithful(r)
        assert r.graph.is_path()

    def test_budget_is_reported_honestly(self):
        result = find_realization(SearchConfig(3, 8, node_budget=10, apply_bound=False))
        assert isinstance(result, NotFound)
        assert not result.exhausted
        assert classify(result) == BUDGET

    def test_threads_find_a_valid_answer(self):
        r = find_realization(SearchConfig(3, 7, thread_count=4))
        assert_faithful(r)
        assert r.n == 7


class TestEnumerate:
    def test_limit(self):
        found = list(enumerate_realizations(SearchConfig(2, 4), limit=3))
        assert len(found) == 3
        for r in found:
            assert_faithful(r)

    def test_solutions_are_distinct(self):
        found = list(enumerate_realizations(SearchConfig(2, 5)))
        labels = [tuple(r.labels()) for r in found]
        assert len(labels) == len(set(labels)) > 0

    def test_empty_when_impossible(self):
        assert list(enumerate_realizations(SearchConfig(2, 7))) == []


@pytest.mark.slow
class TestThreeQubitTable:
    def test_eight_cycle_is_impossible(self):
        result = find_realization(SearchConfig(3, 8, apply_bound=False, thread_count=4))
        assert classify(result) == IMPOSSIBLE

    def test_nine_cycle_is_found(self):
        r = find_realization(SearchConfig(3, 9, thread_count=4))
        assert_faithful(r)
