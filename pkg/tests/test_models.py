"""
Tests for pauli_cycles.models.
"""

import numpy as np
import pytest

from pauli_cycles.errors import MembershipError, NoDisturbanceError
from pauli_cycles.models import (
    EmpiricalModel,
    JointDistribution,
    assignment_matrix,
    marginalize,
    outcome_tuples,
)
from pauli_cycles.scenarios import Scenario, path_graph


def path_model(first, second):
    """Model on the 3-vertex path with contexts (0, 1) and (1, 2)."""
    return EmpiricalModel(Scenario.from_graph(path_graph(3)), {(0, 1): first, (1, 2): second})


class TestOrdering:
    def test_outcome_tuples(self):
        assert outcome_tuples(2) == ((1, 1), (1, -1), (-1, 1), (-1, -1))

    def test_assignment_matrix(self):
        np.testing.assert_array_equal(assignment_matrix(2), [[1, 1], [1, -1], [-1, 1], [-1, -1]])
        assert assignment_matrix(4).shape == (16, 4)

    def test_marginalize(self):
        table = [0.1, 0.2, 0.3, 0.4]
        np.testing.assert_allclose(marginalize(table, [0, 1], [0]), [0.3, 0.7])
        np.testing.assert_allclose(marginalize(table, [0, 1], [1]), [0.4, 0.6])
        np.testing.assert_allclose(marginalize(table, [0, 1], [0, 1]), table)

    def test_marginalize_unknown_vertex(self):
        with pytest.raises(ValueError):
            marginalize([0.5, 0.5], [0], [3])


class TestEmpiricalModel:
    def test_correlators(self):
        model = path_model([0.5, 0, 0, 0.5], [0.1, 0.4, 0.2, 0.3])
        assert model.correlator(0, 1) == pytest.approx(1.0)
        assert model.correlator(1, 2) == pytest.approx(0.1 - 0.4 - 0.2 + 0.3)

    def test_marginal_reads_from_a_containing_context(self):
        model = path_model([0.5, 0, 0, 0.5], [0.1, 0.4, 0.2, 0.3])
        np.testing.assert_allclose(model.marginal([2]), [0.3, 0.7])
        with pytest.raises(MembershipError):
            model.marginal([0, 2])

    @pytest.mark.parametrize(
        "first",
        [
            [0.5, 0.5, 0.0],
            [0.6, 0.0, 0.0, 0.5],
            [1.2, -0.2, 0.0, 0.0],
        ],
    )
    def test_invalid_tables(self, first):
        with pytest.raises(MembershipError):
            path_model(first, [0.25] * 4)

    def test_missing_context(self):
        with pytest.raises(MembershipError):
            EmpiricalModel(Scenario.from_graph(path_graph(3)), {(0, 1): [0.25] * 4})

    def test_context_keys_are_sorted(self):
        model = EmpiricalModel(Scenario.from_graph(path_graph(2)), {(1, 0): [0.25] * 4})
        assert model.contexts == [(0, 1)]

    def test_unsorted_context_table_is_transposed(self):
        # axes follow (1, 0): entry 1 is p(A1=+, A0=-)
        model = EmpiricalModel(Scenario.from_graph(path_graph(2)), {(1, 0): [0.1, 0.2, 0.3, 0.4]})
        np.testing.assert_allclose(model.tables[(0, 1)], [0.1, 0.3, 0.2, 0.4])
        np.testing.assert_allclose(model.marginal([0]), [0.4, 0.6])
        np.testing.assert_allclose(model.marginal([1]), [0.3, 0.7])

    def test_unsorted_context_from_json(self):
        data = {
            "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
            "contexts": [[0, 1], [1, 2], [2, 3], [3, 0]],
            "tables": [[0.25] * 4, [0.25] * 4, [0.25] * 4, [0.1, 0.2, 0.3, 0.4]],
        }
        model = EmpiricalModel.from_json(data)
        np.testing.assert_allclose(model.tables[(0, 3)], [0.1, 0.3, 0.2, 0.4])
        assert model.correlator(0, 3) == pytest.approx(0.1 - 0.3 - 0.2 + 0.4)
        again = EmpiricalModel.from_json(model.to_json())
        assert [0, 3] in again.to_json()["contexts"]
        np.testing.assert_allclose(again.tables[(0, 3)], model.tables[(0, 3)])

    def test_context_given_twice(self):
        tables = {(0, 1): [0.25] * 4, (1, 0): [0.25] * 4}
        with pytest.raises(MembershipError):
            EmpiricalModel(Scenario.from_graph(path_graph(2)), tables)

    def test_disturbance(self):
        model = path_model([0.5, 0, 0, 0.5], [0.6, 0, 0, 0.4])
        assert model.disturbance() == pytest.approx(0.1)
        with pytest.raises(NoDisturbanceError):
            model.check_no_disturbance()

    def test_consistent_model_passes(self):
        path_model([0.5, 0, 0, 0.5], [0.1, 0.4, 0.2, 0.3]).check_no_disturbance()

    def test_restrict_relabels_in_given_order(self):
        model = path_model([0.5, 0, 0, 0.5], [0.1, 0.4, 0.2, 0.3])
        sub = model.restrict([2, 1])
        assert sub.contexts == [(0, 1)]
        # local vertex 0 is old vertex 2
        np.testing.assert_allclose(sub.tables[(0, 1)], [0.1, 0.2, 0.4, 0.3])

    def test_json_round_trip(self):
        model = path_model([0.5, 0, 0, 0.5], [0.1, 0.4, 0.2, 0.3])
        again = EmpiricalModel.from_json(model.to_json())
        assert again.contexts == model.contexts
        for c in model.contexts:
            np.testing.assert_allclose(again.tables[c], model.tables[c])

    def test_malformed_json(self):
        with pytest.raises(MembershipError):
            EmpiricalModel.from_json({"graph": {"n": 2, "edges": [[0, 1]]}})


class TestJointDistribution:
    def test_uniform(self):
        joint = JointDistribution(2, [0.25] * 4)
        np.testing.assert_allclose(joint.marginal([1]), [0.5, 0.5])
        assert len(joint.support()) == 4

    def test_support_and_json(self):
        joint = JointDistribution(2, [0.5, 0.0, 0.0, 0.5])
        assert joint.support() == {(1, 1): 0.5, (-1, -1): 0.5}
        assert joint.to_json() == {
            "n": 2,
            "support": [
                {"assignment": [1, 1], "weight": 0.5},
                {"assignment": [-1, -1], "weight": 0.5},
            ],
        }

    def test_reproduces(self):
        model = path_model([0.5, 0, 0, 0.5], [0.5, 0, 0, 0.5])
        weights = np.zeros(8)
        weights[0] = weights[7] = 0.5
        joint = JointDistribution(3, weights)
        assert joint.reproduces(model)
        assert joint.max_deviation(model) == pytest.approx(0.0)

    def test_deviation_is_measured(self):
        model = path_model([0.5, 0, 0, 0.5], [0.5, 0, 0, 0.5])
        joint = JointDistribution(3, np.full(8, 1 / 8))
        assert joint.max_deviation(model) == pytest.approx(0.25)
        assert not joint.reproduces(model)

    @pytest.mark.parametrize("weights", [[0.5, 0.5], [0.5, 0.5, 0.5, -0.5], [0.3, 0.3, 0.3, 0.3]])
    def test_invalid_weights(self, weights):
        with pytest.raises(MembershipError):
            JointDistribution(2, weights)
