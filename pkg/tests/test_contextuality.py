"""
Tests for pauli_cycles.contextuality.
"""

import math

import numpy as np
import pytest

from configs.fixtures import UNFAITHFUL_C4
from pauli_cycles.errors import (
    ConstraintViolation,
    MembershipError,
    NoDisturbanceError,
    RealizationError,
)
from pauli_cycles.models import EmpiricalModel, assignment_matrix
from pauli_cycles.pauli_core import PhasedPauli, multiply
from pauli_cycles.realizations import (
    Realization,
    big_cycle,
    construct_c2,
    cycle_family,
    edge_glued_realization,
    edge_paulis,
    node_glued_realization,
)
from pauli_cycles.scenarios import (
    Scenario,
    cycle_graph,
    double_edge_glued_pentagons,
    path_graph,
)
from pauli_cycles.search import SearchConfig, enumerate_realizations
from pauli_cycles.spectral import (
    expectation,
    extreme_eigen,
    pauli_matrix,
    quantum_behavior,
    random_state,
    to_matrix,
)
from pauli_cycles.contextuality import (
    TSIRELSON,
    CycleInequality,
    bound_chain,
    conjoined_counterexample,
    enumerate_cycle_inequalities,
    four_cycle_product,
    gamma_operator,
    gamma_squared_symbolic,
    glue_jpd_edge,
    glue_jpd_node,
    nc_membership,
    quantum_value,
    surviving_pair_count,
    tsirelson_state,
    vorobev_gate,
)


def assert_membership_is_verified(model: EmpiricalModel, result):
    if result.inside:
        assert result.certificate is None
        assert result.distribution.reproduces(model, tol=1e-8)
    else:
        assert result.distribution is None
        certificate = result.certificate
        assert certificate.evaluate(model) > certificate.bound
        assert certificate.max_deterministic(model.scenario) <= certificate.bound + 1e-9
        assert result.violation > 0


class TestCycleInequality:
    @pytest.mark.parametrize("n, count", [(4, 8), (5, 16), (6, 32)])
    def test_counts(self, n, count):
        inequalities = enumerate_cycle_inequalities(n)
        assert len(inequalities) == count
        assert all(math.prod(i.gamma) == -1 for i in inequalities)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_classical_maximum_is_n_minus_two(self, n):
        for ineq in enumerate_cycle_inequalities(n):
            best = max(ineq.classical_value(a) for a in assignment_matrix(n))
            assert best == ineq.bound == n - 2

    @pytest.mark.parametrize(
        "gamma", [(1, 1, 1), (1, 1, 1, 1), (1, 1, 1, 2), (1, -1, 1, -1)]
    )
    def test_invalid_signs(self, gamma):
        with pytest.raises(ValueError):
            CycleInequality(gamma)

    def test_labels(self):
        ineq = CycleInequality.from_label("+++-")
        assert ineq.gamma == (1, 1, 1, -1)
        assert ineq.label == "+++-"
        with pytest.raises(ValueError):
            CycleInequality.from_label("++x-")

    def test_wrong_cycle_size(self, c5):
        with pytest.raises(RealizationError):
            quantum_value(c5, CycleInequality.from_label("+++-"))


class TestGammaAlgebra:
    def test_pentagon_square_is_five_identity(self, c5):
        for ineq in enumerate_cycle_inequalities(5):
            assert gamma_squared_symbolic(c5, ineq).terms == ((5, PhasedPauli.identity(3)),)

    def test_symbolic_square_matches_matrix_square(self):
        r = cycle_family(4)[7]
        ineq = enumerate_cycle_inequalities(7)[3]
        gamma = to_matrix(gamma_operator(r, ineq)).entries
        symbolic = to_matrix(gamma_squared_symbolic(r, ineq)).entries
        np.testing.assert_allclose(gamma @ gamma, symbolic, atol=1e-10)

    def test_four_cycle_square_matches_both_closed_forms(self):
        identity = np.eye(4)
        for r in enumerate_realizations(SearchConfig(2, 4, canonicalize=False)):
            L = edge_paulis(r)
            q = pauli_matrix(four_cycle_product(r))
            l13 = pauli_matrix(multiply(L[1], L[3]))
            np.testing.assert_allclose(l13, -q, atol=1e-12)
            for ineq in enumerate_cycle_inequalities(4):
                g = ineq.gamma
                expected = to_matrix(gamma_squared_symbolic(r, ineq)).entries
                np.testing.assert_allclose(expected, 4 * identity - 4 * g[1] * g[3] * q, atol=1e-12)
                # closed forms whose sign gamma_k weighs the edge ending at vertex k
                s = [g[(k - 1) % 4] for k in range(4)]
                np.testing.assert_allclose(expected, 4 * (identity + s[1] * s[3] * q), atol=1e-12)
                np.testing.assert_allclose(
                    expected, 4 * identity + 2 * (s[0] * s[2] - s[1] * s[3]) * l13, atol=1e-12
                )

    @pytest.mark.parametrize("n, count", [(5, 0), (6, 3), (7, 7), (9, 18)])
    def test_surviving_pair_count(self, n, count):
        assert surviving_pair_count(n) == count

    @pytest.mark.parametrize("n", range(5, 13))
    def test_pair_count_bound(self, n):
        assert n + 2 * surviving_pair_count(n) == n * n - 4 * n

    def test_pair_count_needs_five(self):
        with pytest.raises(ValueError):
            surviving_pair_count(4)


def constructed_cycles(n_min: int, n_max: int):
    """Every constructed realization of C_n for n_min <= n <= n_max, over 3..7 qubits."""
    found = []
    for m in range(3, 8):
        candidates = list(cycle_family(m).values()) + [construct_c2(m)]
        if m >= 4:
            candidates.append(big_cycle(m))
        found.extend(r for r in candidates if n_min <= r.n <= n_max)
    return found


class TestQuantumValue:
    def test_four_cycle_reaches_tsirelson_everywhere(self):
        realizations = list(enumerate_realizations(SearchConfig(2, 4, canonicalize=False)))
        assert len(realizations) == 720
        for r in realizations:
            q = four_cycle_product(r)
            for ineq in enumerate_cycle_inequalities(4):
                state = tsirelson_state(r, ineq)
                g = ineq.gamma
                assert expectation(state, q) == pytest.approx(-g[1] * g[3], abs=1e-9)
                assert quantum_value(r, ineq).value == pytest.approx(TSIRELSON)

    def test_tsirelson_eigenspace(self, c4):
        ineq = CycleInequality.from_label("+++-")
        eig = extreme_eigen(to_matrix(gamma_operator(c4, ineq)))
        top = eig.eigenspace(TSIRELSON)
        assert top.shape[1] >= 1
        assert eig.lambda_max == pytest.approx(2 * math.sqrt(2))

    def test_constructed_cycles_stay_classical(self):
        realizations = constructed_cycles(5, 9)
        assert {r.n for r in realizations} == {5, 6, 7, 8, 9}
        for r in realizations:
            n = r.n
            for ineq in enumerate_cycle_inequalities(n):
                value, witness = quantum_value(r, ineq)
                assert value < n - 2
                assert value <= math.sqrt(n * n - 4 * n) + 1e-9
                assert witness.m == r.m

    def test_pentagon_value_is_sqrt_five(self, c5):
        value, _ = quantum_value(c5, enumerate_cycle_inequalities(5)[0])
        assert value == pytest.approx(math.sqrt(5))

    def test_bound_chain(self, c5):
        chain = bound_chain(c5, enumerate_cycle_inequalities(5)[0])
        assert chain.value_squared == pytest.approx(5.0)
        assert chain.gamma_squared_max == pytest.approx(5.0)
        assert chain.pair_bound == 5

    def test_bound_chain_on_seven_cycle(self):
        r = cycle_family(4)[7]
        for ineq in enumerate_cycle_inequalities(7)[:8]:
            chain = bound_chain(r, ineq)
            assert chain.value_squared <= chain.gamma_squared_max + 1e-9
            assert chain.gamma_squared_max <= chain.pair_bound + 1e-9
            assert chain.pair_bound == 21

    def test_bound_chain_needs_five(self, c4):
        with pytest.raises(ValueError):
            bound_chain(c4, CycleInequality.from_label("+++-"))

    def test_tsirelson_state_needs_four_cycle(self, c5):
        with pytest.raises(RealizationError):
            tsirelson_state(c5, enumerate_cycle_inequalities(5)[0])


class TestMembership:
    def test_tsirelson_behaviour_is_contextual(self, c4):
        ineq = CycleInequality.from_label("+++-")
        model = quantum_behavior(c4, tsirelson_state(c4, ineq))
        assert ineq.evaluate(model) == pytest.approx(TSIRELSON, abs=1e-9)
        result = nc_membership(model)
        assert not result.inside
        assert result.verdict == "contextual"
        assert_membership_is_verified(model, result)

    def test_pentagon_behaviours_are_noncontextual(self, c5, rng):
        for _ in range(20):
            model = quantum_behavior(c5, random_state(3, rng))
            result = nc_membership(model)
            assert result.inside
            assert result.verdict == "noncontextual"
            assert_membership_is_verified(model, result)

    def test_deterministic_model_is_inside(self):
        tables = {(i, (i + 1) % 4): [1.0, 0.0, 0.0, 0.0] for i in range(4)}
        model = EmpiricalModel(Scenario.from_graph(cycle_graph(4)), tables)
        result = nc_membership(model)
        assert result.inside
        assert result.distribution.support() == {(1, 1, 1, 1): pytest.approx(1.0)}

    def test_popescu_rohrlich_box_is_outside(self):
        correlated = [0.5, 0.0, 0.0, 0.5]
        anti = [0.0, 0.5, 0.5, 0.0]
        tables = {(0, 1): correlated, (1, 2): correlated, (2, 3): correlated, (0, 3): anti}
        model = EmpiricalModel(Scenario.from_graph(cycle_graph(4)), tables)
        result = nc_membership(model)
        assert not result.inside
        assert result.violation > 0.5
        assert_membership_is_verified(model, result)

    def test_disturbing_model_is_rejected(self):
        tables = {(0, 1): [0.5, 0, 0, 0.5], (1, 2): [1.0, 0, 0, 0]}
        model = EmpiricalModel(Scenario.from_graph(path_graph(3)), tables)
        with pytest.raises(NoDisturbanceError):
            nc_membership(model)


class TestGluing:
    def test_node_glued_pentagons(self, rng):
        r = node_glued_realization()
        for _ in range(3):
            model = quantum_behavior(r, random_state(r.m, rng))
            assert glue_jpd_node(model).reproduces(model, tol=1e-8)

    def test_edge_glued_pentagons(self, rng):
        r = edge_glued_realization()
        for _ in range(3):
            model = quantum_behavior(r, random_state(r.m, rng))
            assert glue_jpd_edge(model).reproduces(model, tol=1e-8)

    def test_wrong_gluing_shape(self, rng):
        r = edge_glued_realization()
        model = quantum_behavior(r, random_state(r.m, rng))
        with pytest.raises(MembershipError):
            glue_jpd_node(model)


class TestVorobevGate:
    def test_chordal_scenario_is_trivial(self):
        report = vorobev_gate(Scenario.from_graph(path_graph(5)))
        assert report.trivially_noncontextual
        assert not report.candidate
        assert report.to_json()["verdict"] == "trivially_noncontextual"

    def test_four_cycle_is_sufficient_for_paulis(self):
        report = vorobev_gate(Scenario.from_graph(cycle_graph(4)))
        assert report.candidate
        assert report.pauli_c4_sufficient

    def test_double_edge_glued_pentagons(self):
        report = vorobev_gate(Scenario.from_graph(double_edge_glued_pentagons()))
        assert report.candidate
        assert not report.pauli_c4_sufficient
        assert len(report.cycles_of_length(5)) == 2
        assert len(report.cycles_of_length(6)) == 1


class TestCounterexample:
    @pytest.fixture(scope="class")
    def report(self):
        return conjoined_counterexample()

    def test_operator_spectrum(self, report):
        assert report.lambda_max == pytest.approx(4.2716, abs=1e-3)
        assert report.exceeds_operator_threshold
        assert report.threshold == 4.0

    def test_printed_state(self, report):
        assert report.printed_norm == pytest.approx(1.0000535, abs=1e-6)
        assert report.printed_expectation > 4.0
        assert report.printed_expectation <= report.lambda_max + 1e-9

    def test_witness_reaches_lambda_max(self, report):
        value = expectation(report.witness, report.operator)
        assert value == pytest.approx(report.lambda_max, abs=1e-9)

    def test_membership_verdict_is_certified(self, report):
        model = quantum_behavior(report.realization, report.witness)
        assert_membership_is_verified(model, report.membership)

    def test_gate_sees_no_four_cycle(self, report):
        assert report.gate.candidate
        assert not report.gate.pauli_c4_sufficient

    def test_json(self, report):
        data = report.to_json(digits=6)
        assert data["paulis"] == ["IX", "ZX", "YY", "IY", "XI", "ZY", "YX"]
        assert data["lambda_max"] == pytest.approx(4.2716, abs=1e-3)
        assert data["exceeds_operator_threshold"] is True
        assert data["verdict"] in ("contextual", "noncontextual")
        assert len(data["witness_state"]) == 4

    def test_unfaithful_input_breaks_the_tsirelson_law(self):
        r = Realization.from_json(UNFAITHFUL_C4)
        with pytest.raises(ConstraintViolation):
            quantum_value(r, CycleInequality.from_label("+++-"))
