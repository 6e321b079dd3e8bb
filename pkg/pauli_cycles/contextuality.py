"""
Contextuality Module

Noncontextuality inequalities for cycle scenarios, analysis of the operator
Gamma = sum_i gamma_i L_i built from edge Paulis, polytope membership of empirical models
by linear programming, Vorob'ev gating, gluing of joint distributions across shared
contexts, and the two-qubit counterexample on two pentagons sharing two edges.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from configs.fixtures import COUNTEREXAMPLE_STATE
from pauli_cycles.errors import ConstraintViolation, MembershipError, RealizationError
from pauli_cycles.models import (
    Context,
    EmpiricalModel,
    JointDistribution,
    assignment_matrix,
)
from pauli_cycles.pauli_core import PhasedPauli, commutes, multiply, product
from pauli_cycles.realizations import (
    Realization,
    conjoined_realization,
    edge_pair_commutes,
    edge_paulis,
    verify_faithful,
)
from pauli_cycles.scenarios import Scenario, induced_cycles, is_chordal
from pauli_cycles.spectral import (
    PauliSum,
    StateVector,
    expectation,
    extreme_eigen,
    quantum_behavior,
    to_matrix,
)

logger = logging.getLogger("Contextuality")

TSIRELSON = 2 * math.sqrt(2)
MAX_MEMBERSHIP_VERTICES = 16

COUNTEREXAMPLE_THRESHOLD = 4.0


@dataclass(frozen=True)
class CycleInequality:
    """
    sum_i gamma_i <A_i A_{i+1}> <= n - 2, with gamma_i = +-1 and an odd number of -1.
    """

    gamma: Tuple[int, ...]

    def __post_init__(self):
        gamma = tuple(int(g) for g in self.gamma)
        if len(gamma) < 4:
            raise ValueError(f"Cycle inequalities need n >= 4, got {len(gamma)}")
        if any(g not in (1, -1) for g in gamma):
            raise ValueError(f"Signs must be +1 or -1, got {gamma}")
        if math.prod(gamma) != -1:
            raise ValueError(f"Product of signs must be -1, got {gamma}")
        object.__setattr__(self, "gamma", gamma)

    @property
    def n(self) -> int:
        return len(self.gamma)

    @property
    def bound(self) -> int:
        return self.n - 2

    @property
    def label(self) -> str:
        return "".join("+" if g > 0 else "-" for g in self.gamma)

    @classmethod
    def from_label(cls, label: str) -> "CycleInequality":
        if not label or set(label) - {"+", "-"}:
            raise ValueError(f"Sign label must use only '+' and '-', got {label!r}")
        return cls(tuple(1 if c == "+" else -1 for c in label))

    def classical_value(self, assignment: Sequence[int]) -> int:
        """sum_i gamma_i a_i a_{i+1} for a deterministic +-1 assignment."""
        n = self.n
        return sum(self.gamma[i] * assignment[i] * assignment[(i + 1) % n] for i in range(n))

    def evaluate(self, model: EmpiricalModel) -> float:
        """Left-hand side on an empirical model of C_n."""
        n = self.n
        return sum(g * model.correlator(i, (i + 1) % n) for i, g in enumerate(self.gamma))


def enumerate_cycle_inequalities(n: int) -> List[CycleInequality]:
    """All 2^(n-1) sign vectors with an odd number of -1 entries."""
    if n < 4:
        raise ValueError(f"Cycle inequalities need n >= 4, got {n}")
    return [
        CycleInequality(gamma)
        for gamma in itertools.product((1, -1), repeat=n)
        if math.prod(gamma) == -1
    ]


def correlators(model: EmpiricalModel, edges: Optional[Sequence[Tuple[int, int]]] = None) -> Dict[Tuple[int, int], float]:
    """<A_u A_v> for each edge (defaults to every graph edge)."""
    edges = edges if edges is not None else model.scenario.graph.sorted_edges()
    return {(u, v): model.correlator(u, v) for u, v in edges}


def _check_sizes(r: Realization, ineq: CycleInequality):
    if not r.graph.is_cycle():
        raise RealizationError("Expected a realization of a cycle graph")
    if r.n != ineq.n:
        raise RealizationError(f"Inequality for C{ineq.n} applied to a realization of C{r.n}")


def gamma_operator(r: Realization, ineq: CycleInequality) -> PauliSum:
    """
    Gamma = sum_i gamma_i L_i with the sign of each edge Pauli folded into its coefficient.
    """
    _check_sizes(r, ineq)
    L = edge_paulis(r)
    return PauliSum(tuple((g * L[i].sign, L[i].unsigned()) for i, g in enumerate(ineq.gamma)))


def gamma_squared_symbolic(r: Realization, ineq: CycleInequality) -> PauliSum:
    """
    Exact Pauli expansion of Gamma^2.

    Each L_i squares to I, anticommuting pairs cancel, and every commuting pair
    contributes 2 gamma_i gamma_k L_i L_k. Coefficients are integers, so the result is
    exact; for n = 5 it is 5 I.
    """
    _check_sizes(r, ineq)
    n = r.n
    L = edge_paulis(r)
    terms = [(n, PhasedPauli.identity(r.m))]
    for i in range(n):
        for k in range(i + 1, n):
            if commutes(L[i], L[k]):
                terms.append((2 * ineq.gamma[i] * ineq.gamma[k], multiply(L[i], L[k])))
    return PauliSum(tuple(terms)).simplify()


def surviving_pair_count(n: int) -> int:
    """
    Number of commuting unordered edge-Pauli pairs of a faithful C_n, n >= 5.

    Returns:
        2(n - 5) + (n - 5)(n - 4)/2, checked against a direct count
    """
    if n < 5:
        raise ValueError(f"surviving_pair_count needs n >= 5, got {n}")
    formula = 2 * (n - 5) + (n - 5) * (n - 4) // 2
    direct = sum(1 for i in range(n) for j in range(i + 1, n) if edge_pair_commutes(n, i, j))
    if formula != direct:
        raise ConstraintViolation(f"Pair count formula {formula} disagrees with direct count {direct}")
    return formula


class QuantumValue(NamedTuple):
    value: float
    witness: StateVector


def quantum_value(r: Realization, ineq: CycleInequality, tol: float = 1e-9) -> QuantumValue:
    """
    Largest eigenvalue of Gamma with its eigenvector.

    For n = 4 the value is 2 sqrt(2); for n >= 5 it never exceeds sqrt(n^2 - 4n), which
    is below the classical bound n - 2.

    Raises:
        ConstraintViolation: when the value breaks either law (the input was not faithful)
    """
    gamma = gamma_operator(r, ineq)
    eig = extreme_eigen(to_matrix(gamma), tol=tol)
    value = eig.lambda_max
    n = ineq.n
    if n == 4 and abs(value - TSIRELSON) > 1e-9:
        raise ConstraintViolation(f"4-cycle value {value:.12g} differs from 2*sqrt(2)")
    if n >= 5 and value > math.sqrt(n * n - 4 * n) + 1e-9:
        raise ConstraintViolation(f"{n}-cycle value {value:.12g} exceeds sqrt(n^2 - 4n)")
    logger.debug(f"Quantum value {value:.10g} for inequality {ineq.label}")
    return QuantumValue(value, eig.v_max)


def four_cycle_product(r: Realization) -> PhasedPauli:
    """P_0 P_1 P_2 P_3 of a 4-cycle realization; equals L_0 L_2."""
    return product(list(r.paulis))


def tsirelson_state(r: Realization, ineq: CycleInequality, tol: float = 1e-9) -> StateVector:
    """
    State reaching 2 sqrt(2) on a 4-cycle.

    Gamma^2 = 4I - 4 gamma_1 gamma_3 P_0P_1P_2P_3, so the maximizer is a
    (-gamma_1 gamma_3)-eigenvector of P_0P_1P_2P_3 with <Gamma^2> = 8.
    """
    _check_sizes(r, ineq)
    if r.n != 4:
        raise RealizationError(f"tsirelson_state needs a 4-cycle, got C{r.n}")
    value, state = quantum_value(r, ineq, tol=tol)
    gamma = gamma_operator(r, ineq)
    achieved = expectation(state, gamma)
    if abs(abs(achieved) - TSIRELSON) > tol:
        raise ConstraintViolation(f"<Gamma> = {achieved:.12g}, expected 2*sqrt(2)")
    squared = expectation(state, gamma @ gamma)
    if abs(squared - 8.0) > tol:
        raise ConstraintViolation(f"<Gamma^2> = {squared:.12g}, expected 8")
    eigenvalue = -ineq.gamma[1] * ineq.gamma[3]
    q = four_cycle_product(r)
    if abs(expectation(state, q) - eigenvalue) > tol:
        raise ConstraintViolation("Tsirelson state is outside the expected eigenspace of P0P1P2P3")
    return state


class BoundChain(NamedTuple):
    value_squared: float
    gamma_squared_max: float
    pair_bound: int


def bound_chain(r: Realization, ineq: CycleInequality, tol: float = 1e-9) -> BoundChain:
    """
    value^2 <= lambda_max(Gamma^2) <= n + 2 * surviving_pair_count(n) = n^2 - 4n, for n >= 5.
    """
    n = ineq.n
    if n < 5:
        raise ValueError(f"bound_chain needs n >= 5, got {n}")
    value, _ = quantum_value(r, ineq, tol=tol)
    squared_max = extreme_eigen(to_matrix(gamma_squared_symbolic(r, ineq)), tol=tol).lambda_max
    pair_bound = n + 2 * surviving_pair_count(n)
    if not (value**2 <= squared_max + tol and squared_max <= pair_bound + tol):
        raise ConstraintViolation(
            f"Bound chain broken: {value ** 2:.10g} <= {squared_max:.10g} <= {pair_bound}"
        )
    return BoundChain(value**2, squared_max, pair_bound)


@dataclass(frozen=True, eq=False)
class GeneralInequality:
    """
    sum over contexts and outcomes of c[context][outcome] * p(outcome | context) <= bound.

    Args:
        coefficients: context -> coefficients in canonical outcome order
        bound: right-hand side
    """

    coefficients: Mapping[Context, np.ndarray]
    bound: float

    def __post_init__(self):
        coefficients = {tuple(c): np.asarray(v, dtype=float) for c, v in self.coefficients.items()}
        for context, values in coefficients.items():
            if values.size != 2 ** len(context) or not np.all(np.isfinite(values)):
                raise ValueError(f"Invalid coefficients for context {context}")
        object.__setattr__(self, "coefficients", coefficients)

    def evaluate(self, model: EmpiricalModel) -> float:
        return float(sum(values @ model.tables[c] for c, values in self.coefficients.items()))

    def max_deterministic(self, scenario: Scenario) -> float:
        """Largest left-hand side over deterministic global assignments."""
        matrix, rows = _marginal_matrix(scenario)
        y = np.concatenate([self.coefficients.get(c, np.zeros(2 ** len(c))) for c in rows])
        return float((matrix.T @ y).max())

    def to_json(self) -> dict:
        return {
            "contexts": [list(c) for c in self.coefficients],
            "coefficients": [v.tolist() for v in self.coefficients.values()],
            "bound": self.bound,
        }


def _marginal_matrix(scenario: Scenario) -> Tuple[np.ndarray, List[Context]]:
    """
    0/1 matrix mapping global-assignment weights to stacked context tables.

    Row blocks follow the sorted contexts, columns the canonical assignment order.
    """
    n = scenario.graph.n_vertices
    assignments = assignment_matrix(n)
    contexts = sorted(tuple(sorted(c)) for c in scenario.contexts)
    blocks = []
    for context in contexts:
        k = len(context)
        bits = (assignments[:, list(context)] == -1).astype(np.int64)
        index = bits @ (1 << np.arange(k - 1, -1, -1))
        block = np.zeros((2**k, assignments.shape[0]))
        block[index, np.arange(assignments.shape[0])] = 1.0
        blocks.append(block)
    return np.vstack(blocks), contexts


@dataclass(frozen=True, eq=False)
class MembershipResult:
    """
    Outcome of the noncontextual polytope membership test.

    Exactly one of ``distribution`` (inside) and ``certificate`` (outside) is set;
    ``violation`` is the certificate's value on the model minus its bound.
    """

    inside: bool
    distribution: Optional[JointDistribution] = None
    certificate: Optional[GeneralInequality] = None
    violation: float = 0.0

    @property
    def verdict(self) -> str:
        return "noncontextual" if self.inside else "contextual"


_HIGHS_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def nc_membership(model: EmpiricalModel, tol: float = 1e-8) -> MembershipResult:
    """
    Decide whether an empirical model lies in the noncontextual polytope.

    Solves for nonnegative weights on deterministic global assignments reproducing every
    context table. When none exist, a second LP finds a separating inequality, which is
    re-checked against every deterministic assignment before being returned.

    Args:
        model: empirical model on at most 16 vertices
        tol: tolerance for reproducing tables and for separation

    Returns:
        MembershipResult with a verified distribution or certificate

    Raises:
        NoDisturbanceError: when overlapping contexts disagree
        MembershipError: when the scenario is too large or the LP result cannot be verified
    """
    n = model.n_vertices
    if n > MAX_MEMBERSHIP_VERTICES:
        raise MembershipError(f"Membership is limited to {MAX_MEMBERSHIP_VERTICES} vertices, got {n}")
    model.check_no_disturbance()
    matrix, contexts = _marginal_matrix(model.scenario)
    target = np.concatenate([model.tables[c] for c in contexts])
    n_rows, n_cols = matrix.shape

    feasibility = linprog(
        np.zeros(n_cols),
        A_eq=matrix,
        b_eq=target,
        bounds=(0, None),
        method="highs",
        options=_HIGHS_OPTIONS,
    )
    if feasibility.status == 0:
        weights = _polish(matrix, target, np.clip(feasibility.x, 0.0, None))
        distribution = JointDistribution(n, weights / weights.sum())
        deviation = distribution.max_deviation(model)
        if deviation > tol:
            raise MembershipError(f"Joint distribution misses the tables by {deviation:.3g}")
        logger.info(f"Model is noncontextual (deviation {deviation:.2g})")
        return MembershipResult(True, distribution=distribution)
    if feasibility.status != 2:
        raise MembershipError(f"Feasibility LP failed: {feasibility.message}")

    # minimize t - p.y  subject to  A^T y <= t,  -1 <= y <= 1
    cost = np.concatenate([-target, [1.0]])
    a_ub = np.hstack([matrix.T, -np.ones((n_cols, 1))])
    separation = linprog(
        cost,
        A_ub=a_ub,
        b_ub=np.zeros(n_cols),
        bounds=[(-1, 1)] * n_rows + [(None, None)],
        method="highs",
    )
    if separation.status != 0:
        raise MembershipError(f"Separation LP failed: {separation.message}")
    y = separation.x[:n_rows]
    bound = float((matrix.T @ y).max())
    value = float(target @ y)
    if value - bound <= tol:
        raise MembershipError(f"Certificate does not separate: value {value:.12g}, bound {bound:.12g}")
    offsets = np.cumsum([0] + [2 ** len(c) for c in contexts])
    certificate = GeneralInequality(
        {c: y[offsets[i]:offsets[i + 1]] for i, c in enumerate(contexts)}, bound
    )
    logger.info(f"Model is contextual: certificate value {value:.10g} > bound {bound:.10g}")
    return MembershipResult(False, certificate=certificate, violation=value - bound)


def _polish(matrix: np.ndarray, target: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Re-solve the equality system on the LP support; keep the LP answer if that goes negative."""
    support = weights > 1e-12
    if not support.any():
        return weights
    refined, *_ = np.linalg.lstsq(matrix[:, support], target, rcond=None)
    if refined.min() < -1e-10:
        return weights
    polished = np.zeros_like(weights)
    polished[support] = np.clip(refined, 0.0, None)
    before = np.abs(matrix @ weights - target).max()
    after = np.abs(matrix @ polished - target).max()
    return polished if after <= before else weights


def _joint_of(model: EmpiricalModel, vertices: Sequence[int]) -> JointDistribution:
    result = nc_membership(model.restrict(vertices))
    if not result.inside:
        raise MembershipError(f"Sub-model on {list(vertices)} is contextual; nothing to glue")
    return result.distribution


def _local_index(assignments: np.ndarray, columns: Sequence[int]) -> np.ndarray:
    k = len(columns)
    bits = (assignments[:, list(columns)] == -1).astype(np.int64)
    return bits @ (1 << np.arange(k - 1, -1, -1))


def glue_jpd(
    model: EmpiricalModel,
    left: Sequence[int],
    right: Sequence[int],
    tol: float = 1e-8,
    zero: float = 1e-14,
) -> JointDistribution:
    """
    Glue joint distributions of two overlapping sub-scenarios.

    p_T(a) = p_left(a|left) * p_right(a|right) / p_right(a|shared), with 0/0 read as 0.

    Args:
        model: empirical model on the whole scenario
        left: vertices of the first sub-scenario
        right: vertices of the second; together they must cover the scenario
        tol: reproduction tolerance for the glued distribution
        zero: weights below this count as zero

    Returns:
        JointDistribution on all vertices, verified against every context table

    Raises:
        MembershipError: when a sub-model is contextual, the split does not cover the
            scenario, or a nonzero numerator meets a zero denominator
    """
    n = model.n_vertices
    left, right = sorted(set(left)), sorted(set(right))
    if set(left) | set(right) != set(range(n)):
        raise MembershipError("The two sub-scenarios must cover every vertex")
    shared = sorted(set(left) & set(right))
    p_left = _joint_of(model, left)
    p_right = _joint_of(model, right)
    p_shared = p_right.marginal([right.index(v) for v in shared]) if shared else np.ones(1)

    assignments = assignment_matrix(n)
    numerator = p_left.weights[_local_index(assignments, left)] * p_right.weights[_local_index(assignments, right)]
    denominator = p_shared[_local_index(assignments, shared)] if shared else np.ones(len(assignments))
    vanishing = denominator <= zero
    if np.any(numerator[vanishing] > zero):
        raise MembershipError("Nonzero weight over a zero shared marginal; inputs are inconsistent")
    glued = np.zeros(len(assignments))
    glued[~vanishing] = numerator[~vanishing] / denominator[~vanishing]
    distribution = JointDistribution(n, glued / glued.sum())
    deviation = distribution.max_deviation(model)
    if deviation > tol:
        raise MembershipError(f"Glued distribution misses the tables by {deviation:.3g}")
    logger.info(f"Glued JPD over shared vertices {shared} (deviation {deviation:.2g})")
    return distribution


def _glued_pentagons(model: EmpiricalModel, shared_size: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    pentagons = [c for c in induced_cycles(model.scenario.graph, 5) if len(c) == 5]
    if len(pentagons) != 2:
        raise MembershipError(f"Expected two induced 5-cycles, found {len(pentagons)}")
    first, second = pentagons
    if len(set(first) & set(second)) != shared_size:
        raise MembershipError(f"The two 5-cycles must share exactly {shared_size} vertices")
    return first, second


def glue_jpd_node(model: EmpiricalModel) -> JointDistribution:
    """Joint distribution for two 5-cycles sharing a single vertex."""
    return glue_jpd(model, *_glued_pentagons(model, 1))


def glue_jpd_edge(model: EmpiricalModel) -> JointDistribution:
    """Joint distribution for two 5-cycles sharing one edge."""
    return glue_jpd(model, *_glued_pentagons(model, 2))


@dataclass(frozen=True)
class GateReport:
    """
    Vorob'ev gate outcome.

    ``candidate`` is not a contextuality verdict: induced 5-cycles alone do not decide it.
    ``pauli_c4_sufficient`` marks scenarios whose faithful Pauli realizations always admit
    a contextual state because an induced 4-cycle is present.
    """

    trivially_noncontextual: bool
    induced_cycles: Tuple[Tuple[int, ...], ...] = ()
    pauli_c4_sufficient: bool = False

    @property
    def candidate(self) -> bool:
        return not self.trivially_noncontextual

    def cycles_of_length(self, length: int) -> List[Tuple[int, ...]]:
        return [c for c in self.induced_cycles if len(c) == length]

    def to_json(self) -> dict:
        return {
            "verdict": "trivially_noncontextual" if self.trivially_noncontextual else "candidate",
            "induced_cycles": [list(c) for c in self.induced_cycles],
            "pauli_c4_sufficient": self.pauli_c4_sufficient,
        }


def vorobev_gate(sc: Scenario) -> GateReport:
    """Chordal scenarios are trivially noncontextual; otherwise list their induced cycles."""
    g = sc.graph
    if is_chordal(g):
        return GateReport(True)
    cycles = tuple(induced_cycles(g))
    return GateReport(False, cycles, any(len(c) == 4 for c in cycles))


def counterexample_operator(r: Realization) -> PauliSum:
    """
    -(P1P2 + P2P3 + P3P4 + P4P5 + P1P7) + P4P6 - (P4 + P5 + P6 + P7) on the seven vertices.
    """
    P = r.paulis
    terms = [(-1, multiply(P[a], P[b])) for a, b in ((0, 1), (1, 2), (2, 3), (3, 4), (0, 6))]
    terms.append((1, multiply(P[3], P[5])))
    terms.extend((-1, P[v]) for v in (3, 4, 5, 6))
    return PauliSum(tuple(terms))


@dataclass(frozen=True, eq=False)
class CounterexampleReport:
    realization: Realization
    operator: PauliSum
    lambda_max: float
    witness: StateVector
    printed_state: StateVector
    printed_norm: float
    printed_expectation: float
    membership: MembershipResult
    gate: GateReport
    threshold: float = field(default=COUNTEREXAMPLE_THRESHOLD)

    @property
    def exceeds_operator_threshold(self) -> bool:
        return self.lambda_max > self.threshold

    def to_json(self, digits: int = 10) -> dict:
        def fmt(x: float) -> float:
            return float(f"{x:.{digits}g}")

        return {
            "paulis": self.realization.labels(),
            "graph": self.realization.graph.to_json(),
            "lambda_max": fmt(self.lambda_max),
            "threshold": self.threshold,
            "exceeds_operator_threshold": self.exceeds_operator_threshold,
            "witness_state": [[fmt(re), fmt(im)] for re, im in self.witness.to_json()],
            "printed_state_norm": fmt(self.printed_norm),
            "printed_state_expectation": fmt(self.printed_expectation),
            "verdict": self.membership.verdict,
            "certificate_violation": fmt(self.membership.violation),
            "induced_cycles": [list(c) for c in self.gate.induced_cycles],
        }


def conjoined_counterexample(tol: float = 1e-9) -> CounterexampleReport:
    """
    Two-qubit realization of two pentagons sharing two edges, with its operator spectrum.

    The graph has no induced 4-cycle. Whether the behaviour of the operator's top
    eigenvector lies outside the noncontextual polytope is decided by LP membership,
    not by the operator threshold.
    """
    r = conjoined_realization()
    report = verify_faithful(r.graph, r)
    if not report.faithful:
        raise ConstraintViolation(f"Counterexample realization is not faithful: {report.violations}")
    operator = counterexample_operator(r)
    eig = extreme_eigen(to_matrix(operator), tol=tol)
    witness = eig.v_max
    printed_norm = float(np.linalg.norm(COUNTEREXAMPLE_STATE))
    printed = StateVector.from_json(COUNTEREXAMPLE_STATE, normalize=True)
    membership = nc_membership(quantum_behavior(r, witness))
    gate = vorobev_gate(Scenario.from_graph(r.graph))
    logger.info(f"Counterexample lambda_max = {eig.lambda_max:.6f}, verdict {membership.verdict}")
    return CounterexampleReport(
        realization=r,
        operator=operator,
        lambda_max=eig.lambda_max,
        witness=witness,
        printed_state=printed,
        printed_norm=printed_norm,
        printed_expectation=expectation(printed, operator),
        membership=membership,
        gate=gate,
    )
