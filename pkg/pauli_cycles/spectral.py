"""
Spectral Module

Dense matrices of Pauli sums, Hermitian eigen-analysis, pure states and the quantum
empirical models they induce on a realized scenario.

Matrices use the computational basis with qubit 1 as the most significant bit, so the
leftmost letter of a Pauli string is the leftmost Kronecker factor.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from pauli_cycles.errors import ConstraintViolation, DimensionError, EigenSolverError
from pauli_cycles.models import EmpiricalModel, outcome_tuples
from pauli_cycles.pauli_core import PhasedPauli, commutes, format_pauli, multiply
from pauli_cycles.realizations import Realization
from pauli_cycles.scenarios import Scenario

logger = logging.getLogger("Spectral")

MAX_QUBITS = 12
HERMITIAN_TOLERANCE = 1e-12
NORM_TOLERANCE = 1e-10

_LETTER_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PHASES = (1, 1j, -1, -1j)

Term = Tuple[float, PhasedPauli]


@dataclass(frozen=True)
class PauliSum:
    """
    Linear combination sum_k c_k P_k of Paulis on a common number of qubits.

    Args:
        terms: (coefficient, PhasedPauli) pairs; the Pauli's own phase multiplies c_k
    """

    terms: Tuple[Term, ...]

    def __post_init__(self):
        terms = tuple((c, p) for c, p in self.terms)
        if not terms:
            raise DimensionError("A PauliSum needs at least one term")
        m = terms[0][1].m
        if any(p.m != m for _, p in terms):
            raise DimensionError("All terms of a PauliSum must act on the same qubits")
        object.__setattr__(self, "terms", terms)

    @property
    def m(self) -> int:
        return self.terms[0][1].m

    @property
    def is_hermitian(self) -> bool:
        return all(p.is_hermitian for c, p in self.terms if c != 0)

    @classmethod
    def from_pauli(cls, p: PhasedPauli, coefficient: float = 1) -> "PauliSum":
        return cls(((coefficient, p),))

    def __add__(self, other: "PauliSum") -> "PauliSum":
        return PauliSum(self.terms + other.terms)

    def scale(self, factor: float) -> "PauliSum":
        return PauliSum(tuple((factor * c, p) for c, p in self.terms))

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        """Operator product, expanded term by term with exact phases."""
        return PauliSum(
            tuple((c1 * c2, multiply(p1, p2)) for c1, p1 in self.terms for c2, p2 in other.terms)
        )

    def simplify(self) -> "PauliSum":
        """
        Collect like terms exactly.

        Phases are folded into the coefficients: the result holds real parts on
        positive-phase Paulis and imaginary parts on +i-phase Paulis. Integer
        coefficients stay integers, so cancellations are exact.
        """
        collected = {}
        for c, p in self.terms:
            re, im = collected.get((p.x, p.z), (0, 0))
            if p.phase == 0:
                re += c
            elif p.phase == 1:
                im += c
            elif p.phase == 2:
                re -= c
            else:
                im -= c
            collected[(p.x, p.z)] = (re, im)
        m = self.m
        terms = []
        for (x, z), (re, im) in sorted(collected.items(), key=lambda kv: (kv[0][0] | kv[0][1], kv[0])):
            if re != 0:
                terms.append((re, PhasedPauli(0, x, z, m)))
            if im != 0:
                terms.append((im, PhasedPauli(1, x, z, m)))
        if not terms:
            terms.append((0, PhasedPauli.identity(m)))
        return PauliSum(tuple(terms))

    def coefficient(self, p: PhasedPauli) -> complex:
        """Coefficient of the positive-phase Pauli with the letters of ``p``."""
        total = 0
        for c, q in self.terms:
            if q.same_up_to_phase(p):
                total += c * _PHASES[q.phase]
        return total

    def describe(self) -> str:
        parts = []
        for c, p in self.terms:
            parts.append(f"{c:+g}*{format_pauli(p)}")
        return " ".join(parts)


@dataclass(frozen=True, eq=False)
class DenseHermitian:
    """Conjugate-symmetric 2^m x 2^m complex matrix."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        dim = entries.shape[0]
        if entries.ndim != 2 or entries.shape != (dim, dim) or dim < 2 or dim & (dim - 1):
            raise DimensionError(f"Expected a square matrix of power-of-two size, got {entries.shape}")
        if not np.allclose(entries, entries.conj().T, atol=HERMITIAN_TOLERANCE, rtol=0):
            raise ConstraintViolation("Matrix is not Hermitian")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.dim.bit_length() - 1


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm pure state on m qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dim = amps.size
        if dim < 2 or dim & (dim - 1):
            raise DimensionError(f"State dimension {dim} is not a power of two")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DimensionError(f"State has norm {norm:.12g}, expected 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def m(self) -> int:
        return self.dim.bit_length() - 1

    @classmethod
    def normalized(cls, amplitudes: Iterable[complex]) -> "StateVector":
        amps = np.asarray(list(amplitudes), dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DimensionError("Cannot normalize the zero vector")
        return cls(amps / norm)

    def to_json(self) -> List[List[float]]:
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[float]], normalize: bool = False) -> "StateVector":
        try:
            amps = [complex(float(re), float(im)) for re, im in data]
        except (TypeError, ValueError) as e:
            raise DimensionError(f"Malformed state JSON: {e}") from e
        return cls.normalized(amps) if normalize else cls(np.array(amps))


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Full spectrum in ascending order with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def v_max(self) -> StateVector:
        return StateVector(self.eigenvectors[:, -1])

    def eigenspace(self, value: float, tol: float = 1e-8) -> np.ndarray:
        """Orthonormal basis (as columns) of the eigenspace of ``value``."""
        return self.eigenvectors[:, np.abs(self.eigenvalues - value) <= tol]


def pauli_matrix(p: PhasedPauli) -> np.ndarray:
    """Dense matrix of a single PhasedPauli, phase included."""
    if p.m > MAX_QUBITS:
        raise DimensionError(f"{p.m} qubits exceeds the dense limit of {MAX_QUBITS}")
    letters = [_LETTER_MATRICES[c] for c in p.letters]
    return _PHASES[p.phase] * reduce(np.kron, letters)


def sum_matrix(s: PauliSum) -> np.ndarray:
    """Dense matrix of a PauliSum without any Hermiticity requirement."""
    if s.m > MAX_QUBITS:
        raise DimensionError(f"{s.m} qubits exceeds the dense limit of {MAX_QUBITS}")
    dim = 2**s.m
    out = np.zeros((dim, dim), dtype=complex)
    for c, p in s.terms:
        if c != 0:
            out += c * pauli_matrix(p)
    return out


def to_matrix(s: Union[PauliSum, PhasedPauli]) -> DenseHermitian:
    """
    Dense Hermitian matrix of a Hermitian Pauli sum.

    Raises:
        DimensionError: beyond 12 qubits
        ConstraintViolation: when the sum is not Hermitian
    """
    if isinstance(s, PhasedPauli):
        s = PauliSum.from_pauli(s)
    if not s.is_hermitian:
        raise ConstraintViolation(f"Pauli sum {s.describe()} is not Hermitian")
    return DenseHermitian(sum_matrix(s))


def extreme_eigen(h: Union[DenseHermitian, np.ndarray], tol: float = 1e-9) -> EigenResult:
    """
    Full Hermitian eigendecomposition with a residual check.

    Args:
        h: Hermitian matrix
        tol: allowed residual |Hv - lambda v| relative to the spectral norm

    Returns:
        EigenResult with the whole spectrum

    Raises:
        EigenSolverError: when LAPACK fails or a residual exceeds the tolerance
    """
    matrix = h.entries if isinstance(h, DenseHermitian) else np.asarray(h, dtype=complex)
    if matrix.shape[0] > 2**MAX_QUBITS:
        raise DimensionError(f"Dimension {matrix.shape[0]} exceeds 2^{MAX_QUBITS}")
    try:
        values, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as e:
        raise EigenSolverError(f"Eigendecomposition failed: {e}") from e
    scale = max(float(np.abs(values).max()), 1.0)
    residual = float(np.abs(matrix @ vectors - vectors * values).max())
    if residual > tol * scale:
        raise EigenSolverError(f"Eigen residual {residual:.3g} exceeds {tol * scale:.3g}")
    return EigenResult(values, vectors)


def expectation(state: StateVector, s: Union[PauliSum, PhasedPauli, DenseHermitian, np.ndarray]) -> float:
    """
    <psi|S|psi> for a Hermitian operator.

    Raises:
        DimensionError: when dimensions differ
        ConstraintViolation: when the imaginary part exceeds 1e-10
    """
    if isinstance(s, PhasedPauli):
        s = PauliSum.from_pauli(s)
    if isinstance(s, PauliSum):
        matrix = sum_matrix(s)
    elif isinstance(s, DenseHermitian):
        matrix = s.entries
    else:
        matrix = np.asarray(s, dtype=complex)
    if matrix.shape != (state.dim, state.dim):
        raise DimensionError(f"State of dimension {state.dim} against operator {matrix.shape}")
    value = np.vdot(state.amplitudes, matrix @ state.amplitudes)
    if abs(value.imag) > NORM_TOLERANCE:
        raise ConstraintViolation(f"Expectation has imaginary part {value.imag:.3g}")
    return float(value.real)


def projector(p: PhasedPauli, sign: int) -> np.ndarray:
    """Spectral projector (I + sign P) / 2 of a Hermitian Pauli."""
    if sign not in (1, -1):
        raise ValueError(f"Outcome must be +1 or -1, got {sign}")
    if not p.is_hermitian:
        raise ConstraintViolation(f"{format_pauli(p)} is not Hermitian")
    dim = 2**p.m
    return (np.eye(dim, dtype=complex) + sign * pauli_matrix(p)) / 2


def basis_state(m: int, index: int = 0) -> StateVector:
    amps = np.zeros(2**m, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def random_state(m: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state from a seeded generator."""
    dim = 2**m
    return StateVector.normalized(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def quantum_behavior(
    r: Realization,
    state: StateVector,
    sc: Optional[Scenario] = None,
    clamp: float = 1e-12,
    hard_floor: float = 1e-9,
) -> EmpiricalModel:
    """
    Empirical model of measuring the realized operators on ``state``.

    Each context is measured jointly: the probability of outcomes (a_v) is
    <psi| prod_v (I + a_v P_v)/2 |psi>.

    Args:
        r: realization, faithful on the scenario graph
        state: pure state on r.m qubits
        sc: scenario (defaults to the maximal-clique scenario of r.graph)
        clamp: probabilities below this are set to zero
        hard_floor: probabilities below minus this value signal a bug

    Returns:
        EmpiricalModel with one table per context
    """
    sc = sc or Scenario.from_graph(r.graph)
    if state.m != r.m:
        raise DimensionError(f"State on {state.m} qubits for a {r.m}-qubit realization")
    tables = {}
    psi = state.amplitudes
    for context in sc.sorted_contexts():
        ops = [r.paulis[v] for v in context]
        for i, p in enumerate(ops):
            for q in ops[i + 1:]:
                if not commutes(p, q):
                    raise ConstraintViolation(f"Context {context} contains anticommuting operators")
        matrices = [pauli_matrix(p) for p in ops]
        probs = []
        for outcome in outcome_tuples(len(context)):
            vec = psi
            for a, mat in zip(outcome, matrices):
                vec = (vec + a * (mat @ vec)) / 2
            value = float(np.vdot(psi, vec).real)
            if value < -hard_floor:
                raise ConstraintViolation(f"Negative probability {value:.3g} in context {context}")
            probs.append(0.0 if value < clamp else value)
        tables[context] = np.array(probs)
    logger.debug(f"Built behaviour over {len(tables)} contexts")
    return EmpiricalModel(sc, tables)
