"""
Error types for the pauli_cycles package.
Every error is a ValueError so callers that only care about bad input can catch that.
"""


class PauliCyclesError(ValueError):
    """Base class for all package errors."""


class QubitCountMismatch(PauliCyclesError):
    """Two Pauli operators (or a Pauli and a state) disagree on the number of qubits."""


class PauliParseError(PauliCyclesError):
    """A Pauli string could not be parsed."""


class GraphError(PauliCyclesError):
    """Invalid graph construction or gluing."""


class RealizationError(PauliCyclesError):
    """A realization is incomplete, of the wrong shape, or carries a non-Hermitian vertex."""


class ConstraintViolation(PauliCyclesError):
    """A structural condition on a faithful realization failed; signals an upstream bug."""


class NoDisturbanceError(PauliCyclesError):
    """Overlapping contexts of an empirical model disagree on their shared marginal."""


class MembershipError(PauliCyclesError):
    """The polytope-membership problem is too large or its answer could not be verified."""


class EigenSolverError(PauliCyclesError):
    """The eigen-decomposition did not meet its residual tolerance."""


class DimensionError(PauliCyclesError):
    """Matrix or state dimensions are out of range or inconsistent."""
