"""
Pauli Core Module

Exact algebra of the m-qubit Pauli group in the binary symplectic representation,
with the global phase tracked in the full group {+1, +i, -1, -i}.

Bit convention: bit j of ``x`` / ``z`` belongs to qubit j + 1, so the leftmost letter
of a Pauli string is bit 0. Per qubit, (x, z) = (0,0) -> I, (1,0) -> X, (0,1) -> Z,
(1,1) -> Y, and the stored phase multiplies the tensor product of those letters.
"""

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence

from pauli_cycles.errors import PauliParseError, QubitCountMismatch

LETTERS = "IXZY"  # indexed by x + 2z

# Phase exponent (power of i) picked up by the single-qubit product a.b, letters as x + 2z.
# X.Y = iZ, Y.Z = iX, Z.X = iY and the reversed products carry -i.
_PRODUCT_PHASE = {
    (1, 3): 1, (3, 1): 3,
    (3, 2): 1, (2, 3): 3,
    (2, 1): 1, (1, 2): 3,
}

_PHASE_PREFIX = {0: "", 1: "+i", 2: "-", 3: "-i"}
_PAULI_PATTERN = re.compile(r"^(\+|-)?(i)?([IXYZ]+)$")


@dataclass(frozen=True)
class SymplecticVector:
    """Phase-free carrier of a Pauli: the 2m bits x || z packed into one integer."""

    bits: int
    m: int

    @property
    def x(self) -> int:
        return self.bits & ((1 << self.m) - 1)

    @property
    def z(self) -> int:
        return self.bits >> self.m


@dataclass(frozen=True)
class PhasedPauli:
    """
    An m-qubit Pauli operator i^phase * (letter tensor).

    Args:
        phase: exponent k of the global scalar i^k, reduced mod 4
        x: X-part bit-vector (bit j is qubit j + 1)
        z: Z-part bit-vector
        m: number of qubits
    """

    phase: int
    x: int
    z: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise PauliParseError(f"Qubit count must be positive, got {self.m}")
        limit = 1 << self.m
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliParseError(f"Bit-vectors do not fit in {self.m} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, m: int) -> "PhasedPauli":
        return cls(0, 0, 0, m)

    @classmethod
    def single(cls, letter: str, qubit: int, m: int) -> "PhasedPauli":
        """Single-qubit letter on ``qubit`` (0-based) padded with identities."""
        code = LETTERS.index(letter)
        return cls(0, (code & 1) << qubit, (code >> 1) << qubit, m)

    def letter(self, qubit: int) -> str:
        return LETTERS[((self.x >> qubit) & 1) + 2 * ((self.z >> qubit) & 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.m))

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def is_identity(self) -> bool:
        """True for any scalar multiple of the identity."""
        return self.x == 0 and self.z == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators."""
        if not self.is_hermitian:
            raise ValueError(f"{format_pauli(self)} is not Hermitian")
        return 1 if self.phase == 0 else -1

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def symplectic(self) -> SymplecticVector:
        return SymplecticVector(self.x | (self.z << self.m), self.m)

    def unsigned(self) -> "PhasedPauli":
        """The same letters with phase +1."""
        return PhasedPauli(0, self.x, self.z, self.m)

    def negate(self) -> "PhasedPauli":
        return PhasedPauli(self.phase + 2, self.x, self.z, self.m)

    def dagger(self) -> "PhasedPauli":
        # Letters are Hermitian, so only the scalar is conjugated.
        return PhasedPauli(-self.phase, self.x, self.z, self.m)

    def same_up_to_phase(self, other: "PhasedPauli") -> bool:
        return self.m == other.m and self.x == other.x and self.z == other.z

    def __mul__(self, other: "PhasedPauli") -> "PhasedPauli":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_pauli(self)


def _check_same_m(p: PhasedPauli, q: PhasedPauli):
    if p.m != q.m:
        raise QubitCountMismatch(f"Qubit counts differ: {p.m} vs {q.m}")


def commutes(p: PhasedPauli, q: PhasedPauli) -> bool:
    """
    Symplectic commutation test; phases never matter.

    Args:
        p: first operator
        q: second operator

    Returns:
        True iff sum_j (p.x_j q.z_j + p.z_j q.x_j) is even
    """
    _check_same_m(p, q)
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() % 2 == 0


def multiply(p: PhasedPauli, q: PhasedPauli) -> PhasedPauli:
    """
    Exact group product p.q with the phase accumulated qubit by qubit.

    Args:
        p: left factor
        q: right factor

    Returns:
        The product as a PhasedPauli
    """
    _check_same_m(p, q)
    phase = p.phase + q.phase
    overlap = (p.x | p.z) & (q.x | q.z)
    while overlap:
        low = overlap & -overlap
        j = low.bit_length() - 1
        a = ((p.x >> j) & 1) + 2 * ((p.z >> j) & 1)
        b = ((q.x >> j) & 1) + 2 * ((q.z >> j) & 1)
        phase += _PRODUCT_PHASE.get((a, b), 0)
        overlap ^= low
    return PhasedPauli(phase, p.x ^ q.x, p.z ^ q.z, p.m)


def product(paulis: Sequence[PhasedPauli]) -> PhasedPauli:
    """Ordered product of a non-empty sequence."""
    if not paulis:
        raise ValueError("Empty product has no qubit count")
    result = paulis[0]
    for p in paulis[1:]:
        result = multiply(result, p)
    return result


def gf2_rank(paulis: Iterable[PhasedPauli]) -> int:
    """Rank over GF(2) of the symplectic vectors of ``paulis``."""
    basis = {}  # leading bit -> reduced vector
    for p in paulis:
        v = p.symplectic().bits
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return len(basis)


def independent(paulis: Sequence[PhasedPauli]) -> bool:
    """
    GF(2) independence of the symplectic vectors.

    An empty set is independent by convention. Any multiple of the identity has the
    zero vector and makes the set dependent.
    """
    paulis = list(paulis)
    if not paulis:
        return True
    for p in paulis[1:]:
        _check_same_m(paulis[0], p)
    return gf2_rank(paulis) == len(paulis)


def span_contains(generators: Sequence[PhasedPauli], p: PhasedPauli) -> bool:
    """True iff ``p`` is, up to phase, a product of a subset of ``generators``."""
    generators = list(generators)
    if not generators:
        return p.is_identity
    return gf2_rank(generators + [p]) == gf2_rank(generators)


def parse_pauli(text: str) -> PhasedPauli:
    """
    Parse a Pauli string such as ``"XZ"``, ``"-YY"``, ``"iX"`` or ``"-iZI"``.

    Args:
        text: optional sign prefix (+, -, +i, -i, i) followed by letters from IXYZ;
              the leftmost letter is qubit 1

    Returns:
        The parsed PhasedPauli
    """
    if not isinstance(text, str) or not text.strip():
        raise PauliParseError("Empty Pauli string")
    match = _PAULI_PATTERN.match(text.strip())
    if match is None:
        raise PauliParseError(f"Illegal Pauli string: {text!r}")
    sign, imaginary, letters = match.groups()
    phase = (2 if sign == "-" else 0) + (1 if imaginary else 0)
    x = z = 0
    for j, letter in enumerate(letters):
        code = LETTERS.index(letter)
        x |= (code & 1) << j
        z |= (code >> 1) << j
    return PhasedPauli(phase, x, z, len(letters))


def format_pauli(p: PhasedPauli) -> str:
    """Canonical text form: no prefix for +1, then ``-``, ``+i`` or ``-i``."""
    return _PHASE_PREFIX[p.phase] + p.letters


def embed(p: PhasedPauli, extra: PhasedPauli) -> PhasedPauli:
    """Tensor concatenation p (x) extra; the qubits of ``extra`` go to the right."""
    return PhasedPauli(
        p.phase + extra.phase,
        p.x | (extra.x << p.m),
        p.z | (extra.z << p.m),
        p.m + extra.m,
    )


def pauli_alphabet(m: int) -> List[PhasedPauli]:
    """All 4^m - 1 non-identity Paulis with phase +1, ordered by x + (z << m)."""
    mask = (1 << m) - 1
    return [PhasedPauli(0, k & mask, k >> m, m) for k in range(1, 1 << (2 * m))]
