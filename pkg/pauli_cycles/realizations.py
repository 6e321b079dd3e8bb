"""
Realizations Module

Faithful Pauli realizations of compatibility graphs: an assignment of Hermitian m-qubit
Paulis to vertices such that two operators commute exactly when their vertices are equal
or adjacent. Provides verification, the edge-Pauli constraint suite for cycles, every
explicit cycle and path construction, and the commuting independent set that bounds the
cycle size by 3m.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from pauli_cycles.errors import ConstraintViolation, RealizationError
from pauli_cycles.pauli_core import (
    PhasedPauli,
    commutes,
    embed,
    format_pauli,
    independent,
    multiply,
    parse_pauli,
)
from pauli_cycles.scenarios import (
    Graph,
    cycle_graph,
    double_edge_glued_pentagons,
    edge_glued_pentagons,
    node_glued_pentagons,
    path_graph,
)

logger = logging.getLogger("Realizations")


@dataclass(frozen=True)
class Realization:
    """
    Vertex-to-Pauli assignment on a graph.

    Operators must be Hermitian and share one qubit count. The identity is accepted (a
    path such as X - I - Y is faithful); for cycles of four or more vertices faithfulness
    itself rules it out.

    Args:
        graph: the compatibility graph
        paulis: operator of vertex v at index v
    """

    graph: Graph
    paulis: Tuple[PhasedPauli, ...]

    def __post_init__(self):
        object.__setattr__(self, "paulis", tuple(self.paulis))
        if len(self.paulis) != self.graph.n_vertices:
            raise RealizationError(
                f"Realization assigns {len(self.paulis)} operators to {self.graph.n_vertices} vertices"
            )
        if not self.paulis:
            raise RealizationError("Realization of an empty graph has no qubit count")
        m = self.paulis[0].m
        for v, p in enumerate(self.paulis):
            if p.m != m:
                raise RealizationError(f"Vertex {v} acts on {p.m} qubits, expected {m}")
            if not p.is_hermitian:
                raise RealizationError(f"Vertex {v} operator {format_pauli(p)} is not Hermitian")

    @property
    def m(self) -> int:
        return self.paulis[0].m

    @property
    def n(self) -> int:
        return self.graph.n_vertices

    @classmethod
    def from_strings(cls, graph: Graph, labels: Sequence[str]) -> "Realization":
        return cls(graph, tuple(parse_pauli(s) for s in labels))

    def labels(self) -> List[str]:
        return [format_pauli(p) for p in self.paulis]

    def is_faithful(self) -> bool:
        return verify_faithful(self.graph, self).faithful

    def to_json(self) -> dict:
        return {"m": self.m, "graph": self.graph.to_json(), "paulis": self.labels()}

    @classmethod
    def from_json(cls, data: Mapping) -> "Realization":
        try:
            graph = Graph.from_json(data["graph"])
            realization = cls.from_strings(graph, data["paulis"])
        except (KeyError, TypeError) as e:
            raise RealizationError(f"Malformed realization JSON: {e}") from e
        if "m" in data and int(data["m"]) != realization.m:
            raise RealizationError(f"Declared m={data['m']} but operators act on {realization.m} qubits")
        return realization


@dataclass(frozen=True)
class PairViolation:
    u: int
    v: int
    expected_commute: bool
    actual_commute: bool

    def to_json(self) -> dict:
        return {
            "pair": [self.u, self.v],
            "expected_commute": self.expected_commute,
            "actual_commute": self.actual_commute,
        }


@dataclass(frozen=True)
class FaithfulnessReport:
    faithful: bool
    violations: Tuple[PairViolation, ...] = ()

    def to_json(self) -> dict:
        return {"faithful": self.faithful, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class EdgePauliSet:
    """Edge Paulis L_i = P_i P_{i+1 mod n} of a cycle realization, phases kept."""

    operators: Tuple[PhasedPauli, ...]

    def __len__(self) -> int:
        return len(self.operators)

    def __getitem__(self, i: int) -> PhasedPauli:
        return self.operators[i % len(self.operators)]


@dataclass(frozen=True)
class EdgeConstraintReport:
    n: int
    commuting_pairs: Tuple[Tuple[int, int], ...]
    checks: int = field(default=0)


def verify_faithful(g: Graph, r: Realization) -> FaithfulnessReport:
    """
    Exhaustive pairwise check of the commute-iff-adjacent rule.

    Args:
        g: graph the realization should be faithful to
        r: the realization

    Returns:
        FaithfulnessReport listing every offending pair
    """
    if len(r.paulis) != g.n_vertices:
        raise RealizationError(
            f"Realization has {len(r.paulis)} operators for a graph with {g.n_vertices} vertices"
        )
    violations = []
    for u in range(g.n_vertices):
        for v in range(u + 1, g.n_vertices):
            expected = g.has_edge(u, v)
            actual = commutes(r.paulis[u], r.paulis[v])
            if expected != actual:
                violations.append(PairViolation(u, v, expected, actual))

    faithful = not violations
    if faithful and g.is_cycle() and g.n_vertices >= 4:
        for u in range(g.n_vertices):
            for v in range(u + 1, g.n_vertices):
                if r.paulis[u].same_up_to_phase(r.paulis[v]):
                    raise ConstraintViolation(f"Faithful cycle repeats an operator at vertices {u}, {v}")
    return FaithfulnessReport(faithful, tuple(violations))


def _require_cycle(r: Realization, min_n: int = 3):
    if not r.graph.is_cycle():
        raise RealizationError("Expected a realization of a cycle graph")
    if r.n < min_n:
        raise RealizationError(f"Expected a cycle with at least {min_n} vertices, got {r.n}")


def _require_path(r: Realization, min_l: int = 2):
    if not r.graph.is_path():
        raise RealizationError("Expected a realization of a path graph")
    if r.n < min_l:
        raise RealizationError(f"Expected a path with at least {min_l} vertices, got {r.n}")


def edge_paulis(r: Realization) -> EdgePauliSet:
    """
    Edge Paulis of a cycle realization in cycle order.

    Raises:
        ConstraintViolation: when some L_i is a multiple of the identity or of a cycle
            operator, which a faithful cycle of four or more vertices never allows
    """
    _require_cycle(r)
    n = r.n
    ops = tuple(multiply(r.paulis[i], r.paulis[(i + 1) % n]) for i in range(n))
    for i, L in enumerate(ops):
        if not L.is_hermitian:
            raise ConstraintViolation(f"Edge Pauli L{i} = {format_pauli(L)} is not Hermitian")
        if n < 4:
            continue
        if L.is_identity:
            raise ConstraintViolation(f"Edge Pauli L{i} is a multiple of the identity")
        for l, P in enumerate(r.paulis):
            if L.same_up_to_phase(P):
                raise ConstraintViolation(f"Edge Pauli L{i} equals +-P{l}")
    return EdgePauliSet(ops)


def edge_pair_commutes(n: int, i: int, j: int) -> bool:
    """Whether L_i and L_j of a faithful C_n commute, from their cyclic distance alone."""
    d = min((j - i) % n, (i - j) % n)
    return d >= 3 or (n == 4 and d == 2)


def check_edge_constraints(r: Realization) -> EdgeConstraintReport:
    """
    Check the commutation pattern every faithful cycle realization imposes on its edge Paulis.

    Nearest and next-nearest edge Paulis anticommute (for n = 4 the opposite edges commute),
    edge Paulis three or more steps apart commute, and L_i commutes with P_l unless l is
    i - 1 or i + 2.

    Args:
        r: faithful realization of C_n, n >= 4

    Returns:
        EdgeConstraintReport with the commuting edge pairs

    Raises:
        ConstraintViolation: on the first violated condition
    """
    _require_cycle(r, min_n=4)
    n = r.n
    L = edge_paulis(r)
    checks = 0
    commuting = []
    for i in range(n):
        for j in range(i + 1, n):
            expected = edge_pair_commutes(n, i, j)
            actual = commutes(L[i], L[j])
            checks += 1
            if expected != actual:
                raise ConstraintViolation(
                    f"L{i} and L{j} should {'commute' if expected else 'anticommute'} in a {n}-cycle"
                )
            if actual:
                commuting.append((i, j))
        for l in range(n):
            expected = l not in ((i - 1) % n, (i + 2) % n)
            checks += 1
            if commutes(L[i], r.paulis[l]) != expected:
                raise ConstraintViolation(
                    f"L{i} and P{l} should {'commute' if expected else 'anticommute'}"
                )
    return EdgeConstraintReport(n, tuple(commuting), checks)


def _rows_to_realization(graph: Graph, rows: Sequence[str]) -> Realization:
    return Realization.from_strings(graph, rows)


def _marching_rows(m: int, count: int) -> List[str]:
    """Row k carries X at qubit k and Z on qubits 0..k-2."""
    rows = []
    for k in range(count):
        letters = ["I"] * m
        letters[k] = "X"
        for j in range(k - 1):
            letters[j] = "Z"
        rows.append("".join(letters))
    return rows


def construct_acc(m: int) -> Realization:
    """
    Faithful C_m on m qubits: the marching X rows followed by I Z...Z I X.
    """
    if m < 3:
        raise RealizationError(f"construct_acc needs m >= 3, got {m}")
    rows = _marching_rows(m, m - 1)
    rows.append("I" + "Z" * (m - 3) + "IX")
    return _rows_to_realization(cycle_graph(m), rows)


def construct_c2(m: int) -> Realization:
    """
    Faithful C_{m+2} on m qubits.

    The m marching X rows are closed by Z...ZI and IZ...Z. A single qubit only supports
    the triangle, realized as X, X, X.
    """
    if m < 1:
        raise RealizationError(f"construct_c2 needs m >= 1, got {m}")
    if m == 1:
        return _rows_to_realization(cycle_graph(3), ["X", "X", "X"])
    rows = _marching_rows(m, m)
    rows.append("Z" * (m - 1) + "I")
    rows.append("I" + "Z" * (m - 1))
    return _rows_to_realization(cycle_graph(m + 2), rows)


def append_qubit(r: Realization) -> Realization:
    """Tensor every operator with a fresh identity qubit."""
    ident = PhasedPauli.identity(1)
    return Realization(r.graph, tuple(embed(p, ident) for p in r.paulis))


def path_to_cycle(r: Realization) -> Realization:
    """
    Close a faithful path H_l into a faithful C_l on one more qubit.

    The first operator gains X, the last gains Y and every other gains I.
    """
    _require_path(r)
    l = r.n
    if l < 3:
        raise RealizationError(f"path_to_cycle needs l >= 3, got {l}")
    x, y, i = (PhasedPauli.single(c, 0, 1) for c in "XYI")
    paulis = [embed(p, x if v == 0 else y if v == l - 1 else i) for v, p in enumerate(r.paulis)]
    return Realization(cycle_graph(l), tuple(paulis))


def concat_paths(r1: Realization, r2: Realization) -> Realization:
    """
    Stack two faithful paths into a faithful H_{l+l'-2} on m+m' qubits.

    Args:
        r1: realization (P_1..P_l) of H_l on m qubits
        r2: realization (Q_1..Q_l') of H_l' on m' qubits

    Returns:
        P_1..P_{l-2} padded with identities, then P_{l-1} Q_1, P_l Q_2, ..., P_l Q_l'
    """
    _require_path(r1)
    _require_path(r2)
    l, l2 = r1.n, r2.n
    pad = PhasedPauli.identity(r2.m)
    paulis = [embed(p, pad) for p in r1.paulis[: l - 2]]
    paulis.append(embed(r1.paulis[l - 2], r2.paulis[0]))
    paulis.extend(embed(r1.paulis[l - 1], q) for q in r2.paulis[1:])
    return Realization(path_graph(l + l2 - 2), tuple(paulis))


def h3_seed() -> Realization:
    """Single-qubit H_3: X - I - Y."""
    return _rows_to_realization(path_graph(3), ["X", "I", "Y"])


def h5_seed() -> Realization:
    """Faithful 2-qubit H_5, the longest induced path two qubits allow."""
    return _rows_to_realization(path_graph(5), ["XI", "IZ", "ZI", "ZX", "YY"])


def h8_seed() -> Realization:
    """Faithful 3-qubit H_8."""
    return _rows_to_realization(
        path_graph(8), ["XII", "IXI", "ZII", "ZZI", "YYX", "YZZ", "YZI", "YZX"]
    )


def _big_path(m: int) -> Realization:
    """Path on m - 1 qubits whose closure is the big_cycle(m) realization."""
    repeats = (m - 1) // 3
    path = h8_seed()
    for _ in range(repeats - 1):
        path = concat_paths(path, h8_seed())
    if m % 3 == 2:
        path = concat_paths(path, h3_seed())
    elif m % 3 == 0:
        path = concat_paths(path, h5_seed())
    return path


def guaranteed_cycle_size(m: int) -> int:
    """Largest cycle the explicit constructions realize on m qubits."""
    if m < 1:
        raise RealizationError(f"Qubit count must be positive, got {m}")
    if m < 4:
        return m + 2
    return 2 * m if m % 3 == 1 else 2 * m - 1


def big_cycle(m: int) -> Realization:
    """
    Faithful C_{2m} (m = 1 mod 3) or C_{2m-1} (otherwise) on m qubits.

    Repeated H_8 concatenation gives H_{8+6p} on 3 + 3p qubits. One extra H_3 or H_5
    link tops up the two other residues, and path_to_cycle closes the result.
    """
    if m < 4:
        raise RealizationError(f"big_cycle needs m >= 4, got {m}")
    cycle = path_to_cycle(_big_path(m))
    logger.info(f"Built C{cycle.n} on {cycle.m} qubits")
    return cycle


def sub_path(r: Realization, start: int, length: int) -> Realization:
    """
    Realization of H_length read off consecutive vertices of a path or cycle.

    On a cycle the walk wraps around and must leave out at least one vertex.
    """
    n = r.n
    if r.graph.is_cycle():
        if not 2 <= length <= n - 1:
            raise RealizationError(f"Induced sub-path of C{n} must have 2..{n - 1} vertices")
        vertices = [(start + k) % n for k in range(length)]
    elif r.graph.is_path():
        if length < 2 or start < 0 or start + length > n:
            raise RealizationError(f"Sub-path [{start}, {start + length}) is outside H{n}")
        vertices = list(range(start, start + length))
    else:
        raise RealizationError("sub_path needs a path or cycle realization")
    return Realization(path_graph(length), tuple(r.paulis[v] for v in vertices))


def cycle_to_path(r: Realization, drop: int = 0) -> Realization:
    """Drop one cycle vertex, leaving the induced path that starts after it."""
    _require_cycle(r)
    return sub_path(r, drop + 1, r.n - 1)


def cycle_from_path(r: Realization, k: int) -> Realization:
    """Faithful C_k on m + 1 qubits from a faithful H_l, for any 3 <= k <= l."""
    _require_path(r)
    if not 3 <= k <= r.n:
        raise RealizationError(f"Cycle size must lie in 3..{r.n}, got {k}")
    return path_to_cycle(sub_path(r, 0, k))


def longest_path(m: int) -> Realization:
    """Longest explicitly constructed faithful path on m qubits."""
    if m < 1:
        raise RealizationError(f"Qubit count must be positive, got {m}")
    if m == 1:
        return h3_seed()
    if m == 2:
        return h5_seed()
    return _big_path(m + 1)


def cycle_family(m: int) -> Dict[int, Realization]:
    """
    Faithful realizations of every cycle size from 3 up to guaranteed_cycle_size(m).

    Returns:
        Map from cycle size to a verified realization on exactly m qubits
    """
    family: Dict[int, Realization] = {}
    if m >= 2:
        path = longest_path(m - 1)
        for k in range(3, path.n + 1):
            family[k] = cycle_from_path(path, k)
    c2 = construct_c2(m)
    family.setdefault(c2.n, c2)
    for k, r in family.items():
        if not verify_faithful(r.graph, r).faithful:
            raise ConstraintViolation(f"Constructed C{k} on {m} qubits is not faithful")
    return dict(sorted(family.items()))


def independence_witness(r: Realization) -> Tuple[PhasedPauli, ...]:
    """
    Commuting independent set {P_0, L_0, L_3, ..., L_{3(ceil(n/3)-2)}} of a faithful C_n.

    Its size is ceil(n/3) and a commuting independent set of Paulis has at most m members,
    so no faithful m-qubit realization of C_n exists for n > 3m.

    Raises:
        ConstraintViolation: when the set fails to commute, is dependent or exceeds m
    """
    _require_cycle(r, min_n=4)
    n = r.n
    L = edge_paulis(r)
    witness = [r.paulis[0]] + [L[3 * j] for j in range(math.ceil(n / 3) - 1)]
    for a in range(len(witness)):
        for b in range(a + 1, len(witness)):
            if not commutes(witness[a], witness[b]):
                raise ConstraintViolation(f"Witness members {a} and {b} anticommute")
    if not independent(witness):
        raise ConstraintViolation("Witness set is not independent")
    if len(witness) > r.m:
        raise ConstraintViolation(f"Witness of size {len(witness)} exceeds m = {r.m}")
    return tuple(witness)


def node_glued_realization() -> Realization:
    """4-qubit faithful realization of two pentagons sharing a vertex."""
    return _rows_to_realization(
        node_glued_pentagons(),
        ["XIII", "IXII", "ZIXI", "ZZII", "IZZI", "IYZX", "ZYZX", "YZXZ", "IYZZ"],
    )


def edge_glued_realization() -> Realization:
    """3-qubit faithful realization of two pentagons sharing an edge."""
    return _rows_to_realization(
        edge_glued_pentagons(), ["XII", "IXI", "ZIX", "ZZI", "IZZ", "IYZ", "ZYZ", "YZI"]
    )


def conjoined_realization() -> Realization:
    """2-qubit faithful realization of two pentagons sharing two edges."""
    return _rows_to_realization(
        double_edge_glued_pentagons(), ["IX", "ZX", "YY", "IY", "XI", "ZY", "YX"]
    )
