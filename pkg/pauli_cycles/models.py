"""
Models Module

Probability tables over +-1 outcomes: empirical models (one distribution per context,
subject to no-disturbance) and joint distributions over global outcome assignments.

Outcome ordering is fixed everywhere: the outcomes of k measurements, taken in increasing
vertex order, are enumerated as itertools.product((1, -1), repeat=k). Reshaping a table to
(2,) * k therefore puts outcome +1 at index 0 and -1 at index 1 of every axis.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from pauli_cycles.errors import MembershipError, NoDisturbanceError
from pauli_cycles.scenarios import Graph, Scenario

Context = Tuple[int, ...]

TABLE_TOLERANCE = 1e-9


@lru_cache(maxsize=None)
def outcome_tuples(k: int) -> Tuple[Tuple[int, ...], ...]:
    """All +-1 outcome tuples of k measurements in canonical order."""
    return tuple(itertools.product((1, -1), repeat=k))


@lru_cache(maxsize=None)
def assignment_matrix(n: int) -> np.ndarray:
    """(2^n, n) array of global +-1 assignments in canonical order."""
    return np.array(outcome_tuples(n), dtype=np.int8).reshape(2**n, n)


def marginalize(table: np.ndarray, variables: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """
    Marginal of a table over ``variables`` onto the subset ``keep``.

    Args:
        table: flat probability vector of length 2^len(variables)
        variables: vertex labels of the table axes, in table order
        keep: vertices to keep; the result follows their order in ``variables``

    Returns:
        Flat marginal table
    """
    keep_set = set(keep)
    missing = keep_set - set(variables)
    if missing:
        raise ValueError(f"Cannot marginalize onto {sorted(missing)}: not in table")
    tensor = np.asarray(table, dtype=float).reshape((2,) * len(variables))
    drop = tuple(i for i, v in enumerate(variables) if v not in keep_set)
    return tensor.sum(axis=drop).reshape(-1) if drop else tensor.reshape(-1).copy()


@dataclass(frozen=True, eq=False)
class EmpiricalModel:
    """
    Behaviour on a scenario: a distribution over joint outcomes for every context.

    Args:
        scenario: measurement scenario
        tables: context -> probabilities in canonical outcome order, with axes following
            the vertex order of the context as given; tables are stored in sorted order
    """

    scenario: Scenario
    tables: Mapping[Context, np.ndarray]

    def __post_init__(self):
        tables = {}
        expected = {tuple(sorted(c)) for c in self.scenario.contexts}
        for context, table in self.tables.items():
            context = tuple(context)
            key = tuple(sorted(context))
            if key in tables:
                raise MembershipError(f"Context {key} is given more than once")
            arr = np.asarray(table, dtype=float).reshape(-1)
            if arr.size != 2 ** len(key):
                raise MembershipError(f"Table of context {key} has {arr.size} entries, expected {2 ** len(key)}")
            if context != key:
                axes = [context.index(v) for v in key]
                arr = arr.reshape((2,) * len(key)).transpose(axes).reshape(-1)
            if np.any(arr < -1e-12):
                raise MembershipError(f"Table of context {key} has negative probabilities")
            if abs(arr.sum() - 1.0) > TABLE_TOLERANCE:
                raise MembershipError(f"Table of context {key} sums to {arr.sum():.12g}")
            tables[key] = arr
        if set(tables) != expected:
            raise MembershipError("Tables must cover exactly the contexts of the scenario")
        object.__setattr__(self, "tables", tables)

    @property
    def contexts(self) -> List[Context]:
        return sorted(self.tables)

    @property
    def n_vertices(self) -> int:
        return self.scenario.graph.n_vertices

    def context_containing(self, vertices: Sequence[int]) -> Context:
        wanted = set(vertices)
        for context in self.contexts:
            if wanted <= set(context):
                return context
        raise MembershipError(f"No context contains vertices {sorted(wanted)}")

    def marginal(self, vertices: Sequence[int], context: Context = None) -> np.ndarray:
        """Distribution of ``vertices`` (sorted) read from ``context`` or the first one containing them."""
        keep = sorted(vertices)
        if context is None:
            context = self.context_containing(keep)
        return marginalize(self.tables[tuple(context)], context, keep)

    def correlator(self, u: int, v: int) -> float:
        """<A_u A_v> = sum_ab a b p(a, b)."""
        table = self.marginal([u, v])
        signs = np.array([a * b for a, b in outcome_tuples(2)], dtype=float)
        return float(signs @ table)

    def disturbance(self) -> float:
        """Largest disagreement between shared marginals of overlapping contexts."""
        worst = 0.0
        contexts = self.contexts
        for i, c1 in enumerate(contexts):
            for c2 in contexts[i + 1:]:
                shared = sorted(set(c1) & set(c2))
                if not shared:
                    continue
                diff = marginalize(self.tables[c1], c1, shared) - marginalize(self.tables[c2], c2, shared)
                worst = max(worst, float(np.abs(diff).max()))
        return worst

    def check_no_disturbance(self, tol: float = TABLE_TOLERANCE):
        """
        Raises:
            NoDisturbanceError: when overlapping contexts disagree beyond ``tol``
        """
        worst = self.disturbance()
        if worst > tol:
            raise NoDisturbanceError(f"Overlapping contexts disagree by {worst:.3g}")

    def restrict(self, vertices: Sequence[int]) -> "EmpiricalModel":
        """
        Marginal model on the sub-scenario induced by ``vertices``.

        The sub-scenario is relabelled 0..k-1 following the order of ``vertices``.
        """
        vertices = list(vertices)
        sub = Scenario.from_graph(self.scenario.graph.induced_subgraph(vertices))
        tables = {}
        for context in sub.contexts:
            original = [vertices[i] for i in sorted(context)]
            # Relabelling may reorder vertices, so permute the marginal into local order.
            table = self.marginal(original)
            order = sorted(original)
            local_axes = [order.index(v) for v in original]
            tensor = table.reshape((2,) * len(order)).transpose(local_axes)
            tables[tuple(sorted(context))] = tensor.reshape(-1)
        return EmpiricalModel(sub, tables)

    def to_json(self) -> dict:
        return {
            "graph": self.scenario.graph.to_json(),
            "contexts": [list(c) for c in self.contexts],
            "tables": [self.tables[c].tolist() for c in self.contexts],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EmpiricalModel":
        try:
            graph = Graph.from_json(data["graph"])
            contexts = [tuple(int(v) for v in c) for c in data["contexts"]]
            tables = {c: np.asarray(t, dtype=float) for c, t in zip(contexts, data["tables"])}
        except (KeyError, TypeError, ValueError) as e:
            raise MembershipError(f"Malformed empirical model JSON: {e}") from e
        if len(tables) != len(data["contexts"]):
            raise MembershipError("Duplicate contexts in empirical model JSON")
        return cls(Scenario.from_graph(graph), tables)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """
    Probability distribution over global +-1 assignments of n vertices.

    Args:
        n_vertices: number of vertices
        weights: length 2^n vector in canonical assignment order
    """

    n_vertices: int
    weights: np.ndarray

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if weights.size != 2**self.n_vertices:
            raise MembershipError(f"Expected {2 ** self.n_vertices} weights, got {weights.size}")
        if np.any(weights < -1e-12):
            raise MembershipError("Joint distribution has negative weights")
        if abs(weights.sum() - 1.0) > TABLE_TOLERANCE:
            raise MembershipError(f"Joint distribution sums to {weights.sum():.12g}")
        object.__setattr__(self, "weights", np.clip(weights, 0.0, None))

    @property
    def assignments(self) -> np.ndarray:
        return assignment_matrix(self.n_vertices)

    def marginal(self, vertices: Sequence[int]) -> np.ndarray:
        return marginalize(self.weights, list(range(self.n_vertices)), sorted(vertices))

    def support(self, threshold: float = 1e-12) -> Dict[Tuple[int, ...], float]:
        rows = self.assignments
        return {
            tuple(int(a) for a in rows[i]): float(w)
            for i, w in enumerate(self.weights)
            if w > threshold
        }

    def max_deviation(self, model: EmpiricalModel) -> float:
        """Largest difference between a context table and the matching marginal."""
        return max(
            float(np.abs(self.marginal(c) - model.tables[c]).max()) for c in model.contexts
        )

    def reproduces(self, model: EmpiricalModel, tol: float = 1e-8) -> bool:
        return self.max_deviation(model) <= tol

    def to_json(self) -> dict:
        return {
            "n": self.n_vertices,
            "support": [
                {"assignment": list(a), "weight": w} for a, w in self.support().items()
            ],
        }
