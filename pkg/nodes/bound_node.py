"""
Bound Node - Quantum values of the cycle noncontextuality inequalities.
Computes, per inequality, the largest eigenvalue of Gamma and compares it with n - 2.
"""

from typing import Any, Dict, List

from pauli_cycles.contextuality import (
    CycleInequality,
    bound_chain,
    enumerate_cycle_inequalities,
    quantum_value,
    tsirelson_state,
)
from pauli_cycles.pauli_core import format_pauli
from pauli_cycles.realizations import check_edge_constraints, independence_witness

from .base_node import BaseNode


class BoundNode(BaseNode):
    """Evaluates one or all cycle inequalities on a faithful cycle realization."""

    tag = "Bound"

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Fill 'rows' with one report per inequality and keep the best witness state.

        Args:
            state: Current workflow state

        Returns:
            Updated state with rows, witness_state and independence_witness
        """
        try:
            r = state["realization"]
            check_edge_constraints(r)
            state["independence_witness"] = [format_pauli(p) for p in independence_witness(r)]

            inequalities = self._select(state.get("gammas"), r.n)
            rows: List[Dict[str, Any]] = []
            best = None
            for ineq in inequalities:
                row, witness = self._evaluate(r, ineq)
                rows.append(row)
                if best is None or row["quantum_value"] > best[0]:
                    best = (row["quantum_value"], witness)
            state["rows"] = rows
            state["witness_state"] = best[1].to_json()

            violated = sum(1 for row in rows if row["verdict"] == "violated")
            self.logger.info(f"{violated} of {len(rows)} inequalities violated")
        except Exception as e:
            self.fail(state, "bound analysis", e)

        return state

    def _select(self, gammas, n: int) -> List[CycleInequality]:
        if gammas:
            ineq = CycleInequality.from_label(gammas)
            if ineq.n != n:
                raise ValueError(f"Sign label {gammas} has {ineq.n} entries for a {n}-cycle")
            return [ineq]
        return enumerate_cycle_inequalities(n)

    def _evaluate(self, r, ineq: CycleInequality):
        tol = self.config.eigen_tolerance
        if r.n == 4:
            witness = tsirelson_state(r, ineq, tol=tol)
            value, _ = quantum_value(r, ineq, tol=tol)
        else:
            value, witness = quantum_value(r, ineq, tol=tol)
        row = {
            "inequality": ineq.label,
            "classical_bound": ineq.bound,
            "quantum_value": self.config.round(value),
            "witness_state": [[self.config.round(a), self.config.round(b)] for a, b in witness.to_json()],
            "verdict": "violated" if value > ineq.bound + tol else "satisfied",
        }
        if r.n >= 5:
            chain = bound_chain(r, ineq, tol=tol)
            row["bound_chain"] = [
                self.config.round(chain.value_squared),
                self.config.round(chain.gamma_squared_max),
                chain.pair_bound,
            ]
        return row, witness
