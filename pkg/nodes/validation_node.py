"""
Validation Node - Checks that the input realization is faithful to its graph.
Also classifies the scenario (cycle or general) and runs the Vorob'ev gate.
"""

from typing import Any, Dict

from pauli_cycles.contextuality import vorobev_gate
from pauli_cycles.realizations import Realization, verify_faithful
from pauli_cycles.scenarios import Scenario

from .base_node import BaseNode


class ValidationNode(BaseNode):
    """Parses the realization and verifies faithfulness."""

    tag = "Validation"

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Verify the realization and flag the scenario shape.

        Args:
            state: Current workflow state

        Returns:
            Updated state with faithful, violations, is_cycle and gate
        """
        try:
            realization = state["realization"]
            if not isinstance(realization, Realization):
                realization = Realization.from_json(realization)
                state["realization"] = realization

            report = verify_faithful(realization.graph, realization)
            state["faithful"] = report.faithful
            state["violations"] = [v.to_json() for v in report.violations]
            state["is_cycle"] = realization.graph.is_cycle() and realization.n >= 4
            state["gate"] = vorobev_gate(Scenario.from_graph(realization.graph)).to_json()

            self.logger.info(
                f"{realization.n} vertices on {realization.m} qubits, faithful={report.faithful}"
            )
            for violation in report.violations:
                self.logger.info(
                    f"Pair {violation.u}-{violation.v}: expected "
                    f"{'commuting' if violation.expected_commute else 'anticommuting'}"
                )
        except Exception as e:
            state["faithful"] = False
            self.fail(state, "validation", e)

        return state
