"""
Membership Node - Builds the quantum empirical model and tests polytope membership.
"""

from typing import Any, Dict

import numpy as np

from pauli_cycles.contextuality import nc_membership
from pauli_cycles.spectral import StateVector, quantum_behavior, random_state

from .base_node import BaseNode


class MembershipNode(BaseNode):
    """Decides whether the realized behaviour admits a joint probability distribution."""

    tag = "Membership"

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Measure the realization on a state and run the membership LP.

        The state is, in order of preference, the supplied 'state_vector', the witness
        found by the bound node, or a seeded random state.

        Args:
            state: Current workflow state

        Returns:
            Updated state with 'membership'
        """
        try:
            r = state["realization"]
            psi, source = self._pick_state(state, r.m)
            model = quantum_behavior(r, psi)
            result = nc_membership(model, tol=self.config.tolerance)

            membership = {
                "state_source": source,
                "verdict": result.verdict,
                "inside": result.inside,
                "violation": self.config.round(result.violation),
            }
            if result.inside:
                membership["support_size"] = len(result.distribution.support())
            else:
                membership["certificate"] = result.certificate.to_json()
            state["membership"] = membership
            self.logger.info(f"Behaviour from {source} state is {result.verdict}")
        except Exception as e:
            self.fail(state, "membership", e)

        return state

    def _pick_state(self, state: Dict[str, Any], m: int):
        if state.get("state_vector"):
            return StateVector.from_json(state["state_vector"], normalize=True), "supplied"
        if state.get("witness_state"):
            return StateVector.from_json(state["witness_state"], normalize=True), "witness"
        rng = np.random.default_rng(self.config.seed)
        return random_state(m, rng), "random"
