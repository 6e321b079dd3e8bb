"""
Router Node - Chooses the analysis path and logs the routing decision.
"""

from typing import Any, Dict

from .base_node import BaseNode

REJECTED = "rejected"
CYCLE = "cycle"
GENERAL = "general"


class RouterNode(BaseNode):
    """Router node that records which path the workflow takes."""

    tag = "Router"

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Decide between rejection, cycle analysis and general membership.

        Args:
            state: Current workflow state

        Returns:
            State with 'route' set; the branch itself is taken by a conditional edge
        """
        if state.get("error") or not state.get("faithful"):
            state["route"] = REJECTED
            self.logger.info("Realization is not faithful, skipping analysis")
        elif state.get("is_cycle"):
            state["route"] = CYCLE
            self.logger.info("Cycle scenario, routing to inequality bounds")
        else:
            state["route"] = GENERAL
            self.logger.info("General scenario, routing to polytope membership")
        return state
