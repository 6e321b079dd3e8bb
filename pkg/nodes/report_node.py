"""
Report Node - Assembles the final JSON-ready analysis report.
"""

from typing import Any, Dict

from .base_node import BaseNode


class ReportNode(BaseNode):
    """Collects validation, bound and membership results into one report."""

    tag = "Report"

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Build state['report'].

        Args:
            state: Current workflow state

        Returns:
            State with 'report'
        """
        realization = state.get("realization")
        report = {
            "route": state.get("route", ""),
            "faithful": state.get("faithful", False),
            "violations": state.get("violations", []),
            "gate": state.get("gate", {}),
        }
        if hasattr(realization, "to_json"):
            report["realization"] = realization.to_json()
        if state.get("rows"):
            report["rows"] = state["rows"]
            report["independence_witness"] = state.get("independence_witness", [])
        if state.get("membership"):
            report["membership"] = state["membership"]
        if state.get("error"):
            report["error"] = state["error"]

        state["report"] = report
        self.logger.info(f"Report ready (route={report['route']})")
        return state
