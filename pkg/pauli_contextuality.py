"""
Pauli Contextuality Analyzer - Workflow for analysing Pauli realizations of scenarios
Uses LangGraph with specialised nodes and conditional routing on the scenario shape.

Workflow:
1. User provides a realization (graph + one Pauli per vertex), optionally a sign label
   for a single cycle inequality and a state vector
2. Validation - Verifies faithfulness, classifies the graph, runs the Vorob'ev gate
3. Router - Chooses the path

**If NOT FAITHFUL (Rejected Path):**
   4a. Report - Lists the offending vertex pairs

**If CYCLE (Bound Path):**
   4b. Bound - Quantum value of each cycle inequality versus n - 2
   5b. Membership - Polytope membership of the behaviour at the best witness state
   6b. Report

**If GENERAL GRAPH (Membership Path):**
   4c. Membership - Polytope membership at the supplied (or a seeded random) state
   5c. Report
"""

import json
import logging
from typing import Any, Dict, List, Optional, TypedDict, Union

from langgraph.graph import END, StateGraph

from configs.config import WorkbenchConfig, setup_logging
from nodes import (
    CYCLE,
    GENERAL,
    REJECTED,
    BoundNode,
    MembershipNode,
    ReportNode,
    RouterNode,
    ValidationNode,
)
from pauli_cycles.realizations import Realization

logger = logging.getLogger("Workbench")


class AnalysisState(TypedDict):
    """State schema for the analysis workflow."""
    # Inputs
    realization: Any  # Realization object or its JSON document
    gammas: Optional[str]  # sign label such as "+++-"; None means every inequality
    state_vector: Optional[List[List[float]]]  # [[re, im], ...], normalized on use

    # Validation
    faithful: bool
    violations: List[Dict[str, Any]]
    is_cycle: bool
    gate: Dict[str, Any]
    route: str

    # Bounds
    rows: List[Dict[str, Any]]
    witness_state: Optional[List[List[float]]]
    independence_witness: List[str]

    # Membership
    membership: Dict[str, Any]

    # Output
    report: Dict[str, Any]

    # Error handling
    error: str


class PauliContextualityAnalyzer:
    """
    Workflow that validates a realization and analyses its contextuality.
    """

    def __init__(self, config: WorkbenchConfig):
        """
        Initialize the analyzer with modular node classes.

        Args:
            config: WorkbenchConfig object
        """
        self.config = config
        self._init_nodes()
        self.graph = self._build_graph()
        logger.debug("Analyzer initialized")

    def _init_nodes(self):
        """Initialize all node instances."""
        self.validation_node = ValidationNode(self.config)
        self.router_node = RouterNode(self.config)
        self.bound_node = BoundNode(self.config)
        self.membership_node = MembershipNode(self.config)
        self.report_node = ReportNode(self.config)

    def _build_graph(self):
        """Build the LangGraph workflow with routing on faithfulness and graph shape."""
        workflow = StateGraph(AnalysisState)

        workflow.add_node("validate", self.validation_node)
        workflow.add_node("router", self.router_node)
        workflow.add_node("bound", self.bound_node)
        workflow.add_node("membership", self.membership_node)
        workflow.add_node("report", self.report_node)

        workflow.set_entry_point("validate")
        workflow.add_edge("validate", "router")

        workflow.add_conditional_edges(
            "router",
            self._route,
            {
                REJECTED: "report",
                CYCLE: "bound",
                GENERAL: "membership",
            },
        )

        workflow.add_edge("bound", "membership")
        workflow.add_edge("membership", "report")
        workflow.add_edge("report", END)

        return workflow.compile()

    def _route(self, state: AnalysisState) -> str:
        """
        Routing function reading the router's decision.

        Returns:
            "rejected", "cycle" or "general"
        """
        return state["route"]

    def process(
        self,
        realization: Union[Realization, Dict[str, Any]],
        gammas: Optional[str] = None,
        state_vector: Optional[List[List[float]]] = None,
    ) -> Dict[str, Any]:
        """
        Run a realization through the workflow.

        Args:
            realization: Realization object or realization JSON document
            gammas: optional sign label selecting a single cycle inequality
            state_vector: optional state for the membership test

        Returns:
            The report dictionary
        """
        initial_state: AnalysisState = {
            "realization": realization,
            "gammas": gammas,
            "state_vector": state_vector,
            "faithful": False,
            "violations": [],
            "is_cycle": False,
            "gate": {},
            "route": "",
            "rows": [],
            "witness_state": None,
            "independence_witness": [],
            "membership": {},
            "report": {},
            "error": "",
        }

        final_state = self.graph.invoke(initial_state)
        return final_state["report"]


def main():
    """
    Example usage of the analyzer on the bundled demo realizations.
    """
    from configs.fixtures import (
        C4_TWO_QUBITS,
        C5_THREE_QUBITS,
        CONJOINED_PENTAGONS,
        UNFAITHFUL_C4,
    )

    setup_logging("INFO")
    analyzer = PauliContextualityAnalyzer(WorkbenchConfig())

    for title, realization in (
        ("4-cycle on 2 qubits (bound path)", C4_TWO_QUBITS),
        ("5-cycle on 3 qubits (bound path)", C5_THREE_QUBITS),
        ("Two pentagons sharing two edges (membership path)", CONJOINED_PENTAGONS),
        ("Unfaithful 4-cycle (rejected path)", UNFAITHFUL_C4),
    ):
        print("\n" + "=" * 60)
        print(title)
        print("=" * 60)
        report = analyzer.process(realization)
        print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
