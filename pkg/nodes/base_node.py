"""
Base Node Class for the Pauli Contextuality Workflow.
Provides the common callable interface shared by all workflow nodes.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict


class BaseNode(ABC):
    """Base class for all workflow nodes."""

    tag = "Workflow"

    def __init__(self, config):
        """
        Initialize base node.

        Args:
            config: WorkbenchConfig object
        """
        self.config = config
        self.logger = logging.getLogger(self.tag)

    @abstractmethod
    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute the node logic.

        Args:
            state: Current workflow state

        Returns:
            Updated state
        """

    def fail(self, state: Dict[str, Any], stage: str, error: Exception) -> Dict[str, Any]:
        """Record an error in the state so the graph still reaches the report."""
        state["error"] = f"Error in {stage}: {error}"
        self.logger.error(state["error"])
        return state

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """Make node callable for LangGraph."""
        return self.execute(state)
