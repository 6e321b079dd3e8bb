"""
Nodes Package for the Pauli Contextuality Workflow.
Contains modular node classes for the LangGraph workflow.
"""

from .base_node import BaseNode
from .validation_node import ValidationNode
from .router_node import RouterNode, REJECTED, CYCLE, GENERAL
from .bound_node import BoundNode
from .membership_node import MembershipNode
from .report_node import ReportNode

__all__ = [
    'BaseNode',
    'ValidationNode',
    'RouterNode',
    'BoundNode',
    'MembershipNode',
    'ReportNode',
    'REJECTED',
    'CYCLE',
    'GENERAL',
]
