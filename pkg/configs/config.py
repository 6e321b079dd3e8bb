"""
Shared configuration for the Pauli contextuality workbench.
"""

import logging
import os
import sys

from dotenv import load_dotenv

from pauli_cycles.search import SearchConfig

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _env_int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw == "":
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")


def _env_float(key: str, default: float) -> float:
    raw = os.getenv(key)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{key} must be a number, got {raw!r}")


def _env_bool(key: str, default: bool) -> bool:
    raw = os.getenv(key)
    if raw is None or raw == "":
        return default
    if raw.lower() in _TRUE:
        return True
    if raw.lower() in _FALSE:
        return False
    raise ValueError(f"{key} must be true or false, got {raw!r}")


def setup_logging(level: str = None):
    """
    Route tagged log lines ("[Search] ...") to stderr.

    Args:
        level: logging level name (or set PAULI_LOG_LEVEL env var)
    """
    level = (level or os.getenv("PAULI_LOG_LEVEL") or "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ValueError(f"PAULI_LOG_LEVEL must be a logging level name, got {level!r}")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level)


class WorkbenchConfig:
    """Configuration for searches, eigen-analysis and membership checks."""

    def __init__(
        self,
        threads: int = None,
        node_budget: int = None,
        canonicalize: bool = None,
        tolerance: float = None,
        eigen_tolerance: float = None,
        precision: int = None,
        seed: int = None,
    ):
        """
        Initialize workbench configuration.

        Args:
            threads: search worker threads (or set PAULI_THREADS env var)
            node_budget: search node budget (or set PAULI_NODE_BUDGET env var)
            canonicalize: Clifford canonicalization in search (or set PAULI_CANONICALIZE)
            tolerance: table/JPD verification tolerance (or set PAULI_TOLERANCE)
            eigen_tolerance: eigen-residual tolerance (or set PAULI_EIGEN_TOLERANCE)
            precision: significant digits in reports (or set PAULI_PRECISION)
            seed: seed for sampled states (or set PAULI_SEED)
        """
        load_dotenv()

        self.threads = threads if threads is not None else _env_int("PAULI_THREADS", 1)
        self.node_budget = node_budget if node_budget is not None else _env_int("PAULI_NODE_BUDGET", 10**9)
        self.canonicalize = canonicalize if canonicalize is not None else _env_bool("PAULI_CANONICALIZE", True)
        self.tolerance = tolerance if tolerance is not None else _env_float("PAULI_TOLERANCE", 1e-8)
        self.eigen_tolerance = (
            eigen_tolerance if eigen_tolerance is not None else _env_float("PAULI_EIGEN_TOLERANCE", 1e-9)
        )
        self.precision = precision if precision is not None else _env_int("PAULI_PRECISION", 10)
        self.seed = seed if seed is not None else _env_int("PAULI_SEED", 0)

        if self.threads < 1:
            raise ValueError("PAULI_THREADS must be at least 1")
        if self.node_budget < 1:
            raise ValueError("PAULI_NODE_BUDGET must be at least 1")
        if not self.tolerance > 0 or not self.eigen_tolerance > 0:
            raise ValueError("PAULI_TOLERANCE and PAULI_EIGEN_TOLERANCE must be positive")
        if not 1 <= self.precision <= 17:
            raise ValueError("PAULI_PRECISION must lie between 1 and 17")

    def search_config(self, m: int, size: int, kind: str = "cycle", **overrides) -> SearchConfig:
        """
        Build a SearchConfig from the configured defaults.

        Args:
            m: number of qubits
            size: vertex count of the target cycle or path
            kind: "cycle" or "path"
            overrides: any SearchConfig field to override
        """
        params = dict(
            m=m,
            size=size,
            kind=kind,
            canonicalize=self.canonicalize,
            node_budget=self.node_budget,
            thread_count=self.threads,
        )
        params.update(overrides)
        return SearchConfig(**params)

    def round(self, value: float) -> float:
        """Round to the configured number of significant digits."""
        return float(f"{value:.{self.precision}g}")
