"""
Pauli Cycles Command Line
Constructions, realizability searches, inequality bounds, membership tests and the
two-pentagon counterexample, each printed to stdout as one JSON run report.

Exit codes: 0 success (including a "violated" verdict), 1 negative search verdict,
2 usage or input error (and, for `search`, an exhausted node budget).
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import networkx as nx
import numpy as np
import scipy

import pauli_cycles
from configs.config import WorkbenchConfig, setup_logging
from nodes import CYCLE
from pauli_contextuality import PauliContextualityAnalyzer
from pauli_cycles.contextuality import conjoined_counterexample, nc_membership
from pauli_cycles.errors import PauliCyclesError, RealizationError
from pauli_cycles.models import EmpiricalModel
from pauli_cycles.realizations import (
    Realization,
    big_cycle,
    construct_acc,
    construct_c2,
    longest_path,
    verify_faithful,
)
from pauli_cycles.search import (
    FOUND,
    IMPOSSIBLE,
    classify,
    find_realization,
    realizability_table,
)
from pauli_cycles.spectral import StateVector, quantum_behavior, random_state

logger = logging.getLogger("Workbench")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

CONSTRUCTIONS = {
    "acc": construct_acc,
    "c2": construct_c2,
    "big": big_cycle,
    "path-concat": longest_path,
}


@dataclass
class RunReport:
    """JSON envelope printed for every command."""

    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    def to_json(self, precision: int) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": round_floats(self.results, precision),
            "versions": versions(),
            "wall_time": round_floats(self.wall_time, 6),
        }


def versions() -> Dict[str, str]:
    return {
        "pauli_cycles": pauli_cycles.__version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "networkx": nx.__version__,
    }


def round_floats(value: Any, digits: int) -> Any:
    """Round every float inside a JSON-like value to ``digits`` significant digits."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{digits}g}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    return value


def _count(text: str) -> int:
    """Integer flag that also accepts scientific notation such as 1e9."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _write_json(path: str, data: Any):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    logger.info(f"Wrote {path}")


def _config(args: argparse.Namespace) -> WorkbenchConfig:
    return WorkbenchConfig(
        threads=getattr(args, "threads", None),
        node_budget=getattr(args, "budget", None),
        canonicalize=False if getattr(args, "no_canonicalize", False) else None,
        seed=getattr(args, "seed", None),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    realization = CONSTRUCTIONS[args.kind](args.m)
    faithfulness = verify_faithful(realization.graph, realization)
    if not faithfulness.faithful:
        raise RealizationError(f"Construction {args.kind} produced an unfaithful realization")
    shape = "cycle" if realization.graph.is_cycle() else "path"
    report.results = {
        "shape": shape,
        "size": realization.n,
        "m": realization.m,
        "faithful": True,
        "realization": realization.to_json(),
    }
    if args.out:
        _write_json(args.out, realization.to_json())
    return EXIT_OK


def cmd_table(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    n_max = args.n_max if args.n_max is not None else 3 * args.m + 1
    if n_max < args.n_min:
        raise ValueError(f"--n-max {n_max} is below --n-min {args.n_min}")
    table = realizability_table(
        args.m,
        range(args.n_min, n_max + 1),
        canonicalize=config.canonicalize,
        node_budget=config.node_budget,
        thread_count=config.threads,
        apply_bound=not args.no_bound,
    )
    report.results = {
        "table": {str(n): verdict for n, verdict in table.items()},
        "largest_found": max((n for n, v in table.items() if v == FOUND), default=None),
    }
    return EXIT_OK


def cmd_search(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    kind, size = ("cycle", args.cycle) if args.cycle is not None else ("path", args.path)
    cfg = config.search_config(args.m, size, kind=kind, apply_bound=not args.no_bound)
    result = find_realization(cfg)
    verdict = classify(result)
    report.results = {"kind": kind, "size": size, "verdict": verdict}
    if verdict == FOUND:
        report.results["realization"] = result.to_json()
        if args.out:
            _write_json(args.out, result.to_json())
        return EXIT_OK
    report.results["nodes"] = result.nodes
    report.results["reason"] = result.reason
    return EXIT_NEGATIVE if verdict == IMPOSSIBLE else EXIT_USAGE


def _analyze(args: argparse.Namespace, config: WorkbenchConfig, gammas: Optional[str]) -> Dict[str, Any]:
    analyzer = PauliContextualityAnalyzer(config)
    analysis = analyzer.process(_read_json(args.realization), gammas=gammas)
    if analysis.get("error"):
        raise RealizationError(analysis["error"])
    if analysis["route"] != CYCLE:
        raise RealizationError(
            f"Expected a faithful realization of a cycle with at least 4 vertices (route {analysis['route']})"
        )
    return analysis


def cmd_bound(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    report.results = _analyze(args, config, None if args.all else args.gamma)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    analysis = _analyze(args, config, args.gamma)
    row = analysis["rows"][0]
    report.results = {
        **row,
        "independence_witness": analysis["independence_witness"],
        "membership": analysis.get("membership", {}),
    }
    return EXIT_OK


def cmd_counterexample(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    result = conjoined_counterexample(tol=config.eigen_tolerance)
    report.results = result.to_json(digits=config.precision)
    if result.membership.certificate is not None:
        report.results["certificate"] = result.membership.certificate.to_json()
    return EXIT_OK


def cmd_membership(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    model = EmpiricalModel.from_json(_read_json(args.model))
    result = nc_membership(model, tol=config.tolerance)
    report.results = {"verdict": result.verdict, "inside": result.inside}
    if result.inside:
        payload = result.distribution.to_json()
        report.results["max_deviation"] = result.distribution.max_deviation(model)
        report.results["distribution"] = payload
    else:
        payload = result.certificate.to_json()
        report.results["violation"] = result.violation
        report.results["certificate"] = payload
    if args.out:
        _write_json(args.out, round_floats(payload, config.precision))
    return EXIT_OK


def cmd_behavior(args: argparse.Namespace, config: WorkbenchConfig, report: RunReport) -> int:
    realization = Realization.from_json(_read_json(args.realization))
    if args.state:
        state = StateVector.from_json(_read_json(args.state), normalize=True)
        source = "file"
    else:
        state = random_state(realization.m, np.random.default_rng(config.seed))
        source = f"random(seed={config.seed})"
    model = quantum_behavior(realization, state)
    report.results = {
        "state_source": source,
        "state": state.to_json(),
        "disturbance": model.disturbance(),
        "model": model.to_json(),
    }
    if args.out:
        _write_json(args.out, model.to_json())
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "table": cmd_table,
    "search": cmd_search,
    "bound": cmd_bound,
    "witness": cmd_witness,
    "counterexample": cmd_counterexample,
    "membership": cmd_membership,
    "behavior": cmd_behavior,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauli-cycles",
        description="Pauli realizations of cycle scenarios and their contextuality",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="build an explicit realization")
    construct.add_argument("kind", choices=sorted(CONSTRUCTIONS))
    construct.add_argument("--m", type=int, required=True, help="number of qubits")
    construct.add_argument("--out", help="write the realization JSON here")

    table = sub.add_parser("table", help="realizability verdict per cycle size")
    table.add_argument("--m", type=int, required=True)
    table.add_argument("--n-min", type=int, default=3)
    table.add_argument("--n-max", type=int, default=None, help="defaults to 3m + 1")
    table.add_argument("--budget", type=_count, default=None, help="node budget per size")
    table.add_argument("--threads", type=int, default=None)
    table.add_argument("--no-canonicalize", action="store_true")
    table.add_argument("--no-bound", action="store_true", help="search even when n > 3m")

    search = sub.add_parser("search", help="search for one faithful cycle or path")
    search.add_argument("--m", type=int, required=True)
    target = search.add_mutually_exclusive_group(required=True)
    target.add_argument("--cycle", type=int, help="cycle size")
    target.add_argument("--path", type=int, help="path size")
    search.add_argument("--budget", type=_count, default=None)
    search.add_argument("--threads", type=int, default=None)
    search.add_argument("--no-canonicalize", action="store_true")
    search.add_argument("--no-bound", action="store_true")
    search.add_argument("--out", help="write the realization JSON here")

    bound = sub.add_parser("bound", help="quantum values of the cycle inequalities")
    bound.add_argument("--realization", required=True)
    which = bound.add_mutually_exclusive_group()
    which.add_argument("--all", "--all-inequalities", dest="all", action="store_true")
    which.add_argument("--gamma", help="sign label such as +++-")

    witness = sub.add_parser("witness", help="maximizing state for one inequality")
    witness.add_argument("--realization", required=True)
    witness.add_argument("--gamma", required=True)

    sub.add_parser("counterexample", help="two pentagons sharing two edges on two qubits")

    membership = sub.add_parser("membership", help="noncontextual polytope membership")
    membership.add_argument("--model", required=True)
    membership.add_argument("--out", help="write the distribution or certificate here")

    behavior = sub.add_parser("behavior", help="empirical model of a realization on a state")
    behavior.add_argument("--realization", required=True)
    source = behavior.add_mutually_exclusive_group()
    source.add_argument("--state", help="JSON list of [re, im] amplitudes")
    source.add_argument("--seed", type=int, default=None, help="seed for a random state")
    behavior.add_argument("--out", help="write the model JSON here")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    report = RunReport(command=args.command, inputs=inputs)
    started = time.perf_counter()
    try:
        setup_logging("INFO" if args.verbose else None)
        config = _config(args)
        code = COMMANDS[args.command](args, config, report)
    except (PauliCyclesError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report.wall_time = time.perf_counter() - started
    print(json.dumps(report.to_json(config.precision), indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
