"""
Search Module

Backtracking search for faithful cycle and path realizations inside the m-qubit Pauli
group. Vertices are placed in order; each placement must be unused, commute with its predecessor
and anticommute with every earlier non-adjacent vertex, which is one AND of precomputed
commutation bitmasks per step.

Only positive-phase representatives are enumerated, since a sign never changes
commutation. With canonicalization on, vertex 0 is fixed to X(x)I..I and vertex 1 to
I(x)X(x)I..I: Cliffords act transitively on non-identity Paulis, and the stabilizer of
vertex 0 acts transitively on the Paulis that commute with it but are not in its span,
so every realization is equivalent to one with this prefix.
"""

import itertools
import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx
import numpy as np

from pauli_cycles.pauli_core import PhasedPauli, pauli_alphabet
from pauli_cycles.realizations import Realization
from pauli_cycles.scenarios import cycle_graph, path_graph

logger = logging.getLogger("Search")

CYCLE = "cycle"
PATH = "path"


@dataclass(frozen=True)
class SearchConfig:
    """
    Search target and resource limits.

    Args:
        m: number of qubits
        size: number of vertices of the target cycle or path
        kind: "cycle" or "path"
        canonicalize: fix the first two vertices up to Clifford symmetry
        node_budget: maximum number of search nodes before giving up
        thread_count: worker threads; results are deterministic only with 1
        apply_bound: answer cycles with n > 3m immediately as impossible
    """

    m: int
    size: int
    kind: str = CYCLE
    canonicalize: bool = True
    node_budget: int = 10**9
    thread_count: int = 1
    apply_bound: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.kind not in (CYCLE, PATH):
            raise ValueError(f"kind must be '{CYCLE}' or '{PATH}', got {self.kind!r}")
        min_size = 3 if self.kind == CYCLE else 2
        if self.size < min_size:
            raise ValueError(f"A {self.kind} needs at least {min_size} vertices, got {self.size}")
        if self.node_budget < 1:
            raise ValueError(f"node_budget must be positive, got {self.node_budget}")
        if self.thread_count < 1:
            raise ValueError(f"thread_count must be positive, got {self.thread_count}")


@dataclass(frozen=True)
class NotFound:
    """
    Negative search outcome.

    Args:
        exhausted: True when the whole space was searched (a proof of impossibility),
            False when the node budget ran out first
        nodes: search nodes visited
        reason: human-readable explanation
    """

    exhausted: bool
    nodes: int = 0
    reason: str = ""


SearchResult = Union[Realization, NotFound]
_State = Tuple[Tuple[int, ...], int, int]


class _BudgetExhausted(Exception):
    pass


class _Cancelled(Exception):
    pass


class _SharedProgress:
    """Node count, budget flag and first-writer-wins result slot shared by workers."""

    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0
        self.budget_hit = False
        self.result: Optional[Tuple[int, ...]] = None
        self.found = threading.Event()
        self._lock = threading.Lock()

    def charge(self, count: int, enforce: bool = True):
        with self._lock:
            self.nodes += count
            if enforce and self.nodes > self.budget:
                self.budget_hit = True
        if enforce and self.budget_hit:
            raise _BudgetExhausted()
        if enforce and self.found.is_set():
            raise _Cancelled()

    def offer(self, assignment: Tuple[int, ...]):
        with self._lock:
            if self.result is None:
                self.result = assignment
                self.found.set()

    @property
    def stopped(self) -> bool:
        return self.found.is_set() or self.budget_hit


class _NodeCounter:
    """Per-worker node counter flushed to the shared progress in batches."""

    def __init__(self, progress: _SharedProgress):
        self.progress = progress
        self.local = 0
        self.flush_every = max(1, min(4096, progress.budget))

    def tick(self):
        self.local += 1
        if self.local >= self.flush_every:
            count, self.local = self.local, 0
            self.progress.charge(count)

    def close(self):
        count, self.local = self.local, 0
        self.progress.charge(count, enforce=False)


def commutation_masks(alphabet: List[PhasedPauli]) -> List[int]:
    """
    Bitmask per alphabet entry of the entries it commutes with (itself included).
    """
    m = alphabet[0].m
    xs = np.array([p.x for p in alphabet], dtype=np.int64)
    zs = np.array([p.z for p in alphabet], dtype=np.int64)
    overlap = (xs[:, None] & zs[None, :]) ^ (zs[:, None] & xs[None, :])
    parity = np.zeros_like(overlap)
    for bit in range(m):
        parity ^= (overlap >> bit) & 1
    masks = []
    for row in parity == 0:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        masks.append(mask)
    return masks


class _Searcher:
    """Depth-first extension of partial assignments for one SearchConfig."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.size = cfg.size
        self.is_cycle = cfg.kind == CYCLE
        self.alphabet = pauli_alphabet(cfg.m)
        self.full = (1 << len(self.alphabet)) - 1
        self.comm = commutation_masks(self.alphabet)
        self.anti = [self.full & ~c for c in self.comm]

    def index_of(self, p: PhasedPauli) -> int:
        return p.x + (p.z << p.m) - 1

    def canonical_prefix(self) -> Tuple[int, ...]:
        m = self.cfg.m
        v0 = self.index_of(PhasedPauli.single("X", 0, m))
        if self.size < 2:
            return (v0,)
        v1 = self.index_of(PhasedPauli.single("X", 1, m)) if m >= 2 else v0
        return (v0, v1)

    def children(self, state: _State) -> List[_State]:
        """
        Feasible one-vertex extensions of ``state``.

        A state is (assignment, anti_prev, close): ``anti_prev`` masks the entries that
        anticommute with every placed vertex except the last, and for cycles ``close``
        masks the entries still eligible for the final vertex.
        """
        a, anti_prev, close = state
        k = len(a)
        if k == 0:
            return [((i,), self.full, self.comm[i]) for i in range(len(self.alphabet))]
        last = a[-1]
        if self.is_cycle and k == self.size - 1:
            candidates = close & self.comm[last]
        else:
            candidates = anti_prev & self.comm[last]
        for placed in a:
            candidates &= ~(1 << placed)
        child_anti = anti_prev & self.anti[last]
        narrows_close = self.is_cycle and k <= self.size - 3
        result = []
        while candidates:
            low = candidates & -candidates
            c = low.bit_length() - 1
            candidates ^= low
            child_close = close & self.anti[c] if narrows_close else close
            if narrows_close and not child_close:
                continue
            result.append((a + (c,), child_anti, child_close))
        return result

    def root(self) -> Optional[_State]:
        """Search root, or None when even the canonical prefix admits no completion."""
        state: _State = ((), self.full, self.full)
        if not self.cfg.canonicalize:
            return state
        for fixed in self.canonical_prefix():
            matches = [child for child in self.children(state) if child[0][-1] == fixed]
            if not matches:
                return None
            state = matches[0]
        return state

    def dfs(self, state: _State, counter: _NodeCounter) -> Optional[Tuple[int, ...]]:
        counter.tick()
        if len(state[0]) == self.size:
            return state[0]
        for child in self.children(state):
            found = self.dfs(child, counter)
            if found is not None:
                return found
        return None

    def walk(self, state: _State) -> Iterator[Tuple[int, ...]]:
        if len(state[0]) == self.size:
            yield state[0]
            return
        for child in self.children(state):
            yield from self.walk(child)

    def to_realization(self, assignment: Tuple[int, ...]) -> Realization:
        graph = cycle_graph(self.size) if self.is_cycle else path_graph(self.size)
        return Realization(graph, tuple(self.alphabet[i] for i in assignment))


def find_realization(cfg: SearchConfig) -> SearchResult:
    """
    Search for a faithful realization of the configured cycle or path.

    Args:
        cfg: search target and limits

    Returns:
        A faithful Realization, or NotFound with exhausted=True when none exists and
        exhausted=False when the node budget ran out first
    """
    if cfg.apply_bound and cfg.kind == CYCLE and cfg.size > 3 * cfg.m:
        logger.info(f"C{cfg.size} exceeds 3m = {3 * cfg.m}; no search needed")
        return NotFound(True, 0, f"n = {cfg.size} > 3m = {3 * cfg.m}")

    searcher = _Searcher(cfg)
    progress = _SharedProgress(cfg.node_budget)
    root = searcher.root()
    if root is None:
        return NotFound(True, 0, "canonical prefix admits no completion")
    if len(root[0]) == cfg.size:
        return searcher.to_realization(root[0])
    tasks = searcher.children(root)
    progress.charge(1, enforce=False)
    logger.info(f"Searching {cfg.kind} of size {cfg.size} on {cfg.m} qubits ({len(tasks)} branches)")

    def run_task(task: _State):
        if progress.stopped:
            return
        counter = _NodeCounter(progress)
        try:
            found = searcher.dfs(task, counter)
            if found is not None:
                progress.offer(found)
        except (_BudgetExhausted, _Cancelled):
            pass
        finally:
            counter.close()

    if cfg.thread_count == 1:
        for task in tasks:
            run_task(task)
            if progress.stopped:
                break
    else:
        with ThreadPoolExecutor(max_workers=cfg.thread_count) as pool:
            futures = [pool.submit(run_task, task) for task in tasks]
            for future in as_completed(futures):
                future.result()

    if progress.result is not None:
        realization = searcher.to_realization(progress.result)
        logger.info(f"Found {cfg.kind} of size {cfg.size} after {progress.nodes} nodes")
        return realization
    if progress.budget_hit:
        logger.warning(f"Node budget {cfg.node_budget} exhausted for size {cfg.size}")
        return NotFound(False, progress.nodes, "node budget exhausted")
    logger.info(f"No {cfg.kind} of size {cfg.size} on {cfg.m} qubits ({progress.nodes} nodes)")
    return NotFound(True, progress.nodes, "search space exhausted")


def enumerate_realizations(cfg: SearchConfig, limit: Optional[int] = None) -> Iterator[Realization]:
    """
    Yield every faithful realization reachable from the search root, in search order.

    With canonicalization off this is every positive-phase realization in the alphabet.
    """
    searcher = _Searcher(cfg)
    root = searcher.root()
    if root is None:
        return
    walker = searcher.walk(root)
    for assignment in itertools.islice(walker, limit):
        yield searcher.to_realization(assignment)


def naive_cycle_exists(m: int, n: int) -> bool:
    """Brute-force check over all n-subsets of the alphabet for a commuting C_n."""
    alphabet = pauli_alphabet(m)
    masks = commutation_masks(alphabet)
    for subset in itertools.combinations(range(len(alphabet)), n):
        chosen = set(subset)
        neighbours = {
            i: [j for j in subset if j != i and (masks[i] >> j) & 1] for i in subset
        }
        if any(len(nbrs) != 2 for nbrs in neighbours.values()):
            continue
        g = nx.Graph()
        g.add_nodes_from(chosen)
        g.add_edges_from((i, j) for i, nbrs in neighbours.items() for j in nbrs)
        if nx.is_connected(g):
            return True
    return False


FOUND = "found"
IMPOSSIBLE = "impossible"
BUDGET = "budget"


def classify(result: SearchResult) -> str:
    if isinstance(result, Realization):
        return FOUND
    return IMPOSSIBLE if result.exhausted else BUDGET


def realizability_table(
    m: int,
    sizes: Iterable[int],
    canonicalize: bool = True,
    node_budget: int = 10**9,
    thread_count: int = 1,
    apply_bound: bool = True,
) -> Dict[int, str]:
    """
    Realizability verdict for each cycle size.

    Args:
        m: number of qubits
        sizes: cycle sizes to test
        canonicalize: forwarded to SearchConfig
        node_budget: per-size node budget
        thread_count: forwarded to SearchConfig
        apply_bound: forwarded to SearchConfig

    Returns:
        Map n -> "found" | "impossible" | "budget"
    """
    table = {}
    for n in sizes:
        cfg = SearchConfig(
            m=m,
            size=n,
            canonicalize=canonicalize,
            node_budget=node_budget,
            thread_count=thread_count,
            apply_bound=apply_bound,
        )
        table[n] = classify(find_realization(cfg))
    return table
