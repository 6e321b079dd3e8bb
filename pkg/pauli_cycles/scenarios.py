"""
Scenarios Module

Compatibility graphs and the measurement scenarios they induce. Vertices are measurements,
edges join compatible (jointly measurable) pairs, and the contexts of a scenario are the
maximal cliques of its graph. Also hosts the structural tests behind Vorob'ev's theorem:
chordality and induced-cycle enumeration.

Vertices are always numbered 0..n-1. Paths and cycles built here use the standard order,
so path vertex i (counting from 1) is vertex i - 1.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from pauli_cycles.errors import GraphError

Edge = Tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..n_vertices-1.

    Args:
        n_vertices: number of vertices
        edges: unordered vertex pairs, stored as sorted tuples
    """

    n_vertices: int
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_vertices < 0:
            raise GraphError(f"Negative vertex count: {self.n_vertices}")
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphError(f"Edge {edge} has an endpoint outside 0..{self.n_vertices - 1}")
            normalized.add(_normalize_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n_vertices, frozenset(tuple(e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def neighbors(self, v: int) -> List[int]:
        return sorted(w for e in self.edges if v in e for w in e if w != v)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacency(self) -> Dict[int, set]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("Induced subgraph vertices must be distinct")
        for v in vertices:
            if not 0 <= v < self.n_vertices:
                raise GraphError(f"Vertex {v} not in graph")
        edges = {(index[u], index[v]) for u, v in self.edges if u in index and v in index}
        return Graph(len(vertices), frozenset(edges))

    def is_cycle(self) -> bool:
        """True iff this is C_n in standard vertex order."""
        return self.n_vertices >= 3 and self.edges == cycle_graph(self.n_vertices).edges

    def is_path(self) -> bool:
        """True iff this is H_l in standard vertex order."""
        return self.n_vertices >= 2 and self.edges == path_graph(self.n_vertices).edges

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        try:
            return cls.from_edges(int(data["n"]), data["edges"])
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, GraphError):
                raise
            raise GraphError(f"Malformed graph JSON: {e}") from e


@dataclass(frozen=True)
class Scenario:
    """A compatibility graph together with its contexts (the maximal cliques)."""

    graph: Graph
    contexts: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        covered = set()
        for context in self.contexts:
            members = sorted(context)
            for i, u in enumerate(members):
                for v in members[i + 1:]:
                    if not self.graph.has_edge(u, v):
                        raise GraphError(f"Context {members} is not a clique")
            covered.update(context)
        missing = set(self.graph.vertices) - covered
        if missing:
            raise GraphError(f"Vertices {sorted(missing)} appear in no context")

    @classmethod
    def from_graph(cls, g: Graph) -> "Scenario":
        return cls(g, tuple(maximal_cliques(g)))

    def sorted_contexts(self) -> List[Tuple[int, ...]]:
        return [tuple(sorted(c)) for c in self.contexts]


def cycle_graph(n: int) -> Graph:
    """C_n: vertices 0..n-1 with edges {i, i+1 mod n}."""
    if n < 3:
        raise GraphError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph(n, frozenset(_normalize_edge(i, (i + 1) % n) for i in range(n)))


def path_graph(l: int) -> Graph:
    """H_l: vertices 0..l-1 with edges {i, i+1}."""
    if l < 2:
        raise GraphError(f"A path needs at least 2 vertices, got {l}")
    return Graph(l, frozenset((i, i + 1) for i in range(l - 1)))


def glue(g1: Graph, g2: Graph, identification: Mapping[int, int]) -> Graph:
    """
    Merge two graphs along identified vertices.

    Vertices of ``g1`` keep their labels. Vertices of ``g2`` that are not identified are
    appended as n1, n1+1, ... in increasing order of their ``g2`` label.

    Args:
        g1: first graph
        g2: second graph
        identification: map from ``g1`` vertices to the ``g2`` vertices they merge with

    Returns:
        The glued graph
    """
    targets = list(identification.values())
    if len(set(targets)) != len(targets):
        raise GraphError("Identification maps two distinct g1 vertices to one g2 vertex")
    for u, v in identification.items():
        if not 0 <= u < g1.n_vertices or not 0 <= v < g2.n_vertices:
            raise GraphError(f"Identification pair ({u}, {v}) is out of range")

    relabel = {v: u for u, v in identification.items()}
    next_label = g1.n_vertices
    for v in g2.vertices:
        if v not in relabel:
            relabel[v] = next_label
            next_label += 1

    edges = set(g1.edges)
    edges.update(_normalize_edge(relabel[u], relabel[v]) for u, v in g2.edges)
    return Graph(next_label, frozenset(edges))


def node_glued_pentagons() -> Graph:
    """Two 5-cycles sharing one vertex: 9 vertices, 10 edges."""
    return glue(cycle_graph(5), cycle_graph(5), {0: 0})


def edge_glued_pentagons() -> Graph:
    """Two 5-cycles sharing the edge {0, 4}: 8 vertices, 9 edges."""
    return glue(cycle_graph(5), cycle_graph(5), {4: 0, 0: 1})


def double_edge_glued_pentagons() -> Graph:
    """
    Two 5-cycles sharing the two edges 3-4-0: 7 vertices, 8 edges.

    Edges are 01, 12, 23, 34, 04 from the first pentagon and 35, 56, 06 from the second.
    """
    return glue(cycle_graph(5), cycle_graph(5), {0: 0, 4: 1, 3: 2})


def maximal_cliques(g: Graph) -> List[FrozenSet[int]]:
    """
    All maximal cliques, sorted by their smallest members.

    Isolated vertices form singleton cliques. For triangle-free graphs without isolated
    vertices this is exactly the edge set.
    """
    if g.n_vertices > 64:
        raise GraphError(f"Clique enumeration is limited to 64 vertices, got {g.n_vertices}")
    cliques = [frozenset(c) for c in nx.find_cliques(g.to_networkx())]
    return sorted(cliques, key=lambda c: sorted(c))


def perfect_elimination_ordering(g: Graph) -> Optional[List[int]]:
    """
    Perfect elimination ordering via maximum cardinality search.

    Returns:
        An elimination order if ``g`` is chordal, otherwise None
    """
    adj = g.adjacency()
    weight = {v: 0 for v in g.vertices}
    picked: List[int] = []
    unpicked = set(g.vertices)
    while unpicked:
        v = max(sorted(unpicked), key=lambda u: weight[u])
        picked.append(v)
        unpicked.remove(v)
        for w in adj[v] & unpicked:
            weight[w] += 1

    order = list(reversed(picked))
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in adj[v] if position[w] > position[v]]
        if not later:
            continue
        parent = min(later, key=lambda w: position[w])
        if any(w != parent and w not in adj[parent] for w in later):
            return None
    return order


def is_chordal(g: Graph) -> bool:
    """True iff ``g`` has no induced cycle of length 4 or more."""
    return perfect_elimination_ordering(g) is not None


def induced_cycles(g: Graph, max_len: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    Every chordless cycle of length 4..max_len, reported once.

    Each cycle starts at its smallest vertex and its second vertex is smaller than its
    last, which fixes one representative per rotation and reflection class.

    Args:
        g: graph to search
        max_len: longest cycle to report (defaults to the vertex count)

    Returns:
        Vertex tuples sorted by length, then lexicographically
    """
    if max_len is None:
        max_len = g.n_vertices
    adj = g.adjacency()
    found: List[Tuple[int, ...]] = []

    def extend(path: List[int], blocked: set):
        start, last = path[0], path[-1]
        for w in sorted(adj[last]):
            if w <= start or w in path or w in blocked:
                continue
            if start in adj[w]:
                if len(path) + 1 >= 4 and path[1] < w:
                    found.append(tuple(path + [w]))
                continue
            if len(path) + 1 >= max_len:
                continue
            # Neighbours of interior vertices can never join the path without a chord.
            extend(path + [w], blocked | adj[last] - {w})

    for s in g.vertices:
        for v in sorted(adj[s]):
            if v > s:
                extend([s, v], set())

    return sorted(found, key=lambda c: (len(c), c))
