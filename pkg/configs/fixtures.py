"""
Demo Realizations for the Pauli Contextuality Workflow
Realization JSON documents exercising each workflow path: cycle analysis, general-graph
membership and rejection of an unfaithful input.
"""

# 4-cycle on 2 qubits: saturates the Tsirelson bound on every inequality
C4_TWO_QUBITS = {
    "m": 2,
    "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
    "paulis": ["XI", "IX", "ZI", "IZ"],
}

# 5-cycle on 3 qubits: every state stays noncontextual
C5_THREE_QUBITS = {
    "m": 3,
    "graph": {"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]},
    "paulis": ["XII", "IXI", "ZIX", "ZZI", "IZZ"],
}

# Two pentagons sharing two edges, realized on 2 qubits
CONJOINED_PENTAGONS = {
    "m": 2,
    "graph": {
        "n": 7,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4], [3, 5], [5, 6], [0, 6]],
    },
    "paulis": ["IX", "ZX", "YY", "IY", "XI", "ZY", "YX"],
}

# Vertices 0 and 2 receive the same operator, so they commute without an edge
UNFAITHFUL_C4 = {
    "m": 2,
    "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
    "paulis": ["XI", "IX", "XI", "IZ"],
}

# State printed alongside the conjoined pentagons; rounded digits, normalized before use
COUNTEREXAMPLE_STATE = [
    [0.2787, -0.5952],
    [-0.2787, -0.3342],
    [-0.4092, 0.1482],
    [-0.4352, 0.0],
]
