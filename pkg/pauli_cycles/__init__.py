"""
Pauli Cycles Package
Faithful Pauli realizations of cycle scenarios, their search and construction, and the
contextuality analysis of the behaviours they produce.
"""

from .errors import (
    PauliCyclesError,
    QubitCountMismatch,
    PauliParseError,
    GraphError,
    RealizationError,
    ConstraintViolation,
    NoDisturbanceError,
    MembershipError,
    EigenSolverError,
    DimensionError,
)
from .pauli_core import (
    PhasedPauli,
    SymplecticVector,
    commutes,
    multiply,
    independent,
    parse_pauli,
    format_pauli,
    embed,
    pauli_alphabet,
)
from .scenarios import (
    Graph,
    Scenario,
    cycle_graph,
    path_graph,
    glue,
    is_chordal,
    induced_cycles,
    maximal_cliques,
)
from .realizations import (
    Realization,
    verify_faithful,
    edge_paulis,
    check_edge_constraints,
    construct_acc,
    construct_c2,
    append_qubit,
    path_to_cycle,
    concat_paths,
    h8_seed,
    big_cycle,
    independence_witness,
)
from .search import SearchConfig, NotFound, find_realization, realizability_table
from .models import EmpiricalModel, JointDistribution
from .spectral import (
    PauliSum,
    DenseHermitian,
    StateVector,
    to_matrix,
    extreme_eigen,
    expectation,
    quantum_behavior,
)
from .contextuality import (
    CycleInequality,
    GeneralInequality,
    enumerate_cycle_inequalities,
    gamma_operator,
    gamma_squared_symbolic,
    surviving_pair_count,
    quantum_value,
    tsirelson_state,
    nc_membership,
    glue_jpd_node,
    glue_jpd_edge,
    conjoined_counterexample,
    vorobev_gate,
)

__version__ = "0.1.0"

__all__ = [
    'PauliCyclesError',
    'QubitCountMismatch',
    'PauliParseError',
    'GraphError',
    'RealizationError',
    'ConstraintViolation',
    'NoDisturbanceError',
    'MembershipError',
    'EigenSolverError',
    'DimensionError',
    'PhasedPauli',
    'SymplecticVector',
    'commutes',
    'multiply',
    'independent',
    'parse_pauli',
    'format_pauli',
    'embed',
    'pauli_alphabet',
    'Graph',
    'Scenario',
    'cycle_graph',
    'path_graph',
    'glue',
    'is_chordal',
    'induced_cycles',
    'maximal_cliques',
    'Realization',
    'verify_faithful',
    'edge_paulis',
    'check_edge_constraints',
    'construct_acc',
    'construct_c2',
    'append_qubit',
    'path_to_cycle',
    'concat_paths',
    'h8_seed',
    'big_cycle',
    'independence_witness',
    'SearchConfig',
    'NotFound',
    'find_realization',
    'realizability_table',
    'EmpiricalModel',
    'JointDistribution',
    'PauliSum',
    'DenseHermitian',
    'StateVector',
    'to_matrix',
    'extreme_eigen',
    'expectation',
    'quantum_behavior',
    'CycleInequality',
    'GeneralInequality',
    'enumerate_cycle_inequalities',
    'gamma_operator',
    'gamma_squared_symbolic',
    'surviving_pair_count',
    'quantum_value',
    'tsirelson_state',
    'nc_membership',
    'glue_jpd_node',
    'glue_jpd_edge',
    'conjoined_counterexample',
    'vorobev_gate',
]
