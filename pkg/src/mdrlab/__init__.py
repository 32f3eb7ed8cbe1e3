"""Qubit simulation of measurement-disturbance relations as correlation-function inequalities."""
from .bounds import (
    BoundReport,
    ChshReport,
    chsh_composite,
    gram_area_sq,
    mdr_lhs,
    rs_check,
    theorem1_check,
    theorem2_bound,
    theorem2_check,
    vertex_min_radius,
)
from .mdr import (
    DegenerateAxesError,
    MdrSample,
    Scenario,
    cnot_scenario,
    cnot_u13,
    disturbance_eta,
    evaluate_scenario,
    haar_unitary,
    meter_state,
    post_interaction_state,
    precision_epsilon,
    std_dev,
)
from .prep import BellPairSpec, PreparedBranch, bell_state, project_prepare, verify_inplane_symmetry
from .qcore import Ket, Op, commutator, correlation, embed, expectation, pauli_op, spin_eigenbasis, tensor

__version__ = "0.1.0"
