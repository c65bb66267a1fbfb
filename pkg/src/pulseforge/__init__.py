"""pulseforge: synthesis and evaluation of three-pulse composite pulses robust
to first order against off-resonance error, for arbitrary single-qubit
rotations about xy-plane axes.

The sequence family is parameterized by one free half-angle cosine ``c1``
inside a closed interval; the well-known CORPSE family and its twin sit at
the interval endpoints.  See :mod:`pulseforge.solver` for the construction,
:mod:`pulseforge.families` for the named endpoint families, and
:mod:`pulseforge.analysis` for infidelity/operation-time evaluation.
"""

from ._version import __version__
from .backend import backend_name, load_backend
from .errors import (
    FloorReachedError,
    InvalidIndicesError,
    NoConvergenceError,
    OutOfBoundsError,
    PulseforgeError,
)
from .su2 import (
    IDENTITY,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    TWO_PI,
    Pulse,
    distance_up_to_phase,
    first_order_ore_term,
    gate_infidelity,
    is_su2,
    pulse_unitary,
    reduce_angle,
    sequence_unitary,
    state_infidelity,
)
from .solver import (
    C1Bounds,
    CompositeSequence,
    SolutionPoint,
    TargetRotation,
    WindingNumbers,
    build_sequence,
    c1_bounds,
    oracle_solve,
    principal_parts,
    robustness_residual,
    scalar_robustness_residual,
    solve_phases,
    solve_secondary,
)
from .families import (
    CorpseIndices,
    FamilySequence,
    TwinIndices,
    corpse,
    fundamental_corpse,
    short_corpse,
    twin_corpse,
)
from .analysis import (
    ScalingFit,
    SweepTable,
    first_order_derivative_norm,
    infidelity_sweep,
    min_operation_time,
    operation_time,
    operation_time_closed_form,
    scaling_exponent,
    state_infidelity_sweep,
    time_sweep,
)
from .serialize import LoadedSequence, SequenceFormatError, dump_sequence, load_sequence

__all__ = [
    "__version__",
    "backend_name",
    "load_backend",
    "PulseforgeError",
    "OutOfBoundsError",
    "InvalidIndicesError",
    "NoConvergenceError",
    "FloorReachedError",
    "TWO_PI",
    "IDENTITY",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "Pulse",
    "pulse_unitary",
    "first_order_ore_term",
    "sequence_unitary",
    "gate_infidelity",
    "state_infidelity",
    "distance_up_to_phase",
    "is_su2",
    "reduce_angle",
    "TargetRotation",
    "WindingNumbers",
    "C1Bounds",
    "SolutionPoint",
    "CompositeSequence",
    "c1_bounds",
    "solve_secondary",
    "solve_phases",
    "build_sequence",
    "robustness_residual",
    "scalar_robustness_residual",
    "oracle_solve",
    "principal_parts",
    "CorpseIndices",
    "TwinIndices",
    "FamilySequence",
    "corpse",
    "short_corpse",
    "fundamental_corpse",
    "twin_corpse",
    "SweepTable",
    "ScalingFit",
    "operation_time",
    "operation_time_closed_form",
    "min_operation_time",
    "infidelity_sweep",
    "state_infidelity_sweep",
    "time_sweep",
    "scaling_exponent",
    "first_order_derivative_norm",
    "LoadedSequence",
    "SequenceFormatError",
    "dump_sequence",
    "load_sequence",
]
