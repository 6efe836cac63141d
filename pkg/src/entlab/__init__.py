"""entlab: exact entanglement-entropy laboratory for stabilizer codes.

Subsystem entropies of stabilizer code states reduce to GF(2) ranks, so every
bound checked here (conditional mutual information, nested Markov bounds,
topological entropy, code tradeoffs) is evaluated in exact integer
arithmetic, with a dense density-matrix oracle for small-system cross-checks.
"""

__version__ = "0.1.0"

from .f2 import BitMatrix, BitVector, kernel_basis, rank, row_reduce, solve
from .geometry import (
    PartitionSequence,
    Region,
    TorusLattice,
    Tripartition,
    ball,
    boundary_components,
    build_med_sequence,
    kitaev_preskill_sectors,
)
from .pauli import (
    CodeParameters,
    LogicalSet,
    PauliOperator,
    StabilizerGroup,
    brute_force_distance,
    code_parameters,
    is_correctable_region,
    logical_operators,
    subgroup_rank_on,
    symplectic_product,
    tqo_check,
)
from .entropy import (
    cmi,
    degeneracy_bound,
    entropy_bits,
    fit_scaling,
    med_bound,
    partition_bound,
    quantum_dimension_gamma,
    stabilizer_entropy,
    telescoping_residual,
    tee_kitaev_preskill,
    tradeoff_report,
)
from .records import BoundVerdict, EntropyReport, ScalingFit
from .models import (
    haah_cubic_code,
    named_small_codes,
    random_stabilizer_code,
    repetition_code,
    toric_code,
)

__all__ = [
    "BitMatrix",
    "BitVector",
    "BoundVerdict",
    "CodeParameters",
    "EntropyReport",
    "LogicalSet",
    "PartitionSequence",
    "PauliOperator",
    "Region",
    "ScalingFit",
    "StabilizerGroup",
    "TorusLattice",
    "Tripartition",
    "ball",
    "boundary_components",
    "brute_force_distance",
    "build_med_sequence",
    "cmi",
    "code_parameters",
    "degeneracy_bound",
    "entropy_bits",
    "fit_scaling",
    "haah_cubic_code",
    "is_correctable_region",
    "kernel_basis",
    "kitaev_preskill_sectors",
    "logical_operators",
    "med_bound",
    "named_small_codes",
    "partition_bound",
    "quantum_dimension_gamma",
    "random_stabilizer_code",
    "rank",
    "repetition_code",
    "row_reduce",
    "solve",
    "stabilizer_entropy",
    "subgroup_rank_on",
    "symplectic_product",
    "telescoping_residual",
    "tee_kitaev_preskill",
    "toric_code",
    "tqo_check",
    "tradeoff_report",
]
