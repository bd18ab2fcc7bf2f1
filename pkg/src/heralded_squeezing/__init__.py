"""Squeezing distillation by heralded photon subtraction, addition and catalysis."""

from .distill import DistillationPoint, OptimumRecord, curve, enhancement, optimize_R, optimize_T, to_db
from .generating import (
    MomentIndex,
    MomentResult,
    QuadraticGenerator,
    VanishingProbabilityError,
    assemble,
    moment_arrays,
    probability,
    raw_moment,
    symmetric_moments,
)
from .phase_space import (
    GaussianState,
    SymplecticTransform,
    beam_splitter,
    fock_chi,
    gaussian_chi,
    squeeze,
    vacuum_state,
)
from .squeezing import Kind, OpKind, classify_distillable, var_svs

__all__ = [
    "DistillationPoint",
    "GaussianState",
    "Kind",
    "MomentIndex",
    "MomentResult",
    "OpKind",
    "OptimumRecord",
    "QuadraticGenerator",
    "SymplecticTransform",
    "VanishingProbabilityError",
    "assemble",
    "beam_splitter",
    "classify_distillable",
    "curve",
    "enhancement",
    "fock_chi",
    "gaussian_chi",
    "moment_arrays",
    "optimize_R",
    "optimize_T",
    "probability",
    "raw_moment",
    "squeeze",
    "symmetric_moments",
    "to_db",
    "vacuum_state",
    "var_svs",
]
