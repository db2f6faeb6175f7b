"""subregkit: exact and sampled verification of metric subregularity
constants for polyhedral convex constraint systems."""

__version__ = "0.1.0"

from .polyhedra import (  # noqa: F401
    DimCapError,
    EmptySetError,
    L1,
    LINF,
    NotInSetError,
    PolyNorm,
    Polyhedron,
)
from .system import ConstraintSystem, InvalidInstanceError  # noqa: F401
from .moduli import (  # noqa: F401
    AnalyzeConfig,
    ModulusReport,
    StrongReport,
    WitnessSearchError,
    analyze,
    bcq_min_tau,
    estimate_subreg,
    eta_holds,
    kernel_condition,
    strong_inclusion_holds,
    tangent_witness,
    tau_at,
)
