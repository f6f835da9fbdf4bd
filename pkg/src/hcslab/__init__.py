"""Nonclassicality toolkit for hybrid coherent states.

Closed-form moments, higher-order squeezing and antibunching witnesses, a
truncated-Fock brute-force oracle that double-checks every closed form, and a
simulator of the heralded interferometric generation scheme.
"""

from .fock import (
    FockMoments,
    FockVector,
    TruncationError,
    TruncationPolicy,
    build_coherent,
    build_hcs,
    choose_truncation,
    fidelity,
    numeric_moment,
    quadrature_central_moment,
)
from .heralding import (
    DegenerateBranchError,
    HeraldingParams,
    HeraldOutcome,
    branch_coefficients,
    map_to_hcs,
    simulate_herald,
)
from .moments import (
    MAX_MOMENT_ORDER,
    ClosedFormMoments,
    HcsParams,
    mean_a,
    mean_number,
    moment,
    normalization,
)
from .witnesses import (
    AntibunchingResult,
    MomentProvider,
    QuadratureSpec,
    SqueezingResult,
    VacuumStateError,
    double_factorial,
    hm_squeezing,
    hoa_g,
    normally_ordered_central_moment,
)

__version__ = "0.1.0"

__all__ = [
    "AntibunchingResult",
    "ClosedFormMoments",
    "DegenerateBranchError",
    "FockMoments",
    "FockVector",
    "HcsParams",
    "HeraldOutcome",
    "HeraldingParams",
    "MAX_MOMENT_ORDER",
    "MomentProvider",
    "QuadratureSpec",
    "SqueezingResult",
    "TruncationError",
    "TruncationPolicy",
    "VacuumStateError",
    "branch_coefficients",
    "build_coherent",
    "build_hcs",
    "choose_truncation",
    "double_factorial",
    "fidelity",
    "hm_squeezing",
    "hoa_g",
    "map_to_hcs",
    "mean_a",
    "mean_number",
    "moment",
    "normalization",
    "normally_ordered_central_moment",
    "numeric_moment",
    "quadrature_central_moment",
    "simulate_herald",
]
