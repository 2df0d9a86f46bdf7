"""Chebyshev centers, duality certificates and extremal sets in l_p spaces."""
from .chebyshev import (
    Certificate,
    CenterResult,
    NonConvergence,
    SolverConfig,
    chebyshev_center,
    extract_certificate,
    radius_at,
    t_identity,
    verify_certificate,
)
from .extremal import (
    DegenerateSet,
    chernykh_check,
    extremality_report,
    generate_basis_set,
    generate_hadamard_set,
    gulevich_gap,
    jung_constant,
)
from .lp_core import LpSpace, PointSet, diameter, dual_pairing, duality_map, lp_distance, lp_norm
from .simplex_extract import (
    ExtractionParams,
    IntersectionEmpty,
    extract_simplex,
    feasibility_check,
    heavy_set,
    neighborhood,
    packing_lower_bound,
    t_values,
)

__version__ = "0.1.0"
