"""Exact computation of the nu-bar invariant of homogeneous nearly-parallel
G2-structures on Aloff-Wallach spaces N_{k,l} = SU(3)/S^1_{k,l}.

The invariant is assembled as nu_bar = -24*I_D + 3*I_B - 24*J_D + 3*J_B:
the I-terms are exact rational local index contributions (module
``eta_local``), the J-terms are spectral-flow corrections read off from
eta-invariants of exact 64x64 operators on the double spinor space (module
``clifford``), and the supporting geometry (invariant 3-forms, curvature)
lives in ``g2forms``. Everything is built on exact arithmetic primitives
(``algebra``) and an exact model of su(3) (``liealg``).
"""

__version__ = "0.1.0"

from .liealg import AWParams, InvalidParams, normalize_params, validate_params
from .eta_local import compute_I_terms
from .clifford import operator_suite, spectral_flow_terms
from .g2forms import G2Params, find_nearly_parallel, park_scalar
from .cli import compute_report

__all__ = [
    "AWParams",
    "InvalidParams",
    "G2Params",
    "normalize_params",
    "validate_params",
    "compute_I_terms",
    "operator_suite",
    "spectral_flow_terms",
    "find_nearly_parallel",
    "park_scalar",
    "compute_report",
    "__version__",
]
