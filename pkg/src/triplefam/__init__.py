"""Families of sets whose triples have large total pairwise intersection."""

from .bounds import (
    BoundReport,
    RegimeError,
    alpha1,
    binom,
    exact_g_closed,
    f_j_ell,
    h_closed,
    lower_g,
    recursion_upper,
    upper_g2,
    upper_g3,
)
from .core import (
    DistinctnessError,
    Family,
    GroundMismatchError,
    GroundSet,
    Subset,
    TripleProfile,
    complement_family,
    d_lower_bound_from_size,
    d_triple,
    dual_d,
    intersection_size,
    is_member_H,
    is_member_Hbar,
    triple_profile,
)
from .search import CapExceededError, SearchResult, brute_force_max, exact_g, exact_h, m_sweep

__version__ = "0.1.0"
