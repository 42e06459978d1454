"""Crosscut posets, crosscut complexes and fixed point tools for finite posets."""

from .complexes import (
    FacePoset,
    SimplicialComplex,
    closed_star,
    crosscut_complex,
    euler_characteristic,
    f_vector,
    face_poset,
    format_complex,
    order_complex,
    parse_complex,
)
from .crosscut_poset import (
    CrosscutPoset,
    check_mxl_characterization,
    crosscut_poset,
    iota,
    l_k,
    min_component_over,
    nu,
    p0_retraction,
    p_m,
    verify_retract,
)
from .errors import (
    CrosscutError,
    CycleDetected,
    DuplicateLabel,
    EmptyGammaB,
    EmptySubset,
    FormatError,
    GuardExceeded,
    HypothesisViolated,
    Inconclusive,
    NoMaximum,
    NotASimplex,
    NotConnected,
    SizeGuard,
    UnknownLabel,
)
from .fixed_points import (
    abian_brown_fixed_point,
    has_fpp,
    has_fsp,
    verify_fpp_transfer,
    verify_fsp_equivalence,
    verify_main_theorem,
    verify_pm_contractibility,
)
from .poset import (
    FinitePoset,
    MonotoneMap,
    build_poset,
    connected_components,
    format_poset,
    is_antichain,
    is_bounded,
    is_chain,
    is_isomorphic,
    join,
    linear_extension,
    maximal_chains,
    meet,
    mnl,
    mxl,
    opposite,
    parse_poset,
)
from .stars import (
    astral_star_center,
    index_set,
    is_astral,
    is_coherent_cutset,
    is_crosscut,
    is_cutset,
    star,
    star_set,
)
from .topology import (
    Certificate,
    HomologySummary,
    Verdict,
    beat_points,
    boundary_matrices,
    core,
    homology,
    is_contractible,
    is_weakly_contractible,
    smith_normal_form,
)

__version__ = "0.1.0"
