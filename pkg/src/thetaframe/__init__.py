"""Induced sequence spaces, frame conditions and reconstruction checks for
functional sequences on a truncated orthonormal basis."""

from .sequences import ScalarSequence, as_sequence, canonical, lp_norm, solid_dominates, tail
from .hierarchy import WeightHierarchy, polynomial_hierarchy, trivial_hierarchy
from .frames import (
    BlockFrameSpec,
    GeneralFrameSpec,
    analysis,
    build_block_frame,
    example_g1,
    example_g2,
    frame_from_dict,
    functional_dual_norm,
    identity_frame,
    l2_frame_bounds,
)
from .theta import (
    ThetaNormResult,
    block_maxima,
    canonical_vector_norm,
    member_Mc,
    tail_norm_profile,
    theta_norm,
)
from .oracle import (
    ConvergenceError,
    OracleError,
    OracleLimitError,
    min_norm_polyhedron,
    oracle_theta_norm,
)
from .reconstruction import (
    DualFamily,
    apply_V,
    build_dual,
    dual_from_vectors,
    example_g2_dual,
    expansion_residual,
    theta_f_norm,
    v_norm_certificate,
)
from .conditions import (
    ConditionReport,
    assemble_verdicts,
    check_A1,
    check_A2,
    check_A3,
    construct_r,
    default_sample,
)

__version__ = "0.1.0"
