"""Great 3-sphere fibrations of the Clifford torus and their extremal geometry."""

from .quaternions import (
    I,
    J,
    K,
    ONE,
    GreatCircle,
    ImaginaryUnit,
    UnitQuaternion,
    canonicalize_sign,
    exp_axis,
    geodesic_distance,
    geodesic_midpoint,
    jk_circle_point,
    lattice_spacing,
    quasi_uniform_lattice,
    sample_uniform,
)
from .fibration import (
    Fibration,
    FiberSolveError,
    GreatThreeSphere,
    PairIsometry,
    SphereMap,
    brute_force_min_distance,
    constant_map,
    fibers_parallel,
    homogeneity_action,
    homogeneity_residual,
    hopf_fibration,
    hopf_latitude,
    hopf_latitude_map,
    hopf_map,
    latitude_fibration,
    lipschitz_estimate,
    mix_match_isometry,
    petro_discrepancy,
    petro_disjoint,
    pointwise_distance_stats,
    product_distance,
    solve_fiber_through_point,
    sphere_map,
    verify_fiberwise_homogeneity,
)
from .extremal import (
    DiagonalReduction,
    HotColdFrame,
    NumericExtrema,
    OffsetSphereParams,
    aligned_commutator,
    aligned_commutator_closed_form,
    aligned_commutator_first_order,
    cold_pivot,
    conjugation_orbit_point,
    diagonal_extrema,
    eggbeater_sweep,
    hot_cold_analytic,
    hot_cold_frame,
    hot_cold_numeric,
    hot_pivot,
    point_to_diagonal_offset_distance,
    positive_completion,
    reduce_to_diagonal,
    rotation_commutator,
    rotation_commutator_closed_form,
)

__version__ = "0.1.0"
