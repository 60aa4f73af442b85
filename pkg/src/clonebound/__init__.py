"""Numerical laboratory for error bounds of state-dependent N-to-L cloning.

The package studies how well a unitary machine can extend n_in identical
copies drawn from a known two-state set into n_out copies. It provides the
dense linear algebra core, the angle-metric inequality checks, coplanar
cloner constructions with their error accounting, closed-form bound curves,
and a command line harness with randomized verification suites.
"""

from .bounds import (
    AsymptoticReport,
    LimitCheck,
    UndefinedRatioError,
    ae_lower_bound,
    ae_lower_bound_from_angles,
    asymptotic_checks,
    f_rel_diff,
    f_rel_diff_from_angles,
    re_lower_bound,
    re_lower_bound_from_angles,
    re_symmetric,
    re_symmetric_from_angles,
)
from .cloner import (
    BruteForceResult,
    CloneTask,
    ClonerResult,
    ErrorReport,
    MachineEnsemble,
    PlaneVector,
    PreparedPair,
    asymmetric_cloner,
    brute_force_min_re,
    canonical_plane,
    decompose_output,
    error_report,
    gram_residual,
    ideal_angle_floor,
    mixed_machine_report,
    plane_coords,
    plane_to_full,
    slot_probability,
    split_cloner,
    symmetric_cloner,
)
from .geometry import (
    InequalityCheck,
    angle,
    mixed_probability_bound_check,
    overlap_magnitude,
    projector_deviation_check,
    spherical_triangle_check,
    transition_probability_check,
    transition_projector_check,
    uhlmann_fidelity,
)
from .hilbert import (
    DIM_CAP,
    RNG_ALGORITHM,
    DegeneratePairError,
    SizeCapExceeded,
    basis_state,
    gram_schmidt_pair,
    inner_product,
    make_rng,
    matrix_sqrt_psd,
    partial_trace,
    projector_onto,
    random_density,
    random_projector,
    random_state,
    random_unitary,
    tensor_power,
    tensor_product,
)
from .suites import (
    SUITE_NAMES,
    SuiteReport,
    measurement_deviation_suite,
    run_suite,
    run_suites,
)

__version__ = "0.1.0"
