"""Finite-group quantum reference frame calculus.

Groups as Cayley tables, unitary representations, covariant POVMs and their
classification, the relativization channel with its predual and conditioned
variants, operational equivalence quotients, localized frame-change maps, and
measurement reproducibility checkers.
"""

from .groups import (
    CosetSpace,
    FiniteGroup,
    GroupError,
    Subgroup,
    coset_space,
    cyclic_group,
    dihedral_group,
    from_cayley_table,
    quaternion_group,
    subgroup,
    symmetric_group,
)
from .operators import (
    HermitianBasis,
    contract_factor,
    embed_factors,
    hermitian_basis,
    hs_inner,
    is_density,
    is_effect,
    is_positive,
    kron,
    op_norm,
    partial_trace,
    permute_factors,
)
from .quantum import (
    CovarianceError,
    Frame,
    POVM,
    ResolutionOfIdentityError,
    UnitaryRep,
    UnsupportedFrameError,
    born,
    canonical_frame,
    canonical_pvm,
    classify_frame,
    coherent_state_povm,
    covariance_deviation,
    g_act_op,
    g_act_state,
    is_covariant,
    left_regular_rep,
    left_right_rep,
    localizing_state,
    rep_from_matrices,
    trivial_rep,
    uniform_povm,
)
from .opequiv import (
    EffectContext,
    OperationalState,
    canonical_repr,
    equivalent,
    framed_subspace,
    g_twirl,
    g_twirl_predual,
    intersect,
    invariant_subspace,
    make_context,
)
from .relativize import (
    HomogeneousYenMap,
    PreconditionError,
    YenMap,
    conditioned_yen,
    convolve,
    product_relative_state,
    relational_span_report,
    relative_orientation,
    restrict,
    yen,
    yen_homogeneous,
    yen_predual,
)
from .framechange import (
    FramedRelativeState,
    MultiFrameScenario,
    coherent_frame_change_unitary,
    compose_check,
    frame_change,
    framed_relative_context,
    lift,
    operational_agreement,
    triangular_reconstruction,
)
from .measurement import (
    MeasurementScheme,
    canonical_scheme,
    check_prc,
    check_rrc,
    rrc_relative_orientation,
)

__version__ = "0.1.0"
