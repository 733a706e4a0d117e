"""Exact classification of block metric spaces built from order towers."""

from .blockspace import (
    BlockSpace,
    FiniteMetricSpace,
    Partition,
    asdim_zero_profile,
    components,
    distance,
    embed_into_nonneg_integers,
    r_components,
)
from .equivalence import (
    LevelCheck,
    TowerBijection,
    VerificationReport,
    build_back_and_forth,
    interleave_towers,
    verify_bijective_coarse_equivalence,
)
from .errors import (
    DepthExhausted,
    MalformedInput,
    NotBlockDiagonal,
    NotEquivalent,
    NotProjection,
    PreconditionViolation,
    RoeclassError,
    UnsupportedEntries,
)
from .ktheory import (
    FiniteK0,
    K0Class,
    alpha_iterate,
    h_membership,
    k0_add,
    k0_equal,
    k0_groups_abstractly_iso,
    k0_iso_exists,
    k0_neg,
    k0_positive,
    k0_scale,
    k0_sub,
    k0_unit,
    k0_zero,
    transport_class,
    unit_divide,
)
from .roeops import (
    BlockTuple,
    PropagationOperator,
    block_decompose,
    conjugate_by_bijection,
    connecting_map,
    k0_class_of_projection,
    mvn_partial_isometry,
    recompose,
    trace_vector,
)
from .supernatural import (
    INFINITE,
    SupernaturalNumber,
    Tower,
    bijectively_coarsely_equivalent,
    coarsely_equivalent,
    obstruction_witness,
    sn_divides,
    sn_equal,
    supernatural_of_tower,
    tower_order,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "BlockSpace",
    "BlockTuple",
    "DepthExhausted",
    "FiniteK0",
    "FiniteMetricSpace",
    "K0Class",
    "LevelCheck",
    "MalformedInput",
    "NotBlockDiagonal",
    "NotEquivalent",
    "NotProjection",
    "Partition",
    "PreconditionViolation",
    "PropagationOperator",
    "RoeclassError",
    "SupernaturalNumber",
    "Tower",
    "TowerBijection",
    "UnsupportedEntries",
    "VerificationReport",
    "alpha_iterate",
    "asdim_zero_profile",
    "bijectively_coarsely_equivalent",
    "block_decompose",
    "build_back_and_forth",
    "coarsely_equivalent",
    "components",
    "conjugate_by_bijection",
    "connecting_map",
    "distance",
    "embed_into_nonneg_integers",
    "h_membership",
    "interleave_towers",
    "k0_add",
    "k0_class_of_projection",
    "k0_equal",
    "k0_groups_abstractly_iso",
    "k0_iso_exists",
    "k0_neg",
    "k0_positive",
    "k0_scale",
    "k0_sub",
    "k0_unit",
    "k0_zero",
    "mvn_partial_isometry",
    "obstruction_witness",
    "r_components",
    "recompose",
    "sn_divides",
    "sn_equal",
    "supernatural_of_tower",
    "tower_order",
    "transport_class",
    "unit_divide",
    "verify_bijective_coarse_equivalence",
]
