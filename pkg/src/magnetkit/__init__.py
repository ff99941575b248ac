"""Exact attractor computations for diagonalizable actions.

Everything is symbolic: group elements are integer coordinate vectors,
monoid membership is decided by a complete nonnegative solver, and every
derived quantity (attractors, pure magnets, face lattices, bundle splittings)
comes with an internal cross-check against an independent route.

The names below are the working surface; the submodules stay importable for
reports and knobs (solver caps, probe bounds, root-datum builders).
"""

from .atlases import (
    EquivariantAtlas,
    MagnetPoset,
    attractors_equal,
    degree_support,
    enumerate_magnets,
    fingerprint,
    pure_magnet,
)
from .bundles import (
    BBResult,
    DilatationSetup,
    bb_bundle,
    dilatation,
    dilatation_attractor_check,
)
from .cohomology import Cochain, GradedFreeModule, h1_zero_suite, primitive
from .errors import (
    MagnetError,
    NoCertificateError,
    NotACocycleError,
    PreconditionError,
    ResourceLimitError,
    SchemaError,
    SharpenRequiredError,
    StructuralError,
)
from .graded import (
    FreePoly,
    MonoidAlgebra,
    MonoidIdeal,
    WeightModule,
    attractor,
    face_retraction,
    inclusion_is_closed,
    intersect_attractors,
    iterated_attractor,
    prescribed_limit,
    product_attractor,
    reindex,
    semidirect_dims,
    support_report,
    weight_attractor,
)
from .groups import FgAbelianGroup, GroupElement, GroupHom, hom_from_matrix
from .monoids import (
    GradingMorphism,
    Intersection,
    PreimageMonoid,
    Submonoid,
    bounded_members,
    divisors,
    faces,
    groupification,
    intersection,
    is_face,
    is_generating,
    is_group,
    is_sharp,
    monoid_rank_sharp,
    positive_grading,
    pushout_complement,
    same_submonoid,
    sharp_quotient,
    units,
)

__version__ = "0.1.0"

__all__ = [
    "BBResult",
    "Cochain",
    "DilatationSetup",
    "EquivariantAtlas",
    "FgAbelianGroup",
    "FreePoly",
    "GradedFreeModule",
    "GradingMorphism",
    "GroupElement",
    "GroupHom",
    "Intersection",
    "MagnetError",
    "MagnetPoset",
    "MonoidAlgebra",
    "MonoidIdeal",
    "NoCertificateError",
    "NotACocycleError",
    "PreconditionError",
    "PreimageMonoid",
    "ResourceLimitError",
    "SchemaError",
    "SharpenRequiredError",
    "StructuralError",
    "Submonoid",
    "WeightModule",
    "attractor",
    "attractors_equal",
    "bb_bundle",
    "bounded_members",
    "degree_support",
    "dilatation",
    "dilatation_attractor_check",
    "divisors",
    "enumerate_magnets",
    "face_retraction",
    "faces",
    "fingerprint",
    "groupification",
    "h1_zero_suite",
    "hom_from_matrix",
    "inclusion_is_closed",
    "intersect_attractors",
    "intersection",
    "is_face",
    "is_generating",
    "is_group",
    "is_sharp",
    "iterated_attractor",
    "monoid_rank_sharp",
    "positive_grading",
    "prescribed_limit",
    "primitive",
    "product_attractor",
    "pure_magnet",
    "pushout_complement",
    "reindex",
    "same_submonoid",
    "semidirect_dims",
    "sharp_quotient",
    "support_report",
    "units",
    "weight_attractor",
]
