"""dblkit: finitely presented double categories, their functors and
transformations, tensor-interleaving words, and exhaustive coherence
checkers.

Structures are immutable after construction and safe to share across
threads; checkers only read.  Everything is desk scale: cells are dense
integer ids and all laws are verified by enumeration against total
composition tables.
"""

from .report import AxiomReport, Budget, Violation
from .kernel import (
    DoubleCategory,
    FiniteCategory,
    NonComposable,
    StructureError,
    TwoCategory,
    check_double_category,
    check_two_category,
    embed_two_category,
    horizontal_two_category,
    product,
    pullback,
    quintet,
    terminal_double_category,
    transpose,
)
from .weak import (
    Bicategory,
    PseudoDoubleCategory,
    as_pseudo,
    bicategory_from_two_category,
    check_bicategory,
    check_pseudo_double_category,
)
from .functors import (
    CubicalDoubleFunctor,
    DoublePseudoFunctor,
    StrictDoubleFunctor,
    check_cubical,
    check_double_pseudo_functor,
    check_strict_functor,
    compose_pseudo,
    compose_strict,
    curry,
    uncurry,
    identity_functor,
    identity_pseudo,
    pseudo_from_strict,
)
from .transform import (
    ComponentRegistry,
    DoublePNT,
    HorizontalPNT,
    ThetaPNT,
    VerticalPNT,
    check_double_pnt,
    check_horizontal_pnt,
    check_theta,
    check_vertical_pnt,
    hcomp_double,
    hcomp_horizontal,
    hcomp_theta,
    hcomp_vertical,
    theta_to_double,
    vcomp_double,
    vcomp_horizontal,
    vcomp_theta,
    vcomp_vertical,
    whisker_functor,
)
from .companion import (
    CompanionPair,
    Connection,
    check_companion,
    check_connection,
    delta_inverse,
    find_connection,
    four_identities,
    horizontal_to_vertical,
    roundtrip_check,
    vertical_to_horizontal,
    vertical_transformation_to_double,
)
from .modif import (
    DoubleModification,
    ThetaModification,
    check_modification,
    check_theta_modification,
    hcomp_modif,
    tcomp_modif,
    vcomp_modif,
    vertical_modif_to_horizontal,
)
from .graytensor import (
    GrayTensorSkeleton,
    GrayWord,
    Letter,
    MonoidInDbl,
    SquareCalculus,
    SquareWord,
    check_monoid,
    check_monoidal_embedding,
    compare_interleavings,
    derive_interleaved_functor,
)
from .internal import (
    InternalCategoryData,
    check_coproduct_pullback,
    check_enriched_over_cat,
    check_internal,
    derive_globular,
    diagonal_internal,
    internalize_bicategory,
    monoid_to_internal,
    pseudomonoid_to_internal,
)
from .dsl import Document, ParseError, parse, serialize
