"""Finite-scale tools for metric big Ramsey degrees on sup-norm spheres.

Exact geometry of symmetric convex polytopes, the pumpkin colouring of
sphere tuples, the 1-Lipschitz surjection quasiorder, isometric
embeddings of sup-normed spaces and brute-force discrete Ramsey checks.
"""

from .convex_geometry import (
    Interval,
    SymPolytope,
    contains,
    hausdorff,
    is_subset,
    point_dist,
    proj_range,
    sc_hull,
)
from .linf_embeddings import (
    IsoEmbedding,
    SupportedVector,
    apply,
    intertwine_count,
    isometry_defect_witness,
    random_embedding,
    unbounded_colour_witness,
    validate_embedding,
)
from .lipschitz_order import (
    ColouringTable,
    FiniteMetricSpace,
    MetricAxiomError,
    PointMap,
    factorization_search,
    is_one_lipschitz,
    isometric,
    leq,
    sup_dist,
)
from .pumpkin import (
    Diagnosis,
    MalformedPumpkinError,
    Pumpkin,
    SphereConditionError,
    Stage,
    TupleLinf,
    canonical_pum1,
    pp_colour,
    pumpkin_dist,
    pumpkin_valid,
    pumpkin_witness,
)
from .ramsey_harness import (
    CopySystem,
    DiscreteColouring,
    GuardExceeded,
    RigidSurjection,
    act,
    compose,
    enumerate_rigid_surjections,
    hj_line_check,
    is_persistent_colouring,
    min_colours_over_subcopies,
)

__version__ = "0.1.0"

__all__ = [
    "ColouringTable", "CopySystem", "Diagnosis", "DiscreteColouring", "FiniteMetricSpace",
    "GuardExceeded", "Interval", "IsoEmbedding", "MalformedPumpkinError", "MetricAxiomError",
    "PointMap", "Pumpkin", "RigidSurjection", "SphereConditionError", "Stage", "SupportedVector",
    "SymPolytope", "TupleLinf", "act", "apply", "canonical_pum1", "compose", "contains",
    "enumerate_rigid_surjections", "factorization_search", "hausdorff", "hj_line_check",
    "intertwine_count", "is_one_lipschitz", "is_persistent_colouring", "is_subset", "isometric",
    "isometry_defect_witness", "leq", "min_colours_over_subcopies", "point_dist", "pp_colour",
    "proj_range", "pumpkin_dist", "pumpkin_valid", "pumpkin_witness", "random_embedding",
    "sc_hull", "sup_dist", "unbounded_colour_witness", "validate_embedding",
]
