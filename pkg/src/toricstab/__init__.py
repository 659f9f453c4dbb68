"""toricstab: exact slope-stability of tangent bundles on smooth toric varieties.

The combinatorial criterion: the tangent bundle is (semi-)stable w.r.t. an
ample divisor D iff for every proper subspace F spanned by rays of the fan,
the average facet volume over rays in F is (weakly) below the average over
all rays.  Everything is decided in exact rational arithmetic.
"""

from .exactlin import SubspaceBasis, canonical_span, hyperplane_lattice_basis
from .fan import (
    Divisor,
    Fan,
    is_ample,
    make_divisor,
    make_fan,
    normal_fan_from_vertices,
    projective_space_fan,
    pullback_divisor,
    stellar_subdivide,
    validate,
)
from .klyachko import (
    FiltrationFamily,
    monotone_step_inequality_check,
    restricted_slope,
    slope,
    tangent_filtrations,
)
from .kleinschmidt import (
    Rank2Variety,
    build_fan,
    cayley_volume,
    classify,
    closed_form_volumes,
    criterion_maximum,
    gamma,
    rank2,
    stability_polynomial,
)
from .polytope import (
    FacetVolumeTable,
    Polytope,
    barycenter_and_reflexivity,
    facet_volume_table,
    normalized_volume,
    vertices,
)
from .stability import (
    RegionSlice,
    StabilityStatus,
    StabilityVerdict,
    check_tangent,
    enumerate_candidates,
    region_scan,
    search_stable_polarization,
    subspace_concentration_check,
)
from .surfaces import (
    SurfaceClass,
    SurfaceFan,
    blow_down_candidates,
    classify_surface,
    lemma32_match,
    minimal_models,
    surface_fan,
    surface_fan_from_rays,
)

__all__ = [
    "SubspaceBasis",
    "canonical_span",
    "hyperplane_lattice_basis",
    "Divisor",
    "Fan",
    "is_ample",
    "make_divisor",
    "make_fan",
    "normal_fan_from_vertices",
    "projective_space_fan",
    "pullback_divisor",
    "stellar_subdivide",
    "validate",
    "FiltrationFamily",
    "monotone_step_inequality_check",
    "restricted_slope",
    "slope",
    "tangent_filtrations",
    "Rank2Variety",
    "build_fan",
    "cayley_volume",
    "classify",
    "closed_form_volumes",
    "criterion_maximum",
    "gamma",
    "rank2",
    "stability_polynomial",
    "FacetVolumeTable",
    "Polytope",
    "barycenter_and_reflexivity",
    "facet_volume_table",
    "normalized_volume",
    "vertices",
    "RegionSlice",
    "StabilityStatus",
    "StabilityVerdict",
    "check_tangent",
    "enumerate_candidates",
    "region_scan",
    "search_stable_polarization",
    "subspace_concentration_check",
    "SurfaceClass",
    "SurfaceFan",
    "blow_down_candidates",
    "classify_surface",
    "lemma32_match",
    "minimal_models",
    "surface_fan",
    "surface_fan_from_rays",
    "__version__",
]

__version__ = "0.1.0"
