"""Sidon sets in finite abelian groups.

Constructions meeting the sqrt(n) density barrier, the incidence
geometry they generate, abelian actions on projective planes, sparse
constructions from prime numbers, and exhaustive searches in small
groups.
"""

from .dense import (
    DENSE_NAMES,
    ConstructionError,
    PlanarCandidate,
    construct_dense,
    is_nondegenerate,
    is_planar,
    planar_graph,
    polarization,
)
from .fields import FieldError, FiniteField, field_create
from .groups import (
    AbelianGroup,
    GroupElement,
    GroupError,
    automorphism_perm,
    automorphisms,
    invariant_factor_form,
)
from .incidence import (
    IncidenceStructure,
    develop,
    dualize,
    is_partial_linear_space,
    is_projective_plane,
    self_dual_via_negation,
)
from .pell import CFData, PellError, fundamental_unit, regulator
from .planes3 import (
    FAMILY_TAGS,
    PlaneAction,
    PlaneError,
    extract_sidon,
    family_build,
    orbit_analysis,
    plane_build,
    recover_constructions,
)
from .quadforms import (
    BinaryQF,
    ClassGroup,
    FormError,
    fundamental_discriminant,
    prime_form,
    reduced_forms,
    splits,
)
from .search import (
    BudgetExceeded,
    SearchError,
    SearchResult,
    admissible_orders,
    affine_classes,
    enumerate_sidon,
    extend_sidon,
    max_sidon,
    sigma_table,
    test_T_subgroup,
    test_extendable,
)
from .sidon import (
    SidonReport,
    affine_equivalent,
    counting_bound,
    is_perfect_difference_set,
    is_sidon,
    subgroup_union_cover,
)
from .sparse import (
    BudgetError,
    FrameworkSpec,
    SparseError,
    SparseResult,
    class_group_primes,
    cubic_graph,
    framework_build,
    gaussian_angles,
    is_sidon_z,
    log_primes,
    perturb,
    quotient_ring_primes,
    real_quadratic,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BinaryQF",
    "BudgetError",
    "BudgetExceeded",
    "CFData",
    "ClassGroup",
    "ConstructionError",
    "DENSE_NAMES",
    "FAMILY_TAGS",
    "FieldError",
    "FiniteField",
    "FormError",
    "FrameworkSpec",
    "GroupElement",
    "GroupError",
    "IncidenceStructure",
    "PellError",
    "PlanarCandidate",
    "PlaneAction",
    "PlaneError",
    "SearchError",
    "SearchResult",
    "SidonReport",
    "SparseError",
    "SparseResult",
    "admissible_orders",
    "affine_classes",
    "affine_equivalent",
    "automorphism_perm",
    "automorphisms",
    "class_group_primes",
    "construct_dense",
    "counting_bound",
    "cubic_graph",
    "develop",
    "dualize",
    "enumerate_sidon",
    "extend_sidon",
    "extract_sidon",
    "family_build",
    "field_create",
    "framework_build",
    "fundamental_discriminant",
    "fundamental_unit",
    "gaussian_angles",
    "invariant_factor_form",
    "is_nondegenerate",
    "is_partial_linear_space",
    "is_perfect_difference_set",
    "is_planar",
    "is_projective_plane",
    "is_sidon",
    "is_sidon_z",
    "log_primes",
    "max_sidon",
    "orbit_analysis",
    "perturb",
    "planar_graph",
    "plane_build",
    "polarization",
    "prime_form",
    "quotient_ring_primes",
    "real_quadratic",
    "recover_constructions",
    "reduced_forms",
    "regulator",
    "self_dual_via_negation",
    "sigma_table",
    "splits",
    "subgroup_union_cover",
    "test_T_subgroup",
    "test_extendable",
]
