"""Ultra-parallel complex hyperbolic triangle groups [m,m,0;3,3,2].

Builds the generators from (m, alpha), computes their Heisenberg-boundary
translation lattice, and decides discreteness at a parameter point: a
compression certificate proves discreteness, Shimizu's lemma proves
non-discreteness, and anything else is reported as unknown.
"""

from .errors import *  # noqa: F401,F403
from .errors import GeometryError, InternalInconsistency
from .tolerance import DEFAULT_EPS, Tolerances, get_tolerances, tolerances
from .projective import (
    J,
    PointClass,
    apply,
    bergman_distance,
    chain_distance,
    classify_vector,
    det_normalize,
    form_residual,
    hermitian_form,
    norm_sq,
    normalize_polar,
    projective_equal,
    reflection_matrix,
    same_point,
    vec,
)
from .heisenberg import (
    IDENTITY_TRANSLATION,
    INFINITY,
    ORIGIN,
    FiniteChain,
    HeisPoint,
    HeisTranslation,
    Side,
    VerticalChain,
    act,
    chain_polar,
    compose_translations,
    cygan_distance,
    from_boundary,
    is_infinity,
    rotate_vertical_chain,
    rotation_matrix,
    spinal_sphere_side,
    to_boundary,
    translation_matrix,
    vertical_reflection_factors,
    vertical_reflection_matrix,
)
from .triangle import (
    TriangleGroup,
    TriangleParams,
    angular_invariant,
    build_triangle,
    existence_rhs,
    triangle_exists,
)
from .words import (
    COSET_LABELS,
    IDENTITY_WORD,
    TranslationLattice,
    Word,
    closed_form_lattice,
    decompose_orbit_point,
    enumerate_words,
    evaluate_word_matrix,
    orbit_points,
    project_rotation,
    translation_lattice,
    translation_part_of,
    word_at,
)
from .criteria import (
    Certificate,
    Check,
    Classification,
    ShimizuResult,
    Verdict,
    certificate_for,
    classify,
    compression_certificate,
    coset_table,
    isometric_sphere_radius,
    lattice_min_norm,
    lattice_minimum,
    params_from_r_theta,
    prop1_predicate,
    prop2_predicate,
    prop2_threshold,
    shimizu_violation,
    vertical_translation_check,
)

__version__ = "0.1.0"
