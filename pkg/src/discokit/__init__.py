"""discokit: numerics for Minkowski sums of generalized discs.

Support functions, exposed points and faces; sampling of the purely
nonlinear boundary part over its sign sheets; implicit-equation recovery by
monomial interpolation; and a Frank-Wolfe membership oracle.
"""

__version__ = "0.1.0"

from .errors import (
    AmbiguousNullspace,
    ConditionViolated,
    DegenerateDirection,
    DiscotopeError,
    InvalidBoundaryPoint,
    NoEquation,
    NotConverged,
    NotTwoDiscs,
    SamplingExhausted,
    SpecValidationError,
    Undersampled,
    ZeroDirection,
)
from .geometry import (
    DiscSpec,
    DiscotopeSpec,
    exposed_point_disc,
    gradient_support,
    is_full_dimensional,
    load_discotope,
    satisfies_nondegeneracy,
    save_discotope,
    support_disc,
    support_discotope,
    type_vector,
)
from .faces import FaceDescription, face_of_direction, multi_exposure_test, tangent_containment_check
from .critical import (
    SampleCloud,
    build_M,
    critical_angles,
    enumerate_sheets,
    load_cloud,
    rank_defect,
    sample_S,
    sample_critical_point,
    sample_join,
)
from .implicit import (
    ImplicitPolynomial,
    MonomialBasis,
    count_terms,
    evaluate,
    find_degree,
    find_implicit,
    fit_implicit,
    load_polynomial,
    make_polynomial,
    monomial_basis,
    residual_at,
    save_polynomial,
)
from .membership import MembershipReport, lmo, project
from .fixtures import FIXTURES, get_fixture, verify_fixture

__all__ = [name for name in dir() if not name.startswith("_")]
