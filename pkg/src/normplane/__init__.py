"""Isosceles orthogonality and geometric constants of two-dimensional normed spaces.

Float paths work for any norm; rational polygons additionally run through
an exact kernel (:mod:`normplane.exact`), and :mod:`normplane.oracle` gives
brute-force values for cross-validation.
"""

from ._numerics import DEFAULT_CONFIG, SolverConfig
from .constants import (
    AttainmentPair,
    CheckResult,
    ConstantsReport,
    alpha,
    beta,
    beta_lambda,
    constants_report,
    delta,
    delta_attainment,
    epsilon_grid,
    james,
    james_attainment,
    james_from_delta,
    james_generalized,
    rho,
    rho_prime,
    schaffer,
    schaffer_from_rho,
)
from .errors import (
    BracketError,
    ComputationError,
    DegeneratePair,
    DuplicateDirection,
    InvalidEpsilon,
    InvalidInput,
    InvalidLambda,
    NonConvex,
    NonPositiveRadius,
    NormPlaneError,
    NotExact,
    NotOnSphere,
    NotPolyhedral,
    TooFewVertices,
    ZeroVector,
    ZeroVertex,
)
from .exact import (
    exact_beta,
    exact_gauge,
    exact_iso_partner,
    exact_iso_roots,
    exact_james,
    exact_james_attainment,
)
from .iso import (
    OrthogonalityArc,
    PartnerResult,
    aset_arc,
    is_approx_iso,
    iso_defect,
    iso_partner,
    min_feasible_epsilon,
)
from .norms import (
    PRESETS,
    LpNorm,
    NormModel,
    Orientation,
    PolygonNorm,
    SymmetricPolygon,
    Vec2,
    cross,
    euclidean_norm,
    extreme_points,
    gauge,
    hexagon_norm,
    lp_norm,
    octagon_norm,
    orientation,
    polygon_norm,
    preset,
    regular_polygon_norm,
    rotation_invariance_check,
    sphere_point,
    sphere_points,
    square_norm,
    validate_polygon,
)
from .oracle import GridSpec, oracle_delta, oracle_james, oracle_partner, oracle_rho, oracle_schaffer

__version__ = "0.1.0"
