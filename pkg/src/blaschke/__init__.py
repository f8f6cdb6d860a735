"""Finite Blaschke products and their Poncelet geometry."""

from .core import (
    BlaschkeProduct,
    DiskAutomorphism,
    PreimageFiber,
    compose,
    critical_points,
    derivative,
    evaluate,
    nth_roots,
    preimages,
)
from .geometry import (
    Chord,
    CircleFit,
    EllipseParams,
    HyperbolicGeodesic,
    chord_tangency_gap,
    curvature,
    curvature_bounds,
    eccentricity,
    eccentricity_literal,
    ellipse_from_foci,
    fit_circle,
    geodesic_angle_at,
    geodesic_intersection,
    geodesic_through,
    tangency_point,
)
from .interp import InterleavedSpec, build_interpolant, default_spec
from .poncelet import (
    PonceletTriangle,
    PowerCircleSet,
    SweepReport,
    blaschke3_ellipse,
    blaschke4_ellipse,
    invariant_total_area,
    power_circles,
    quadrilateral_at,
    sweep,
    triangle_at,
)
from .reducible import (
    ReducibilityVerdict,
    conjugate_power,
    delta_xi,
    fixed_point_check,
    is_reducible,
    opposite_pair_geodesics,
)

__version__ = "0.1.0"
