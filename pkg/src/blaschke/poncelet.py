"""Blaschke 3-/4-ellipses, Poncelet triangles and the power-circle area invariant."""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import BlaschkeProduct, derivative, evaluate, preimages
from .errors import (
    CoalescedFiber,
    ConsistencyError,
    DecomposabilityWarning,
    DegenerateEllipse,
    InvalidInput,
    TooManySkips,
)
from .geometry import Chord, chord_tangency_gap, ellipse_from_foci, tangency_point


@dataclass(frozen=True)
class Ellipse3Spec:
    zero_a: complex
    zero_b: complex
    ellipse: object


@dataclass(frozen=True)
class Ellipse4Spec:
    a: complex
    b: complex
    c: complex
    ellipse: object


def blaschke3_ellipse(a, b):
    """Inscribed ellipse of the product z (z-a)(z-b) / ((1-conj(a)z)(1-conj(b)z))."""
    a, b = complex(a), complex(b)
    if abs(a) >= 1 or abs(b) >= 1:
        raise InvalidInput("zeros must lie in the open unit disk")
    s = abs(1.0 - a.conjugate() * b)
    return Ellipse3Spec(a, b, ellipse_from_foci(a, b, s))


def blaschke4_string_length(b, c):
    b, c = complex(b), complex(c)
    return abs(1.0 - b.conjugate() * c) * math.sqrt(
        (2.0 - abs(b) ** 2 - abs(c) ** 2) / (1.0 - abs(b) ** 2 * abs(c) ** 2)
    )


def decomposition_defect(a, b, c):
    """How far z * B(z), B with zeros a, b, c, is from C(D(z)) with D(z) = z sigma_a(z).

    Such a decomposition exists iff {b, c} is a full fiber of D, i.e. D(b) = D(c)
    for b != c, or b is the critical point of D when b = c.
    """
    D = BlaschkeProduct((0j, complex(a)))
    if abs(b - c) > 1e-9:
        return abs(evaluate(D, b) - evaluate(D, c))
    return abs(derivative(D, b))


def blaschke4_ellipse(a, b, c, check=True):
    """Ellipse with foci b, c inscribed in the quadrilaterals of z * B(z).

    The caller asserts that z * B(z) decomposes with ``a`` the zero of D(z)/z;
    with ``check`` the claim is tested and a DecomposabilityWarning issued if it
    fails.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if check:
        defect = decomposition_defect(a, b, c)
        if defect > 1e-9:
            warnings.warn(
                f"z*B(z) with zeros ({a}, {b}, {c}) does not factor through "
                f"D(z) = z sigma_a(z) (defect {defect:.3g})",
                DecomposabilityWarning,
                stacklevel=2,
            )
    s = blaschke4_string_length(b, c)
    if s <= abs(c - b):
        raise DegenerateEllipse(f"string length {s} does not exceed |c - b|")
    return Ellipse4Spec(a, b, c, ellipse_from_foci(b, c, s))


def _origin_split(zeros, tol=1e-9):
    """Remove one zero at the origin; return the remaining ones or None."""
    zeros = list(zeros)
    for i, z in enumerate(zeros):
        if abs(z) <= tol:
            return zeros[:i] + zeros[i + 1:]
    return None


@dataclass(frozen=True)
class PonceletTriangle:
    """One fiber of a degree-3 product read as a triangle.

    Index j of ``midpoints`` and ``tangency_points`` refers to the side opposite
    vertex j. ``tangency_points`` is None when the product has no zero at 0.
    """

    lam: complex
    vertices: tuple
    midpoints: tuple
    tangency_points: tuple = None
    ellipse: object = None

    def sides(self):
        z = self.vertices
        return [Chord(z[(j + 1) % 3], z[(j + 2) % 3]) for j in range(3)]


def triangle_at(B, lam):
    if B.degree != 3:
        raise InvalidInput("Poncelet triangles need a degree-3 product")
    fiber = preimages(B, lam)
    if fiber.min_gap() < 1e-8:
        raise CoalescedFiber(f"fiber over {lam} has coalesced points")
    z = fiber.points
    mids = tuple(0.5 * (z[(j + 1) % 3] + z[(j + 2) % 3]) for j in range(3))
    rest = _origin_split(B.zeros)
    tangency, ellipse = None, None
    if rest is not None:
        ellipse = blaschke3_ellipse(*rest).ellipse
        tangency = tuple(tangency_point(ellipse, Chord(z[(j + 1) % 3], z[(j + 2) % 3])) for j in range(3))
    return PonceletTriangle(fiber.lam, z, mids, tangency, ellipse)


def tangency_gaps(T):
    if T.ellipse is None:
        return None
    return [chord_tangency_gap(T.ellipse, s) for s in T.sides()]


@dataclass(frozen=True)
class PowerCircleSet:
    circles: tuple
    total_area: float

    @property
    def radii(self):
        return tuple(r for _, r in self.circles)


def cross_term_sum(vertices):
    """sum over pairs of conj(z_i) z_j + z_i conj(z_j)."""
    z = vertices
    return sum(2.0 * (z[i].conjugate() * z[j]).real for i, j in ((0, 1), (1, 2), (0, 2)))


def power_circles(T):
    """Circles centered at side midpoints through the opposite vertices."""
    circles = tuple((n, abs(z - n)) for z, n in zip(T.vertices, T.midpoints))
    squares = sum(r * r for _, r in circles)
    # unit-modulus vertices: sum r_j^2 = 9/2 - 3/4 * (cross terms)
    expanded = 4.5 - 0.75 * cross_term_sum(T.vertices)
    if abs(squares - expanded) > 1e-10:
        raise ConsistencyError(f"power-circle sum {squares} disagrees with expansion {expanded}")
    return PowerCircleSet(circles, math.pi * squares)


def invariant_total_area(a1):
    """Total power-circle area for foci +-a1 on the real axis."""
    a1 = float(a1)
    if not 0.0 <= abs(a1) < 1.0:
        raise InvalidInput("focus must satisfy |a1| < 1")
    return math.pi * (4.5 - 0.75 * (a1**4 - 3.0))


@dataclass(frozen=True)
class SweepReport:
    samples: int
    angles: tuple
    areas: tuple
    skipped: int
    min: float
    max: float
    mean: float
    spread: float
    closed_form: float = None
    triangles: tuple = ()


def centered_real_focus(B, tol=1e-10):
    """a >= 0 when the zeros are {0, a, -a} with a real, else None."""
    rest = _origin_split(B.zeros, tol)
    if rest is None:
        return None
    a, b = rest
    if abs(a + b) > tol or abs(a.imag) > tol or abs(b.imag) > tol:
        return None
    return abs(a.real)


def sweep_angles(n_samples, seed):
    """Half a deterministic grid, half seeded uniform draws on [0, 2*pi)."""
    n_grid = (n_samples + 1) // 2
    grid = 2.0 * math.pi * np.arange(n_grid) / n_grid
    rng = np.random.default_rng(seed)
    rand = rng.uniform(0.0, 2.0 * math.pi, n_samples - n_grid)
    return np.concatenate([grid, rand])


def _sample(B, theta):
    try:
        T = triangle_at(B, complex(math.cos(theta), math.sin(theta)))
    except CoalescedFiber:
        return None
    return T, power_circles(T).total_area


def sweep(B, n_samples, seed=42, workers=1, keep_triangles=False):
    """Total power-circle area over a sample of fibers of a degree-3 product.

    Results are assembled by sample index, so ``workers`` never changes the report.
    """
    if B.degree != 3:
        raise InvalidInput("sweeps need a degree-3 product")
    if n_samples < 1:
        raise InvalidInput("n_samples must be positive")
    angles = sweep_angles(n_samples, seed)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: _sample(B, t), angles))
    else:
        results = [_sample(B, t) for t in angles]
    kept = [(t, r) for t, r in zip(angles, results) if r is not None]
    skipped = n_samples - len(kept)
    if skipped > 0.1 * n_samples:
        raise TooManySkips(f"{skipped} of {n_samples} fibers coalesced")
    areas = np.array([r[1] for _, r in kept])
    a = centered_real_focus(B)
    return SweepReport(
        samples=n_samples,
        angles=tuple(float(t) for t, _ in kept),
        areas=tuple(float(x) for x in areas),
        skipped=skipped,
        min=float(areas.min()),
        max=float(areas.max()),
        mean=float(areas.mean()),
        spread=float(areas.max() - areas.min()),
        closed_form=None if a is None else invariant_total_area(a),
        triangles=tuple(r[0] for _, r in kept) if keep_triangles else (),
    )


@dataclass(frozen=True)
class PonceletQuadrilateral:
    lam: complex
    vertices: tuple
    gaps: tuple
    ellipse: object


def quadrilateral_at(B3, lam, a):
    """Fiber of z * B3(z) over ``lam`` and the tangency gaps of its consecutive sides.

    ``a`` designates the zero of B3 that is the zero of D(z)/z in the
    decomposition z * B3(z) = C(D(z)); the other two zeros are the foci.
    """
    if B3.degree != 3:
        raise InvalidInput("quadrilaterals come from degree-3 products")
    zeros = list(B3.zeros)
    idx = min(range(3), key=lambda i: abs(zeros[i] - a))
    if abs(zeros[idx] - a) > 1e-9:
        raise InvalidInput(f"{a} is not a zero of the product")
    b, c = zeros[:idx] + zeros[idx + 1:]
    spec = blaschke4_ellipse(zeros[idx], b, c)
    B1 = BlaschkeProduct((0j,) + B3.zeros, B3.mu)
    fiber = preimages(B1, lam)
    if fiber.min_gap() < 1e-8:
        raise CoalescedFiber(f"fiber over {lam} has coalesced points")
    z = fiber.points
    gaps = tuple(chord_tangency_gap(spec.ellipse, Chord(z[j], z[(j + 1) % 4])) for j in range(4))
    return PonceletQuadrilateral(fiber.lam, z, gaps, spec.ellipse)
