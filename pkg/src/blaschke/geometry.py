"""Euclidean and Poincare-disk primitives: ellipses, chords, geodesics, circle fits."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentPoints,
    CollinearPoints,
    DegenerateEllipse,
    IdenticalGeodesics,
    InvalidInput,
    NoIntersectionInDisk,
    NotTangent,
    PointNotOnGeodesic,
)


@dataclass(frozen=True)
class EllipseParams:
    """Ellipse given by the string construction |w - f1| + |w - f2| = string_length."""

    focus1: complex
    focus2: complex
    string_length: float
    center: complex
    major: float
    minor: float
    theta: float

    @property
    def focal_distance(self):
        return abs(self.focus2 - self.focus1)

    def string_sum(self, w):
        return abs(w - self.focus1) + abs(w - self.focus2)

    def point(self, t):
        """Point at parameter t on the standard parametrization, rotated by theta."""
        local = 0.5 * self.major * math.cos(t) + 0.5j * self.minor * math.sin(t)
        return self.center + complex(math.cos(self.theta), math.sin(self.theta)) * local


def ellipse_from_foci(f1, f2, s):
    f1, f2, s = complex(f1), complex(f2), float(s)
    d = abs(f2 - f1)
    if not s > d + 1e-12:
        raise DegenerateEllipse(f"string length {s} does not exceed focal distance {d}")
    minor = math.sqrt(s * s - d * d)
    if d == 0.0:
        theta = 0.0
    else:
        theta = math.atan2((f2 - f1).imag, (f2 - f1).real) % math.pi
    return EllipseParams(f1, f2, s, 0.5 * (f1 + f2), s, minor, theta)


def curvature(E, t):
    """Curvature at parameter t; ``t`` may be an array."""
    M, m = E.major, E.minor
    u = np.asarray(t, dtype=float) + E.theta
    q = (0.5 * M) ** 2 * np.sin(u) ** 2 + (0.5 * m) ** 2 * np.cos(u) ** 2
    out = M * m / (4.0 * q**1.5)
    return float(out) if out.ndim == 0 else out


def curvature_bounds(E):
    """(2m/M^2, 2M/m^2), the extreme curvatures at the axis vertices."""
    M, m = E.major, E.minor
    return 2.0 * m / M**2, 2.0 * M / m**2


def eccentricity(E):
    """Standard eccentricity: focal distance over major axis."""
    return E.focal_distance / E.major


def eccentricity_literal(E):
    """sqrt(1 - d^2/M^2) with d the focal distance; equals minor/major.

    Kept alongside :func:`eccentricity` because this expression circulates in
    the literature as "the" eccentricity although it is its complement.
    """
    return math.sqrt(max(0.0, 1.0 - (E.focal_distance / E.major) ** 2))


@dataclass(frozen=True)
class Chord:
    p: complex
    q: complex

    def __post_init__(self):
        p, q = complex(self.p), complex(self.q)
        if p == q:
            raise CoincidentPoints("chord endpoints coincide")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


def _string_minimizer(E, c):
    """Minimizer of the string sum over the segment [p, q] (exact, by reflection).

    On the supporting line the sum |w-f1| + |w-f2| is minimized where the
    segment from f1 to the mirror image of f2 (or to f2 itself when the foci
    straddle the line) crosses it. Convexity lets us clamp to the segment.
    """
    p, q = c.p, c.q
    length = abs(q - p)
    d = (q - p) / length
    f1, f2 = E.focus1, E.focus2

    def height(x):
        return (d.conjugate() * (x - p)).imag

    h1, h2 = height(f1), height(f2)
    if h1 * h2 > 0:
        f2 = p + d * d * (f2 - p).conjugate()
        h2 = -h2
    if h1 == h2:
        # both foci on the line
        w = 0.5 * (f1 + f2)
    else:
        w = f1 + (h1 / (h1 - h2)) * (f2 - f1)
    t = (d.conjugate() * (w - p)).real / length
    t = min(1.0, max(0.0, t))
    return p + t * (q - p)


def chord_tangency_gap(E, c):
    """min over the chord of the string sum, minus the string length.

    Zero when the chord is tangent, positive when it misses the ellipse,
    negative when it cuts through.
    """
    w = _string_minimizer(E, c)
    return E.string_sum(w) - E.string_length


def tangency_point(E, c, tol=1e-8):
    w = _string_minimizer(E, c)
    gap = E.string_sum(w) - E.string_length
    if abs(gap) > tol:
        raise NotTangent(f"chord misses tangency by {gap:.3g}")
    return w


def golden_section_gap(E, c, tol=1e-12):
    """Tangency gap by golden-section search on the chord parameter (reference method)."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0

    def f(t):
        return E.string_sum(c.p + t * (c.q - c.p))

    lo, hi = 0.0, 1.0
    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = f(x2)
    t = 0.5 * (lo + hi)
    return f(t) - E.string_length, c.p + t * (c.q - c.p)


@dataclass(frozen=True)
class HyperbolicGeodesic:
    """A diameter (``direction`` set) or an arc orthogonal to the unit circle."""

    kind: str
    direction: complex = None
    center: complex = None
    radius: float = None

    def distance(self, z):
        """Euclidean distance from z to the full line or circle carrying the geodesic."""
        if self.kind == "diameter":
            return abs((self.direction.conjugate() * z).imag)
        # |z - c|^2 - r^2 = |z|^2 - 2 Re(z conj c) + 1 for an orthogonal circle;
        # dividing by |z - c| + r stays accurate when the circle is huge
        c = self.center
        power = abs(z) ** 2 - 2.0 * (z * c.conjugate()).real + 1.0
        return abs(power) / (abs(z - c) + self.radius)

    def tangent(self, z):
        if self.kind == "diameter":
            return self.direction
        return 1j * (z - self.center)


def _collinear_with_origin(p, q):
    scale = max(abs(p) * abs(q), 1e-300)
    return abs((p * q.conjugate()).imag) <= 1e-12 * max(1.0, scale)


def geodesic_through(p, q):
    p, q = complex(p), complex(q)
    if abs(p - q) == 0.0:
        raise CoincidentPoints("a geodesic needs two distinct points")
    if abs(p) > 1.0 + 1e-9 or abs(q) > 1.0 + 1e-9:
        raise InvalidInput("geodesic endpoints must lie in the closed unit disk")
    if _collinear_with_origin(p, q):
        far = p if abs(p) >= abs(q) else q
        u = far / abs(far)
        # direction folded into [0, pi)
        if abs(u.imag) <= 1e-15:
            u = complex(1.0, 0.0)
        elif u.imag < 0:
            u = -u
        return HyperbolicGeodesic("diameter", direction=u)
    # Re(conj(c) x) = (|x|^2 + 1) / 2 for x in {p, q}
    A = np.array([[p.real, p.imag], [q.real, q.imag]])
    rhs = np.array([(abs(p) ** 2 + 1.0) / 2.0, (abs(q) ** 2 + 1.0) / 2.0])
    cx, cy = np.linalg.solve(A, rhs)
    c = complex(cx, cy)
    return HyperbolicGeodesic("arc", center=c, radius=math.sqrt(abs(c) ** 2 - 1.0))


def _same(g1, g2, tol=1e-12):
    if g1.kind != g2.kind:
        return False
    if g1.kind == "diameter":
        return abs((g1.direction * g2.direction.conjugate()).imag) <= tol
    return abs(g1.center - g2.center) <= tol * max(1.0, abs(g1.center))


def geodesic_intersection(g1, g2):
    """The unique crossing point of two geodesics inside the disk."""
    if _same(g1, g2):
        raise IdenticalGeodesics("the two geodesics coincide")
    if g1.kind == "diameter" and g2.kind == "diameter":
        return 0j
    if g1.kind == "arc" and g2.kind == "diameter":
        g1, g2 = g2, g1
    if g1.kind == "diameter":
        d, arc = g1.direction, g2
    else:
        # the radical axis of two circles orthogonal to the unit circle is a
        # diameter: Re(z conj(c1 - c2)) = 0
        diff = g1.center - g2.center
        d = 1j * diff / abs(diff)
        arc = g1 if abs(g1.center) <= abs(g2.center) else g2
    # |t d - c|^2 = r^2 with |c|^2 - r^2 = 1 gives t^2 - 2 beta t + 1 = 0
    beta = (d.conjugate() * arc.center).real
    disc = beta * beta - 1.0
    if disc <= 0.0:
        raise NoIntersectionInDisk("the geodesics do not cross inside the disk")
    # the roots multiply to 1; take the one inside the disk without cancellation
    t = math.copysign(1.0, beta) / (abs(beta) + math.sqrt(disc))
    return t * d


def geodesic_angle_at(g1, g2, p, tol=1e-9):
    """Unsigned angle in [0, pi/2] between two geodesics at a common point p."""
    p = complex(p)
    for g in (g1, g2):
        if g.distance(p) > tol:
            raise PointNotOnGeodesic(f"{p} is {g.distance(p):.3g} away from a geodesic")
    t1, t2 = g1.tangent(p), g2.tangent(p)
    w = t1 * t2.conjugate()
    return math.atan2(abs(w.imag), abs(w.real))


@dataclass(frozen=True)
class CircleFit:
    center: complex
    radius: float
    max_residual: float


def fit_circle(points):
    """Circle through the first three points, with the worst residual over all points."""
    pts = [complex(p) for p in points]
    if len(pts) < 3:
        raise InvalidInput("need at least three points")
    a, b, c = pts[:3]
    b1, c1 = b - a, c - a
    det = 2.0 * (b1.real * c1.imag - b1.imag * c1.real)
    if abs(det) <= 1e-14 * max(abs(b1), abs(c1)) ** 2:
        raise CollinearPoints("the first three points are collinear")
    ux = (c1.imag * abs(b1) ** 2 - b1.imag * abs(c1) ** 2) / det
    uy = (b1.real * abs(c1) ** 2 - c1.real * abs(b1) ** 2) / det
    center = a + complex(ux, uy)
    radius = abs(a - center)
    resid = max(abs(abs(p - center) - radius) for p in pts)
    return CircleFit(center, radius, resid)
