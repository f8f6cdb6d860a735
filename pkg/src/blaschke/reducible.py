"""Reducible Blaschke products: conjugates of z^n by a disk automorphism."""

from dataclasses import dataclass, field

import numpy as np

from .core import BlaschkeProduct, critical_points, evaluate, nth_roots, principal_arg, sigma, sigma_inv
from .errors import CoincidentPoints, InvalidInput, NearSingularDenominator, OddDegree
from .geometry import geodesic_angle_at, geodesic_intersection, geodesic_through
from .roots import cluster

MULTIPLICITY = "Multiplicity"
UNIQUE_CRITICAL_POINT = "UniqueCriticalPoint"
ROOT_SET_MATCH = "RootSetMatch"
UNIMODULAR_CONSTANT = "UnimodularConstant"

_CHECK_POINTS = np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)


def conjugated_power_map(a, n, z):
    """sigma_a(sigma_a^{-1}(z)^n), evaluated directly."""
    return sigma(a, sigma_inv(a, z) ** n)


def conjugate_power(a, n):
    """The reducible product sigma_a o z^n o sigma_a^{-1} in zero/constant form."""
    a = complex(a)
    if not abs(a) < 1.0:
        raise InvalidInput("conjugate point must lie in the open unit disk")
    if n < 1:
        raise InvalidInput("degree must be positive")
    if a == 0:
        return BlaschkeProduct.power(n)
    zeros = tuple(sigma(a, w) for w in nth_roots(a, n))
    bare = BlaschkeProduct(zeros)
    mu = conjugated_power_map(a, n, 1.0) / evaluate(bare, 1.0)
    B = BlaschkeProduct(zeros, mu / abs(mu))
    err = np.max(np.abs(evaluate(B, _CHECK_POINTS) - conjugated_power_map(a, n, _CHECK_POINTS)))
    assert err <= 1e-10, f"zero/constant form deviates by {err}"
    return B


def delta_xi(xi, n):
    """The value B(1) of the reducible product with conjugate point xi.

    ((1+xi)^n - xi (1+conj xi)^n) / ((1+conj xi)^n - conj(xi) (1+xi)^n)
    """
    xi = complex(xi)
    if not abs(xi) < 1.0:
        raise InvalidInput("xi must lie in the open unit disk")
    p, q = (1.0 + xi) ** n, (1.0 + xi.conjugate()) ** n
    num = p - xi * q
    den = q - xi.conjugate() * p
    if abs(den) <= 1e-14:
        raise NearSingularDenominator(f"denominator {abs(den):.3g} too small")
    d = num / den
    assert abs(abs(d) - 1.0) <= 1e-10, "Delta_xi must be unimodular"
    return d


def product_formula(xi, zeros):
    """Delta_xi * prod_w ((1 - conj w)^2 / |1 - w|^2) sigma_w, from the zero set alone."""
    zeros = tuple(complex(w) for w in zeros)
    mu = delta_xi(xi, len(zeros))
    for w in zeros:
        mu *= (1.0 - w.conjugate()) ** 2 / abs(1.0 - w) ** 2
    return BlaschkeProduct(zeros, mu / abs(mu))


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    conjugate_point: complex = None
    failed_conditions: tuple = ()
    critical_points: tuple = field(default=(), compare=False)
    delta: complex = field(default=None, compare=False)


def _multiplicity_ok(zeros, tol):
    sizes = sorted(len(g) for g in cluster(zeros, tol))
    return sizes == [1] * len(zeros) or sizes == [len(zeros)]


def _match_cyclic(xs, ys):
    """Max entrywise distance between two argument-sorted lists, minimized over cyclic shifts."""
    xs = sorted(xs, key=principal_arg)
    ys = sorted(ys, key=principal_arg)
    n = len(xs)
    return min(max(abs(xs[(i + k) % n] - ys[i]) for i in range(n)) for k in range(n))


def is_reducible(B, tol=1e-8, multiplicity_tol=1e-9):
    """Decide reducibility via the four-condition criterion.

    Conditions are checked in order. When no unique critical point exists the
    conjugate point is undefined and the root-set and constant checks are not
    attempted.
    """
    n = B.degree
    if n < 2:
        raise InvalidInput("reducibility needs degree >= 2")
    failed = []
    if not _multiplicity_ok(B.zeros, multiplicity_tol):
        failed.append(MULTIPLICITY)
    crit = tuple(critical_points(B))
    if len(crit) != n - 1:
        return ReducibilityVerdict(False, None, tuple(failed + [UNIQUE_CRITICAL_POINT]), crit)
    center = sum(crit) / len(crit)
    if max(abs(c - center) for c in crit) > tol:
        return ReducibilityVerdict(False, None, tuple(failed + [UNIQUE_CRITICAL_POINT]), crit)
    xi = -center
    if abs(xi) <= 1e-10:
        # sigma_0 is the identity: only z^n itself qualifies
        xi = 0j
        if max(abs(a) for a in B.zeros) > tol:
            failed.append(ROOT_SET_MATCH)
        delta = 1.0 + 0j
    else:
        pulled = [sigma_inv(xi, z) for z in B.zeros]
        if _match_cyclic(pulled, nth_roots(xi, n)) > tol:
            failed.append(ROOT_SET_MATCH)
        delta = delta_xi(xi, n)
    if abs(evaluate(B, 1.0) - delta) > tol:
        failed.append(UNIMODULAR_CONSTANT)
    ok = not failed
    return ReducibilityVerdict(ok, xi if ok else None, tuple(failed), crit, delta)


def fixed_point_check(B, a):
    """|B(-a) + a|; zero for a reducible B with conjugate point a."""
    a = complex(a)
    return abs(evaluate(B, -a) + a)


@dataclass(frozen=True)
class GeodesicBundle:
    """Geodesics through opposite zero pairs and where they meet.

    With a single geodesic there is no intersection; ``max_deviation`` is then
    the distance from -a to that geodesic.
    """

    geodesics: tuple
    pairs: tuple
    intersection: complex
    max_deviation: float


def _ordered_zeros(B, a):
    """Zeros of B ordered to follow the argument order of their pullbacks sigma_a^{-1}."""
    return sorted(B.zeros, key=lambda z: principal_arg(sigma_inv(a, z)))


def opposite_pair_geodesics(B, a):
    n = B.degree
    if n % 2:
        raise OddDegree(f"degree {n} is odd")
    a = complex(a)
    zs = _ordered_zeros(B, a)
    k = n // 2
    pairs = tuple((zs[j], zs[j + k]) for j in range(k))
    for p, q in pairs:
        if abs(p - q) <= 1e-12:
            raise CoincidentPoints("opposite zeros coincide (a = 0 makes all zeros equal)")
    geos = tuple(geodesic_through(p, q) for p, q in pairs)
    if k == 1:
        return GeodesicBundle(geos, pairs, None, geos[0].distance(-a))
    hits = [geodesic_intersection(geos[i], geos[j]) for i in range(k) for j in range(i + 1, k)]
    point = sum(hits) / len(hits)
    return GeodesicBundle(geos, pairs, point, max(abs(h + a) for h in hits))


def consecutive_angles(points):
    """Angle at each point between geodesics to its cyclic neighbours."""
    pts = list(points)
    n = len(pts)
    out = []
    for j in range(n):
        prev, cur, nxt = pts[j - 1], pts[j], pts[(j + 1) % n]
        g1, g2 = geodesic_through(prev, cur), geodesic_through(cur, nxt)
        out.append(geodesic_angle_at(g1, g2, cur))
    return out


def angle_comparison(B, a):
    """Consecutive-pair angles at the zeros of B and at the n-th roots of a.

    Returns the two lists, aligned so that entry j corresponds to sigma_a(root_j).
    """
    a = complex(a)
    roots = nth_roots(a, B.degree)
    zs = _ordered_zeros(B, a)
    return consecutive_angles(zs), consecutive_angles(roots)

