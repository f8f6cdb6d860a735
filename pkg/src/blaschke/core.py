"""Finite Blaschke products, disk automorphisms and their fibers over the unit circle."""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput, OffCircleRoot, PoleProximity, ZeroInput
from .roots import cluster, poly_from_factors, polyroots

TWO_PI = 2.0 * math.pi


def principal_arg(z):
    """Argument of z folded into [0, 2*pi)."""
    t = math.atan2(z.imag, z.real)
    if t < 0.0:
        t += TWO_PI
    # atan2 can return -0.0 or round to exactly 2*pi after the shift
    return 0.0 if t >= TWO_PI else t


def _check_disk(a, what):
    if not (cmath.isfinite(a) and abs(a) < 1.0 - 1e-12):
        raise InvalidInput(f"{what} {a!r} must lie in the open unit disk")


@dataclass(frozen=True)
class BlaschkeProduct:
    """``mu * prod (z - a_j) / (1 - conj(a_j) z)`` with |mu| = 1 and every |a_j| < 1.

    ``zeros`` is a multiset: repeated zeros are allowed and kept in the given order.
    """

    zeros: tuple
    mu: complex = 1.0 + 0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        mu = complex(self.mu)
        if not zeros:
            raise InvalidInput("a Blaschke product needs at least one zero")
        for a in zeros:
            _check_disk(a, "zero")
        if not cmath.isfinite(mu) or abs(abs(mu) - 1.0) > 1e-12:
            raise InvalidInput(f"unimodular constant {mu!r} has modulus {abs(mu)}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "mu", mu)

    @property
    def degree(self):
        return len(self.zeros)

    @classmethod
    def power(cls, n, mu=1.0):
        """z -> mu * z**n."""
        return cls((0j,) * n, mu)

    def __call__(self, z):
        return evaluate(self, z)

    def numerator(self):
        """Coefficients of mu * prod(z - a_j), highest degree first."""
        return self.mu * poly_from_factors([(1.0, -a) for a in self.zeros])

    def denominator(self):
        """Coefficients of prod(1 - conj(a_j) z), padded to degree n."""
        return poly_from_factors([(-a.conjugate(), 1.0) for a in self.zeros])

    def scaled(self, lam):
        """The product lam * B."""
        lam = complex(lam)
        return BlaschkeProduct(self.zeros, self.mu * lam / abs(lam))


@dataclass(frozen=True)
class DiskAutomorphism:
    """z -> e^{i theta} (z - a) / (1 - conj(a) z)."""

    a: complex
    theta: float = 0.0

    def __post_init__(self):
        a = complex(self.a)
        _check_disk(a, "automorphism parameter")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    def __call__(self, z):
        rot = cmath.exp(1j * self.theta)
        return rot * (z - self.a) / (1.0 - self.a.conjugate() * z)

    def inverse(self, w):
        u = w * cmath.exp(-1j * self.theta)
        return (u + self.a) / (1.0 + self.a.conjugate() * u)

    def as_blaschke(self):
        return BlaschkeProduct((self.a,), cmath.exp(1j * self.theta))


def sigma(a, z):
    """The normalized automorphism (z - a) / (1 - conj(a) z)."""
    return (z - a) / (1.0 - np.conj(a) * z)


def sigma_inv(a, w):
    return (w + a) / (1.0 + np.conj(a) * w)


@dataclass(frozen=True)
class PreimageFiber:
    """The n solutions of B(z) = lambda on the unit circle, sorted by argument.

    ``radial_error`` is the largest | |z| - 1 | observed before the points were
    projected onto the circle.
    """

    lam: complex
    points: tuple
    radial_error: float = field(default=0.0, compare=False)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def min_gap(self):
        pts = self.points
        if len(pts) < 2:
            return math.inf
        return min(abs(pts[i] - pts[(i + 1) % len(pts)]) for i in range(len(pts)))


def _evaluate_array(B, z):
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, B.mu, dtype=complex)
    for a in B.zeros:
        den = 1.0 - a.conjugate() * z
        if np.any(np.abs(den) < 1e-14):
            raise PoleProximity(f"evaluation too close to the pole 1/conj({a})")
        out *= (z - a) / den
    return out


def evaluate(B, z):
    """B(z) for a scalar or array ``z`` with |z| <= 1 + 1e-9."""
    if np.any(np.abs(z) > 1.0 + 1e-9):
        raise InvalidInput("evaluation point outside the closed unit disk")
    out = _evaluate_array(B, z)
    return complex(out) if out.ndim == 0 else out


def _log_derivative(B, z):
    return sum(1.0 / (z - a) + a.conjugate() / (1.0 - a.conjugate() * z) for a in B.zeros)


def _derivative_product_rule(B, z):
    factors = [(z - a) / (1.0 - a.conjugate() * z) for a in B.zeros]
    slopes = [(1.0 - abs(a) ** 2) / (1.0 - a.conjugate() * z) ** 2 for a in B.zeros]
    total = 0j
    for j in range(len(factors)):
        term = slopes[j]
        for k, f in enumerate(factors):
            if k != j:
                term *= f
        total += term
    return B.mu * total


def derivative(B, z):
    """B'(z), via the logarithmic derivative away from the zeros."""
    z = complex(z)
    if abs(z) > 1.0 + 1e-9:
        raise InvalidInput("evaluation point outside the closed unit disk")
    for a in B.zeros:
        if abs(1.0 - a.conjugate() * z) < 1e-14:
            raise PoleProximity(f"evaluation too close to the pole 1/conj({a})")
    if any(abs(z - a) < 1e-12 for a in B.zeros):
        return complex(_derivative_product_rule(B, z))
    return complex(_evaluate_array(B, z)) * _log_derivative(B, z)


def derivative_numerator(B):
    """Coefficients of N'D - ND', whose roots are the critical points of B = N/D.

    The z^(2n-1) coefficient cancels identically and is dropped.
    """
    N, D = B.numerator(), B.denominator()
    p = np.polysub(np.polymul(np.polyder(N), D), np.polymul(N, np.polyder(D)))
    n = B.degree
    p = np.concatenate([np.zeros(max(0, 2 * n - p.size), dtype=complex), p])
    return p[1:] if p.size == 2 * n else p


def log_derivative_k(B, z, k):
    """k-th derivative of B'/B, summed in partial-fraction form."""
    f = math.factorial(k)
    sign = -1.0 if k % 2 else 1.0
    total = 0j
    for a in B.zeros:
        ac = a.conjugate()
        total += sign * f / (z - a) ** (k + 1) + f * ac ** (k + 1) / (1.0 - ac * z) ** (k + 1)
    return total


def _polish_critical(B, x, m, steps=4):
    """Newton on the (m-1)-th derivative of B'/B, where an m-fold critical point is simple."""
    start = x
    for _ in range(steps):
        d = log_derivative_k(B, x, m)
        if d == 0 or not cmath.isfinite(d):
            break
        step = log_derivative_k(B, x, m - 1) / d
        if not cmath.isfinite(step):
            break
        x -= step
    return x if abs(x - start) <= 1e-6 else start


def critical_points(B):
    """Critical points of B in the open unit disk, repeated by multiplicity.

    Roots of the expanded derivative numerator are located first; each distinct
    one is then polished on B'/B in factored form, except where it sits on a
    repeated zero of B (B'/B has a pole there and the zero itself is exact).
    Sorted by modulus, then argument.
    """
    if B.degree < 2:
        raise InvalidInput("critical points need degree >= 2")
    p = derivative_numerator(B)
    nz = np.flatnonzero(np.abs(p) > 0)
    p = p[nz[0]:]
    roots = [complex(r) for r in polyroots(p, multiple=True) if abs(r) < 1.0]
    repeated = [g for g in cluster(B.zeros, 1e-9) if len(g) > 1]
    out = []
    for value in dict.fromkeys(roots):
        m = roots.count(value)
        for g in repeated:
            zero = sum(B.zeros[i] for i in g) / len(g)
            if abs(value - zero) <= 1e-6:
                value = zero
                break
        else:
            value = _polish_critical(B, value, m)
        out.extend([value] * m)
    return sorted(out, key=lambda r: (round(abs(r), 12), principal_arg(r)))


def fiber_polynomial(B, target):
    """Coefficients of mu prod(z - a_j) - target prod(1 - conj(a_j) z)."""
    P = B.numerator() - target * B.denominator()
    # leading coefficient is mu - target * prod(-conj(a_j)); nonzero when |target| <= 1
    assert abs(P[0]) > 0.0, "degenerate leading coefficient"
    return P


def _polish(B, roots, target, steps=2):
    """Newton steps on B(z) - target evaluated in product form."""
    out = []
    zeros = [(a, a.conjugate()) for a in B.zeros]
    for z in roots:
        z = complex(z)
        for _ in range(steps):
            val, logd = B.mu, 0j
            for a, ac in zeros:
                den = 1.0 - ac * z
                if z == a or den == 0:
                    break
                val *= (z - a) / den
                logd += 1.0 / (z - a) + ac / den
            else:
                if val == 0 or logd == 0:
                    break
                z -= (val - target) / (val * logd)
                continue
            break
        out.append(z)
    return np.array(out)


def solve(B, target, *, multiple=False):
    """All n solutions of B(z) = target, unprojected and unsorted."""
    target = complex(target)
    init = None
    if abs(target) > 0.5:
        # fiber of mu z^n over the target, pushed off the circle to avoid symmetric stalls
        n = B.degree
        init = 1.05 * np.exp(1j * (cmath.phase(target / B.mu) + 2 * np.pi * np.arange(n) + 0.3) / n)
    roots = polyroots(fiber_polynomial(B, target), multiple=multiple, init=init)
    if roots.size != B.degree:
        raise AssertionError("fiber polynomial lost degree")
    return roots


def preimages(B, lam):
    """The fiber of B over the unimodular value ``lam``."""
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise InvalidInput(f"target {lam!r} is not unimodular")
    z = _polish(B, solve(B, lam), lam)
    radial = np.abs(np.abs(z) - 1.0)
    worst = float(radial.max())
    if worst > 1e-8:
        raise OffCircleRoot(f"preimage at distance {worst:.3g} from the unit circle")
    z = z / np.abs(z)
    points = tuple(sorted((complex(p) for p in z), key=principal_arg))
    return PreimageFiber(lam, points, worst)


def compose(outer, inner):
    """The Blaschke product outer(inner(z))."""
    zeros = []
    for b in outer.zeros:
        zeros.extend(complex(r) for r in solve(inner, b, multiple=True))
    # on the circle the two sides are unimodular, so the ratio fixes mu
    bare = BlaschkeProduct(tuple(zeros))
    mu = evaluate(outer, evaluate(inner, 1.0)) / evaluate(bare, 1.0)
    return BlaschkeProduct(tuple(zeros), mu / abs(mu))


def nth_roots(a, n):
    """The n distinct n-th roots of ``a``, sorted by argument in [0, 2*pi).

    The principal root uses arg(a) in (-pi, pi], so negative reals map to
    |a|^(1/n) e^{i pi/n}.
    """
    a = complex(a)
    if a == 0:
        raise ZeroInput("the root set of 0 is not defined")
    if n < 1:
        raise InvalidInput("n must be positive")
    t = math.atan2(a.imag, a.real)
    if t == -math.pi:
        t = math.pi
    base = abs(a) ** (1.0 / n) * cmath.exp(1j * t / n)
    roots = [base * cmath.exp(2j * math.pi * j / n) for j in range(n)]
    return sorted(roots, key=principal_arg)
