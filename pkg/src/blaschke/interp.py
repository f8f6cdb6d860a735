"""Degree-n Blaschke products that identify two interleaved n-tuples on the circle.

The construction moves to the upper half-plane with phi(z) = i (1+z)/(1-z),
builds the real rational map F(x) = prod(x - phi(w_j)) / prod(x - phi(z_j)),
and pulls back: B = phi^{-1} o F o phi. Then B(w_j) = phi^{-1}(0) = -1 and
B(z_j) = phi^{-1}(infinity) = 1.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import BlaschkeProduct, principal_arg
from .errors import InterleavingViolated, InvalidInput, PoleAtOne
from .roots import poly_from_factors, polyroots


def phi(z):
    """Cayley-type map of the disk onto the upper half-plane."""
    return 1j * (1.0 + z) / (1.0 - z)


def phi_inv(w):
    return (w - 1j) / (w + 1j)


def _on_circle(points, name):
    out = []
    for p in points:
        p = complex(p)
        if abs(abs(p) - 1.0) > 1e-12:
            raise InvalidInput(f"{name} point {p} is not on the unit circle")
        if abs(p - 1.0) <= 1e-12:
            raise PoleAtOne(f"{name} contains z = 1, where phi has its pole")
        out.append(p)
    return out


@dataclass(frozen=True)
class InterleavedSpec:
    """Two n-tuples on the circle whose arguments strictly alternate.

    The canonical order is 0 <= arg z_1 < arg w_1 < ... < arg w_n < 2 pi;
    ``z_first`` is False when the smallest argument belongs to a w instead.
    """

    zs: tuple
    ws: tuple

    def __post_init__(self):
        zs, ws = _on_circle(self.zs, "zs"), _on_circle(self.ws, "ws")
        if len(zs) != len(ws) or not zs:
            raise InterleavingViolated("zs and ws need the same positive length")
        zs = sorted(zs, key=principal_arg)
        ws = sorted(ws, key=principal_arg)
        labelled = sorted([(principal_arg(z), "z") for z in zs] + [(principal_arg(w), "w") for w in ws])
        for (t0, l0), (t1, l1) in zip(labelled, labelled[1:]):
            if l0 == l1 or t1 <= t0:
                raise InterleavingViolated("arguments of zs and ws must strictly alternate")
        object.__setattr__(self, "zs", tuple(zs))
        object.__setattr__(self, "ws", tuple(ws))

    @property
    def z_first(self):
        return principal_arg(self.zs[0]) < principal_arg(self.ws[0])

    @property
    def degree(self):
        return len(self.zs)


@dataclass(frozen=True)
class Interpolant:
    """B = phi^{-1} o F o phi, stored as P(z)/Q(z) with denominators cleared.

    With x = phi(z), (1-z)^n N(x) = prod(i(1+z) - p_j (1-z)) =: Np(z) and the
    same for the pole factor Dp(z); then B = (Np - i Dp) / (Np + i Dp).
    """

    spec: InterleavedSpec
    f_zeros: tuple
    f_poles: tuple
    num: np.ndarray
    den: np.ndarray

    def F(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.ones_like(x)
        for w, p in zip(self.f_zeros, self.f_poles):
            out = out * (x - w) / (x - p)
        return out

    def __call__(self, z):
        """B(z); at z = 1 this is the limit value, F(infinity) = 1."""
        z = np.asarray(z, dtype=complex)
        P = np.polyval(self.num, z)
        Q = np.polyval(self.den, z)
        out = P / Q
        return complex(out) if out.ndim == 0 else out

    @property
    def degree(self):
        return self.spec.degree

    def solve(self, target):
        """All solutions of B(z) = target: roots of P - target * Q."""
        return polyroots(self.num - complex(target) * self.den)

    def zeros(self):
        return [complex(r) for r in polyroots(self.num)]

    def as_blaschke(self):
        """Zero/constant form, recovered by solving B(z) = 0."""
        zeros = self.zeros()
        bare = BlaschkeProduct(zeros)
        z0 = cmath.exp(0.5j)
        mu = self(z0) / bare(z0)
        return BlaschkeProduct(zeros, mu / abs(mu))


def build_interpolant(spec):
    if not isinstance(spec, InterleavedSpec):
        raise TypeError("expected an InterleavedSpec")
    f_zeros = tuple(phi(w).real for w in spec.ws)
    f_poles = tuple(phi(z).real for z in spec.zs)
    Np = poly_from_factors([(1j + p, 1j - p) for p in f_zeros])
    Dp = poly_from_factors([(1j + p, 1j - p) for p in f_poles])
    if spec.z_first:
        return Interpolant(spec, f_zeros, f_poles, Np - 1j * Dp, Np + 1j * Dp)
    # F then maps the upper half-plane to the lower one; 1/B keeps the disk
    # inside the disk and still sends every w_j to -1 and every z_j to 1
    return Interpolant(spec, f_zeros, f_poles, Np + 1j * Dp, Np - 1j * Dp)


def zeta(n, k=1):
    return cmath.exp(2j * math.pi * k / n)


def default_spec():
    """z-triple {z8, z8 z3, z8 z3^2} against w-triple {i, -1, z8^7}."""
    z8, z3 = zeta(8), zeta(3)
    return InterleavedSpec((z8, z8 * z3, z8 * z3**2), (1j, -1.0 + 0j, z8**7))


def pairwise_distances(values):
    values = list(values)
    return [abs(values[i] - values[j]) for i in range(len(values)) for j in range(i + 1, len(values))]
