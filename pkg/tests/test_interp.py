import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke.core import evaluate
from blaschke.errors import InterleavingViolated, InvalidInput, PoleAtOne
from blaschke.interp import (
    InterleavedSpec,
    build_interpolant,
    default_spec,
    pairwise_distances,
    phi,
    phi_inv,
    zeta,
)

Z8, Z3 = zeta(8), zeta(3)


def test_phi_round_trip_and_real_on_circle():
    for t in np.linspace(0.1, 6.2, 13):
        z = cmath.exp(1j * t)
        assert abs(phi(z).imag) <= 1e-12
        assert phi_inv(phi(z)) == pytest.approx(z, abs=1e-12)
    for w in (0.3 + 0.2j, -2 + 5j):
        assert phi(phi_inv(w)) == pytest.approx(w, abs=1e-12)
    assert abs(phi(0.3 - 0.1j).imag) > 0  # disk to upper half-plane
    assert phi(0.3 - 0.1j).imag > 0


def test_phi_values_of_the_default_points():
    # phi(e^{it}) = -cot(t/2)
    for t in (math.pi / 4, math.pi / 2, 11 * math.pi / 12, math.pi, 19 * math.pi / 12, 7 * math.pi / 4):
        assert phi(cmath.exp(1j * t)).real == pytest.approx(-1 / math.tan(t / 2), abs=1e-12)
    assert phi(Z8).real == pytest.approx(-(1 + math.sqrt(2)), abs=1e-12)


def test_default_ordering_on_the_real_line():
    order = [Z8, 1j, Z8 * Z3, -1, Z8 * Z3**2, Z8**7]
    values = [phi(z).real for z in order]
    assert values == sorted(values)


def test_default_interpolant():
    B = build_interpolant(default_spec())
    w_images = [B(w) for w in (1j, -1, Z8**7)]
    z_images = [B(z) for z in (Z8, Z8 * Z3, Z8 * Z3**2)]
    assert max(pairwise_distances(w_images)) <= 1e-12
    assert max(pairwise_distances(z_images)) <= 1e-12
    assert w_images[0] == pytest.approx(-1, abs=1e-12)
    assert z_images[0] == pytest.approx(1, abs=1e-12)
    cubes = [w**3 for w in (1j, -1, Z8**7)]
    assert min(pairwise_distances(cubes)) >= math.sqrt(2 - math.sqrt(2)) - 1e-12
    assert min(pairwise_distances(cubes)) > 0.1


def test_interpolant_is_a_blaschke_product():
    B = build_interpolant(default_spec())
    t = np.linspace(0.05, 2 * math.pi - 0.05, 100)
    assert np.max(np.abs(np.abs(B(np.exp(1j * t))) - 1)) <= 1e-12
    assert all(abs(z) < 1 for z in B.zeros())
    P = B.as_blaschke()
    pts = np.exp(1j * t)
    assert np.max(np.abs(evaluate(P, pts) - B(pts))) <= 1e-10
    assert abs(B(0.0)) == pytest.approx(0.42145579869756, abs=1e-12)


def test_swapped_roles():
    spec = default_spec()
    B = build_interpolant(spec)
    S = build_interpolant(InterleavedSpec(spec.ws, spec.zs))
    assert not InterleavedSpec(spec.ws, spec.zs).z_first
    assert max(abs(S(z) + 1) for z in spec.zs) <= 1e-12
    assert max(abs(S(w) - 1) for w in spec.ws) <= 1e-12
    # swapping the roles composes with z -> -z on the value side
    pts = np.exp(1j * np.linspace(0.3, 6.0, 9))
    assert np.max(np.abs(S(pts) + B(pts))) <= 1e-12


def test_validation():
    with pytest.raises(InterleavingViolated):
        InterleavedSpec((1j, zeta(8, 3)), (-1, -1j))
    with pytest.raises(InterleavingViolated):
        InterleavedSpec((1j,), (-1, -1j))
    with pytest.raises(PoleAtOne):
        InterleavedSpec((1, -1), (1j, -1j))
    with pytest.raises(InvalidInput):
        InterleavedSpec((0.5j,), (-1,))


@st.composite
def interleaved(draw):
    n = draw(st.integers(1, 6))
    cuts = sorted(draw(st.lists(st.floats(0.02, 2 * math.pi - 0.02), min_size=2 * n, max_size=2 * n, unique=True)))
    if min(b - a for a, b in zip(cuts, cuts[1:] + [cuts[0] + 2 * math.pi])) < 1e-2:
        n = 1
        cuts = [1.0, 4.0]
    pts = [cmath.exp(1j * t) for t in cuts]
    return InterleavedSpec(tuple(pts[0::2]), tuple(pts[1::2]))


@given(interleaved())
def test_interpolates_every_spec(spec):
    B = build_interpolant(spec)
    assert max(abs(B(z) - 1) for z in spec.zs) <= 1e-8
    assert max(abs(B(w) + 1) for w in spec.ws) <= 1e-8
    assert all(abs(z) < 1 for z in B.zeros())


@given(st.floats(0.0, 0.99), st.floats(0.0, 2 * math.pi))
def test_phi_round_trip_on_disk(r, t):
    z = r * cmath.exp(1j * t)
    assert phi_inv(phi(z)) == pytest.approx(z, abs=1e-12)


def test_interpolant_has_n_preimages(rng):
    B = build_interpolant(default_spec())
    for t in rng.uniform(0, 2 * math.pi, 10):
        lam = cmath.exp(1j * t)
        roots = B.solve(lam)
        assert len(roots) == 3
        assert all(abs(abs(z) - 1) <= 1e-9 and abs(B(z) - lam) <= 1e-9 for z in roots)
