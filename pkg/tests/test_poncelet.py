import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke.core import BlaschkeProduct, critical_points, evaluate
from blaschke.errors import CoalescedFiber, DecomposabilityWarning, DegenerateEllipse, TooManySkips
from blaschke.poncelet import (
    blaschke3_ellipse,
    blaschke4_ellipse,
    blaschke4_string_length,
    invariant_total_area,
    power_circles,
    quadrilateral_at,
    sweep,
    sweep_angles,
    tangency_gaps,
    triangle_at,
)

SQ3 = math.sqrt(3.0)
angle = st.floats(0.0, 2 * math.pi)
real_focus = st.floats(0.0, 0.95)


def test_blaschke3_examples():
    C = blaschke3_ellipse(0, 0).ellipse
    assert C.major == C.minor == 1.0  # circle of radius 1/2
    E = blaschke3_ellipse(0, 0.5).ellipse
    assert (E.focus1, E.focus2, E.string_length) == (0, 0.5, 1.0)
    R = blaschke3_ellipse(math.sqrt(2) / 3 - 1j / 3, -math.sqrt(2) / 3 - 1j / 3).ellipse
    assert R.string_length == pytest.approx(2 / SQ3, abs=1e-15)


def test_blaschke4_examples():
    E = blaschke4_ellipse(0.5, 0.5, 0).ellipse
    # |1 - conj(b) c| = 1 here, so the string length is sqrt(7/4)
    assert E.major == pytest.approx(math.sqrt(7) / 2, abs=1e-15)
    assert E.minor == pytest.approx(math.sqrt(6) / 2, abs=1e-15)
    assert E.theta == pytest.approx(math.pi, abs=1e-15) or E.theta == pytest.approx(0.0, abs=1e-15)
    assert blaschke4_string_length(0, 0) == pytest.approx(math.sqrt(2))
    assert blaschke4_string_length(0.5, 0.5) == pytest.approx(0.75 * math.sqrt(1.6))
    assert 0.75 * math.sqrt(1.6) == pytest.approx(0.9487, abs=1e-4)


def test_blaschke4_ellipse_is_the_tangent_one():
    # the shorter string sqrt(7)/4 (full axes sqrt(7)/4, sqrt(3)/4) misses the quadrilateral sides
    from blaschke.geometry import Chord, chord_tangency_gap, ellipse_from_foci

    short = ellipse_from_foci(0.5, 0, math.sqrt(7) / 4)
    Q = quadrilateral_at(BlaschkeProduct((0.5, 0.5, 0)), 1j, 0.5)
    z = Q.vertices
    assert max(abs(g) for g in Q.gaps) <= 1e-12
    assert min(abs(chord_tangency_gap(short, Chord(z[j], z[(j + 1) % 4]))) for j in range(4)) > 0.1


def test_blaschke4_warns_when_not_decomposable():
    with pytest.warns(DecomposabilityWarning):
        blaschke4_ellipse(0.5, 0.2, 0.3j)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        blaschke4_ellipse(0.5, 0.5, 0.0)
        blaschke4_ellipse(0.5, 0.5, 0.0, check=True)


def test_triangle_examples():
    T = triangle_at(BlaschkeProduct.power(3), 1.0)
    assert T.vertices[0] == pytest.approx(1.0)
    assert T.midpoints[0] == pytest.approx(-0.5, abs=1e-15)
    T = triangle_at(BlaschkeProduct((0, 0.5, -0.5)), 1.0)
    y = math.sqrt(1 - 0.625**2)
    assert T.vertices == pytest.approx((1, complex(-0.625, y), complex(-0.625, -y)), abs=1e-14)
    T = triangle_at(BlaschkeProduct((0, 0, 0.5)), 1.0)
    assert T.vertices[1] == pytest.approx(complex(-0.25, math.sqrt(1 - 0.0625)), abs=1e-14)
    for j in range(3):
        k, l = (j + 1) % 3, (j + 2) % 3
        assert T.midpoints[j] == (T.vertices[k] + T.vertices[l]) / 2


def test_triangle_rejects_coalesced_fiber(monkeypatch):
    import blaschke.poncelet as pon
    from blaschke.core import PreimageFiber

    fake = PreimageFiber(1.0, (1.0 + 0j, complex(math.cos(1e-10), math.sin(1e-10)), -1.0 + 0j))
    monkeypatch.setattr(pon, "preimages", lambda B, lam: fake)
    with pytest.raises(CoalescedFiber):
        pon.triangle_at(BlaschkeProduct((0, 0.1, 0.2)), 1.0)


def test_power_circle_examples():
    T = triangle_at(BlaschkeProduct.power(3), 1.0)
    P = power_circles(T)
    assert P.radii == pytest.approx((1.5, 1.5, 1.5), abs=1e-15)
    assert P.total_area == pytest.approx(27 * math.pi / 4, abs=1e-12)
    T = triangle_at(BlaschkeProduct((0, 0.5, -0.5)), 1.0)
    r2 = sum(abs(T.vertices[j] - T.midpoints[j]) ** 2 for j in range(3))
    assert r2 == pytest.approx(6.703125, abs=1e-13)
    assert power_circles(T).total_area == pytest.approx(math.pi * 6.703125, abs=1e-12)


@given(angle, angle)
def test_total_area_is_rotation_invariant(t, phi):
    B = BlaschkeProduct((0, 0.3 + 0.2j, -0.6j))
    T = triangle_at(B, cmath.exp(1j * t))
    rot = cmath.exp(1j * phi)
    from blaschke.poncelet import PonceletTriangle

    R = PonceletTriangle(T.lam, tuple(rot * z for z in T.vertices), tuple(rot * n for n in T.midpoints))
    assert power_circles(R).total_area == pytest.approx(power_circles(T).total_area, abs=1e-12)


def test_invariant_total_area_examples():
    assert invariant_total_area(0) == pytest.approx(27 * math.pi / 4, abs=1e-15)
    assert invariant_total_area(0.5) == pytest.approx(math.pi * 6.703125, abs=1e-15)
    assert invariant_total_area(1 - 1e-9) == pytest.approx(6 * math.pi, abs=1e-7)


@given(real_focus, angle)
def test_vieta_and_focus_identities(a, t):
    lam = cmath.exp(1j * t)
    B = BlaschkeProduct((0, a, -a))
    T = triangle_at(B, lam)
    z1, z2, z3 = T.vertices
    assert abs(z1 * z2 * z3 - lam) <= 1e-12
    assert abs(z1 + z2 + z3 + lam * a * a) <= 1e-12
    assert abs(z1 * z2 + z1 * z3 + z2 * z3 + a * a) <= 1e-12
    for f in (a, -a):
        assert abs(abs((f - z1) * (f - z2) * (f - z3)) - (1 - a * a) * (1 + a * a)) <= 1e-12


@given(real_focus, angle)
def test_sides_are_tangent_to_the_3_ellipse(a, t):
    T = triangle_at(BlaschkeProduct((0, a, -a)), cmath.exp(1j * t))
    assert max(abs(g) for g in tangency_gaps(T)) <= 1e-10


@given(st.floats(0.0, 0.9), angle, angle)
def test_complex_centered_foci_follow_closed_form(r, phi, t):
    a = r * cmath.exp(1j * phi)
    T = triangle_at(BlaschkeProduct((0, a, -a)), cmath.exp(1j * t))
    assert power_circles(T).total_area == pytest.approx(invariant_total_area(r), rel=1e-12)


def test_sweep_examples():
    rep = sweep(BlaschkeProduct((0, 0.5, -0.5)), 1000)
    assert rep.spread <= 1e-9
    assert rep.closed_form == pytest.approx(math.pi * 6.703125)
    assert rep.min <= rep.mean <= rep.max
    rep = sweep(BlaschkeProduct((0, math.sqrt(2) / 3 - 1j / 3, -math.sqrt(2) / 3 - 1j / 3)), 1000)
    assert rep.spread > 0.01 * rep.mean and rep.closed_form is None
    rep = sweep(BlaschkeProduct((0, 0, 0.5)), 1000)
    assert rep.spread <= 1e-9 and rep.closed_form is None


def test_sweep_is_deterministic_and_thread_independent():
    B = BlaschkeProduct((0, 0.2 + 0.1j, 0.4))
    a = sweep(B, 101, seed=7)
    b = sweep(B, 101, seed=7, workers=4)
    assert a == b
    assert sweep(B, 101, seed=8).areas != a.areas


def test_sweep_angles_layout():
    t = sweep_angles(7, 3)
    assert len(t) == 7
    assert t[:4].tolist() == pytest.approx([0, math.pi / 2, math.pi, 3 * math.pi / 2])
    assert np.all((t >= 0) & (t < 2 * math.pi))


def test_too_many_skips(monkeypatch):
    import blaschke.poncelet as pon

    monkeypatch.setattr(pon, "_sample", lambda B, theta: None)
    with pytest.raises(TooManySkips):
        pon.sweep(BlaschkeProduct((0, 0.1, 0.2)), 10)


def test_quadrilateral_examples():
    Q = quadrilateral_at(BlaschkeProduct((0.5, 0.5, 0)), 1.0, 0.5)
    assert all(abs(abs(z) - 1) <= 1e-14 for z in Q.vertices)
    assert max(abs(g) for g in Q.gaps) <= 1e-7
    Q = quadrilateral_at(BlaschkeProduct((0, 0, 0)), 1.0, 0)
    assert Q.vertices == pytest.approx((1, 1j, -1, -1j), abs=1e-14)
    assert Q.ellipse.major == pytest.approx(math.sqrt(2))  # incircle radius sqrt(2)/2
    assert max(abs(g) for g in Q.gaps) <= 1e-14


@given(angle)
def test_quadrilateral_sides_tangent(t):
    Q = quadrilateral_at(BlaschkeProduct((0.5, 0.5, 0)), cmath.exp(1j * t), 0.5)
    assert max(abs(g) for g in Q.gaps) <= 1e-9


def test_quadrilateral_rotation_equivariance():
    rot = cmath.exp(0.7j)
    B = BlaschkeProduct((0.5, 0.5, 0))
    Br = BlaschkeProduct(tuple(rot * z for z in B.zeros))
    # B_r(rot z) = B(z) up to the unimodular factor rot^(-4) on z * B
    Q = quadrilateral_at(B, 1.0, 0.5)
    lam = evaluate(BlaschkeProduct((0,) + Br.zeros), rot * Q.vertices[0])
    Qr = quadrilateral_at(Br, lam, rot * 0.5)
    rotated = sorted((rot * z for z in Q.vertices), key=cmath.phase)
    assert sorted(Qr.vertices, key=cmath.phase) == pytest.approx(rotated, abs=1e-12)


def test_degenerate_4_ellipse_rejected(monkeypatch):
    import blaschke.poncelet as pon

    monkeypatch.setattr(pon, "blaschke4_string_length", lambda b, c: 0.1)
    with pytest.raises(DegenerateEllipse):
        pon.blaschke4_ellipse(0.5, 0.5, 0.0)
