import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypconvex import DomainError, HypothesisError, ParamTriple, gamma_real
from hypconvex.geometry import (
    SectorSpec,
    boundary_curve,
    check_apex_sector,
    check_sector_containment,
    decomposition_constants,
    disk_samples,
    kappa_closed_form,
    kappa_numeric,
    remainder_series,
    sector_distance,
    sector_margin,
)
from hypconvex.hyp2f1 import _gauss_series

# eps for (0.5,0.9,1.0): |B| + 2^0.6 A with the gamma constants, frozen from
# a 30-digit evaluation
EPS_05_09_10 = 1.9958313718063543


def test_margin_edge_convention():
    # c equal to b drops the first constant: eps = 2^(1-delta)
    assert sector_margin(ParamTriple(0.4, 1.0, 1.0)) == pytest.approx(2.0 ** 0.6, rel=1e-14)


def test_margin_generic_value():
    assert sector_margin(ParamTriple(0.5, 0.9, 1.0)) == pytest.approx(EPS_05_09_10, rel=1e-12)


def test_margin_matches_constants():
    p = ParamTriple(0.5, 0.9, 1.0)
    A, B = decomposition_constants(p)
    assert sector_margin(p) == pytest.approx(abs(B) + 2.0 ** 0.6 * A, rel=1e-14)


def test_margin_domain_error():
    for trip in [(0.3, 0.4, 1.5), (0.5, 1.5, 1.0), (0.5, 0.5, 1.0)]:
        with pytest.raises(DomainError):
            sector_margin(ParamTriple(*trip))


def test_margin_continuity():
    p0 = (0.5, 0.9, 1.0)
    e0 = sector_margin(ParamTriple(*p0))
    h = 1e-6
    for i in range(3):
        q = list(p0)
        q[i] += h
        e1 = sector_margin(ParamTriple(*q))
        assert abs(e1 - e0) < 1e-3


def test_sector_distance_basics():
    phi = math.pi * 0.4 / 2.0
    assert sector_distance(0.0, phi) == 0.0
    assert sector_distance(5.0, phi) == 0.0               # positive axis inside
    assert sector_distance(complex(-3.0, 0.0), phi) > 0.0


@given(st.complex_numbers(max_magnitude=50.0, allow_infinity=False, allow_nan=False),
       st.floats(min_value=0.05, max_value=0.95))
def test_sector_distance_brute_force(z, delta):
    # distance to the sector equals the minimum over dense boundary samples
    phi = math.pi * delta / 2.0
    d = sector_distance(z, phi)
    if abs(cmath.phase(z)) <= phi if z != 0 else True:
        assert d == 0.0
        return
    best = abs(z)
    for s in (1.0, -1.0):
        ray = cmath.exp(1j * s * phi)
        for t in np.linspace(0.0, 120.0, 4001):
            best = min(best, abs(z - t * ray))
    assert d == pytest.approx(best, abs=2e-2)


def test_sector_spec_membership():
    s = SectorSpec("S_eps", 0.4, eps=0.5)
    assert s.contains(0.0)[0]
    assert s.contains(complex(0.1, -0.4))[0] == (s.distance(complex(0.1, -0.4)) < 0.5)
    star = SectorSpec("S_star", 0.4)
    assert star.distance(complex(-5.0, 0.0)) == 0.0       # negative axis in the double


def test_sector_spec_conjugation_symmetry():
    s = SectorSpec("S_eps", 0.37, eps=0.2)
    for z in (complex(1.0, 2.0), complex(-0.5, 0.7), complex(-2.0, -0.1)):
        assert s.distance(z) == pytest.approx(s.distance(z.conjugate()), abs=1e-14)


def test_disk_samples_deterministic():
    a = disk_samples(500, seed=3)
    b = disk_samples(500, seed=3)
    assert np.array_equal(a, b)
    c = disk_samples(500, seed=4)
    assert not np.array_equal(a, c)
    assert np.all(np.abs(a) < 1.0)


def test_containment_small_run():
    rep = check_sector_containment(ParamTriple(0.5, 0.9, 1.0), n_samples=800, seed=1)
    assert rep.passed
    assert rep.max_dist_f < rep.eps
    assert rep.max_dist_g < rep.eps


def test_containment_spike_bound():
    # |f(z) - A(1-z)^{-delta}| <= eps on the disk, and the spike stays in the sector
    from hypconvex import shifted_f

    p = ParamTriple(0.5, 0.9, 1.0)
    A, B = decomposition_constants(p)
    delta = float(p.delta)
    phi = math.pi * delta / 2.0
    eps = sector_margin(p)
    for z in disk_samples(400, seed=2):
        spike = A * (1.0 - z) ** (-delta)
        assert sector_distance(spike, phi) <= 1e-12
        assert abs(shifted_f(p, z) - spike) <= eps + 1e-8


def test_kappa_closed_form_values():
    assert kappa_closed_form(ParamTriple(0.9, 1.2, 2.0)) == pytest.approx(0.25, abs=1e-12)
    assert kappa_closed_form(ParamTriple(0.5, 1.2, 1.69)) == pytest.approx(-40.195, abs=1e-10)


def test_kappa_closed_form_hypotheses():
    for trip in [(0.5, 0.9, 1.0), (1.2, 1.3, 2.0), (0.9, 1.2, 2.2)]:
        with pytest.raises(HypothesisError):
            kappa_closed_form(ParamTriple(*trip))


def test_kappa_numeric_log_map():
    # f = -log(1-z): the profile is 1/(1-z), infimum 1/2
    rep = kappa_numeric(ParamTriple(1, 1, 2), n_theta=512)
    assert rep.kappa_numeric == pytest.approx(0.5, abs=1e-3)


def test_kappa_numeric_matches_closed_form():
    rep = kappa_numeric(ParamTriple(0.9, 1.2, 2.0), n_theta=1024)
    assert rep.consistent
    assert rep.kappa_numeric == pytest.approx(0.25, abs=1e-3)


def test_kappa_numeric_smoke_equal_params():
    # no closed form claimed; just a sane bounded value <= 1
    rep = kappa_numeric(ParamTriple(0.7, 0.7, 0.7), n_theta=512)
    assert rep.kappa_closed is None
    assert rep.kappa_numeric <= 1.0


def test_kappa_radii_trace_monotone():
    rep = kappa_numeric(ParamTriple(0.9, 1.2, 2.0), n_theta=1024)
    mins = [v for _, v, _ in rep.radii_trace]
    assert all(mins[i + 1] <= mins[i] + 1e-9 for i in range(len(mins) - 1))


def test_boundary_curve_structure():
    p = ParamTriple(0.9, 1.2, 2.0)
    curve = boundary_curve(p, n_theta=256)
    # real at theta = pi (value f(-1))
    assert abs(curve.gamma[-1].imag) < 1e-9
    # decomposition is consistent pointwise
    recon = curve.gamma1 + curve.gamma2
    assert np.all(np.abs(curve.gamma - recon) <= 1e-9 * (1.0 + np.abs(curve.gamma)))
    # remainder curve bounded by |B| and tending to B
    assert np.all(np.abs(curve.gamma2) <= abs(curve.B) + 1e-6 * (1.0 + abs(curve.B)))
    assert curve.gamma2[0].real == pytest.approx(curve.B, rel=1e-2)
    assert abs(curve.gamma2[0].imag) < 0.05 * abs(curve.B)


def test_boundary_curve_asymptote_slope():
    p = ParamTriple(0.9, 1.2, 2.0)
    curve = boundary_curve(p, n_theta=512)
    tanphi = math.tan(math.pi * curve.delta / 2.0)
    # y/x tends to tan(phi), but only like theta^delta / |B|: check the trend
    offsets = []
    for target in (1e-2, 1e-4, 1e-6):
        i = int(np.argmin(np.abs(curve.theta - target)))
        offsets.append(abs(curve.y[i] / curve.x[i] - tanphi))
    assert offsets[0] > offsets[1] > offsets[2]
    # the affine form converges fast: y - tan(phi) x -> -B tan(phi)
    assert curve.y[0] - tanphi * curve.x[0] == pytest.approx(-curve.B * tanphi, rel=1e-3)


def test_boundary_curve_remainder_route_independent():
    # gamma2 matches the expansion-around-1 construction of the remainder
    # wherever that series converges (theta < pi/3 on the circle)
    p = ParamTriple(0.9, 1.2, 2.0)
    curve = boundary_curve(p, n_theta=128)
    a, b, c = 0.9, 1.2, 2.0
    delta = a + b - c
    A, B = decomposition_constants(p)
    for i in range(0, len(curve.theta), 7):
        t = curve.theta[i]
        if 2.0 * math.sin(t / 2.0) > 0.8:
            continue
        s = math.sin(t / 2.0)
        z = complex(1.0 - 2.0 * s * s, math.sin(t))
        u = 1.0 - z
        s1, _, _ = _gauss_series(a, b, delta + 1.0, u)
        s2, _, _ = _gauss_series(c - a, c - b, 1.0 - delta, u)
        r_indep = B * s1 + A * u ** (-delta) * (s2 - 1.0)
        assert abs(curve.gamma2[i] - z * r_indep) <= 1e-8 * (1.0 + abs(r_indep))


def test_apex_sector_report():
    rep = check_apex_sector(ParamTriple(0.9, 1.2, 2.0), n_samples=800, seed=1, n_theta=256)
    assert rep.B < 0.0
    assert rep.passed
    res = dict(rep.asym_residuals)
    ts = sorted(res)
    assert res[ts[0]] < res[ts[1]]


def test_apex_sector_needs_convexity():
    with pytest.raises(HypothesisError):
        check_apex_sector(ParamTriple(0.5, 1.2, 1.69), n_samples=50, n_theta=64)


def test_remainder_sign_classes():
    pos = remainder_series(ParamTriple(0.5, 1.2, 1.0), N=200)
    assert pos.sign_class == "+"
    assert all(s > 0 for s in pos.sigma.entries)
    assert pos.q_monotone_exact

    neg = remainder_series(ParamTriple(0.5, 0.9, 1.0), N=200)
    assert neg.sign_class == "-"
    assert all(s < 0 for s in neg.sigma.entries)

    # c = b collapses the remainder
    zero = remainder_series(ParamTriple(0.4, 1.0, 1.0), N=50)
    assert zero.sign_class == "0"
    assert max(abs(s) for s in zero.sigma.entries) < 1e-12


def test_remainder_q_ratio_identity():
    # Q_{n+1}/Q_n - 1 = (a-c)(b-c)/((c+n)(delta+n)) exactly
    from fractions import Fraction

    a, b, c = Fraction(1, 2), Fraction(9, 10), Fraction(1)
    delta = a + b - c
    rs = remainder_series(ParamTriple(0.5, 0.9, 1.0), N=60)
    q = [Fraction(1)]
    for n in range(60):
        q.append(q[-1] * (a + n) * (b + n) / ((c + n) * (delta + n)))
    for n in range(50):
        lhs = q[n + 1] / q[n] - 1
        rhs = (a - c) * (b - c) / ((c + n) * (delta + n))
        assert lhs == rhs
    # float Q agrees with the exact recurrence
    assert rs.Q.entries[50] == pytest.approx(float(q[50]), rel=1e-12)


def test_remainder_partial_sums_approach_B():
    rs = remainder_series(ParamTriple(0.5, 0.9, 1.0), N=200, partial_to=10_000)
    e3 = abs(rs.partial_sums[1000] - rs.B)
    e4 = abs(rs.partial_sums[10_000] - rs.B)
    slope = math.log10(e4 / e3)
    assert slope == pytest.approx(0.4 - 1.0, abs=0.2 * 0.6)
