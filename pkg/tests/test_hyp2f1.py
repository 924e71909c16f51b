import cmath
import math
import random

import pytest
from hypothesis import given, strategies as st

from hypconvex import (
    DomainError,
    ParamTriple,
    Region,
    SlitPoint,
    Strategy,
    UnsupportedParams,
    gamma_real,
    hyp2f1,
    hyp2f1_derivatives,
    hyp2f1_params,
    preschwarzian,
    shifted_f,
    shifted_f_jet,
    shifted_g,
)

TWO_LN_TWO = 1.3862943611198906    # closed form -ln(1-z)/z at z = 1/2
# limit of the (0.3,0.4,1.5) series at 1: Gamma(1.5)Gamma(0.8)/(Gamma(1.2)Gamma(1.1)),
# frozen from a 30-digit evaluation
LIMIT_03_04_15 = 1.1811918510948158


def test_value_at_zero_is_one():
    for trip in [(0.5, 0.9, 1.0), (2.0, 3.0, 4.5), (0.1, 0.1, 0.1)]:
        assert hyp2f1(ParamTriple(*trip), 0.0) == 1.0 + 0.0j


def test_log_closed_form():
    p = ParamTriple(1.0, 1.0, 2.0)
    v = hyp2f1(p, 0.5)
    assert v.real == pytest.approx(TWO_LN_TWO, rel=1e-12)
    assert v.imag == 0.0


def test_near_one_limit_convergent_case():
    p = ParamTriple(0.3, 0.4, 1.5)
    v = hyp2f1(p, 1.0 - 1e-9)
    assert v.real == pytest.approx(LIMIT_03_04_15, rel=1e-6)


def test_branch_cut_rejected():
    p = ParamTriple(0.5, 0.9, 1.0)
    for z in (1.0, 1.5, 100.0):
        with pytest.raises(DomainError):
            hyp2f1(p, z)
    # just below 1 on the real axis is fine
    hyp2f1(p, 0.999999)


def test_region_tags():
    assert SlitPoint.of(0.1).region == Region.INNER_DISK
    assert SlitPoint.of(-1.0).region == Region.PFAFF
    assert SlitPoint.of(0.75).region == Region.NEAR_ONE
    assert SlitPoint.of(complex(0.7, 0.7)).region == Region.NEAR_ONE_REFLECTED
    with pytest.raises(DomainError):
        SlitPoint.of(2.0)


def test_strategy_overlap_consistency():
    # points seen by two routes agree to 1e-8 relative
    p = ParamTriple(0.5, 0.9, 1.9)
    pairs = [
        (complex(-0.5, 0.2), Strategy.SERIES, Strategy.PFAFF),
        (complex(0.65, 0.0), Strategy.SERIES, Strategy.CONNECTION),
        (complex(0.62, 0.1), Strategy.SERIES, Strategy.CONTINUATION),
        (complex(-9.0, 0.0), Strategy.PFAFF, Strategy.PFAFF_CONNECTION),
        (complex(0.8, 0.2), Strategy.CONNECTION, Strategy.CONTINUATION),
    ]
    for z, s1, s2 in pairs:
        v1 = hyp2f1(p, z, strategy=s1)
        v2 = hyp2f1(p, z, strategy=s2)
        assert abs(v1 - v2) <= 1e-8 * abs(v1), (z, s1, s2)


def test_forced_connection_integer_excess_rejected():
    p = ParamTriple(0.5, 1.5, 1.0)       # excess exactly 1
    with pytest.raises(UnsupportedParams):
        hyp2f1(p, 0.8, strategy=Strategy.CONNECTION)
    p0 = ParamTriple(0.5, 0.9, 1.4)      # excess exactly 0
    with pytest.raises(UnsupportedParams):
        hyp2f1(p0, 0.8, strategy=Strategy.CONNECTION)
    # the automatic route still evaluates both
    assert abs(hyp2f1(p, 0.8)) > 0
    assert abs(hyp2f1(p0, 0.8)) > 0


@given(st.complex_numbers(max_magnitude=0.95, allow_infinity=False, allow_nan=False))
def test_schwarz_reflection(z):
    # real coefficients: every route commutes with conjugation exactly
    p = ParamTriple(0.5, 0.9, 1.9)
    if z.imag == 0.0:
        return
    assert hyp2f1(p, z.conjugate()) == hyp2f1(p, z).conjugate()


def test_near_one_trichotomy():
    # convergent / logarithmic / power growth as x -> 1-
    pc = ParamTriple(0.3, 0.4, 1.5)
    # the limit is approached like (1-x)^(c-a-b); sample close enough for 1e-6
    assert hyp2f1(pc, 1.0 - 1e-9).real == pytest.approx(LIMIT_03_04_15, rel=1e-6)

    pl = ParamTriple(0.5, 0.9, 1.4)      # c = a+b
    target = gamma_real(1.4) / (gamma_real(0.5) * gamma_real(0.9))
    # the ratio approaches its limit like 1/log(1/(1-x)): check the trend
    # and the value at the closest representable decade
    offsets = []
    for u in (1e-7, 1e-10, 1e-14):
        ratio = hyp2f1(pl, 1.0 - u).real / math.log(1.0 / u)
        offsets.append(abs(ratio / target - 1.0))
    assert offsets[0] > offsets[1] > offsets[2]
    assert offsets[2] < 6e-2

    pg = ParamTriple(0.5, 0.9, 1.0)      # c < a+b, growth (1-x)^(c-a-b)
    u = 1e-9                             # next term is smaller by u^delta
    ratio = hyp2f1(pg, 1.0 - u).real * u ** (0.5 + 0.9 - 1.0)
    target = gamma_real(1.0) * gamma_real(0.4) / (gamma_real(0.5) * gamma_real(0.9))
    assert ratio == pytest.approx(target, rel=1e-4)


def test_derivative_values_at_zero():
    p = ParamTriple(0.5, 0.9, 1.9)
    a, b, c = 0.5, 0.9, 1.9
    assert hyp2f1_derivatives(p, 0.0, 1).real == pytest.approx(a * b / c, rel=1e-14)
    second = a * (a + 1) * b * (b + 1) / (c * (c + 1))
    assert hyp2f1_derivatives(p, 0.0, 2).real == pytest.approx(second, rel=1e-14)


def test_derivative_matches_finite_difference():
    p = ParamTriple(1.0, 1.0, 2.0)
    z = complex(-2.0, 0.0)
    h = 1e-5
    fd = (hyp2f1(p, z + h) - hyp2f1(p, z - h)) / (2 * h)
    d1 = hyp2f1_derivatives(p, z, 1)
    assert abs(fd - d1) / abs(d1) < 1e-7


def test_contiguous_relation_spot():
    rng = random.Random(3)
    for _ in range(10):
        vals = sorted(rng.uniform(0.1, 5.0) for _ in range(3))
        a, b, c = vals
        for z in (complex(-0.7, 0.4), complex(0.3, -0.2), complex(-25.0, 0.0)):
            F = hyp2f1_params(a, b, c, z)
            G = hyp2f1_params(a + 1, b, c, z)
            H = hyp2f1_params(a + 1, b + 1, c + 1, z)
            res = abs(G - F - (b / c) * z * H) / max(abs(F), abs(G), abs(z * H))
            assert res < 1e-10


def test_theorem_c_derivative_identity():
    # b = 1: z f'(z) equals the shift of the second parameter to 2
    for a, c in [(0.7, 2.3), (0.5, 2.0), (1.0, 3.1)]:
        p = ParamTriple(a, 1.0, c)
        for z in (complex(0.4, 0.1), complex(-1.5, 0.8), complex(0.9, 0.0)):
            _, fp, _ = shifted_f_jet(p, z)
            rhs = hyp2f1_params(a, 2.0, c, z)
            assert abs(z * fp - z * rhs) <= 1e-10 * abs(z * rhs)


def test_elementary_derivative_when_a_is_one():
    # a = 1, c = 2: f'(z) = (1-z)^(-b)
    for b in (0.5, 0.9, 1.7):
        p = ParamTriple(1.0, b, 2.0)
        for z in (complex(0.3, 0.2), complex(-4.0, 1.0)):
            _, fp, _ = shifted_f_jet(p, z)
            assert abs(fp - (1.0 - z) ** (-b)) <= 1e-10 * abs(fp)


def test_shifted_f_normalization():
    p = ParamTriple(0.5, 0.9, 1.3)
    assert shifted_f(p, 0.0) == 0.0
    h = 1e-6
    # f'(0) = 1
    d = (shifted_f(p, h) - shifted_f(p, -h)) / (2 * h)
    assert d.real == pytest.approx(1.0, abs=1e-9)


@given(st.complex_numbers(max_magnitude=0.9, allow_infinity=False, allow_nan=False))
def test_shifted_g_odd(z):
    p = ParamTriple(0.5, 0.9, 1.0)
    assert shifted_g(p, -z) == -shifted_g(p, z)


def test_shifted_g_domain():
    p = ParamTriple(0.5, 0.9, 1.0)
    with pytest.raises(DomainError):
        shifted_g(p, 1.2)        # z^2 on the cut
    shifted_g(p, complex(0.0, 2.0))   # z^2 = -4 is fine


def test_preschwarzian_zero_at_origin():
    assert preschwarzian(ParamTriple(0.5, 0.9, 1.9), 0.0) == 0.0


def test_preschwarzian_far_field_value():
    v = preschwarzian(ParamTriple(0.5, 0.8, 1.0), complex(-1e6, 0.0))
    assert abs(v.real + 0.5) <= 1e-3


def test_preschwarzian_route_agreement():
    p = ParamTriple(0.5, 0.9, 1.9)
    z = complex(0.3, 0.4)
    d = preschwarzian(p, z, route="direct")
    w = preschwarzian(p, z, route="eqW")
    assert abs(d - w) <= 1e-8 * abs(d)


def test_eval_against_scipy():
    # independent oracle across all regions
    from scipy.special import hyp2f1 as sp_hyp2f1

    rng = random.Random(11)
    pts = [complex(0.2, 0.1), complex(-0.8, 0.5), complex(0.93, 0.02),
           complex(0.55, 0.8), complex(-40.0, 0.0), complex(3.0, 1.0),
           0.9999 * cmath.exp(1.05j)]
    for _ in range(15):
        vals = sorted(rng.uniform(0.1, 4.0) for _ in range(3))
        a, b, c = vals
        for z in pts:
            mine = hyp2f1_params(a, b, c, z)
            ref = complex(sp_hyp2f1(a, b, c, z))
            assert abs(mine - ref) <= 1e-8 * max(1.0, abs(ref)), (a, b, c, z)
