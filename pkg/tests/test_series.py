import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypconvex import ParamTriple
from hypconvex.hyp2f1 import preschwarzian
from hypconvex.series import (
    CoeffSeries,
    delta_table,
    gauss_coefficients,
    necessary_conditions,
    preschwarzian_series,
    ratio_coefficients,
    shifted_coefficients,
)


def test_gauss_coefficients_log_map():
    # (1,1,2): coefficient n is 1/(n+1)
    cs = gauss_coefficients(ParamTriple(1, 1, 2), 10, "exact")
    assert cs.entries == [Fraction(1, n + 1) for n in range(11)]


def test_gauss_coefficients_binomial_when_a_equals_c():
    # a = c cancels: coefficient n is (b)_n / n!
    b = Fraction(3, 4)
    cs = gauss_coefficients(ParamTriple(Fraction(5, 2), b, Fraction(5, 2)), 8, "exact")
    rising = Fraction(1)
    fact = Fraction(1)
    for n, entry in enumerate(cs.entries):
        if n > 0:
            rising *= b + n - 1
            fact *= n
        assert entry == rising / fact


def test_first_entry_is_one():
    assert gauss_coefficients(ParamTriple(0.3, 0.7, 2.2), 5, "float").entries[0] == 1.0


def test_profile_coefficient_identities():
    # c1 = a2, c2 = 3a3 - 2a2^2, c3 = 6a4 - 9a2a3 + 4a2^3, exactly
    p = ParamTriple(Fraction(1), Fraction(1), Fraction(2))
    prof = preschwarzian_series(p, 8, half=True, mode="exact")
    fa = shifted_coefficients(p, 6, "exact").entries
    a2, a3, a4 = fa[2], fa[3], fa[4]
    assert prof.entries[0] == 1
    assert prof.entries[1] == a2
    assert prof.entries[2] == 3 * a3 - 2 * a2 ** 2
    assert prof.entries[3] == 6 * a4 - 9 * a2 * a3 + 4 * a2 ** 3


def test_full_profile_log_map_closed_form():
    # f = -log(1-z): 1 + z f''/f' = 1/(1-z), all coefficients 1
    p = ParamTriple(Fraction(1), Fraction(1), Fraction(2))
    prof = preschwarzian_series(p, 12, half=False, mode="exact")
    assert all(e == 1 for e in prof.entries)


def test_exact_float_agreement():
    for trip in [(0.5, 0.8, 1.9), (0.5, 0.9, 2.5)]:
        pf = ParamTriple(*trip)
        ex = preschwarzian_series(pf.as_fractions(), 64, half=True, mode="exact")
        fl = preschwarzian_series(pf, 64, half=True, mode="float")
        for n in range(65):
            e = float(ex.entries[n])
            assert fl.entries[n] == pytest.approx(e, rel=1e-12, abs=1e-250)


def test_exact_float_agreement_tracks_conditioning():
    # heavy cancellation caps float accuracy at cond*eps; the condition
    # estimate must flag it and the exact mode stays the authority
    pf = ParamTriple(1.5, 1.5, 1.5)
    ex = preschwarzian_series(pf.as_fractions(), 64, half=True, mode="exact")
    fl = preschwarzian_series(pf, 64, half=True, mode="float")
    eps = 2.3e-16
    flagged = False
    for n in range(65):
        e = float(ex.entries[n])
        cond = fl.condition[n]
        tol = max(1e-12, 20.0 * cond * eps)
        assert fl.entries[n] == pytest.approx(e, rel=tol, abs=1e-250)
        flagged = flagged or cond > 1e3
    assert flagged


def test_profile_matches_cauchy_integral():
    # coefficients from series division vs contour sampling of the evaluator
    p = ParamTriple(0.5, 0.9, 1.9)
    prof = preschwarzian_series(p, 10, half=False, mode="float")
    r = 0.1
    m = 256
    for n in range(8):
        acc = 0.0 + 0.0j
        for j in range(m):
            t = 2.0 * math.pi * j / m
            z = complex(r * math.cos(t), r * math.sin(t))
            val = 1.0 + preschwarzian(p, z)
            acc += val * complex(math.cos(n * t), -math.sin(n * t))
        coeff = (acc / m).real / r ** n
        assert coeff == pytest.approx(prof.entries[n], rel=1e-8, abs=1e-10)


def test_delta_table_constant_sequence():
    s = CoeffSeries([1.0] * 11, 10, "float")
    t = delta_table(s, max_k=6)
    assert not t.witnesses
    assert all(v == 0.0 for row in t.rows[1:] for v in row)


@given(st.fractions(min_value=0, max_value=1))
def test_delta_table_geometric_sequence(t):
    # c_n = t^n has differences t^n (1-t)^k >= 0, exactly
    entries = [t ** n for n in range(12)]
    table = delta_table(CoeffSeries(entries, 11, "exact"), max_k=8)
    assert not table.witnesses
    for k, row in enumerate(table.rows):
        for n, v in enumerate(row):
            assert v == t ** n * (1 - t) ** k


def test_delta_table_witness_for_supercritical_triple():
    p = ParamTriple(Fraction(3, 2), Fraction(3, 2), Fraction(3, 2))
    table = delta_table(preschwarzian_series(p, 12, half=True, mode="exact"), max_k=10, diag=10)
    assert table.witnesses
    k, n, v = table.witnesses[0]
    assert (k, n) == (1, 0)
    assert v == Fraction(-1, 2)


def test_delta_table_float_dead_band():
    entries = [1.0, 1.0 - 1e-13]    # first difference 1e-13, below the witness bar
    s = CoeffSeries([entries[0], entries[1], entries[1]], 2, "float")
    t = delta_table(s, max_k=1)
    assert not t.witnesses


def test_ratio_coefficients_normalized():
    cs = ratio_coefficients((1.5, 0.9, 1.9), (0.5, 0.9, 1.9), 12, "float")
    assert cs.entries[0] == 1.0


def test_screen_examples():
    r = necessary_conditions(ParamTriple(1, 1, 2))
    assert r.alpha == pytest.approx(0.5)
    assert r.beta == pytest.approx(2.0 / 3.0)
    assert r.all_pass                      # 3*beta = 2 = 1+2*alpha: boundary pass

    r = necessary_conditions(ParamTriple(1.5, 1.5, 1.5))
    assert r.alpha == pytest.approx(1.5)
    assert not r.alpha_in_unit and not r.all_pass

    r = necessary_conditions(ParamTriple(0.01, 0.5, 2.0))
    assert r.all_pass


def test_exact_screen_boundary():
    # the boundary case is exact in rational arithmetic
    r = necessary_conditions(ParamTriple(Fraction(1), Fraction(1), Fraction(2)))
    assert r.beta_bound
