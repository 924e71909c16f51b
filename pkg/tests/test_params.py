from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypconvex import ParamTriple, PoleError

pos = st.floats(min_value=0.01, max_value=8.0)


def test_canonical_order_swaps():
    p = ParamTriple(2.0, 1.0, 3.0)
    assert (p.a, p.b) == (1.0, 2.0)


def test_pole_c_rejected():
    for c in (0, -1.0, -5):
        with pytest.raises(PoleError):
            ParamTriple(0.5, 0.5, c)


def test_derived_constants():
    p = ParamTriple(Fraction(1, 2), Fraction(4, 5), Fraction(19, 10))
    assert p.delta == Fraction(-3, 5)
    assert p.alpha == Fraction(2, 5) / Fraction(19, 10)
    assert p.beta == Fraction(3, 2) * Fraction(9, 5) / (2 * Fraction(29, 10))
    assert p.tau == p.alpha
    assert p.sigma == (Fraction(1, 2) - 1) * Fraction(4, 5) / Fraction(19, 10)
    assert p.sigma_prime == (Fraction(19, 10) - Fraction(1, 2) - 1) * Fraction(4, 5) / Fraction(19, 10)


@given(pos, pos, pos)
def test_derived_recompute_bitwise(a, b, c):
    # properties recompute from the fields, so two reads agree bit for bit
    if c == int(c) and c <= 0:
        return
    try:
        p = ParamTriple(a, b, c)
    except PoleError:
        return
    assert p.delta == p.a + p.b - p.c
    assert p.alpha == p.a * p.b / p.c
    assert p.delta == p.delta and p.beta == p.beta


@given(pos, pos, pos)
def test_order_invariant(a, b, c):
    try:
        p1 = ParamTriple(a, b, c)
        p2 = ParamTriple(b, a, c)
    except PoleError:
        return
    assert (p1.a, p1.b, p1.c) == (p2.a, p2.b, p2.c)


def test_fraction_roundtrip():
    p = ParamTriple(0.5, 0.75, 2.0).as_fractions()
    assert p.a == Fraction(1, 2)
    assert p.b == Fraction(3, 4)
    assert p.delta == Fraction(-3, 4)
