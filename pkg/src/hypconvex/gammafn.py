"""Real gamma, reciprocal gamma and digamma in double precision.

Lanczos approximation (g = 7, 9 coefficients) on the right half line,
reflection for x < 1/2.  Good for at least 12 significant digits on
[-30, 170]; arguments whose gamma value exceeds the float64 range raise
OverflowError.
"""

from __future__ import annotations

import math

from .errors import PoleError

EULER_GAMMA = 0.5772156649015328606

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# log Gamma(x) stays below the exp overflow threshold up to about here
_OVERFLOW_X = 171.62
_EXP_MAX = 709.78


def is_nonpositive_integer(x) -> bool:
    try:
        xf = float(x)
    except (TypeError, OverflowError):
        return False
    return xf <= 0.0 and xf == math.floor(xf)


def sinpi(x: float) -> float:
    """sin(pi*x) with argument reduction, accurate near integers."""
    k = math.floor(x)
    r = x - k
    s = math.sin(math.pi * r)
    return -s if (int(k) & 1) else s


def gamma_real(x: float) -> float:
    """Gamma(x) for real x; PoleError at 0, -1, -2, ..., OverflowError past range."""
    x = float(x)
    if is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x={x}")
    if x < 0.5:
        # reflection; if Gamma(1-x) overflows the true value has underflowed
        try:
            g = gamma_real(1.0 - x)
        except OverflowError:
            return math.copysign(0.0, sinpi(x))
        return math.pi / (sinpi(x) * g)
    if x > _OVERFLOW_X:
        raise OverflowError(f"gamma({x}) exceeds the float64 range")
    y = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (y + i)
    t = y + _LANCZOS_G + 0.5
    expo = (y + 0.5) * math.log(t) - t
    if expo > _EXP_MAX:
        raise OverflowError(f"gamma({x}) exceeds the float64 range")
    return math.sqrt(2.0 * math.pi) * math.exp(expo) * acc


def rgamma_real(x: float) -> float:
    """1/Gamma(x); zero at the poles of gamma and on overflow of gamma."""
    if is_nonpositive_integer(x):
        return 0.0
    try:
        return 1.0 / gamma_real(x)
    except OverflowError:
        return 0.0


def digamma(x: float) -> float:
    """Digamma for x > 0: recurrence up to x >= 10, then the asymptotic series."""
    if x <= 0.0:
        raise PoleError(f"digamma argument must be positive, got {x}")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    # Bernoulli tail: 1/12 - 1/120 u + 1/252 u^2 - 1/240 u^3 + 1/132 u^4
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return acc + math.log(x) - 0.5 / x - tail
