"""Evaluation of the Gauss hypergeometric function on the slit plane.

The defining series only converges on the unit disk, so evaluation on
Lambda = C \\ [1, +inf) is assembled from several routes:

* direct series on the inner disk,
* the Pfaff map z -> z/(z-1) for the region around the negative axis,
* the two-series expansion around z = 1 (with gamma-function coefficients),
* logarithmic variants of that expansion when the parameter excess
  a + b - c is zero or a negative integer,
* Pfaff followed by the z = 1 expansion for the far field, and
* stepwise Taylor continuation of the hypergeometric ODE along a ray from
  the origin for the two crescents around exp(+-i*pi/3) that no single
  series reaches with a usable convergence ratio.

Every route works in double precision and targets a relative error of
1e-9 away from z = 1 (1e-6 inside |1-z| < 1e-3, where the expansion is
intrinsically worse conditioned).  Evaluation caches are transparent and
thread-safe; all functions here are pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import (
    DomainError,
    EvaluationError,
    NearZeroDerivative,
    PoleError,
    UnsupportedParams,
)
from .gammafn import EULER_GAMMA, digamma, gamma_real, is_nonpositive_integer, rgamma_real
from .params import ParamTriple

SERIES_RTOL = 1e-18          # relative size at which a term counts as negligible
SERIES_STREAK = 3            # consecutive negligible terms required to stop
SERIES_CAP = 10_000
INTEGER_EXCESS_TOL = 1e-9    # |a+b-c - round(.)| below this uses the log route

R_SERIES = 0.6               # |z| threshold for the direct series
R_PFAFF = 0.6                # |z/(z-1)| threshold for the Pfaff route
R_NEAR_ONE = 0.4             # |1-z| threshold for the z=1 expansion
R_FAR = 1.8                  # |1-z| beyond this: Pfaff then z=1 expansion (ratio 1/1.8)


class Region(str, Enum):
    """Which evaluation region a slit-plane point falls into."""

    INNER_DISK = "inner-disk"
    PFAFF = "pfaff-region"
    NEAR_ONE = "near-one"
    NEAR_ONE_REFLECTED = "near-one-reflected"


class Strategy(str, Enum):
    AUTO = "auto"
    SERIES = "series"
    PFAFF = "pfaff"
    CONNECTION = "connection"
    PFAFF_CONNECTION = "pfaff-connection"
    CONTINUATION = "continuation"


def on_slit(z: complex) -> bool:
    return z.imag == 0.0 and z.real >= 1.0


def require_slit_plane(z: complex) -> complex:
    z = complex(z)
    if on_slit(z):
        raise DomainError(f"z={z} lies on the branch cut [1, +inf)")
    return z


def classify_region(z: complex) -> Region:
    z = complex(z)
    if abs(z) <= R_SERIES:
        return Region.INNER_DISK
    if abs(z / (z - 1.0)) <= R_PFAFF:
        return Region.PFAFF
    if abs(1.0 - z) <= R_NEAR_ONE:
        return Region.NEAR_ONE
    return Region.NEAR_ONE_REFLECTED


@dataclass(frozen=True)
class SlitPoint:
    """A point of the slit plane together with its evaluation-region tag."""

    z: complex
    region: Region

    @classmethod
    def of(cls, z) -> "SlitPoint":
        z = require_slit_plane(z)
        return cls(z, classify_region(z))


def _as_point(z) -> complex:
    if isinstance(z, SlitPoint):
        return z.z
    return require_slit_plane(z)


# ---------------------------------------------------------------------------
# building-block series


def _terminating_degree(a: float, b: float):
    """Degree of the terminating series if a or b is a non-positive integer."""
    deg = None
    for p in (a, b):
        if is_nonpositive_integer(p):
            d = int(round(-p))
            deg = d if deg is None else min(deg, d)
    return deg


def _gauss_series(a, b, c, z: complex, cap: int = SERIES_CAP):
    """Partial sum of the defining series; returns (value, terms, tail bound)."""
    term = 1.0 + 0.0j
    total = term
    streak = 0
    n = 0
    while n < cap:
        den = (c + n) * (1.0 + n)
        if den == 0.0:
            raise PoleError(f"series denominator vanished at n={n} for c={c}")
        term *= (a + n) * (b + n) / den * z
        total += term
        n += 1
        if abs(term) <= SERIES_RTOL * abs(total):
            streak += 1
            if streak >= SERIES_STREAK:
                tail = abs(term) / max(abs(total), 1e-300)
                return total, n, tail
        else:
            streak = 0
    raise EvaluationError(
        f"series for ({a},{b};{c}) did not reach tolerance in {cap} terms at z={z}",
        point=z,
    )


def _pfaff(a, b, c, z: complex) -> complex:
    w = z / (z - 1.0)
    value, _, _ = _gauss_series(a, c - b, c, w)
    return (1.0 - z) ** (-a) * value


def _near_one_log_zero(a, b, u: complex) -> complex:
    """Expansion around z=1 for c = a+b, carrying log(1-z) terms."""
    pref = gamma_real(a + b) * rgamma_real(a) * rgamma_real(b)
    lnu = cmath.log(u)
    psi_n = -EULER_GAMMA
    psi_a = digamma(a)
    psi_b = digamma(b)
    term = 1.0 + 0.0j
    total = 0.0 + 0.0j
    streak = 0
    n = 0
    while n < SERIES_CAP:
        contrib = term * (2.0 * psi_n - psi_a - psi_b - lnu)
        total += contrib
        if abs(contrib) <= SERIES_RTOL * abs(total):
            streak += 1
            if streak >= SERIES_STREAK:
                return pref * total
        else:
            streak = 0
        term *= (a + n) * (b + n) / ((1.0 + n) * (1.0 + n)) * u
        psi_n += 1.0 / (1.0 + n)
        psi_a += 1.0 / (a + n)
        psi_b += 1.0 / (b + n)
        n += 1
    raise EvaluationError(f"log-case expansion stalled at u={u}", point=u)


def _near_one_log_negative(a, b, m: int, u: complex) -> complex:
    """Expansion around z=1 for c = a+b+m with integer m >= 1."""
    c = a + b + m
    gac = gamma_real(c)
    finite = 0.0 + 0.0j
    t = 1.0 + 0.0j
    for n in range(m):
        finite += t
        if n < m - 1:
            t *= (a + n) * (b + n) / ((1.0 + n) * (1.0 - m + n)) * u
    coef_fin = gamma_real(m) * gac * rgamma_real(a + m) * rgamma_real(b + m)

    lnu = cmath.log(u)
    psi_n = -EULER_GAMMA
    psi_nm = digamma(float(m + 1))
    psi_a = digamma(a + m)
    psi_b = digamma(b + m)
    term = u ** m / math.factorial(m)
    total = 0.0 + 0.0j
    streak = 0
    n = 0
    while n < SERIES_CAP:
        contrib = term * (lnu - psi_n - psi_nm + psi_a + psi_b)
        total += contrib
        if abs(contrib) <= SERIES_RTOL * abs(total) and n >= 1:
            streak += 1
            if streak >= SERIES_STREAK:
                break
        else:
            streak = 0
        term *= (a + m + n) * (b + m + n) / ((1.0 + n) * (m + 1.0 + n)) * u
        psi_n += 1.0 / (1.0 + n)
        psi_nm += 1.0 / (m + 1.0 + n)
        psi_a += 1.0 / (a + m + n)
        psi_b += 1.0 / (b + m + n)
        n += 1
    else:
        raise EvaluationError(f"log-case expansion stalled at u={u}", point=u)
    sign = -1.0 if (m & 1) else 1.0
    coef_log = sign * gac * rgamma_real(a) * rgamma_real(b)
    return coef_fin * finite - coef_log * total


def _near_one_log_positive(a, b, m: int, u: complex) -> complex:
    """Expansion around z=1 for c = a+b-m with integer m >= 1 (pole-type growth)."""
    c = a + b - m
    gac = gamma_real(c)
    finite = 0.0 + 0.0j
    t = 1.0 + 0.0j
    for n in range(m):
        finite += t
        if n < m - 1:
            t *= (a - m + n) * (b - m + n) / ((1.0 + n) * (1.0 - m + n)) * u
    coef_fin = gamma_real(m) * gac * rgamma_real(a) * rgamma_real(b)

    lnu = cmath.log(u)
    psi_n = -EULER_GAMMA
    psi_nm = digamma(float(m + 1))
    psi_a = digamma(a)
    psi_b = digamma(b)
    term = (1.0 + 0.0j) / math.factorial(m)
    total = 0.0 + 0.0j
    streak = 0
    n = 0
    while n < SERIES_CAP:
        contrib = term * (lnu - psi_n - psi_nm + psi_a + psi_b)
        total += contrib
        if abs(contrib) <= SERIES_RTOL * abs(total) and n >= 1:
            streak += 1
            if streak >= SERIES_STREAK:
                break
        else:
            streak = 0
        term *= (a + n) * (b + n) / ((1.0 + n) * (m + 1.0 + n)) * u
        psi_n += 1.0 / (1.0 + n)
        psi_nm += 1.0 / (m + 1.0 + n)
        psi_a += 1.0 / (a + n)
        psi_b += 1.0 / (b + n)
        n += 1
    else:
        raise EvaluationError(f"log-case expansion stalled at u={u}", point=u)
    sign = -1.0 if (m & 1) else 1.0
    coef_log = sign * gac * rgamma_real(a - m) * rgamma_real(b - m)
    return coef_fin * u ** (-m) * finite - coef_log * total


def _near_one(a, b, c, z: complex, strict_connection: bool = False) -> complex:
    """Evaluation through the expansion around z = 1 (argument 1-z)."""
    deg = _terminating_degree(a, b)
    if deg is not None:
        # Pfaff can hand us a terminating series even when the original one
        # does not terminate; the polynomial converges at any argument.
        value, _, _ = _gauss_series(a, b, c, z, cap=deg + 8)
        return value
    u = 1.0 - z
    delta = a + b - c
    m = round(delta)
    if abs(delta - m) <= INTEGER_EXCESS_TOL:
        if strict_connection:
            raise UnsupportedParams(
                f"connection expansion needs non-integer parameter excess, got a+b-c={delta}"
            )
        if m > 0:
            return _near_one_log_positive(a, b, m, u)
        if m == 0:
            return _near_one_log_zero(a, b, u)
        return _near_one_log_negative(a, b, -m, u)
    coef_b = gamma_real(c) * gamma_real(-delta) * rgamma_real(c - a) * rgamma_real(c - b)
    coef_a = gamma_real(c) * gamma_real(delta) * rgamma_real(a) * rgamma_real(b)
    s1 = 0.0 + 0.0j
    if coef_b != 0.0:
        s1, _, _ = _gauss_series(a, b, delta + 1.0, u)
    s2 = 0.0 + 0.0j
    if coef_a != 0.0:
        s2, _, _ = _gauss_series(c - a, c - b, 1.0 - delta, u)
        s2 *= u ** (-delta)
    return coef_b * s1 + coef_a * s2


def _pfaff_near_one(a, b, c, z: complex, strict_connection: bool = False) -> complex:
    """Pfaff map followed by the z = 1 expansion: covers the far field.

    The Pfaff variant is chosen so the transformed excess is <= 0, which the
    log routes can handle when it degenerates to an integer.
    """
    w = z / (z - 1.0)
    if a <= b:
        return (1.0 - z) ** (-a) * _near_one(a, c - b, c, w, strict_connection)
    return (1.0 - z) ** (-b) * _near_one(c - a, b, c, w, strict_connection)


# ---------------------------------------------------------------------------
# Taylor-step continuation of the hypergeometric ODE


def _ode_taylor_step(a, b, c, z0: complex, u: complex, du: complex, h: complex):
    """Advance (u, u') = (F, F') from z0 to z0+h via the ODE's Taylor recurrence."""
    p0 = z0 * (1.0 - z0)
    p1 = 1.0 - 2.0 * z0
    q0 = c - (a + b + 1.0) * z0
    q1 = -(a + b + 1.0)
    ab = a * b
    tk, tk1 = u, du
    y = u + du * h
    dy = du
    hk = h
    streak = 0
    for k in range(600):
        tk2 = -(((p1 * k + q0) * (k + 1)) * tk1 + ((q1 - (k - 1.0)) * k - ab) * tk) / (
            p0 * (k + 2) * (k + 1)
        )
        hk *= h
        contrib = tk2 * hk
        y += contrib
        dy += (k + 2) * tk2 * hk / h
        tk, tk1 = tk1, tk2
        if abs(contrib) <= 1e-18 * abs(y) and abs(tk2 * hk * h) <= 1e-18 * abs(y):
            streak += 1
            if streak >= 3:
                return y, dy
        else:
            streak = 0
    raise EvaluationError(f"Taylor step did not converge at z0={z0}, h={h}", point=z0)


def _continuation(a, b, c, z: complex) -> complex:
    """Continue the series solution from a seed point along a straight segment.

    The seed sits at +-i/2 on the side of z: a segment from there stays well
    clear of the singularity at 1 for every point this route serves, which
    keeps the solution from peaking mid-path (a peak washes out relative
    accuracy in the recessive part).  Purely real targets seed at +-1/2 on
    their own side instead.
    """
    if z.imag != 0.0:
        z0 = complex(0.0, math.copysign(0.5, z.imag))
    else:
        z0 = complex(math.copysign(0.5, z.real), 0.0)
    u, _, _ = _gauss_series(a, b, c, z0)
    du, _, _ = _gauss_series(a + 1.0, b + 1.0, c + 1.0, z0)
    du *= a * b / c
    # Larger parameters sharpen the singularity at 1, so shorten the steps
    # as the recurrence coefficients grow.
    factor = 0.34 / (1.0 + 0.02 * (abs(a) + abs(b)))
    for _ in range(3000):
        rem = z - z0
        radius = min(abs(z0), abs(z0 - 1.0))
        if radius < 1e-13:
            raise EvaluationError("continuation path pinched against a singularity", point=z)
        step = factor * radius
        dist = abs(rem)
        if dist <= step:
            y, _ = _ode_taylor_step(a, b, c, z0, u, du, rem)
            return y
        h = rem * (step / dist)
        u, du = _ode_taylor_step(a, b, c, z0, u, du, h)
        z0 += h
    raise EvaluationError(f"continuation required too many steps to reach z={z}", point=z)


# ---------------------------------------------------------------------------
# dispatch


def _eval_auto(a, b, c, z: complex) -> complex:
    if z == 0:
        return 1.0 + 0.0j
    deg = _terminating_degree(a, b)
    if deg is not None:
        value, _, _ = _gauss_series(a, b, c, z, cap=deg + 8)
        return value
    if abs(z) <= R_SERIES:
        value, _, _ = _gauss_series(a, b, c, z)
        return value
    if abs(z / (z - 1.0)) <= R_PFAFF:
        return _pfaff(a, b, c, z)
    u1 = abs(1.0 - z)
    if u1 <= R_NEAR_ONE:
        return _near_one(a, b, c, z)
    if u1 >= R_FAR:
        return _pfaff_near_one(a, b, c, z)
    return _continuation(a, b, c, z)


@lru_cache(maxsize=1 << 18)
def _eval_cached(a: float, b: float, c: float, z: complex) -> complex:
    return _eval_auto(a, b, c, z)


def hyp2f1_params(a, b, c, z) -> complex:
    """2F1(a,b;c;z) for raw real parameters at a slit-plane point."""
    if is_nonpositive_integer(c):
        raise PoleError(f"c={c} is a non-positive integer")
    z = require_slit_plane(z)
    return _eval_cached(float(a), float(b), float(c), z)


def clear_eval_cache() -> None:
    _eval_cached.cache_clear()


_STRATEGY_FUNCS = {
    Strategy.SERIES: lambda a, b, c, z: _gauss_series(a, b, c, z)[0],
    Strategy.PFAFF: _pfaff,
    Strategy.CONNECTION: lambda a, b, c, z: _near_one(a, b, c, z, strict_connection=True),
    Strategy.PFAFF_CONNECTION: lambda a, b, c, z: _pfaff_near_one(a, b, c, z, strict_connection=True),
    Strategy.CONTINUATION: _continuation,
}


def hyp2f1(p: ParamTriple, z, strategy=None) -> complex:
    """Analytic continuation of 2F1(a,b;c;z) on the slit plane.

    `strategy` forces one evaluation route (mostly useful for consistency
    tests); the default picks the region automatically.  Forcing the
    connection route with integer parameter excess raises UnsupportedParams.
    """
    z = _as_point(z)
    if strategy is None or strategy == Strategy.AUTO or strategy == "auto":
        return hyp2f1_params(p.a, p.b, p.c, z)
    strategy = Strategy(strategy)
    fn = _STRATEGY_FUNCS[strategy]
    return fn(float(p.a), float(p.b), float(p.c), z)


def hyp2f1_derivatives(p: ParamTriple, z, order: int = 0) -> complex:
    """d^order/dz^order of 2F1 via the parameter-shift identity (order 0, 1 or 2)."""
    z = _as_point(z)
    a, b, c = float(p.a), float(p.b), float(p.c)
    if order == 0:
        return hyp2f1_params(a, b, c, z)
    if order == 1:
        return a * b / c * hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z)
    if order == 2:
        scale = a * b / c * ((a + 1.0) * (b + 1.0) / (c + 1.0))
        return scale * hyp2f1_params(a + 2.0, b + 2.0, c + 2.0, z)
    raise ValueError(f"order must be 0, 1 or 2, got {order}")


# ---------------------------------------------------------------------------
# shifted maps and their pre-Schwarzian


def shifted_f(p: ParamTriple, z) -> complex:
    """f(z) = z * 2F1(a,b;c;z), normalized so f(0)=0 and f'(0)=1."""
    z = _as_point(z)
    if z == 0:
        return 0.0 + 0.0j
    return z * hyp2f1_params(p.a, p.b, p.c, z)


def shifted_g(p: ParamTriple, z) -> complex:
    """g(z) = z * 2F1(a,b;c;z^2); odd by construction."""
    z = complex(z)
    z2 = z * z
    if on_slit(z2):
        raise DomainError(f"z^2={z2} lies on the branch cut [1, +inf)")
    if z == 0:
        return 0.0 + 0.0j
    return z * hyp2f1_params(p.a, p.b, p.c, z2)


def shifted_f_jet(p: ParamTriple, z):
    """(f, f', f'') of the shifted map at z, via parameter shifts."""
    z = _as_point(z)
    a, b, c = float(p.a), float(p.b), float(p.c)
    F = hyp2f1_params(a, b, c, z)
    F1 = a * b / c * hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z)
    F2 = a * b / c * ((a + 1.0) * (b + 1.0) / (c + 1.0)) * hyp2f1_params(a + 2.0, b + 2.0, c + 2.0, z)
    f = z * F
    fp = F + z * F1
    fpp = 2.0 * F1 + z * F2
    return f, fp, fpp


def preschwarzian(p: ParamTriple, z, route: str = "direct") -> complex:
    """z f''(z)/f'(z) of the shifted map.

    route="direct" computes it from the derivative identities; route="eqW"
    uses the rational expression in h = 2F1(a+1,b;c;z)/2F1(a,b;c;z).  The two
    agree to ~1e-8 relative wherever both are well-conditioned.
    """
    z = _as_point(z)
    if z == 0:
        return 0.0 + 0.0j
    a, b, c = float(p.a), float(p.b), float(p.c)
    if route == "direct":
        _, fp, fpp = shifted_f_jet(p, z)
        scale = 1e-12 * (1.0 + abs(fp) + abs(z * fpp))
        if abs(fp) < max(scale, 1e-280):
            raise NearZeroDerivative("f'(z) numerically vanishes", point=z, value=fp)
        return z * fpp / fp
    if route == "eqW":
        F = hyp2f1_params(a, b, c, z)
        G = hyp2f1_params(a + 1.0, b, c, z)
        h = G / F
        one_minus = 1.0 - z
        first = (2.0 - c + (a + b - 1.0) * z) / one_minus
        second = (c - 2.0 + (1.0 - a) * (1.0 - b) * z) / (one_minus * (1.0 - a + a * h))
        return first + second
    raise ValueError(f"unknown route {route!r}")
