"""Sector domains, image containment checks, convexity order, boundary curves.

The image of the unit disk under the shifted map f lands in a fattened
symmetric sector whose opening is governed by the parameter excess
delta = a+b-c in (0,1); when f is additionally convex, the image fits the
optimal sector with apex B < 0 whose boundary rays are asymptotes of the
image boundary.  This module samples and checks those statements, computes
the order of convexity both in closed form (where the closed form applies)
and by boundary minimization, and exposes the remainder decomposition
F = A(1-z)^{-delta} + R with its sign-definite coefficient sequence.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError, HypothesisError, NearZeroDerivative
from .gammafn import gamma_real, rgamma_real
from .hyp2f1 import hyp2f1_params, preschwarzian, shifted_f, shifted_g, shifted_f_jet
from .params import ParamTriple
from .series import CoeffSeries

GOLDEN_FRAC = 0.6180339887498949   # fractional part of the golden ratio


# ---------------------------------------------------------------------------
# sector domains


def sector_distance(z: complex, phi: float, apex: float = 0.0) -> float:
    """Distance from z to the closed sector {|arg(w - apex)| <= phi}; 0 inside.

    Outside points project orthogonally onto the nearer boundary ray; when
    the projection parameter is negative the apex itself is the closest
    point.  Sectors here always have phi in (0, pi/2], symmetric about R.
    """
    w = complex(z) - apex
    if w == 0:
        return 0.0
    if abs(cmath.phase(w)) <= phi:
        return 0.0
    best = abs(w)
    for s in (1.0, -1.0):
        ray = cmath.exp(1j * s * phi)
        t = (w * ray.conjugate()).real
        if t > 0.0:
            best = min(best, abs(w - t * ray))
    return best


def sector_boundary_distance(z: complex, phi: float, apex: float = 0.0) -> float:
    """Distance from z to the sector boundary rays (works inside and outside)."""
    w = complex(z) - apex
    best = abs(w)
    for s in (1.0, -1.0):
        ray = cmath.exp(1j * s * phi)
        t = (w * ray.conjugate()).real
        d = abs(w - t * ray) if t > 0.0 else abs(w)
        best = min(best, d)
    return best


@dataclass(frozen=True)
class SectorSpec:
    """A sector domain: opening pi*delta, optional fattening eps, optional apex.

    kind: "S" (symmetric about R+), "S_star" (union with its negative),
    "S_eps"/"S_star_eps" (eps-neighbourhoods), "apex_sector"
    ({|arg(z-apex)| < pi*delta/2}).
    """

    kind: str
    delta: float
    eps: float = 0.0
    apex: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise DomainError(f"sector opening parameter must lie in (0,1), got {self.delta}")
        if self.kind not in ("S", "S_star", "S_eps", "S_star_eps", "apex_sector"):
            raise DomainError(f"unknown sector kind {self.kind!r}")
        if self.kind == "apex_sector" and self.eps:
            raise DomainError("apex sectors are not fattened")

    @property
    def phi(self) -> float:
        return math.pi * self.delta / 2.0

    def distance(self, z: complex) -> float:
        """Distance to the un-fattened core sector (min over +-z for starred kinds)."""
        if self.kind in ("S_star", "S_star_eps"):
            return min(
                sector_distance(z, self.phi, 0.0),
                sector_distance(-complex(z), self.phi, 0.0),
            )
        apex = self.apex if self.kind == "apex_sector" else 0.0
        return sector_distance(z, self.phi, apex)

    def contains(self, z: complex):
        """(membership, distance-to-core); fattened kinds admit dist < eps."""
        d = self.distance(z)
        if self.kind in ("S_eps", "S_star_eps"):
            return d < self.eps, d
        return d == 0.0, d


def sector_margin(p: ParamTriple) -> float:
    """The fattening margin eps = |B| + 2^{1-delta} A of the containment theorem.

    A and B are the gamma-quotient constants of the remainder decomposition.
    When c equals a or b the B term is dropped and the convention eps =
    2^{1-delta} applies (A then equals 1).
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    delta = a + b - c
    if not (0.0 < delta < 1.0):
        raise DomainError(f"margin needs parameter excess in (0,1), got {delta}")
    if c == a or c == b:
        return 2.0 ** (1.0 - delta)
    A, B = decomposition_constants(p)
    return abs(B) + 2.0 ** (1.0 - delta) * A


def decomposition_constants(p: ParamTriple):
    """(A, B) with F = A(1-z)^{-delta} + R and R(1) = B = sum of R's coefficients.

    B vanishes when c equals a or b (the reciprocal gamma kills it); the
    remainder is then identically zero.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    delta = a + b - c
    if not (0.0 < delta < 1.0):
        raise DomainError(f"decomposition needs parameter excess in (0,1), got {delta}")
    A = gamma_real(c) * gamma_real(delta) * rgamma_real(a) * rgamma_real(b)
    B = gamma_real(c) * gamma_real(-delta) * rgamma_real(c - a) * rgamma_real(c - b)
    return A, B


# ---------------------------------------------------------------------------
# sampling


def disk_samples(n: int, seed: int = 0, ring_fraction: float = 0.2,
                 ring_radius: float = 1.0 - 1e-4) -> np.ndarray:
    """n low-discrepancy points of the unit disk, a ring share at ring_radius.

    Golden-angle spiral for the interior (area-uniform), evenly rotated ring
    points for the boundary layer.  The seed only rotates the pattern, so
    identical (n, seed) always produce identical samples.
    """
    n_ring = int(round(n * ring_fraction))
    n_int = n - n_ring
    offset = (seed * GOLDEN_FRAC) % 1.0
    pts = np.empty(n, dtype=complex)
    for i in range(n_int):
        r = math.sqrt((i + 0.5) / n_int)
        theta = 2.0 * math.pi * ((i * GOLDEN_FRAC + offset) % 1.0)
        pts[i] = complex(r * math.cos(theta), r * math.sin(theta))
    for j in range(n_ring):
        theta = 2.0 * math.pi * ((j + 0.5) / n_ring + offset)
        pts[n_int + j] = complex(ring_radius * math.cos(theta), ring_radius * math.sin(theta))
    return pts


# ---------------------------------------------------------------------------
# fattened-sector containment of f and g


@dataclass
class ContainmentReport:
    params: tuple
    delta: float
    eps: float
    n_samples: int
    seed: int
    max_dist_f: float
    max_dist_g: float
    violations: list = field(default_factory=list)   # (map, z, image, dist)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "delta": self.delta,
            "eps": self.eps,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "max_dist_f": self.max_dist_f,
            "max_dist_g": self.max_dist_g,
            "n_violations": len(self.violations),
            "violations": [
                {"map": m, "z": [z.real, z.imag], "image": [w.real, w.imag], "dist": d}
                for m, z, w, d in self.violations[:8]
            ],
            "passed": self.passed,
        }


def check_sector_containment(p: ParamTriple, n_samples: int = 10_000, seed: int = 0) -> ContainmentReport:
    """Sample the disk and check f into S_eps and g into S*_eps.

    Distances carry a numeric slack of 1e-8*(1+|image|) before counting as a
    violation; the maxima are reported as tightness metrics.
    """
    a, b = float(p.a), float(p.b)
    if a > b:
        raise HypothesisError("containment check expects a <= b")
    delta = float(p.delta)
    eps = sector_margin(p)
    phi = math.pi * delta / 2.0
    pts = disk_samples(n_samples, seed=seed)
    max_f = 0.0
    max_g = 0.0
    violations = []
    for z in pts:
        w = shifted_f(p, z)
        d = sector_distance(w, phi)
        max_f = max(max_f, d)
        if d >= eps + 1e-8 * (1.0 + abs(w)):
            violations.append(("f", z, w, d))
        wg = shifted_g(p, z)
        dg = min(sector_distance(wg, phi), sector_distance(-wg, phi))
        max_g = max(max_g, dg)
        if dg >= eps + 1e-8 * (1.0 + abs(wg)):
            violations.append(("g", z, wg, dg))
    return ContainmentReport(
        params=(float(p.a), float(p.b), float(p.c)),
        delta=delta,
        eps=eps,
        n_samples=n_samples,
        seed=seed,
        max_dist_f=max_f,
        max_dist_g=max_g,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# order of convexity


def kappa_closed_form(p: ParamTriple) -> float:
    """Closed-form order of convexity, valid for 0<a<1<b<=c<min(a+b, 1+a+b-ab)."""
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a < 1 < b <= c < min(a + b, 1 + a + b - a * b)):
        raise HypothesisError(
            f"closed form needs 0<a<1<b<=c<min(a+b, 1+a+b-ab), got {(a, b, c)}"
        )
    return (c * c - a * a - b * b + 3.0 * (a + b - c) - 2.0) / (2.0 * (a + b - c))


def kappa_in_closed_form_range(p: ParamTriple) -> bool:
    a, b, c = float(p.a), float(p.b), float(p.c)
    return 0 < a < 1 < b <= c < min(a + b, 1 + a + b - a * b)


@dataclass
class ConvexityReport:
    """Order-of-convexity estimate from circle scans plus extrapolation."""

    params: tuple
    kappa_numeric: float
    kappa_closed: Optional[float]
    argmin: tuple                     # (r, theta) of the smallest sampled value
    radii_trace: list                 # (r, min value, argmin theta)
    guard_trace: list                 # interior guard circles
    consistent: Optional[bool]
    tolerance: float
    derivative_failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "kappa_numeric": self.kappa_numeric,
            "kappa_closed": self.kappa_closed,
            "argmin": list(self.argmin),
            "radii_trace": [[r, v, t] for r, v, t in self.radii_trace],
            "guard_trace": [[r, v, t] for r, v, t in self.guard_trace],
            "consistent": self.consistent,
            "tolerance": self.tolerance,
            "n_derivative_failures": len(self.derivative_failures),
        }


def _theta_grid(n_theta: int, r: float) -> np.ndarray:
    """0 plus a geometric sweep to pi: resolves the boundary layer near z=1."""
    t_min = max(1e-7, (1.0 - r) / 30.0)
    grid = np.geomspace(t_min, math.pi, n_theta - 1)
    return np.concatenate(([0.0], grid))


def _circle_min(p: ParamTriple, r: float, n_theta: int, failures: list):
    best = math.inf
    best_theta = 0.0
    for theta in _theta_grid(n_theta, r):
        z = complex(r * math.cos(theta), r * math.sin(theta))
        try:
            v = 1.0 + preschwarzian(p, z)
        except NearZeroDerivative as exc:
            failures.append((r, theta, str(exc)))
            continue
        if v.real < best:
            best = v.real
            best_theta = theta
    return best, best_theta


def _circle_point(theta: float) -> complex:
    # 1 - cos(theta) through 2 sin^2(theta/2): keeps 1-z accurate near theta=0
    s = math.sin(theta / 2.0)
    return complex(1.0 - 2.0 * s * s, math.sin(theta))


def _boundary_value(p: ParamTriple, theta: float, failures: list):
    try:
        return 1.0 + preschwarzian(p, _circle_point(theta)).real
    except NearZeroDerivative as exc:
        failures.append((1.0, theta, str(exc)))
        return math.inf


def _tail_extrapolate(p: ParamTriple, failures: list, theta_lo: float = 1e-6,
                      decades: int = 5):
    """Limit of the boundary values as theta -> 0 on the unit circle.

    For parameter excess delta in (0,1) the approach is kappa + C theta^delta
    + D theta^{2 delta} + ..., so a least-squares fit with the known exponent
    recovers the limit far faster than any generic extrapolation.  Outside
    that range the boundary value converges plainly and Aitken is enough.
    Below theta ~ 1e-6 the circle point itself degenerates in doubles
    (1 - cos(theta) drops under the ulp of 1), so the grid never goes finer.
    """
    thetas = [theta_lo * 10.0 ** k for k in range(decades)]
    vals = [_boundary_value(p, t, failures) for t in thetas]
    if any(not math.isfinite(v) for v in vals):
        return min(vals)
    delta = float(p.delta)
    if 0.0 < delta < 1.0:
        # The finite limit forces the correction's phase, leaving one real
        # amplitude: v = kappa + C*(2 sin(t/2))^(delta-1) * sin((1-delta)t/2).
        # A two-parameter fit on the decade points is well conditioned even
        # when delta is small and generic extrapolation stalls.
        th = np.array(thetas)
        basis = (2.0 * np.sin(th / 2.0)) ** (delta - 1.0) * np.sin((1.0 - delta) * th / 2.0)
        design = np.stack([np.ones_like(th), basis], axis=1)
        sol, *_ = np.linalg.lstsq(design, np.array(vals), rcond=None)
        return float(sol[0])
    # generic: Aitken on the three smallest angles
    v1, v2, v3 = vals[2], vals[1], vals[0]
    dd = v3 - 2.0 * v2 + v1
    if abs(dd) > 1e-15:
        extr = v3 - (v3 - v2) ** 2 / dd
        if math.isfinite(extr) and abs(extr - v3) <= 10.0 * abs(v3 - v2) + 1e-12:
            return extr
    return v3


def kappa_numeric(p: ParamTriple, radii=None, n_theta: int = 4096,
                  guard_radii=(0.3, 0.6), tol_vs_closed: float = 1e-3,
                  theta_lo: float = 1e-6) -> ConvexityReport:
    """Order of convexity from unit-circle boundary values plus a tail fit.

    Re(1 + z f''/f') is harmonic wherever f' is zero-free, so its infimum
    over the disk is approached on the boundary circle; the circle minus the
    point 1 stays inside the slit plane and can be sampled directly.  The
    infimum is the smaller of the sampled interior minimum and the theta->0
    limit, the latter extrapolated with the known boundary-layer exponent
    (the parameter excess).  Inner circles are scanned as guards and as the
    monotonicity trace in the report.
    """
    radii = list(radii) if radii is not None else [0.9, 0.99, 0.999, 0.9999]
    failures: list = []
    guard_trace = []
    for r in guard_radii:
        v, t = _circle_min(p, r, max(n_theta // 8, 64), failures)
        guard_trace.append((r, v, t))
    trace = []
    for r in radii:
        v, t = _circle_min(p, r, max(n_theta // 4, 128), failures)
        trace.append((r, v, t))
    # boundary scan on the unit circle itself
    best = math.inf
    best_theta = math.pi
    for theta in np.geomspace(theta_lo, math.pi, n_theta):
        v = _boundary_value(p, theta, failures)
        if v < best:
            best = v
            best_theta = theta
    tail = _tail_extrapolate(p, failures, theta_lo=theta_lo)
    extrapolated = min(best, tail)
    closed = kappa_closed_form(p) if kappa_in_closed_form_range(p) else None
    consistent = None
    if closed is not None:
        consistent = abs(extrapolated - closed) <= tol_vs_closed
    return ConvexityReport(
        params=(float(p.a), float(p.b), float(p.c)),
        kappa_numeric=extrapolated,
        kappa_closed=closed,
        argmin=(1.0, best_theta if best <= tail else 0.0),
        radii_trace=trace,
        guard_trace=guard_trace,
        consistent=consistent,
        tolerance=tol_vs_closed,
        derivative_failures=failures,
    )


# ---------------------------------------------------------------------------
# boundary curve and the apex sector


@dataclass
class CurveSample:
    """The image boundary curve and its decomposition into spike and remainder.

    gamma  = f(z) on the circle of the stated radius,
    gamma1 = A z (1-z)^{-delta}   (the unbounded spike),
    gamma2 = z R(z) = gamma - gamma1 (bounded, -> B as theta -> 0).
    """

    theta: np.ndarray
    gamma: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    radius: float
    A: float
    B: float
    delta: float

    @property
    def x(self):
        return self.gamma.real

    @property
    def y(self):
        return self.gamma.imag

    @property
    def x1(self):
        return self.gamma1.real

    @property
    def y1(self):
        return self.gamma1.imag

    @property
    def x2(self):
        return self.gamma2.real

    @property
    def y2(self):
        return self.gamma2.imag


def boundary_curve(p: ParamTriple, n_theta: int = 512, theta_min: float = 1e-6,
                   radius: float = 1.0) -> CurveSample:
    """Curves on theta in (0, pi], geometric grid, on the circle of that radius.

    The default samples the unit circle itself: every point with theta > 0
    stays inside the slit plane and the z = 1 expansion routes stay accurate
    there, which the asymptote checks need (at any radius r < 1 the curve
    flattens to the finite point f(r) once theta falls below 1-r, and the
    asymptote approach stalls).  The curve blows up like theta^{-delta} near
    0; the geometric grid resolves that down to theta_min >= 1e-6, under
    which the circle point itself degenerates in double precision.
    """
    delta = float(p.delta)
    if not (0.0 < delta < 1.0):
        raise DomainError(f"boundary curve needs parameter excess in (0,1), got {delta}")
    A, B = decomposition_constants(p)
    theta_min = max(theta_min, 1e-6)
    thetas = np.geomspace(theta_min, math.pi, n_theta)
    gamma = np.empty(n_theta, dtype=complex)
    gamma1 = np.empty(n_theta, dtype=complex)
    for i, t in enumerate(thetas):
        z = _circle_point(t) if radius == 1.0 else complex(radius * math.cos(t), radius * math.sin(t))
        gamma[i] = shifted_f(p, z)
        gamma1[i] = A * z * (1.0 - z) ** (-delta)
    gamma2 = gamma - gamma1
    return CurveSample(theta=thetas, gamma=gamma, gamma1=gamma1, gamma2=gamma2,
                       radius=radius, A=A, B=B, delta=delta)


@dataclass
class ApexSectorReport:
    params: tuple
    delta: float
    B: float
    apex_negative: bool
    kappa_used: float
    n_samples: int
    seed: int
    violations: list
    min_boundary_dist: float          # tightness: distance of images to the rays
    asym_residuals: list              # (theta, |y - tan(phi) (x - B)|)
    residual_monotone_from: float     # largest theta below which residuals decrease

    @property
    def passed(self) -> bool:
        return self.apex_negative and not self.violations

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "delta": self.delta,
            "B": self.B,
            "apex_negative": self.apex_negative,
            "kappa_used": self.kappa_used,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "n_violations": len(self.violations),
            "min_boundary_dist": self.min_boundary_dist,
            "asym_residuals": [[t, rv] for t, rv in self.asym_residuals],
            "residual_monotone_from": self.residual_monotone_from,
            "passed": self.passed,
        }


def check_apex_sector(p: ParamTriple, n_samples: int = 10_000, seed: int = 0,
                      n_theta: int = 512, kappa_floor: float = -1e-6) -> ApexSectorReport:
    """Check the optimal-sector statement for a convex shifted map.

    Requires kappa >= 0 (closed form when available, else the numeric
    estimate above kappa_floor).  Asserts B < 0, containment of image
    samples in {|arg(z-B)| < pi*delta/2}, and the monotone approach of the
    boundary curve to the asymptote y = tan(phi)(x - B).
    """
    delta = float(p.delta)
    if not (0.0 < delta < 1.0):
        raise DomainError(f"apex sector needs parameter excess in (0,1), got {delta}")
    if kappa_in_closed_form_range(p):
        kappa = kappa_closed_form(p)
    else:
        kappa = kappa_numeric(p, n_theta=1024).kappa_numeric
    if kappa < kappa_floor:
        raise HypothesisError(f"apex sector applies to convex maps only; kappa={kappa}")
    _, B = decomposition_constants(p)
    phi = math.pi * delta / 2.0
    pts = disk_samples(n_samples, seed=seed)
    violations = []
    min_boundary = math.inf
    for z in pts:
        w = shifted_f(p, z)
        d = sector_distance(w, phi, apex=B)
        if d > 1e-8 * (1.0 + abs(w)):
            violations.append((z, w, d))
        min_boundary = min(min_boundary, sector_boundary_distance(w, phi, apex=B))
    curve = boundary_curve(p, n_theta=n_theta)
    tanphi = math.tan(phi)
    residuals = np.abs(curve.y - tanphi * (curve.x - B))
    # largest theta below which the residual decreases monotonically toward 0
    monotone_from = curve.theta[0]
    for i in range(len(residuals) - 1, 0, -1):
        if residuals[i] <= residuals[i - 1]:
            break
        monotone_from = curve.theta[i]
    keep = [0, len(curve.theta) // 2, len(curve.theta) - 1]
    asym = [(float(curve.theta[i]), float(residuals[i])) for i in keep]
    return ApexSectorReport(
        params=(float(p.a), float(p.b), float(p.c)),
        delta=delta,
        B=B,
        apex_negative=B < 0.0,
        kappa_used=kappa,
        n_samples=n_samples,
        seed=seed,
        violations=violations,
        min_boundary_dist=min_boundary,
        asym_residuals=asym,
        residual_monotone_from=float(monotone_from),
    )


# ---------------------------------------------------------------------------
# remainder coefficients


@dataclass
class RemainderSeries:
    """sigma_n with R(z) = F(z) - A(1-z)^{-delta} = sum sigma_n z^n.

    sigma_n = (delta)_n (Q_n - A) / n! with Q_n the rising-factorial quotient;
    Q_n is strictly monotone with limit A, so every sigma_n has the sign of
    (a-c)(c-b) and the partial sums S_N approach B like N^{delta-1}.
    sign_class: "+", "-", or "0" (c equal to a or b collapses R to 0).
    The sign is certified by exact rational monotonicity of Q_n, not by the
    float values of sigma_n (A is a gamma quotient, not rational).
    """

    sigma: CoeffSeries
    Q: CoeffSeries
    A: float
    B: float
    partial_sums: np.ndarray
    sign_class: str
    q_monotone_exact: bool


def remainder_series(p: ParamTriple, N: int = 200, partial_to: int = 0) -> RemainderSeries:
    """sigma_0..sigma_N plus partial sums (optionally extended to partial_to)."""
    a, b, c = float(p.a), float(p.b), float(p.c)
    if a > b:
        raise HypothesisError("remainder series expects a <= b")
    delta = a + b - c
    if not (0.0 < delta < 1.0):
        raise DomainError(f"remainder series needs parameter excess in (0,1), got {delta}")
    A, B = decomposition_constants(p)
    qs = [1.0]
    sigmas = []
    pre = 1.0     # (delta)_n / n!
    q = 1.0
    total = 0.0
    n_total = max(N, partial_to)
    partials = np.empty(n_total + 1)
    for n in range(n_total + 1):
        sigma_n = pre * (q - A)
        if n <= N:
            sigmas.append(sigma_n)
        total += sigma_n
        partials[n] = total
        q *= (a + n) * (b + n) / ((c + n) * (delta + n))
        if n < N:
            qs.append(q)
        pre *= (delta + n) / (1.0 + n)
    sign_prod = (a - c) * (b - c)
    if sign_prod > 0:
        sign_class = "-"      # Q_n increasing, Q_n < A, sigma_n < 0
    elif sign_prod < 0:
        sign_class = "+"      # a < c < b: Q_n decreasing toward A
    else:
        sign_class = "0"
    # exact monotonicity of Q_n via the rational ratio identity
    fa, fb, fc = Fraction(p.a), Fraction(p.b), Fraction(p.c)
    fdelta = fa + fb - fc
    monotone = True
    for n in range(min(N, 50)):
        ratio_minus_1 = (fa - fc) * (fb - fc) / ((fc + n) * (fdelta + n))
        if sign_prod > 0 and ratio_minus_1 <= 0:
            monotone = False
        if sign_prod < 0 and ratio_minus_1 >= 0:
            monotone = False
    return RemainderSeries(
        sigma=CoeffSeries(sigmas, N, "float", label="remainder coefficients"),
        Q=CoeffSeries(qs, N, "float", label="rising-factorial quotient"),
        A=A,
        B=B,
        partial_sums=partials,
        sign_class=sign_class,
        q_monotone_exact=monotone,
    )
