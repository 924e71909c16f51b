"""Numeric membership checks for the moment class and the certification engine.

The moment class consists of analytic functions on the slit plane with value
1 at the origin that are averages of t -> 1/(1-tz) over a probability measure
on [0,1]; equivalently their Taylor coefficients form a totally monotone
sequence.  Membership of 1 + z f''/(2 f') characterizes universal convexity
of the shifted map f, so the certifier combines three independent pieces of
evidence: a closed-form parameter-range certificate, an exact coefficient
falsifier, and desk-scale numeric consistency checks (the four-point boundary
criterion of Liu and Pego plus forward-difference scans).

A finite grid can only ever report "consistent", never "proved"; only exact
witnesses and the closed-form parameter ranges are conclusive, and the
verdict ordering reflects that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import DivisionByZero, EvaluationError, HypothesisError, DegenerateError
from .hyp2f1 import hyp2f1_params, shifted_f_jet
from .params import ParamTriple
from .series import (
    DEFAULT_DEPTH,
    DEFAULT_DIAG,
    DEFAULT_MAX_K,
    DeltaTable,
    ScreenResult,
    delta_table,
    necessary_conditions,
    preschwarzian_series,
)

PARAM_SLACK = 1e-12   # absolute slack on parameter-range inequalities (float drift)


@dataclass(frozen=True)
class AnalyticHandle:
    """A labelled, deterministic evaluator on the slit plane."""

    label: str
    fn: Callable[[complex], complex]

    def __call__(self, z: complex) -> complex:
        return self.fn(z)


def hyp_handles(p: ParamTriple) -> dict:
    """The base function F, its parameter shifts G, H and their ratios."""
    a, b, c = float(p.a), float(p.b), float(p.c)

    def F(z):
        return hyp2f1_params(a, b, c, z)

    def G(z):
        return hyp2f1_params(a + 1.0, b, c, z)

    def H(z):
        return hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z)

    return {
        "F": AnalyticHandle("F", F),
        "G": AnalyticHandle("G", G),
        "H": AnalyticHandle("H", H),
        "h": AnalyticHandle("h=G/F", lambda z: G(z) / F(z)),
        "w": AnalyticHandle("w=H/F", lambda z: H(z) / F(z)),
        "w1": AnalyticHandle("w1=H/G", lambda z: H(z) / G(z)),
    }


def half_profile_handle(p: ParamTriple) -> AnalyticHandle:
    """1 + z f''/(2 f') of the shifted map; the certification target."""

    def fn(z):
        if z == 0:
            return 1.0 + 0.0j
        _, fp, fpp = shifted_f_jet(p, z)
        return 1.0 + z * fpp / (2.0 * fp)

    return AnalyticHandle("1+zf''/(2f')", fn)


def full_profile_handle(p: ParamTriple) -> AnalyticHandle:
    """Psi = 1 + z f''/f' of the shifted map."""

    def fn(z):
        if z == 0:
            return 1.0 + 0.0j
        _, fp, fpp = shifted_f_jet(p, z)
        return 1.0 + z * fpp / fp

    return AnalyticHandle("1+zf''/f'", fn)


def reciprocal_transform(handle: AnalyticHandle) -> AnalyticHandle:
    """z -> 1/((1-z) * handle(z)); preserves moment-class membership."""

    def fn(z):
        den = (1.0 - z) * handle(z)
        if den == 0:
            raise DivisionByZero(f"denominator of 1/((1-z)*{handle.label}) vanished", point=z)
        return 1.0 / den

    return AnalyticHandle(f"1/((1-z)*({handle.label}))", fn)


# ---------------------------------------------------------------------------
# auxiliary M constructions


def _check_low_c_hypotheses(p: ParamTriple):
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b + PARAM_SLACK and b <= c + PARAM_SLACK and a <= 1 + PARAM_SLACK):
        raise HypothesisError(f"low-c construction needs 0<a<=b<=c and a<=1, got {(a, b, c)}")
    lhs = (2.0 - c) * (c + a * b - a - b - 1.0)
    if lhs < -PARAM_SLACK:
        raise HypothesisError(f"sign condition (2-c)(c+ab-a-b-1) >= 0 fails: {lhs}")


def m_function_low_c(p: ParamTriple, z) -> complex:
    """M(z) built from w = H/F; valid when (2-c)(c+ab-a-b-1) >= 0 and a <= 1.

    Normalized so M(0) = 1; with a = 1 the construction degenerates (the
    shifted map then has the elementary derivative (1-z)^{-b}) and callers
    must branch before getting here.
    """
    _check_low_c_hypotheses(p)
    a, b, c = float(p.a), float(p.b), float(p.c)
    if (1.0 - a) * (1.0 - b) == 0.0:
        raise DegenerateError("low-c construction degenerates when a=1 or b=1")
    z = complex(z)
    tau = a * b / c
    w = hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a, b, c, z)
    num = (1.0 - a - b + 2.0 * tau) * (1.0 + tau * z * w)
    den = (1.0 - a) * (1.0 - b) + (2.0 - c) * tau * w
    if den == 0:
        raise DivisionByZero("low-c denominator vanished", point=z)
    return num / den


def _check_high_c_hypotheses(p: ParamTriple):
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b + PARAM_SLACK and b <= 1 + PARAM_SLACK and c >= 2 - PARAM_SLACK):
        raise HypothesisError(f"high-c construction needs 0<a<=b<=1 and c>=2, got {(a, b, c)}")


def m_function_high_c(p: ParamTriple, z) -> complex:
    """M = M1/M2 built from w1 = H/G; valid for 0<a<=b<=1 and c>=2."""
    _check_high_c_hypotheses(p)
    a, b, c = float(p.a), float(p.b), float(p.c)
    z = complex(z)
    sigma = (a - 1.0) * b / c
    sigma_p = (c - a - 1.0) * b / c
    w1 = hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a + 1.0, b, c, z)
    m1 = 1.0 + sigma * z * w1
    m2 = 1.0 + (b - 1.0) * z - sigma_p * z * w1
    if m2 == 0:
        raise DivisionByZero("high-c denominator M2 vanished", point=z)
    return m1 / m2


def m_high_c_m2(p: ParamTriple, z) -> complex:
    """The denominator factor M2 alone (its one-sided limit at 1 is pinned)."""
    _check_high_c_hypotheses(p)
    a, b, c = float(p.a), float(p.b), float(p.c)
    z = complex(z)
    sigma_p = (c - a - 1.0) * b / c
    w1 = hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a + 1.0, b, c, z)
    return 1.0 + (b - 1.0) * z - sigma_p * z * w1


def m_low_handle(p: ParamTriple) -> AnalyticHandle:
    _check_low_c_hypotheses(p)
    return AnalyticHandle("M (low c)", lambda z: m_function_low_c(p, z))


def m_high_handle(p: ParamTriple) -> AnalyticHandle:
    _check_high_c_hypotheses(p)
    return AnalyticHandle("M (high c)", lambda z: m_function_high_c(p, z))


def phi1_handle(p: ParamTriple) -> AnalyticHandle:
    """Phi_1 = 1/((1-z) M) for the low-c construction."""
    return reciprocal_transform(m_low_handle(p))


def phi2_handle(p: ParamTriple) -> AnalyticHandle:
    """Phi_2 = 1/((1-z) M) for the high-c construction."""
    return reciprocal_transform(m_high_handle(p))


def psi_via_low_c(p: ParamTriple) -> AnalyticHandle:
    """Psi rebuilt from Phi_1: 1 + (a+b-1)z/(1-z) + (1-a-b+2*tau) z Phi_1(z)."""
    a, b = float(p.a), float(p.b)
    tau = float(p.tau)
    phi1 = phi1_handle(p)

    def fn(z):
        return 1.0 + (a + b - 1.0) * z / (1.0 - z) + (1.0 - a - b + 2.0 * tau) * z * phi1(z)

    return AnalyticHandle("Psi via Phi1", fn)


def psi_via_high_c(p: ParamTriple) -> AnalyticHandle:
    """Psi rebuilt from Phi_2: 1 - a + a Phi_2(z)."""
    a = float(p.a)
    phi2 = phi2_handle(p)
    return AnalyticHandle("Psi via Phi2", lambda z: 1.0 - a + a * phi2(z))


# ---------------------------------------------------------------------------
# four-condition boundary criterion on finite grids


@dataclass(frozen=True)
class GridSpec:
    """Sampling plan for the boundary criterion.

    Real ray: log-spaced points of (-x_span, x_pos_max]; upper half plane:
    n_radial x n_angular points with log-spaced radii in [r_min, r_max];
    tail: the ray points used for the x -> +infinity behaviour of F(-x).
    """

    n_neg: int = 32
    x_span: float = 1e6
    x_neg_min: float = 1e-3
    n_pos: int = 16
    x_pos_max: float = 0.999
    n_radial: int = 64
    n_angular: int = 64
    r_min: float = 1e-3
    r_max: float = 1e3
    tail_xs: tuple = (1e3, 1e4, 1e5, 1e6)

    def real_points(self) -> list:
        pts = []
        for i in range(self.n_neg):
            t = math.log10(self.x_neg_min) + (math.log10(self.x_span) - math.log10(self.x_neg_min)) * i / (self.n_neg - 1)
            pts.append(-(10.0 ** t))
        pts.append(0.0)
        for i in range(self.n_pos):
            t = 3.0 * (i + 1) / self.n_pos     # 1 - 10^-t sweeps up to x_pos_max
            pts.append(min(1.0 - 10.0 ** (-t), self.x_pos_max))
        return sorted(set(pts))

    def uhp_points(self) -> list:
        pts = []
        lo, hi = math.log10(self.r_min), math.log10(self.r_max)
        for i in range(self.n_radial):
            r = 10.0 ** (lo + (hi - lo) * i / (self.n_radial - 1))
            for j in range(self.n_angular):
                theta = math.pi * (j + 0.5) / self.n_angular
                pts.append(complex(r * math.cos(theta), r * math.sin(theta)))
        return pts

    def to_dict(self) -> dict:
        return {
            "n_neg": self.n_neg, "x_span": self.x_span, "x_neg_min": self.x_neg_min,
            "n_pos": self.n_pos, "x_pos_max": self.x_pos_max,
            "n_radial": self.n_radial, "n_angular": self.n_angular,
            "r_min": self.r_min, "r_max": self.r_max, "tail_xs": list(self.tail_xs),
        }


FAST_GRID = GridSpec(n_neg=12, n_pos=6, n_radial=16, n_angular=16)

REAL_IMAG_TOL = 1e-9     # condition (ii): |Im F(x)| per unit scale
UHP_IMAG_TOL = 1e-9      # condition (iii): Im F >= -tol * scale
ORIGIN_TOL = 1e-12       # condition (i)


@dataclass
class MomentClassReport:
    """Outcome of the four-condition check on the configured grids."""

    label: str
    cond_i: bool
    cond_ii: dict
    cond_iii: dict
    cond_iv: dict
    grid: GridSpec
    verdict: str                       # "consistent" | "violated"
    witness: Optional[tuple] = None    # (condition, point, value)

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "cond_i": self.cond_i,
            "cond_ii": self.cond_ii,
            "cond_iii": self.cond_iii,
            "cond_iv": self.cond_iv,
            "verdict": self.verdict,
            "witness": _witness_dict(self.witness),
            "grid": self.grid.to_dict(),
        }


def _witness_dict(w):
    if w is None:
        return None
    cond, point, value = w
    return {"condition": cond, "point": [point.real, point.imag] if isinstance(point, complex) else point,
            "value": [value.real, value.imag] if isinstance(value, complex) else value}


def check_liu_pego(handle: AnalyticHandle, grid: GridSpec | None = None,
                   expected_tail_limit: float | None = None) -> MomentClassReport:
    """Check the four boundary conditions for moment-class membership on a grid.

    (i) value 1 at the origin, (ii) real on the real ray x < 1 (plus positive
    and non-decreasing there, which the integral form forces), (iii)
    nonnegative imaginary part on the upper half plane, (iv) nonnegative
    limit along the negative axis.  A finite sample cannot prove membership,
    so the best verdict is "consistent"; any violation carries its witness.
    """
    grid = grid or GridSpec()
    witness = None

    def evaluate(z):
        try:
            return handle(complex(z))
        except Exception as exc:                     # attach the grid point
            raise EvaluationError(f"{handle.label} failed at {z}: {exc}", point=z) from exc

    v0 = evaluate(0.0)
    cond_i = abs(v0 - 1.0) <= ORIGIN_TOL

    xs = grid.real_points()
    vals = [evaluate(x) for x in xs]
    scale_real = max(1.0, max(abs(v) for v in vals))
    max_imag = max(abs(v.imag) for v in vals)
    reals = [v.real for v in vals]
    positive = all(r > 0.0 for r in reals)
    nondecreasing = all(reals[i + 1] >= reals[i] - 1e-9 * scale_real for i in range(len(reals) - 1))
    cond_ii = {
        "max_abs_imag": max_imag,
        "real_within_tol": max_imag <= REAL_IMAG_TOL * scale_real,
        "positive": positive,
        "nondecreasing": nondecreasing,
        "scale": scale_real,
    }
    if not cond_ii["real_within_tol"]:
        i = max(range(len(vals)), key=lambda i: abs(vals[i].imag))
        witness = witness or ("ii", complex(xs[i]), vals[i])
    if not (positive and nondecreasing):
        i = next((i for i, r in enumerate(reals) if r <= 0.0), 0)
        witness = witness or ("ii-monotone", complex(xs[i]), vals[i])

    min_imag = math.inf
    argmin = None
    scale_uhp = 1.0
    for z in grid.uhp_points():
        v = evaluate(z)
        scale_uhp = max(scale_uhp, abs(v))
        if v.imag < min_imag:
            min_imag = v.imag
            argmin = (z, v)
    cond_iii = {
        "min_imag": min_imag,
        "scale": scale_uhp,
        "ok": min_imag >= -UHP_IMAG_TOL * scale_uhp,
        "argmin": [argmin[0].real, argmin[0].imag],
    }
    if not cond_iii["ok"]:
        witness = witness or ("iii", argmin[0], argmin[1])

    tail_vals = [evaluate(-x).real for x in grid.tail_xs]
    final = tail_vals[-1]
    nonincreasing = all(tail_vals[i + 1] <= tail_vals[i] + 1e-9 * scale_real for i in range(len(tail_vals) - 1))
    cond_iv = {
        "xs": list(grid.tail_xs),
        "values": tail_vals,
        "final": final,
        "ok": final >= -1e-9 * scale_real,
        "trend_nonincreasing": nonincreasing,
    }
    if expected_tail_limit is not None:
        cond_iv["expected_limit"] = expected_tail_limit
        cond_iv["limit_error"] = abs(final - expected_tail_limit)
    if not cond_iv["ok"]:
        witness = witness or ("iv", complex(-grid.tail_xs[-1]), complex(final))

    ok = (
        cond_i
        and cond_ii["real_within_tol"] and positive and nondecreasing
        and cond_iii["ok"]
        and cond_iv["ok"]
    )
    return MomentClassReport(
        label=handle.label,
        cond_i=cond_i,
        cond_ii=cond_ii,
        cond_iii=cond_iii,
        cond_iv=cond_iv,
        grid=grid,
        verdict="consistent" if ok else "violated",
        witness=witness,
    )


# ---------------------------------------------------------------------------
# certification


def paper_certificate(p: ParamTriple) -> Optional[str]:
    """Closed-form parameter range that certifies universal convexity, if any.

    Route I:  a<1, a+b>=1 and 1+a+b-ab <= c <= 2.
    Route II: b<=1 and c>=2.
    Route C:  b=1, a<=1, c>=2 (the classical one-parameter family; a
              sub-range of II, kept as its own label for reporting).
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    s = PARAM_SLACK
    if a < 1 - s and a + b >= 1 - s and (1 + a + b - a * b) <= c + s and c <= 2 + s:
        return "I"
    if abs(b - 1) <= s and a <= 1 + s and c >= 2 - s:
        return "C"           # classical one-parameter family b = 1
    if b <= 1 + s and c >= 2 - s:
        return "II"
    return None


@dataclass
class DeltaScanSummary:
    depth: int
    max_k: int
    diag: int
    mode: str
    n_values: int
    witnesses: list
    indeterminate: list

    def to_dict(self) -> dict:
        return {
            "depth": self.depth, "max_k": self.max_k, "diag": self.diag,
            "mode": self.mode, "n_values": self.n_values,
            "witnesses": [[k, n, float(v)] for k, n, v in self.witnesses[:8]],
            "indeterminate": [[k, n, float(v)] for k, n, v in self.indeterminate[:8]],
        }


@dataclass
class CertReport:
    """Universal-convexity certification outcome.

    verdict is one of Falsified, PaperCertified(I|II|C),
    NumericallyConsistent(depth=..), Inconclusive; precedence is exact
    falsification > closed-form certificate > numeric consistency.
    """

    params: tuple
    verdict: str
    route: Optional[str]
    screen: ScreenResult
    delta: DeltaScanSummary
    liu_pego: MomentClassReport
    witness: Optional[tuple] = None
    numeric_consistent: bool = False

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "verdict": self.verdict,
            "route": self.route,
            "screen": self.screen.to_dict(),
            "delta": self.delta.to_dict(),
            "liu_pego": self.liu_pego.to_dict(),
            "witness": list(self.witness[:2]) + [float(self.witness[2])] if self.witness else None,
            "numeric_consistent": self.numeric_consistent,
        }


def exact_delta_scan(p: ParamTriple, depth: int = DEFAULT_DEPTH, max_k: int = DEFAULT_MAX_K,
                     diag: int = DEFAULT_DIAG) -> tuple:
    """Exact-rational forward-difference scan of the half profile."""
    series = preschwarzian_series(p.as_fractions(), depth, half=True, mode="exact")
    table = delta_table(series, max_k=min(max_k, depth), diag=diag)
    summary = DeltaScanSummary(
        depth=depth, max_k=table.max_k, diag=diag, mode="exact",
        n_values=sum(len(r) for r in table.rows),
        witnesses=table.witnesses, indeterminate=table.indeterminate,
    )
    return table, summary


def certify_universal_convexity(p: ParamTriple, depth: int = DEFAULT_DEPTH,
                                max_k: int = DEFAULT_MAX_K, diag: int = DEFAULT_DIAG,
                                grid: GridSpec | None = None) -> CertReport:
    """Combine screen, exact difference scan, closed-form ranges and grid checks.

    Exact mode is always available (floats are rationals), so a Falsified
    verdict is backed by an exact negative difference or by failure of the
    coefficient screen; more depth can never overturn it.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b <= c):
        raise HypothesisError(f"certification needs 0 < a <= b <= c, got {(a, b, c)}")
    screen = necessary_conditions(p)
    _, summary = exact_delta_scan(p, depth=depth, max_k=max_k, diag=diag)
    route = paper_certificate(p)
    expected_tail = 1.0 - a / 2.0   # known limit of the half profile on the far ray
    lp = check_liu_pego(half_profile_handle(p), grid=grid, expected_tail_limit=expected_tail)
    numeric_ok = (not summary.witnesses) and (not summary.indeterminate) and lp.consistent

    witness = summary.witnesses[0] if summary.witnesses else None
    if witness is not None or not screen.all_pass:
        verdict = "Falsified"
    elif route is not None:
        verdict = f"PaperCertified({route})"
    elif numeric_ok:
        verdict = f"NumericallyConsistent(depth={depth})"
    else:
        verdict = "Inconclusive"
    return CertReport(
        params=(a, b, c),
        verdict=verdict,
        route=route,
        screen=screen,
        delta=summary,
        liu_pego=lp,
        witness=witness,
        numeric_consistent=numeric_ok,
    )
