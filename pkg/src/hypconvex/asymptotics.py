"""Convergence probes for the far-field and near-unit limits of shift ratios.

Each probe evaluates a ratio of parameter-shifted Gauss functions along a
geometric grid, records the values next to the claimed limit and a label for
the expected decay rate, and judges convergence by the trend of the last few
values.  Ratios whose approach is only logarithmic cannot get near their
limit at desk scale, so those cases are judged by the ratio-halving property
of 1/log x instead of by closeness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import HypothesisError, UnsupportedParams
from .gammafn import gamma_real
from .hyp2f1 import hyp2f1_params, preschwarzian, _gauss_series
from .params import ParamTriple

DEFAULT_XS = tuple(10.0 ** k for k in range(1, 7))   # 10^1 .. 10^6


@dataclass
class LimitProbe:
    """Values of a quantity along a grid, with its claimed limit and rate label."""

    xs: list
    values: list
    claimed_limit: float                  # math.inf marks divergence to +infinity
    rate_label: str                       # "x^-1", "x^-1 log x", "x^{a-b}", "1/log x", "x^{b-a-1}", "none"
    converged: bool
    tol: float
    notes: dict = field(default_factory=dict)

    def final(self) -> float:
        return self.values[-1]

    def to_dict(self) -> dict:
        return {
            "xs": list(self.xs),
            "values": [float(v) for v in self.values],
            "claimed_limit": self.claimed_limit if math.isfinite(self.claimed_limit) else "inf",
            "rate_label": self.rate_label,
            "converged": self.converged,
            "tol": self.tol,
            "notes": self.notes,
        }


def _monotone_toward(values, limit) -> bool:
    """Last three values strictly trend toward the limit (ties allowed)."""
    tail = values[-3:]
    if len(tail) < 3:
        return True
    if math.isinf(limit):
        return tail[0] <= tail[1] <= tail[2]
    d = [abs(v - limit) for v in tail]
    return d[0] >= d[1] - 1e-15 and d[1] >= d[2] - 1e-15


def _finish(xs, values, limit, rate, tol) -> LimitProbe:
    if math.isinf(limit):
        converged = _monotone_toward(values, limit) and values[-1] > values[0]
    else:
        converged = _monotone_toward(values, limit) and abs(values[-1] - limit) <= tol
    return LimitProbe(xs=list(xs), values=values, claimed_limit=limit,
                      rate_label=rate, converged=converged, tol=tol)


def _phi_rate(p: ParamTriple) -> str:
    a, b, c = float(p.a), float(p.b), float(p.c)
    if b == c:
        return "x^-1"
    gap = b - a
    if gap > 1:
        return "x^-1"
    if gap == 1:
        return "x^-1 log x"
    if gap > 0:
        return "x^{a-b}"
    return "1/log x"


def _psi_rate(p: ParamTriple) -> str:
    gap = float(p.b) - float(p.a)
    if gap > 1:
        return "none"
    if gap == 1:
        return "1/log x"
    if gap > 0:
        return "x^{b-a-1}"
    return "x^-1 log x"


def a_shift_ratio_probe(p: ParamTriple, xs=DEFAULT_XS, tol: float = 1e-2) -> LimitProbe:
    """phi(x) = F(a+1,b;c;-x)/F(a,b;c;-x) -> 0 as x -> +infinity.

    With b = c the ratio collapses to 1/(1+x) exactly; that identity is
    recorded in the probe notes and cross-checked.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b <= c):
        raise HypothesisError(f"probe needs 0 < a <= b <= c, got {(a, b, c)}")
    values = []
    for x in xs:
        z = complex(-x, 0.0)
        values.append((hyp2f1_params(a + 1.0, b, c, z) / hyp2f1_params(a, b, c, z)).real)
    rate = _phi_rate(p)
    probe = _finish(xs, values, 0.0, rate, tol)
    if rate == "1/log x":
        # log rate: closeness is hopeless at desk scale; check the halving law
        r = values[-1] / values[-3]
        expected = math.log(xs[-3]) / math.log(xs[-1])
        probe.notes["log_ratio"] = r
        probe.notes["log_ratio_expected"] = expected
        probe.converged = abs(r - expected) <= 0.25 * expected
    if b == c:
        probe.notes["closed_form"] = "1/(1+x)"
        probe.notes["closed_form_max_err"] = max(
            abs(v - 1.0 / (1.0 + x)) for v, x in zip(values, xs)
        )
    return probe


def ab_shift_ratio_probe(p: ParamTriple, xs=DEFAULT_XS, tol: float = 1e-1):
    """(psi, x*psi) with psi(x) = F(a+1,b+1;c+1;-x)/F(a+1,b;c;-x).

    x*psi grows without bound whenever b < c; psi itself tends to 0 under
    the extra hypothesis b <= a+1.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (b < c):
        raise HypothesisError(f"the x*psi divergence needs b < c, got b={b}, c={c}")
    psi_vals = []
    xpsi_vals = []
    for x in xs:
        z = complex(-x, 0.0)
        psi = (hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a + 1.0, b, c, z)).real
        psi_vals.append(psi)
        xpsi_vals.append(x * psi)
    rate = _psi_rate(p)
    psi_limit = 0.0 if b <= a + 1.0 else psi_vals[-1]
    psi_probe = _finish(xs, psi_vals, psi_limit, rate, tol)
    if b > a + 1.0:
        psi_probe.converged = True           # no zero-limit claim in this range
        psi_probe.notes["limit_claimed"] = False
    if rate == "1/log x":
        r = psi_vals[-1] / psi_vals[-3]
        expected = math.log(xs[-3]) / math.log(xs[-1])
        psi_probe.notes["log_ratio"] = r
        psi_probe.notes["log_ratio_expected"] = expected
        psi_probe.converged = abs(r - expected) <= 0.25 * expected
    xpsi_probe = _finish(xs, xpsi_vals, math.inf, "none", tol)
    return psi_probe, xpsi_probe


def xw_limit_probe(p: ParamTriple, xs=DEFAULT_XS, tol: float = 0.02) -> LimitProbe:
    """x * w(-x) -> c/b for w = H/F, via the contiguous chain through psi.

    F = G - (b/c) z H gives x*w = x*psi / (1 + (b/c) x*psi), which feeds the
    divergence of x*psi straight into the limit c/b.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (b < c):
        raise HypothesisError(f"needs b < c, got b={b}, c={c}")
    values = []
    for x in xs:
        z = complex(-x, 0.0)
        psi = (hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a + 1.0, b, c, z)).real
        xpsi = x * psi
        values.append(xpsi / (1.0 + (b / c) * xpsi))
    limit = c / b
    return _finish(xs, values, limit, "none", tol * limit)


def preschwarz_limit_probe(p: ParamTriple, xs=DEFAULT_XS, tol: float = None) -> LimitProbe:
    """x f''(x)/f'(x) -> -a along the negative axis."""
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b <= c):
        raise HypothesisError(f"probe needs 0 < a <= b <= c, got {(a, b, c)}")
    if tol is None:
        tol = 1e-2 * (1.0 + a)
    values = [preschwarzian(p, complex(-x, 0.0)).real for x in xs]
    return _finish(xs, values, -a, "none", tol)


def near_one_ratio_probe(p: ParamTriple, ks=range(1, 9), tol: float = 0.02) -> LimitProbe:
    """H/G as x -> 1^-: limit c/max(b, c-a-1), three branches by c-a-b-1."""
    a, b, c = float(p.a), float(p.b), float(p.c)
    if not (0 < a <= b <= c):
        raise HypothesisError(f"probe needs 0 < a <= b <= c, got {(a, b, c)}")
    xs = [1.0 - 10.0 ** (-k) for k in ks]
    values = []
    for x in xs:
        z = complex(x, 0.0)
        values.append((hyp2f1_params(a + 1.0, b + 1.0, c + 1.0, z) / hyp2f1_params(a + 1.0, b, c, z)).real)
    limit = c / max(b, c - a - 1.0)
    probe = _finish(xs, values, limit, "none", tol * limit)
    excess = c - a - b - 1.0
    probe.notes["branch"] = ("zero" if abs(excess) <= 1e-9
                             else "positive" if excess > 0 else "negative")
    return probe


def connection_identity_check(p: ParamTriple, grid=None) -> float:
    """Max residual of the two-series expansion identity around z = 1.

    Both sides run through plain power series (the defining series on the
    left, the two series in 1-z with gamma coefficients on the right), so
    this is a genuine two-route consistency check.  Valid off (-inf,0] and
    [1,+inf) and needs non-integer parameter excess.
    """
    a, b, c = float(p.a), float(p.b), float(p.c)
    delta = a + b - c
    if abs(delta - round(delta)) <= 1e-9:
        raise UnsupportedParams(f"identity coefficients have poles at integer excess, got {delta}")
    if grid is None:
        grid = [complex(x, y) for x in (0.2, 0.3, 0.4, 0.5, 0.6)
                for y in (-0.3, -0.1, 0.0, 0.1, 0.3)]
    coef_b = gamma_real(c) * gamma_real(-delta) / (gamma_real(c - a) * gamma_real(c - b))
    coef_a = gamma_real(c) * gamma_real(delta) / (gamma_real(a) * gamma_real(b))
    worst = 0.0
    for z in grid:
        if z.imag == 0.0 and (z.real <= 0.0 or z.real >= 1.0):
            raise HypothesisError(f"grid point {z} outside the identity's validity region")
        u = 1.0 - z
        lhs, _, _ = _gauss_series(a, b, c, z)
        s1, _, _ = _gauss_series(a, b, delta + 1.0, u)
        s2, _, _ = _gauss_series(c - a, c - b, 1.0 - delta, u)
        rhs = coef_b * s1 + coef_a * u ** (-delta) * s2
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(lhs)))
    return worst
