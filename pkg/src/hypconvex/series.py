"""Truncated power-series arithmetic for the shifted map and its profiles.

Two arithmetic modes run through the same code paths: "float" uses doubles,
"exact" uses `fractions.Fraction` throughout and is the authority whenever a
sign decision matters (forward-difference tables amplify cancellation, and a
false negativity witness must be impossible).  Float-mode tables only ever
report "numerically nonnegative"; entries inside the dead band around zero
are marked indeterminate instead of being trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivisionBreakdown, PoleError
from .params import ParamTriple

DEFAULT_DEPTH = 64
DEFAULT_DIAG = 40       # forward-difference scan limited to k + n <= this
DEFAULT_MAX_K = 40


def _to_mode(x, mode: str):
    return Fraction(x) if mode == "exact" else float(x)


def _zero(mode: str):
    return Fraction(0) if mode == "exact" else 0.0


@dataclass
class CoeffSeries:
    """Truncated coefficient vector c_0 .. c_depth of a power series."""

    entries: list
    depth: int
    mode: str = "float"
    label: str = ""
    condition: list | None = None   # float mode: crude amplification estimates

    def __post_init__(self):
        if len(self.entries) != self.depth + 1:
            raise ValueError(f"need depth+1 entries, got {len(self.entries)} for depth {self.depth}")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def as_floats(self) -> list:
        return [float(e) for e in self.entries]

    def __getitem__(self, n: int):
        return self.entries[n]


def gauss_coefficients(p: ParamTriple, depth: int, mode: str = "float") -> CoeffSeries:
    """Taylor coefficients of 2F1(a,b;c;z): rising-factorial quotients by recurrence."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    a = _to_mode(p.a, mode)
    b = _to_mode(p.b, mode)
    c = _to_mode(p.c, mode)
    one = _to_mode(1, mode)
    entries = [one]
    term = one
    for n in range(depth):
        den = (c + n) * (n + 1)
        if den == 0:
            raise PoleError(f"coefficient denominator vanished at n={n} (c={p.c})")
        term = term * (a + n) * (b + n) / den
        entries.append(term)
    return CoeffSeries(entries, depth, mode, label="2F1 coefficients")


def shifted_coefficients(p: ParamTriple, depth: int, mode: str = "float") -> CoeffSeries:
    """Coefficients a_n of f(z) = z*2F1(a,b;c;z); a_0 = 0, a_1 = 1."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    base = gauss_coefficients(p, depth - 1, mode)
    entries = [_zero(mode)] + base.entries
    return CoeffSeries(entries, depth, mode, label="shifted map coefficients")


def series_mul(x: list, y: list, depth: int) -> list:
    out = []
    for n in range(depth + 1):
        acc = x[0] * y[n] if n < len(y) else x[0] * 0
        for k in range(1, min(n, len(x) - 1) + 1):
            if n - k < len(y):
                acc += x[k] * y[n - k]
        out.append(acc)
    return out


def series_div(num: list, den: list, depth: int, track_condition: bool = False):
    """Cauchy-product long division of truncated series; den[0] must not vanish."""
    if den[0] == 0:
        raise DivisionBreakdown("leading denominator coefficient is zero")
    q = []
    cond = [] if track_condition else None
    for n in range(depth + 1):
        acc = num[n] if n < len(num) else num[0] * 0
        amp = abs(acc) if track_condition else None
        for k in range(n):
            if n - k < len(den):
                t = q[k] * den[n - k]
                acc -= t
                if track_condition:
                    amp += abs(t)
        qn = acc / den[0]
        q.append(qn)
        if track_condition:
            cond.append(float(amp / (abs(qn) + 1e-300)) if qn != 0 else float(amp))
    return (q, cond) if track_condition else q


def preschwarzian_series(p: ParamTriple, depth: int, half: bool = True, mode: str = "float") -> CoeffSeries:
    """Coefficients of 1 + z f''/(2 f') (half) or 1 + z f''/f' for the shifted map.

    Built by dividing the series of z f'' by the series of f' (leading
    coefficient 1, so the division never breaks down for these inputs).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    fa = shifted_coefficients(p, depth + 1, mode)   # a_0..a_{depth+1}
    fp = [(n + 1) * fa.entries[n + 1] for n in range(depth + 1)]        # f'
    zfpp = [n * (n + 1) * fa.entries[n + 1] for n in range(depth + 1)]  # z f''
    track = mode == "float"
    divided = series_div(zfpp, fp, depth, track_condition=track)
    q, cond = divided if track else (divided, None)
    one = _to_mode(1, mode)
    two = _to_mode(2, mode)
    entries = [one]
    for n in range(1, depth + 1):
        entries.append(q[n] / two if half else q[n])
    label = "1 + z f''/(2 f')" if half else "1 + z f''/f'"
    return CoeffSeries(entries, depth, mode, label=label, condition=cond)


def ratio_coefficients(num_params, den_params, depth: int, mode: str = "float") -> CoeffSeries:
    """Taylor coefficients of 2F1(num_params; z) / 2F1(den_params; z)."""
    pn = ParamTriple(*num_params)
    pd = ParamTriple(*den_params)
    num = gauss_coefficients(pn, depth, mode).entries
    den = gauss_coefficients(pd, depth, mode).entries
    q = series_div(num, den, depth)
    return CoeffSeries(q, depth, mode, label="hypergeometric ratio")


# ---------------------------------------------------------------------------
# forward-difference tables


@dataclass
class DeltaTable:
    """Triangular table of iterated forward differences of a coefficient sequence.

    rows[k][n] holds the k-th difference at offset n; row 0 is the sequence
    itself.  Witnesses are entries strictly below -tol (exact mode: below 0),
    sorted by (k+n, k); the dead band [-tol, 0) is recorded separately in
    float mode because values that close to zero prove nothing.
    """

    rows: list
    max_k: int
    max_n: int
    tol: float
    mode: str
    witnesses: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)

    @property
    def has_witness(self) -> bool:
        return bool(self.witnesses)


def delta_table(series: CoeffSeries, max_k: int, diag: int | None = None, tol: float | None = None) -> DeltaTable:
    """Forward differences of series.entries down to order max_k.

    diag, when given, limits the scan to the anti-diagonal k + n <= diag.
    """
    depth = series.depth
    if max_k > depth:
        raise ValueError(f"max_k={max_k} exceeds series depth {depth}")
    exact = series.mode == "exact"
    if tol is None:
        if exact:
            tol = 0.0
        else:
            c0 = abs(float(series.entries[0]))
            tol = max(1e-12, 1e-10 * c0)
    limit = depth if diag is None else min(diag, depth)
    rows = [list(series.entries[: limit + 1])]
    for k in range(1, max_k + 1):
        width = limit - k + 1
        if width <= 0:
            break
        prev = rows[k - 1]
        rows.append([prev[n] - prev[n + 1] for n in range(width)])
    witnesses = []
    indeterminate = []
    for k, row in enumerate(rows):
        for n, v in enumerate(row):
            if diag is not None and k + n > diag:
                continue
            if exact:
                if v < 0:
                    witnesses.append((k, n, v))
            else:
                fv = float(v)
                if fv < -tol:
                    witnesses.append((k, n, fv))
                elif fv < 0.0:
                    indeterminate.append((k, n, fv))
    witnesses.sort(key=lambda w: (w[0] + w[1], w[0]))
    indeterminate.sort(key=lambda w: (w[0] + w[1], w[0]))
    return DeltaTable(
        rows=rows,
        max_k=len(rows) - 1,
        max_n=limit,
        tol=float(tol),
        mode=series.mode,
        witnesses=witnesses,
        indeterminate=indeterminate,
    )


# ---------------------------------------------------------------------------
# coefficient screen


@dataclass
class ScreenResult:
    """The three coefficient inequalities every universally convex shifted map satisfies."""

    alpha: float
    beta: float
    alpha_in_unit: bool        # 0 <= alpha <= 1
    beta_bound: bool           # 3 beta <= 1 + 2 alpha
    product_bound: bool        # alpha (2 + 2 alpha - 3 beta) <= 1

    @property
    def all_pass(self) -> bool:
        return self.alpha_in_unit and self.beta_bound and self.product_bound

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "alpha_in_unit": self.alpha_in_unit,
            "beta_bound": self.beta_bound,
            "product_bound": self.product_bound,
            "all_pass": self.all_pass,
        }


def necessary_conditions(p: ParamTriple) -> ScreenResult:
    """Evaluate the three screen inequalities on alpha = ab/c and beta."""
    alpha = p.alpha
    beta = p.beta
    return ScreenResult(
        alpha=float(alpha),
        beta=float(beta),
        alpha_in_unit=bool(0 <= alpha <= 1),
        beta_bound=bool(3 * beta <= 1 + 2 * alpha),
        product_bound=bool(alpha * (2 + 2 * alpha - 3 * beta) <= 1),
    )
