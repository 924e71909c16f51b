"""Command-line front end: evaluation, geometry checks, certification, reports.

Exit codes: 0 success, 1 a checked assertion failed, 2 invalid parameters
(the violated precondition is named on stderr).  Output files are byte-stable
for equal configurations: every sample set is seeded and timing information
goes to stderr, never into a report file.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .acceptance import SuiteOptions, run_suite
from .asymptotics import (
    a_shift_ratio_probe,
    ab_shift_ratio_probe,
    connection_identity_check,
    near_one_ratio_probe,
    preschwarz_limit_probe,
    xw_limit_probe,
)
from .errors import DomainError, HypothesisError, PoleError, UnsupportedParams
from .geometry import (
    boundary_curve,
    check_apex_sector,
    check_sector_containment,
    kappa_in_closed_form_range,
    kappa_numeric,
    sector_margin,
)
from .hyp2f1 import hyp2f1, preschwarzian, shifted_f, shifted_g
from .moment_class import GridSpec, certify_universal_convexity
from .params import ParamTriple


@dataclass
class RunConfig:
    """Echo of the options that determine a run; serialized into every report."""

    command: str
    a: float
    b: float
    c: float
    depth: int = 64
    max_k: int = 40
    grid: int = 64
    radii: tuple = (0.9, 0.99, 0.999, 0.9999)
    theta_min: float = 1e-6
    n_theta: int = 512
    samples: int = 10_000
    seed: int = 0
    exact: bool = False
    output_format: str = "text"
    output_path: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["radii"] = list(self.radii)
        return d


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _emit(config: RunConfig, payload: dict, text_lines: list) -> None:
    if config.output_format == "json":
        body = json.dumps(
            {"schema_version": "1", "tool_version": __version__,
             "config": config.to_dict(), **payload},
            indent=2, default=_json_default) + "\n"
    else:
        body = "\n".join(text_lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w", newline="\n") as fh:
            fh.write(body)
        print(f"wrote {config.output_path}", file=sys.stderr)
    else:
        sys.stdout.write(body)


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Fraction):
        return float(obj)
    return str(obj)


def _triple(args) -> ParamTriple:
    if args.exact:
        return ParamTriple(Fraction(args.a), Fraction(args.b), Fraction(args.c))
    return ParamTriple(float(args.a), float(args.b), float(args.c))


def _config(args, command: str) -> RunConfig:
    radii = tuple(float(r) for r in args.radii.split(",")) if args.radii else (0.9, 0.99, 0.999, 0.9999)
    return RunConfig(
        command=command,
        a=float(Fraction(args.a)), b=float(Fraction(args.b)), c=float(Fraction(args.c)),
        depth=args.depth, max_k=args.max_k, grid=args.grid, radii=radii,
        theta_min=args.theta_min, n_theta=args.n_theta, samples=args.samples,
        seed=args.seed, exact=args.exact, output_format=args.format,
        output_path=args.out,
    )


def _parse_point(token: str) -> complex:
    return complex(token.replace("i", "j"))


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    p = _triple(args).as_floats()
    config = _config(args, "eval")
    values = []
    lines = [f"fn={args.fn} a={p.a} b={p.b} c={p.c}"]
    fns = {
        "2f1": lambda z: hyp2f1(p, z),
        "f": lambda z: shifted_f(p, z),
        "g": lambda z: shifted_g(p, z),
        "pre": lambda z: preschwarzian(p, z),
    }
    fn = fns[args.fn]
    for token in args.points:
        z = _parse_point(token)
        v = fn(z)
        values.append({"z": [z.real, z.imag], "value": [v.real, v.imag]})
        lines.append(f"{args.fn}({token}) = {_fmt(v.real)} {'+' if v.imag >= 0 else '-'} {_fmt(abs(v.imag))}i")
    _emit(config, {"fn": args.fn, "values": values}, lines)
    return 0


def cmd_kappa(args) -> int:
    p = _triple(args).as_floats()
    config = _config(args, "kappa")
    rep = kappa_numeric(p, radii=config.radii, n_theta=max(config.n_theta, 512))
    lines = [f"order of convexity for ({p.a}, {p.b}, {p.c})",
             f"  numeric:    {_fmt(rep.kappa_numeric)}"]
    if rep.kappa_closed is not None:
        lines.append(f"  closed form: {_fmt(rep.kappa_closed)} (consistent: {rep.consistent})")
    else:
        lines.append("  closed form: not applicable for these parameters")
    for r, v, t in rep.radii_trace:
        lines.append(f"  circle r={r}: min {_fmt(v)} at theta={_fmt(t)}")
    _emit(config, {"report": rep.to_dict()}, lines)
    if rep.consistent is False:
        return 1
    return 0


def cmd_sector(args) -> int:
    p = _triple(args).as_floats()
    config = _config(args, "sector")
    try:
        eps = sector_margin(p)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    contain = check_sector_containment(p, n_samples=config.samples, seed=config.seed)
    payload = {"eps": eps, "containment": contain.to_dict()}
    lines = [f"fattened-sector containment for ({p.a}, {p.b}, {p.c})",
             f"  eps = {_fmt(eps)}, delta = {_fmt(p.delta)}",
             f"  samples: {contain.n_samples}, violations: {len(contain.violations)}",
             f"  max distance f: {_fmt(contain.max_dist_f)}  g: {_fmt(contain.max_dist_g)}"]
    failed = not contain.passed
    kappa_ok = kappa_in_closed_form_range(p)
    apex = None
    if kappa_ok or args.force_apex:
        try:
            apex = check_apex_sector(p, n_samples=config.samples, seed=config.seed,
                                     n_theta=config.n_theta)
        except (HypothesisError, DomainError) as exc:
            lines.append(f"  apex sector skipped: {exc}")
    else:
        lines.append("  apex sector skipped: convexity not established for these parameters")
    if apex is not None:
        payload["apex"] = apex.to_dict()
        lines.append(f"  apex B = {_fmt(apex.B)} (negative: {apex.apex_negative})")
        lines.append(f"  apex violations: {len(apex.violations)}, min boundary dist: {_fmt(apex.min_boundary_dist)}")
        failed = failed or not apex.passed
    _emit(config, payload, lines)
    return 1 if failed else 0


def cmd_certify(args) -> int:
    p = _triple(args)
    config = _config(args, "certify")
    n = config.grid
    grid = GridSpec(n_radial=n, n_angular=n, n_neg=max(8, n // 2), n_pos=max(4, n // 4))
    rep = certify_universal_convexity(p.as_floats(), depth=config.depth,
                                      max_k=config.max_k, diag=config.max_k, grid=grid)
    lines = [f"universal convexity certification for ({float(p.a)}, {float(p.b)}, {float(p.c)})",
             f"  verdict: {rep.verdict}"]
    if rep.witness:
        k, nn, v = rep.witness
        lines.append(f"  witness: difference order {k}, offset {nn}, value {_fmt(v)}")
    lines.append(f"  screen: alpha={_fmt(rep.screen.alpha)} beta={_fmt(rep.screen.beta)} pass={rep.screen.all_pass}")
    lines.append(f"  difference scan: depth {rep.delta.depth}, diagonal {rep.delta.diag}, "
                 f"witnesses {len(rep.delta.witnesses)}, mode {rep.delta.mode}")
    lines.append(f"  boundary criterion: {rep.liu_pego.verdict}")
    _emit(config, {"report": rep.to_dict()}, lines)
    return 0 if rep.verdict != "Inconclusive" else 1


def cmd_image(args) -> int:
    p = _triple(args).as_floats()
    config = _config(args, "image")
    try:
        curve = boundary_curve(p, n_theta=config.n_theta, theta_min=config.theta_min)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.output_format == "svg":
        body = _render_svg(p, curve)
        path = config.output_path or "image.svg"
        with open(path, "w", newline="\n") as fh:
            fh.write(body)
        print(f"wrote {path}", file=sys.stderr)
        return 0
    rows = ["theta,x,y,x1,y1,x2,y2"]
    for i in range(len(curve.theta)):
        rows.append(",".join(_fmt(v) for v in (
            curve.theta[i], curve.x[i], curve.y[i],
            curve.x1[i], curve.y1[i], curve.x2[i], curve.y2[i])))
    body = "\n".join(rows) + "\n"
    if config.output_path:
        with open(config.output_path, "w", newline="\n") as fh:
            fh.write(body)
        print(f"wrote {config.output_path}", file=sys.stderr)
    else:
        sys.stdout.write(body)
    return 0


def _render_svg(p: ParamTriple, curve) -> str:
    """Static figure: image boundary, sector rays from the apex, asymptote."""
    import math

    B = curve.B
    phi = math.pi * curve.delta / 2.0
    xs = np.concatenate([curve.x, curve.x])
    ys = np.concatenate([curve.y, -curve.y])
    span = max(1.0, np.percentile(np.hypot(xs - B, ys), 92))
    x0, x1 = B - 0.2 * span, B + 1.4 * span
    y0, y1 = -0.8 * span, 0.8 * span
    W = H = 720.0

    def sx(x):
        return (x - x0) / (x1 - x0) * W

    def sy(y):
        return H - (y - y0) / (y1 - y0) * H

    def poly(xa, ya):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xa, ya)
                       if x0 <= x <= x1 and y0 <= y <= y1)
        return pts

    tan = math.tan(phi)
    t_end = (x1 - B)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.0f}" height="{H:.0f}" '
        f'viewBox="0 0 {W:.0f} {H:.0f}">',
        f'<rect width="{W:.0f}" height="{H:.0f}" fill="white"/>',
        f'<line x1="{sx(x0):.2f}" y1="{sy(0):.2f}" x2="{sx(x1):.2f}" y2="{sy(0):.2f}" stroke="#bbb"/>',
        f'<line x1="{sx(0):.2f}" y1="{sy(y0):.2f}" x2="{sx(0):.2f}" y2="{sy(y1):.2f}" stroke="#bbb"/>',
        # sector rays from the apex
        f'<line x1="{sx(B):.2f}" y1="{sy(0):.2f}" x2="{sx(B + t_end):.2f}" y2="{sy(t_end * tan):.2f}" '
        'stroke="#d62728" stroke-dasharray="6,3"/>',
        f'<line x1="{sx(B):.2f}" y1="{sy(0):.2f}" x2="{sx(B + t_end):.2f}" y2="{sy(-t_end * tan):.2f}" '
        'stroke="#d62728" stroke-dasharray="6,3"/>',
        # asymptote y = tan(phi) (x - B), same line as the upper ray
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{poly(curve.x, curve.y)}"/>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{poly(curve.x, -curve.y)}"/>',
        f'<text x="10" y="20" font-family="monospace" font-size="14">image boundary, apex sector '
        f'(a={float(p.a)}, b={float(p.b)}, c={float(p.c)}, B={B:.6g})</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def cmd_asym(args) -> int:
    p = _triple(args).as_floats()
    config = _config(args, "asym")
    payload = {}
    lines = [f"limit probes for ({p.a}, {p.b}, {p.c})"]

    def add(name, probe):
        payload[name] = probe.to_dict()
        limit = probe.claimed_limit
        lines.append(f"  {name}: final {_fmt(probe.final())} limit "
                     f"{limit if isinstance(limit, str) else _fmt(limit) if limit not in (float('inf'),) else 'inf'} "
                     f"rate {probe.rate_label} converged {probe.converged}")
        for x, v in zip(probe.xs, probe.values):
            lines.append(f"    x={_fmt(x)}  value={_fmt(v)}")

    add("a_shift_ratio", a_shift_ratio_probe(p))
    try:
        psi, xpsi = ab_shift_ratio_probe(p)
        add("ab_shift_ratio", psi)
        add("x_times_ab_shift_ratio", xpsi)
        add("x_times_hf_ratio", xw_limit_probe(p))
    except HypothesisError as exc:
        lines.append(f"  shift-ratio divergence probes skipped: {exc}")
    add("preschwarzian_far", preschwarz_limit_probe(p))
    add("near_one_ratio", near_one_ratio_probe(p))
    try:
        payload["connection_residual"] = connection_identity_check(p)
        lines.append(f"  connection identity residual: {_fmt(payload['connection_residual'])}")
    except UnsupportedParams as exc:
        lines.append(f"  connection identity skipped: {exc}")
    _emit(config, payload, lines)
    return 0


def cmd_suite(args) -> int:
    opts = SuiteOptions(seed=args.seed, sector_samples=args.samples,
                        depth=args.depth, diag=args.max_k, uhp_grid=args.grid,
                        contiguous_triples=args.triples,
                        connection_triples=max(2, args.triples // 2),
                        kuestner_triples=max(1, args.triples // 2))
    t0 = time.time()
    report = run_suite(opts, echo=lambda line: print(line))
    elapsed = time.time() - t0
    body = report.to_json()
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(body)
        print(f"wrote {args.out}", file=sys.stderr)
    print(f"suite {'PASSED' if report.passed else 'FAILED'} in {elapsed:.1f}s", file=sys.stderr)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------


def _add_common(sub, need_triple=True):
    if need_triple:
        sub.add_argument("--a", required=True, help="first parameter")
        sub.add_argument("--b", required=True, help="second parameter")
        sub.add_argument("--c", required=True, help="third parameter")
    sub.add_argument("--depth", type=int, default=64, help="series depth for coefficient scans")
    sub.add_argument("--max-k", dest="max_k", type=int, default=40, help="difference-table diagonal")
    sub.add_argument("--grid", type=int, default=64, help="half-plane grid size per axis")
    sub.add_argument("--radii", default=None, help="comma-separated circle radii")
    sub.add_argument("--theta-min", dest="theta_min", type=float, default=1e-6)
    sub.add_argument("--n-theta", dest="n_theta", type=int, default=512)
    sub.add_argument("--samples", type=int, default=10_000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", choices=("text", "json", "csv", "svg"), default="text")
    sub.add_argument("--out", default=None, help="output file (stdout when omitted)")
    sub.add_argument("--exact", action="store_true",
                     help="parse parameters as exact rationals (decimal strings)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypconvex",
                                 description="shifted hypergeometric maps: evaluation, "
                                             "sector geometry, convexity certification")
    ap.add_argument("--version", action="version", version=f"hypconvex {__version__}")
    subs = ap.add_subparsers(dest="command", required=True)

    s = subs.add_parser("eval", help="evaluate 2F1, f, g or the pre-Schwarzian at points")
    _add_common(s)
    s.add_argument("--fn", choices=("2f1", "f", "g", "pre"), default="2f1")
    s.add_argument("points", nargs="+", help="complex points like 0.5 or 0.3+0.4i")
    s.set_defaults(fn_impl=cmd_eval)

    s = subs.add_parser("kappa", help="order of convexity (closed form and numeric)")
    _add_common(s)
    s.set_defaults(fn_impl=cmd_kappa)

    s = subs.add_parser("sector", help="sector containment checks for f and g")
    _add_common(s)
    s.add_argument("--force-apex", action="store_true", help="run the apex check regardless of kappa")
    s.set_defaults(fn_impl=cmd_sector)

    s = subs.add_parser("certify", help="universal-convexity certification")
    _add_common(s)
    s.set_defaults(fn_impl=cmd_certify)

    s = subs.add_parser("image", help="boundary curve CSV or SVG figure")
    _add_common(s)
    s.set_defaults(fn_impl=cmd_image)

    s = subs.add_parser("asym", help="convergence tables for the limit probes")
    _add_common(s)
    s.set_defaults(fn_impl=cmd_asym)

    s = subs.add_parser("suite", help="run the acceptance suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--depth", type=int, default=64)
    s.add_argument("--max-k", dest="max_k", type=int, default=40)
    s.add_argument("--grid", type=int, default=64)
    s.add_argument("--triples", type=int, default=50)
    s.add_argument("--out", default=None)
    s.set_defaults(fn_impl=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn_impl(args)
    except (PoleError, DomainError, HypothesisError, UnsupportedParams, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
