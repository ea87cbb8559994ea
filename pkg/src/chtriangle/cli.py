"""Command-line front end: ``chtri classify | scan | orbit | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import scan as scanmod
from .criteria import classify
from .errors import GeometryError
from .tolerance import DEFAULT_EPS, Tolerances, tolerances
from .verify import run_suites

MAX_ORBIT_LEN = 14


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return v, v
        if len(parts) == 2:
            return float(parts[0]), float(parts[1])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected START:STOP or a number, got {text!r}")


def _steps(text: str) -> tuple[int, int]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad step count {text!r}") from None
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2 or min(parts) < 1:
        raise argparse.ArgumentTypeError("step counts must be positive integers")
    return parts[0], parts[1]


def _default_tolerance() -> float:
    raw = os.environ.get("CHP_TOLERANCE")
    if not raw:
        return DEFAULT_EPS
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"CHP_TOLERANCE is not a number: {raw!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tolerance", type=float, default=None, help="numeric tolerance (default 1e-9 or $CHP_TOLERANCE)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    return p


def _size_options(p: argparse.ArgumentParser, as_range: bool) -> None:
    kind = _range if as_range else float
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=kind, help="distance m between C3 and C1 (= C2)")
    g.add_argument("--r", type=kind, help="r = cosh(m/2), alternative to --m")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="chtri", description="Discreteness of [m,m,0;3,3,2] complex hyperbolic triangle groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify one parameter point")
    _size_options(p, as_range=False)
    p.add_argument("--alpha", type=float, required=True, help="angular invariant in (0, 2pi)")
    p.add_argument("--degrees", action="store_true", help="read --alpha in degrees")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("scan", parents=[common], help="classify a grid of parameter points")
    _size_options(p, as_range=True)
    ax = p.add_mutually_exclusive_group(required=True)
    ax.add_argument("--alpha", type=_range, help="alpha range START:STOP")
    ax.add_argument("--cos-alpha", type=_range, help="cos(alpha) range START:STOP, alpha in (0, pi]")
    p.add_argument("--steps", type=_steps, default=(10, 10), help="N or NM,NALPHA samples (inclusive)")
    p.add_argument("--degrees", action="store_true", help="read --alpha in degrees")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "svg"), default=None)
    p.add_argument("--json", action="store_true", help="print the edge report as JSON on stderr")

    p = sub.add_parser("orbit", parents=[common], help="orbit of 0 under <j1, j2>")
    _size_options(p, as_range=False)
    th = p.add_mutually_exclusive_group()
    th.add_argument("--theta", type=float, default=None, help="theta in (-pi/2, pi/2); default 0")
    th.add_argument("--alpha", type=float, default=None, help="angular invariant, theta = (pi - alpha)/2")
    p.add_argument("--degrees", action="store_true", help="read angles in degrees")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "svg"), default=None)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--fast", action="store_true", help="skip the 100x100 scan consistency suites")
    return parser


def _r_from(args) -> float:
    if args.r is not None:
        if args.r < 1:
            raise UsageError("--r must be >= 1")
        return args.r
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    return math.cosh(args.m / 2)


def _m_from(args) -> float:
    if args.r is not None:
        if args.r < 1:
            raise UsageError("--r must be >= 1")
        return 2 * math.acosh(args.r)
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    return args.m


def _angle(x: float, degrees: bool) -> float:
    return math.radians(x) if degrees else x


def _check_alpha(a: float) -> None:
    if not 0 < a < 2 * math.pi:
        raise UsageError(f"alpha must lie strictly between 0 and 2pi, got {a!r}")


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _format(args) -> str:
    if args.format:
        return args.format
    return "svg" if str(args.out).lower().endswith(".svg") else "csv"


def cmd_classify(args) -> int:
    m = _m_from(args)
    alpha = _angle(args.alpha, args.degrees)
    _check_alpha(alpha)
    c = classify(m, alpha)
    if args.json:
        print(json.dumps(c.as_dict(), indent=2, sort_keys=True))
        return 0
    print(c.verdict.value)
    print(f"  m = {c.m:.12g}  r = {c.r:.12g}  alpha = {c.alpha:.12g}  theta = {c.theta:.12g}")
    print(f"  vertical margin   {c.vertical_margin:.12g}")
    print(f"  min lattice norm  {c.min_lattice_norm:.12g}")
    print(f"  shimizu deficit   {c.shimizu_deficit:.12g}")
    for key, value in c.witness.items():
        print(f"  witness {key}: {value}")
    return 0


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    return [float(x) for x in np.linspace(lo, hi, n)] if n > 1 else [lo]


def cmd_scan(args) -> int:
    nm, na = args.steps
    lo, hi = args.r if args.r is not None else args.m
    if args.r is not None:
        if min(lo, hi) < 1:
            raise UsageError("--r values must be >= 1")
        ms = [2 * math.acosh(r) for r in _linspace(lo, hi, nm)]
    else:
        if min(lo, hi) < 0:
            raise UsageError("--m values must be >= 0")
        ms = _linspace(lo, hi, nm)
    if args.cos_alpha is not None:
        c0, c1 = args.cos_alpha
        if not (-1 <= c0 < 1 and -1 <= c1 < 1):
            raise UsageError("--cos-alpha values must lie in [-1, 1)")
        alphas = [math.acos(c) for c in _linspace(c0, c1, na)]
    else:
        a0, a1 = (_angle(x, args.degrees) for x in args.alpha)
        alphas = _linspace(a0, a1, na)
    for a in alphas:
        _check_alpha(a)
    rows = scanmod.scan_grid(ms, alphas, jobs=args.jobs)
    text = scanmod.scan_svg(rows) if _format(args) == "svg" else scanmod.scan_csv(rows)
    _emit(text, args.out)
    report = scanmod.edge_report(rows)
    if args.json:
        print(json.dumps(report, indent=2), file=sys.stderr)
    else:
        for entry in report:
            p1 = "none" if entry["prop1_edge"] is None else f"{entry['prop1_edge']:+.4f}"
            cert = ", ".join(f"{e:+.4f}" for e in entry["certificate_edges"]) or "none"
            shim = ", ".join(f"{e:+.4f}" for e in entry["shimizu_edges"]) or "none"
            print(
                f"m={entry['m']:.6g}: D edges {cert} (closed-form edge {p1}); "
                f"N edges {shim} (closed-form edge {entry['prop2_edge']:+.4f})",
                file=sys.stderr,
            )
    return 0


def cmd_orbit(args) -> int:
    if args.max_len > MAX_ORBIT_LEN:
        raise UsageError(f"--max-len is capped at {MAX_ORBIT_LEN}")
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    r = _r_from(args)
    if args.alpha is not None:
        a = _angle(args.alpha, args.degrees)
        _check_alpha(a)
        theta = (math.pi - a) / 2
    else:
        theta = _angle(args.theta or 0.0, args.degrees)
    if not abs(theta) < math.pi / 2:
        raise UsageError("theta must lie strictly between -pi/2 and pi/2")
    rows = scanmod.orbit_rows(r, theta, args.max_len)
    text = scanmod.orbit_svg(rows) if _format(args) == "svg" else scanmod.orbit_csv(rows)
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_suites(fast=args.fast, tol=args.tolerance, jobs=args.jobs)
    for res in results:
        print(res.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("FAILED: " + ", ".join(failed))
        return 1
    print("all suites passed")
    return 0


COMMANDS = {"classify": cmd_classify, "scan": cmd_scan, "orbit": cmd_orbit, "verify": cmd_verify}


_VALUE_OPTIONS = ("--m", "--r", "--alpha", "--cos-alpha", "--theta")
_NEGATIVE = re.compile(r"^-[0-9.]")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--cos-alpha -1:0`` as ``--cos-alpha=-1:0`` so argparse does not read an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and _NEGATIVE.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        eps = args.tolerance if args.tolerance is not None else _default_tolerance()
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        with tolerances(Tolerances.uniform(eps)):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"chtri: error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"chtri: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"chtri: cannot write output: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
