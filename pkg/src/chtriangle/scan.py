"""Parameter scans and orbit exports (CSV and self-contained SVG)."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass
from typing import Iterable, Sequence

from .criteria import PROP1_RADIUS, classify, params_from_r_theta, prop2_threshold
from .tolerance import get_tolerances, tolerances
from .triangle import build_triangle
from .words import decompose_orbit_point, orbit_points, translation_lattice

SCAN_HEADER = ("m", "alpha", "verdict", "vertical_margin", "min_lattice_norm", "shimizu_deficit")
ORBIT_HEADER = ("word", "re", "im", "x", "y", "rep")
COLORS = {"D": "#1f4fd1", "N": "#d11f1f", "U": "#9a9a9a"}


def fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


@dataclass(frozen=True)
class ScanRow:
    m: float
    alpha: float
    verdict: str
    vertical_margin: float
    min_lattice_norm: float
    shimizu_deficit: float


def _scan_point(args) -> ScanRow:
    m, alpha, tol = args
    with tolerances(tol):
        c = classify(m, alpha)
    return ScanRow(m, alpha, c.verdict.code, c.vertical_margin, c.min_lattice_norm, c.shimizu_deficit)


def scan_grid(m_values: Iterable[float], alpha_values: Iterable[float], jobs: int = 1) -> list[ScanRow]:
    """Classify every (m, alpha) pair; rows come back sorted by (m, alpha)."""
    tol = get_tolerances()
    points = sorted((float(m), float(a)) for m in m_values for a in alpha_values)
    tasks = [(m, a, tol) for m, a in points]
    if jobs <= 1 or len(tasks) < 2:
        return [_scan_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_scan_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def scan_csv(rows: Sequence[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for row in rows:
        w.writerow([fmt(row.m), fmt(row.alpha), row.verdict] + [fmt(v) for v in astuple(row)[3:]])
    return buf.getvalue()


def _svg(width: int, height: int, body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n<title>{title}</title>\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _scale(values, lo_px, hi_px):
    lo, hi = min(values), max(values)
    span = hi - lo if hi > lo else 1.0
    return lambda x: lo_px + (x - lo) / span * (hi_px - lo_px)


def scan_svg(rows: Sequence[ScanRow], size: int = 600) -> str:
    """Verdict map with alpha on the horizontal axis and m on the vertical axis."""
    if not rows:
        return _svg(size, size, [], "empty scan")
    alphas = sorted({r.alpha for r in rows})
    ms = sorted({r.m for r in rows})
    pad = 40
    cw = (size - 2 * pad) / max(len(alphas), 1)
    ch = (size - 2 * pad) / max(len(ms), 1)
    ax = {a: i for i, a in enumerate(alphas)}
    my = {m: i for i, m in enumerate(ms)}
    body = []
    for r in rows:
        x = pad + ax[r.alpha] * cw
        y = size - pad - (my[r.m] + 1) * ch
        body.append(
            f'<rect class="{r.verdict}" x="{x:.3f}" y="{y:.3f}" width="{cw:.3f}" height="{ch:.3f}" '
            f'fill="{COLORS[r.verdict]}"><title>m={fmt(r.m)} alpha={fmt(r.alpha)} {r.verdict}</title></rect>'
        )
    body.append(f'<text x="{size / 2:.0f}" y="{size - 10}" text-anchor="middle" font-size="14">alpha</text>')
    body.append(f'<text x="12" y="{size / 2:.0f}" font-size="14">m</text>')
    return _svg(size, size, body, "verdict map (blue D, red N, grey U)")


def verdict_edges(rows: Sequence[ScanRow], verdict: str) -> dict[float, list[float]]:
    """Per m, the cos(alpha) values where membership in ``verdict`` switches.

    Each edge is reported as the midpoint between the two neighbouring samples
    in cos(alpha).
    """
    out: dict[float, list[float]] = {}
    by_m: dict[float, list[tuple[float, bool]]] = {}
    for r in rows:
        by_m.setdefault(r.m, []).append((math.cos(r.alpha), r.verdict == verdict))
    for m, pts in by_m.items():
        pts.sort()
        out[m] = [(c0 + c1) / 2 for (c0, v0), (c1, v1) in zip(pts, pts[1:]) if v0 != v1]
    return out


def edge_report(rows: Sequence[ScanRow]) -> list[dict]:
    """Measured D/N region edges next to the closed-form endpoints, per m."""
    d_edges = verdict_edges(rows, "D")
    n_edges = verdict_edges(rows, "N")
    report = []
    for m in sorted(d_edges):
        r = math.cosh(m / 2)
        report.append(
            {
                "m": m,
                "certificate_edges": d_edges[m],
                "prop1_edge": -0.5 if r >= PROP1_RADIUS - get_tolerances().geo else None,
                "shimizu_edges": n_edges[m],
                "prop2_edge": prop2_threshold(m),
            }
        )
    return report


@dataclass(frozen=True)
class OrbitRow:
    word: str
    re: float
    im: float
    x: int
    y: int
    rep: str


def orbit_rows(r: float, theta: float, max_len: int) -> list[OrbitRow]:
    g = build_triangle(params_from_r_theta(r, theta))
    lat = translation_lattice(g)
    rows = []
    for w, z in orbit_points(max_len, g):
        rep, x, y = decompose_orbit_point(z, lat)
        rows.append(OrbitRow(str(w), z.real, z.imag, x, y, rep))
    return rows


def orbit_csv(rows: Sequence[OrbitRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ORBIT_HEADER)
    for row in rows:
        w.writerow([row.word, fmt(row.re), fmt(row.im), row.x, row.y, row.rep])
    return buf.getvalue()


def orbit_svg(rows: Sequence[OrbitRow], size: int = 600) -> str:
    pad = 30
    xs = [r.re for r in rows] or [0.0]
    ys = [r.im for r in rows] or [0.0]
    half = max(max(abs(v) for v in xs + ys), 1.0)
    sx = _scale([-half, half], pad, size - pad)
    sy = _scale([-half, half], size - pad, pad)
    body = [
        f'<line x1="{pad}" y1="{sy(0):.3f}" x2="{size - pad}" y2="{sy(0):.3f}" stroke="#cccccc"/>',
        f'<line x1="{sx(0):.3f}" y1="{pad}" x2="{sx(0):.3f}" y2="{size - pad}" stroke="#cccccc"/>',
    ]
    for r in rows:
        body.append(
            f'<circle class="orbit" cx="{sx(r.re):.3f}" cy="{sy(r.im):.3f}" r="3" fill="#000000">'
            f"<title>{r.word}</title></circle>"
        )
    return _svg(size, size, body, "orbit of 0 under <j1, j2>")

