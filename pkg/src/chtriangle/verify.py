"""Verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` with the worst residual it saw and
the threshold it was held to.  Passing ``tol`` replaces every stated
threshold, which is how the CLI's ``--tolerance`` flag stresses the build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .criteria import (
    CASE_POINTS,
    PROP1_RADIUS,
    Verdict,
    classify,
    coset_table,
    g_value,
    isometric_sphere_radius,
    lattice_min_norm,
    prop1_predicate,
    prop2_predicate,
    prop2_threshold,
    shimizu_violation,
)
from .errors import GeometryError, InternalInconsistency
from .heisenberg import (
    HeisPoint,
    HeisTranslation,
    compose_translations,
    cygan_distance,
    from_boundary,
    to_boundary,
    translation_matrix,
)
from .projective import chain_distance, form_residual, projective_equal
from .scan import scan_grid, verdict_edges
from .triangle import TriangleParams, angular_invariant, build_triangle
from .words import (
    COSET_LABELS,
    T1_WORD,
    T2_WORD,
    closed_form_lattice,
    decompose_orbit_point,
    evaluate_word_matrix,
    orbit_points,
    translation_lattice,
    translation_part_of,
    word_at,
    Word,
)

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst: float
    threshold: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: worst={self.worst:.3e} threshold={self.threshold:.1e} {self.detail}".rstrip()


def _result(name, worst, threshold, detail="", extra_ok=True):
    return SuiteResult(name, bool(worst <= threshold and extra_ok), float(worst), threshold, detail)


def small_grid(n: int = 20):
    ms = np.linspace(0.0, 3.0, n)
    alphas = np.linspace(0.0, 2 * math.pi, n + 2)[1:-1]
    return [(float(m), float(a)) for m in ms for a in alphas]


def big_grid(n: int = 100):
    return small_grid(n)


def generator_algebra(tol: float | None = None) -> SuiteResult:
    thr = 1e-10 if tol is None else tol
    eye = np.eye(3)
    worst = 0.0
    projective_ok = True
    for m, a in small_grid():
        g = build_triangle(TriangleParams.symmetric(m, a))
        cube1 = np.linalg.matrix_power(g.gen1, 3)
        cube2 = np.linalg.matrix_power(g.gen2, 3)
        sq3 = g.gen3 @ g.gen3
        worst = max(
            worst,
            np.abs(cube1 + eye).max(),
            np.abs(cube2 + eye).max(),
            np.abs(sq3 - eye).max(),
            *(form_residual(h) for h in g.generators),
        )
        projective_ok &= all(projective_equal(x, eye) for x in (cube1, cube2, sq3))
    return _result("generator algebra", worst, thr, "" if projective_ok else "projective check failed", projective_ok)


def configuration_fidelity(tol: float | None = None) -> SuiteResult:
    thr = 1e-9 if tol is None else tol
    worst = 0.0
    for m, a in small_grid():
        g = build_triangle(TriangleParams.symmetric(m, a))
        worst = max(
            worst,
            abs(chain_distance(g.c2, g.c3) - m),
            abs(chain_distance(g.c3, g.c1) - m),
            abs(chain_distance(g.c1, g.c2)),
        )
        d = abs(angular_invariant(*g.polars) - a)
        worst = max(worst, min(d, 2 * math.pi - d))
    return _result("configuration fidelity", worst, thr)


def translation_closed_forms(tol: float | None = None) -> SuiteResult:
    thr = 1e-9 if tol is None else tol
    worst = 0.0
    for m, a in small_grid():
        g = build_triangle(TriangleParams.symmetric(m, a))
        r, th = g.params.r1, g.params.theta
        v1, v2, t1, t2, h_nu = closed_form_lattice(r, th)
        m1 = evaluate_word_matrix(T1_WORD, g)
        m2 = evaluate_word_matrix(T2_WORD, g)
        a1, a2 = translation_part_of(m1), translation_part_of(m2)
        h = translation_part_of(np.linalg.inv(m1) @ np.linalg.inv(m2) @ m1 @ m2)
        worst = max(
            worst,
            abs(a1.xi - v1),
            abs(a1.nu - t1),
            abs(a2.xi - v2),
            abs(a2.nu - t2),
            abs(h.xi),
            # the commutator's entries pass through ~1e7 before cancelling; hold nu to relative accuracy
            abs(h.nu - h_nu) / max(1.0, abs(h_nu)),
        )
    return _result("translation closed forms", worst, thr)


def _match(z, pts, tol):
    return bool(np.min(np.abs(pts - z)) <= tol) if len(pts) else False


def orbit_normal_form(tol: float | None = None, window: float = 6.0) -> SuiteResult:
    thr = 1e-9 if tol is None else tol
    match_tol = 1e-7
    g = build_triangle(TriangleParams.symmetric(0.0, math.pi))
    lat = translation_lattice(g)
    pts = orbit_points(6, g)
    worst = 0.0
    for _, z in pts:
        rep, x, y = decompose_orbit_point(z, lat)
        worst = max(worst, abs(lat.point(rep, x, y) - z))
    s6 = np.array([z for _, z in pts])
    s10 = np.array([z for _, z in orbit_points(10, g)])
    # the length-6 set is the whole orbit inside the window
    inside6 = s6[np.abs(s6) <= window]
    inside10 = s10[np.abs(s10) <= window]
    complete = all(_match(z, inside6, match_tol) for z in inside10)
    sym_ok = complete
    for v in (lat.v1, lat.v2, lat.v2 - lat.v1):
        inner = window - abs(v)
        moved = [z + v for z in s6 if abs(z + v) <= inner]
        here = [z for z in s6 if abs(z) <= inner]
        sym_ok &= len(here) >= 5
        sym_ok &= all(_match(z, s6, match_tol) for z in moved)
        sym_ok &= all(_match(z - v, s6, match_tol) for z in here)
    detail = "" if sym_ok else "translational symmetry or window completeness failed"
    return _result("orbit normal form", worst, thr, detail, sym_ok)


_COSET_WORDS = {"Id": "Id", "j1": "1", "j2": "2", "j1^2": "11", "j2^2": "22", "j1j2": "12", "j2j1": "21"}


def coset_cases(tol: float | None = None) -> SuiteResult:
    thr_id, thr_zero, thr_min = (1e-10, 1e-12, 1e-12) if tol is None else (tol, tol, tol)
    worst_id = worst_zero = 0.0
    worst_min = -math.inf
    nonneg_ok = True
    d = 1 / SQRT3
    ts = np.arange(-d, d + 1e-12, 0.01)
    for r in (1.0, PROP1_RADIUS, 2.0):
        for t in ts:
            th = math.atan(t)
            g = build_triangle(TriangleParams.symmetric(2 * math.acosh(r), math.pi - 2 * th))
            lat = translation_lattice(g, check=False)
            scale = 3 * (r * math.cos(th)) ** 2
            table = coset_table(t)
            for label in COSET_LABELS:
                p = word_at(Word.parse(_COSET_WORDS[label]), 0j, g)
                a, b, q = table[label]
                worst_id = max(worst_id, abs(a * a + 3 * b * b - q), abs(q - abs(p) ** 2 / scale))
                zeros, others = CASE_POINTS[label]
                for u, v in zeros:
                    worst_zero = max(worst_zero, abs(g_value(label, u, v, t)))
                for u, v in others:
                    nonneg_ok &= g_value(label, u, v, t) >= -1e-12
            low = min(lattice_min_norm(lab, lat, r, th) for lab in COSET_LABELS)
            worst_min = max(worst_min, 1 - low**2 / (3 * r * r))
    ok = worst_zero <= thr_zero and worst_min <= thr_min and nonneg_ok
    worst = max(worst_id, worst_zero)
    detail = f"min-norm shortfall={worst_min:.2e}"
    return SuiteResult("coset table and cases", bool(worst_id <= thr_id and ok), worst, thr_id, detail)


def _classify_grid(n: int = 100):
    return [(m, a, classify(m, a)) for m, a in big_grid(n)]


def discrete_region_consistency(tol: float | None = None, grid=None) -> SuiteResult:
    grid = _classify_grid() if grid is None else grid
    misses = 0
    overlap = 0
    for m, a, c in grid:
        if prop1_predicate(m, a) and c.verdict is not Verdict.DISCRETE:
            misses += 1
        if c.verdict is Verdict.DISCRETE and c.shimizu_deficit > (1e-9 if tol is None else tol):
            overlap += 1
    return _result("discrete region consistency", misses + overlap, 0, f"misses={misses} overlap={overlap}")


def shimizu_region_consistency(tol: float | None = None, grid=None) -> SuiteResult:
    band = 1e-9 if tol is None else tol
    grid = _classify_grid() if grid is None else grid
    mismatches = 0
    for m, a, c in grid:
        if abs(math.cos(a) - prop2_threshold(m)) < band:
            continue
        g = build_triangle(TriangleParams.symmetric(m, a))
        shim = shimizu_violation(translation_part_of(evaluate_word_matrix(T1_WORD, g)), g.gen3)
        if shim.violated != prop2_predicate(m, a):
            mismatches += 1
        if shim.violated != (c.verdict is Verdict.NON_DISCRETE):
            mismatches += 1
    g = build_triangle(TriangleParams.symmetric(1.0, 2.0))
    radius_ok = isometric_sphere_radius(g.gen3) == 1.0
    radius_ok &= isometric_sphere_radius(np.diag([-1.0, 1.0, -1.0]).astype(complex)) == 1.0
    return _result(
        "shimizu region consistency", mismatches, 0, f"mismatches={mismatches} r_h=1:{radius_ok}", radius_ok
    )


def oracle_equivalences(tol: float | None = None, count: int = 10_000, seed: int = 7) -> SuiteResult:
    rng = np.random.default_rng(seed)
    thr_lat, thr_rt, thr_cyg = (1e-9, 1e-10, 1e-9) if tol is None else (tol, tol, tol)
    worst_lat = 0.0
    for _ in range(500):
        r = rng.uniform(1.0, 4.0)
        th = rng.uniform(-1.2, 1.2)
        label = COSET_LABELS[rng.integers(len(COSET_LABELS))]
        g = build_triangle(TriangleParams.symmetric(2 * math.acosh(r), math.pi - 2 * th))
        lat = translation_lattice(g, check=False)
        p = lat.coset_reps[label]
        xs = np.arange(-10, 11)
        xx, yy = np.meshgrid(xs, xs)
        vals = np.abs(p + xx * lat.v1 + yy * lat.v2)
        if label == "Id":
            vals[10, 10] = np.inf
        worst_lat = max(worst_lat, abs(vals.min() - lattice_min_norm(label, lat, r, th)))

    law_ok = True
    for _ in range(count):
        a = HeisTranslation(complex(*rng.normal(size=2)), float(rng.normal()))
        b = HeisTranslation(complex(*rng.normal(size=2)), float(rng.normal()))
        law_ok &= projective_equal(
            translation_matrix(compose_translations(a, b)), translation_matrix(a) @ translation_matrix(b)
        )

    worst_rt = 0.0
    for _ in range(count):
        p = HeisPoint(complex(*rng.uniform(-5, 5, size=2)), float(rng.uniform(-10, 10)))
        q = from_boundary(to_boundary(p))
        worst_rt = max(worst_rt, abs(q.zeta - p.zeta), abs(q.nu - p.nu))

    worst_cyg = 0.0
    for _ in range(count):
        p, q, s = (HeisPoint(complex(*rng.normal(size=2)), float(rng.normal())) for _ in range(3))
        t = HeisTranslation(complex(*rng.normal(size=2)), float(rng.normal()))
        dpq, dqp = cygan_distance(p, q), cygan_distance(q, p)
        worst_cyg = max(
            worst_cyg,
            abs(dpq - dqp),
            dpq - (cygan_distance(p, s) + cygan_distance(s, q)),
            abs(cygan_distance(t(p), t(q)) - dpq),
            cygan_distance(p, p),
        )
    ok = worst_lat <= thr_lat and worst_rt <= thr_rt and worst_cyg <= thr_cyg and law_ok
    worst = max(worst_lat, worst_rt, worst_cyg)
    detail = f"lattice={worst_lat:.1e} roundtrip={worst_rt:.1e} cygan={worst_cyg:.1e} group_law={law_ok}"
    return SuiteResult("oracle equivalences", bool(ok), worst, max(thr_lat, thr_rt, thr_cyg), detail)


CRIT9_M = (math.log(3.0), 1.5, 2.0, 2.5, 0.5)
CRIT9_STEP = 0.005


def cos_alpha_axis(step: float = CRIT9_STEP) -> list[float]:
    n = int(round(2 / step))
    return [math.acos(-1 + k * step) for k in range(n)]


def region_edges(tol: float | None = None, jobs: int = 1) -> SuiteResult:
    """D and N region edges of a scan at a fixed step in cos(alpha)."""
    step = CRIT9_STEP
    rows = scan_grid(CRIT9_M, cos_alpha_axis(step), jobs=jobs)
    d_edges = verdict_edges(rows, "D")
    n_edges = verdict_edges(rows, "N")
    worst = 0.0
    ok = True
    notes = []
    by_m = {}
    for row in rows:
        by_m.setdefault(row.m, []).append(row)
    for m in CRIT9_M:
        thr = prop2_threshold(m)
        ok &= len(n_edges[m]) == 1
        worst = max(worst, min((abs(e - thr) for e in n_edges[m]), default=math.inf))
        r = math.cosh(m / 2)
        if r < PROP1_RADIUS - 1e-12:
            ok &= not d_edges[m] and all(row.verdict != "D" for row in by_m[m])
            continue
        # proven discreteness interval, from the numeric lattice minimum: |f(0)|^2 >= 3 r^2
        bound = [
            (math.cos(row.alpha), row.min_lattice_norm**2 >= 3 * r * r * (1 - 1e-12)) for row in by_m[m]
        ]
        bound.sort()
        lattice_edges = [(c0 + c1) / 2 for (c0, b0), (c1, b1) in zip(bound, bound[1:]) if b0 != b1]
        ok &= len(lattice_edges) == 1
        worst = max(worst, min((abs(e + 0.5) for e in lattice_edges), default=math.inf))
        ok &= all(row.verdict == "D" for row in by_m[m] if math.cos(row.alpha) <= -0.5)
        if abs(r - PROP1_RADIUS) < 1e-12:
            ok &= len(d_edges[m]) == 1
            worst = max(worst, min((abs(e + 0.5) for e in d_edges[m]), default=math.inf))
        else:
            notes.append(f"m={m:.3g}: certificate edge {d_edges[m][-1]:+.4f}" if d_edges[m] else f"m={m:.3g}: no edge")
    threshold = step if tol is None else min(step, tol)
    return _result("region edges", worst, threshold, "; ".join(notes), ok)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "generator-algebra": generator_algebra,
    "configuration": configuration_fidelity,
    "translations": translation_closed_forms,
    "orbit": orbit_normal_form,
    "coset-cases": coset_cases,
    "discrete-region": discrete_region_consistency,
    "shimizu-region": shimizu_region_consistency,
    "oracles": oracle_equivalences,
    "edges": region_edges,
}

SCAN_SUITES = ("discrete-region", "shimizu-region")


def _run_one(name, thunk) -> SuiteResult:
    # a suite that raises under a tightened tolerance is a named failure, not a crash
    try:
        return thunk()
    except (GeometryError, InternalInconsistency) as exc:
        return SuiteResult(name, False, math.inf, math.nan, f"raised {type(exc).__name__}: {exc}")


def run_suites(fast: bool = False, tol: float | None = None, jobs: int = 1) -> list[SuiteResult]:
    results = []
    grid = None
    for name, fn in SUITES.items():
        if name in SCAN_SUITES:
            if fast:
                continue
            if grid is None:
                try:
                    grid = _classify_grid()
                except (GeometryError, InternalInconsistency) as exc:
                    grid = exc
            if isinstance(grid, Exception):
                err = grid
                results.append(SuiteResult(name, False, math.inf, math.nan, f"raised {type(err).__name__}: {err}"))
                continue
            results.append(_run_one(name, lambda: fn(tol, grid=grid)))
        elif name == "oracles" and fast:
            results.append(_run_one(name, lambda: fn(tol, count=1000)))
        elif name == "edges":
            results.append(_run_one(name, lambda: fn(tol, jobs=jobs)))
        else:
            results.append(_run_one(name, lambda: fn(tol)))
    return results
