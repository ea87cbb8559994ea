"""Discreteness and non-discreteness tests for [m, m, 0; 3, 3, 2] groups.

Two independent routes are kept side by side.  The numeric route works from
the generator matrices: a compression certificate built from the translation
lattice of <j1, j2> and the vertical translation H, and Shimizu's inequality
applied to g = iota2 iota1 iota2 and h = iota3.  The closed-form route is the
pair of inequalities in cos(alpha) and cosh(m/2).  :func:`classify` runs both
and refuses to answer when they disagree away from a boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateSphere,
    FixesInfinity,
    InternalInconsistency,
    UnsupportedType,
)
from .heisenberg import INFINITY, HeisTranslation, act, cygan_distance, translation_matrix
from .tolerance import get_tolerances
from .triangle import TriangleGroup, TriangleParams, build_triangle
from .words import (
    COSET_LABELS,
    T1_WORD,
    TranslationLattice,
    evaluate_word_matrix,
    translation_lattice,
    translation_part_of,
)

SQRT3 = math.sqrt(3.0)
PROP1_RADIUS = 2.0 / SQRT3


class Check(NamedTuple):
    passed: bool
    margin: float


def vertical_translation_check(r: float, theta: float) -> Check:
    """Does H = [T1, T2] lift the unit spinal sphere off itself?

    H translates vertically by 24 sqrt(3) r^2 cos^2(theta); the sphere is 2 tall.
    """
    margin = 24 * SQRT3 * (r * math.cos(theta)) ** 2 - 2.0
    return Check(margin >= -get_tolerances().geo, margin)


def _coset_coordinates(p: complex, lat: TranslationLattice, scale: float) -> tuple[float, float]:
    # scale = r^2 cos^2(theta); (a, b) centre the quadratic form in (u, v) = (y - x, x + y)
    v1c, v2c = lat.v1.conjugate(), lat.v2.conjugate()
    a = (p * (v1c - v2c)).real / (6 * scale)
    b = -(p * (v1c + v2c)).real / (18 * scale)
    return a, b


def lattice_minimum(rep: str, lat: TranslationLattice, r: float, theta: float):
    """Minimiser of |p + x v1 + y v2| over the integer lattice.

    Returns ``(norm, x, y)``.  The origin is excluded for the identity coset.
    """
    if abs(theta) >= math.pi / 2:
        raise ValueError("theta must lie in (-pi/2, pi/2)")
    p = lat.coset_reps[rep]
    scale = (r * math.cos(theta)) ** 2
    a, b = _coset_coordinates(p, lat, scale)
    sec = 1.0 / math.cos(theta)
    # Every (a, b) lies within (u-a)^2 + 3(v-b)^2 <= 7/4 of the lattice u = v mod 2,
    # and the shortest nonzero vector has value 4, so half-widths 2 and 2/sqrt(3)
    # suffice; both sit inside the (sec + 1, sec/sqrt(3) + 1) box of the proof.
    hu = min(sec + 1.0, 2.0) + 1e-9
    hv = min(sec / SQRT3 + 1.0, 2.0 / SQRT3) + 1e-9
    best = None
    for u in range(math.ceil(a - hu), math.floor(a + hu) + 1):
        for v in range(math.ceil(b - hv), math.floor(b + hv) + 1):
            if (u - v) % 2:
                continue
            if rep == "Id" and u == 0 and v == 0:
                continue
            q = (u - a) ** 2 + 3 * (v - b) ** 2
            if best is None or q < best[0]:
                best = (q, u, v)
    q, u, v = best
    return math.sqrt(3 * scale * q), (v - u) // 2, (u + v) // 2


def lattice_min_norm(rep: str, lat: TranslationLattice, r: float, theta: float) -> float:
    return lattice_minimum(rep, lat, r, theta)[0]


def coset_table(t: float) -> dict[str, tuple[float, float, float]]:
    """Closed-form (a, b, a^2 + 3 b^2) per coset representative, t = tan(theta)."""
    ts = t * SQRT3
    return {
        "Id": (0.0, 0.0, 0.0),
        "j1": (-1.0, -t / SQRT3, t * t + 1),
        "j2": (1.0, -t / SQRT3, t * t + 1),
        "j1^2": ((ts - 1) / 2, -(3 + ts) / 6, t * t + 1),
        "j2^2": ((ts + 1) / 2, (3 - ts) / 6, t * t + 1),
        "j1j2": (-(3 - ts) / 2, (3 - ts) / 6, (t - SQRT3) ** 2),
        "j2j1": ((3 + ts) / 2, -(3 + ts) / 6, (t + SQRT3) ** 2),
    }


def g_value(rep: str, u: int, v: int, t: float) -> float:
    """(u - a)^2 + 3 (v - b)^2 - sec^2(theta) for the tabulated (a, b)."""
    a, b, _ = coset_table(t)[rep]
    return (u - a) ** 2 + 3 * (v - b) ** 2 - (1 + t * t)


#: Lattice points (u, v) listed for each case, split into the ones where g
#: vanishes identically in t and the remaining ones where g >= 0 only for |t| <= 1/sqrt(3).
CASE_POINTS = {
    "Id": ((), ()),
    "j1": (((0, 0), (-2, 0)), ()),
    "j2": (((0, 0), (2, 0)), ()),
    "j1^2": (((0, 0), (-1, -1)), ((1, -1), (-2, 0))),
    "j2^2": (((0, 0), (1, 1)), ((-1, 1), (2, 0))),
    "j1j2": (((-1, 1), (-2, 0)), ((-3, 1), (0, 0))),
    "j2j1": (((1, -1), (2, 0)), ((0, 0), (3, -1))),
}


@dataclass(frozen=True)
class Certificate:
    passed: bool
    vertical_margin: float
    min_norm: float
    coset_norms: dict

    @property
    def norm_margin(self) -> float:
        return self.min_norm - 2.0


def _require_setting(params: TriangleParams) -> None:
    if params.n1 != 3 or params.n2 != 3 or params.n3 != 2 or params.m1 != params.m2:
        raise UnsupportedType("the certificate covers [m, m, 0; 3, 3, 2] groups only")


def certificate_for(g: TriangleGroup, lat: TranslationLattice | None = None) -> Certificate:
    _require_setting(g.params)
    lat = translation_lattice(g) if lat is None else lat
    r, th = g.params.r1, g.params.theta
    vert = vertical_translation_check(r, th)
    norms = {rep: lattice_min_norm(rep, lat, r, th) for rep in COSET_LABELS}
    low = min(norms.values())
    ok = vert.passed and low >= 2.0 - get_tolerances().geo
    return Certificate(ok, vert.margin, low, norms)


def params_from_r_theta(r: float, theta: float) -> TriangleParams:
    m = 2.0 * math.acosh(r)
    return TriangleParams.symmetric(m, math.pi - 2.0 * theta)


def compression_certificate(r: float, theta: float) -> Certificate:
    """Sufficient condition for discreteness; failure means "unknown", nothing more."""
    return certificate_for(build_triangle(params_from_r_theta(r, theta)))


def prop1_predicate(m: float, alpha: float) -> bool:
    """cos(alpha) <= -1/2 and cosh(m/2) >= 2/sqrt(3), both closed with an eps_geo band.

    The band keeps the boundary case m = ln 3 inside: cosh(ln(3)/2) rounds
    one ulp below 2/sqrt(3).
    """
    eps = get_tolerances().geo
    return math.cos(alpha) <= -0.5 + eps and math.cosh(m / 2) >= PROP1_RADIUS - eps


def prop2_threshold(m: float) -> float:
    return 1.0 - 1.0 / (36.0 * math.cosh(m / 2) ** 2)


def prop2_predicate(m: float, alpha: float) -> bool:
    return math.cos(alpha) > prop2_threshold(m)


def isometric_sphere_radius(h) -> float:
    """sqrt(2 / |h22 - h23 + h32 - h33|) for the representative as given."""
    h = np.asarray(h, dtype=complex)
    if act(h, INFINITY) is INFINITY:
        raise FixesInfinity("h fixes infinity; it has no isometric sphere")
    d = abs(h[1, 1] - h[1, 2] + h[2, 1] - h[2, 2])
    if d <= get_tolerances().mat:
        raise DegenerateSphere("isometric sphere radius is unbounded")
    return math.sqrt(2.0 / d)


@dataclass(frozen=True)
class ShimizuResult:
    violated: bool
    deficit: float
    radius: float
    displacement_product: float
    translation: HeisTranslation


def shimizu_violation(g_trans: HeisTranslation, h) -> ShimizuResult:
    """Test r_h^2 <= rho(g h^-1 oo, h^-1 oo) rho(g h oo, h oo) + 4 |xi|^2.

    A violation (positive deficit beyond tolerance) proves the group generated
    by g and h is not discrete.
    """
    h = np.asarray(h, dtype=complex)
    r_h = isometric_sphere_radius(h)
    gm = translation_matrix(g_trans)
    h_inf = act(h, INFINITY)
    hinv_inf = act(np.linalg.inv(h), INFINITY)
    prod = cygan_distance(act(gm, hinv_inf), hinv_inf) * cygan_distance(act(gm, h_inf), h_inf)
    deficit = r_h**2 - (prod + 4 * abs(g_trans.xi) ** 2)
    return ShimizuResult(deficit > get_tolerances().geo, deficit, r_h, prod, g_trans)


class Verdict(enum.Enum):
    DISCRETE = "Discrete"
    NON_DISCRETE = "NonDiscrete"
    UNKNOWN = "Unknown"

    @property
    def code(self) -> str:
        return {"Discrete": "D", "NonDiscrete": "N", "Unknown": "U"}[self.value]


@dataclass(frozen=True)
class Classification:
    m: float
    alpha: float
    verdict: Verdict
    vertical_margin: float
    min_lattice_norm: float
    coset_norms: dict
    translation: HeisTranslation
    shimizu_deficit: float

    @property
    def r(self) -> float:
        return math.cosh(self.m / 2)

    @property
    def theta(self) -> float:
        return (math.pi - self.alpha) / 2

    @property
    def witness(self) -> dict:
        if self.verdict is Verdict.DISCRETE:
            return {
                "vertical_margin": self.vertical_margin,
                "coset_min_norms": dict(self.coset_norms),
            }
        if self.verdict is Verdict.NON_DISCRETE:
            return {
                "xi": [self.translation.xi.real, self.translation.xi.imag],
                "nu": self.translation.nu,
                "shimizu_deficit": self.shimizu_deficit,
            }
        return {}

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "alpha": self.alpha,
            "r": self.r,
            "theta": self.theta,
            "verdict": self.verdict.value,
            "vertical_margin": self.vertical_margin,
            "min_lattice_norm": self.min_lattice_norm,
            "shimizu_deficit": self.shimizu_deficit,
            "witness": self.witness,
        }


def classify(m: float, alpha: float) -> Classification:
    eps = get_tolerances().geo
    params = TriangleParams.symmetric(m, alpha)
    g = build_triangle(params)
    lat = translation_lattice(g)
    cert = certificate_for(g, lat)
    t1 = translation_part_of(evaluate_word_matrix(T1_WORD, g))
    shim = shimizu_violation(t1, g.gen3)

    cos_a = math.cos(alpha)
    if abs(cos_a - prop2_threshold(m)) > eps and shim.violated != prop2_predicate(m, alpha):
        raise InternalInconsistency(
            f"Shimizu test ({shim.violated}) disagrees with the closed form at m={m!r}, alpha={alpha!r}"
        )
    near_prop1_edge = abs(cos_a + 0.5) <= eps or abs(params.r1 - PROP1_RADIUS) <= eps
    if prop1_predicate(m, alpha) and not cert.passed and not near_prop1_edge:
        raise InternalInconsistency(
            f"closed-form discreteness region not certified at m={m!r}, alpha={alpha!r}"
        )

    if shim.violated:
        if cert.passed:
            raise InternalInconsistency(
                f"both the certificate and the Shimizu test fire at m={m!r}, alpha={alpha!r}"
            )
        verdict = Verdict.NON_DISCRETE
    elif cert.passed:
        verdict = Verdict.DISCRETE
    else:
        verdict = Verdict.UNKNOWN
    return Classification(
        m=m,
        alpha=alpha,
        verdict=verdict,
        vertical_margin=cert.vertical_margin,
        min_lattice_norm=cert.min_norm,
        coset_norms=cert.coset_norms,
        translation=t1,
        shimizu_deficit=shim.deficit,
    )
