import math

import numpy as np
import pytest

from chtriangle import (
    HeisTranslation,
    TriangleParams,
    Verdict,
    build_triangle,
    certificate_for,
    classify,
    compression_certificate,
    coset_table,
    isometric_sphere_radius,
    lattice_min_norm,
    lattice_minimum,
    orbit_points,
    params_from_r_theta,
    prop1_predicate,
    prop2_predicate,
    prop2_threshold,
    rotation_matrix,
    shimizu_violation,
    tolerances,
    translation_matrix,
    translation_lattice,
    vertical_translation_check,
)
from chtriangle.criteria import CASE_POINTS, g_value
from chtriangle.errors import DegenerateSphere, FixesInfinity, UnsupportedType

SQ3 = math.sqrt(3)
LN3 = math.log(3)
H = np.diag([-1.0, 1.0, -1.0]).astype(complex)


def lattice(r, theta):
    return translation_lattice(build_triangle(params_from_r_theta(r, theta)))


def brute_min(rep, lat, box=12):
    p = lat.rep(rep)
    vals = [
        abs(p + x * lat.v1 + y * lat.v2)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if not (rep == "Id" and x == 0 and y == 0)
    ]
    return min(vals)


# vertical check

def test_vertical_check_examples():
    ok, margin = vertical_translation_check(1.0, 0.0)
    assert ok and margin == pytest.approx(24 * SQ3 - 2)
    ok, margin = vertical_translation_check(1.0, math.pi / 2 - 1e-9)
    assert not ok and margin == pytest.approx(-2.0, abs=1e-6)
    assert vertical_translation_check(2 / SQ3, math.pi / 6).passed


# lattice minimum

def test_lattice_min_identity_coset():
    assert lattice_min_norm("Id", lattice(1.0, 0.0), 1.0, 0.0) == pytest.approx(2 * SQ3)


def test_lattice_min_j1_and_equality_points():
    lat = lattice(1.0, 0.0)
    assert lattice_min_norm("j1", lat, 1.0, 0.0) == pytest.approx(SQ3)
    # the listed zeros of g are points where |p + x v1 + y v2|^2 = 3 r^2
    for u, v in CASE_POINTS["j1"][0]:
        x, y = (v - u) // 2, (u + v) // 2
        assert abs(lat.point("j1", x, y)) ** 2 == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("theta", [-math.pi / 6, -0.2, 0.0, 0.4, math.pi / 6])
def test_lattice_min_j1j2_bound(theta):
    r = 1.3
    lat = lattice(r, theta)
    assert lattice_min_norm("j1j2", lat, r, theta) ** 2 >= 3 * r * r * (1 - 1e-12)


@pytest.mark.parametrize("r, theta", [(1.0, 0.0), (1.1, 0.9), (2.0, -1.3), (3.5, 0.5)])
def test_lattice_min_matches_brute_force(r, theta):
    lat = lattice(r, theta)
    for rep in lat.coset_reps:
        norm, x, y = lattice_minimum(rep, lat, r, theta)
        assert norm == pytest.approx(brute_min(rep, lat), abs=1e-9)
        assert abs(lat.point(rep, x, y)) == pytest.approx(norm, abs=1e-9)


# table

def test_table_rows():
    assert coset_table(0.0)["Id"] == (0.0, 0.0, 0.0)
    a, b, s = coset_table(0.0)["j1"]
    assert (a, b, s) == pytest.approx((-1, 0, 1))


@pytest.mark.parametrize("t", np.linspace(-1 / SQ3, 1 / SQ3, 9))
def test_table_against_coset_reps(t):
    theta = math.atan(t)
    r = 1.25
    lat = lattice(r, theta)
    for rep, (a, b, s) in coset_table(t).items():
        assert a * a + 3 * b * b == pytest.approx(s, abs=1e-12)
        assert abs(lat.rep(rep)) ** 2 / (3 * (r * math.cos(theta)) ** 2) == pytest.approx(s, abs=1e-10)
        zeros, nonneg = CASE_POINTS[rep]
        for u, v in zeros:
            assert abs(g_value(rep, u, v, t)) <= 1e-12
        for u, v in nonneg:
            assert g_value(rep, u, v, t) >= -1e-12


# certificate

def test_certificate_boundary_case():
    cert = compression_certificate(2 / SQ3, 0.0)
    assert cert.passed
    assert cert.min_norm == pytest.approx(2.0, abs=1e-12)


def test_certificate_fails_at_r1():
    cert = compression_certificate(1.0, 0.0)
    assert not cert.passed
    assert cert.min_norm == pytest.approx(SQ3)


def test_certificate_large_r():
    cert = compression_certificate(10.0, 0.0)
    assert cert.passed and cert.min_norm >= 10 * SQ3 - 1e-9


def test_certificate_unsupported():
    with pytest.raises(UnsupportedType):
        certificate_for(build_triangle(TriangleParams(1.0, 2.0, 2.0)))


@pytest.mark.parametrize("m, alpha", [(3.0, math.pi / 2), (LN3, math.pi), (0.0, math.pi), (2.0, 2.0), (1.5, 2.5)])
def test_certificate_minimum_is_an_orbit_minimum(m, alpha):
    # independent oracle: nonzero |f(0)| over every reduced word up to length 10
    g = build_triangle(TriangleParams.symmetric(m, alpha))
    cert = certificate_for(g)
    orbit_min = min(abs(z) for _, z in orbit_points(10, g) if abs(z) > 1e-9)
    assert orbit_min >= cert.min_norm - 1e-9
    assert orbit_min == pytest.approx(cert.min_norm, abs=1e-9)


# closed-form predicates

def test_prop1_predicate_examples():
    assert prop1_predicate(LN3, math.pi)
    assert not prop1_predicate(2.0, math.pi / 2)
    assert not prop1_predicate(0.0, math.pi)


def test_prop2_predicate_examples():
    m = 2 * math.acosh(2)
    assert prop2_threshold(m) == pytest.approx(1 - 1 / 144)
    assert prop2_predicate(m, 0.05)
    assert not prop2_predicate(m, math.pi)
    assert not prop2_predicate(0.0, math.pi)


def test_prop2_strict_at_threshold():
    m = 2 * math.acosh(2)
    alpha = math.acos(prop2_threshold(m))
    # alpha is rounded; either side of the threshold by at most an ulp
    assert prop2_predicate(m, alpha) == (math.cos(alpha) > prop2_threshold(m))
    assert not (prop2_threshold(m) > prop2_threshold(m))


# Shimizu

def test_isometric_sphere_radius_of_h():
    assert isometric_sphere_radius(H) == 1.0
    assert isometric_sphere_radius(-H) == 1.0
    for m, a in [(0.0, 1.0), (2.0, 4.0), (LN3, math.pi)]:
        assert isometric_sphere_radius(build_triangle(TriangleParams.symmetric(m, a)).gen3) == 1.0


def test_isometric_sphere_errors():
    with pytest.raises(FixesInfinity):
        isometric_sphere_radius(rotation_matrix(1j))
    # T(xi) H sends infinity to (xi, 0); scaling the representative by 1/|xi|^2
    # drives h22 - h23 + h32 - h33 below eps_mat while infinity still moves
    xi = 1e5
    h = translation_matrix(HeisTranslation(xi, 0.0)) @ H / xi**2
    with tolerances(null=1e-14):
        with pytest.raises(DegenerateSphere):
            isometric_sphere_radius(h)


@pytest.mark.parametrize("r, theta", [(1.0, 1.5), (2.0, 1.52), (1.5, 0.3), (3.0, 1.0)])
def test_shimizu_deficit_closed_form(r, theta):
    c = r * math.cos(theta)
    t = HeisTranslation(2 * SQ3 * c * 1j, 12 * SQ3 * c * c)
    res = shimizu_violation(t, H)
    assert res.radius == 1.0
    assert res.deficit == pytest.approx(1 - 72 * c * c, abs=1e-9)
    assert res.violated == (c * c < 1 / 72)


# classify

def test_classify_discrete_at_ln3():
    c = classify(LN3, math.pi)
    assert c.verdict is Verdict.DISCRETE
    assert c.witness["coset_min_norms"]["Id"] == pytest.approx(4.0)


def test_classify_nondiscrete():
    c = classify(2 * math.acosh(2), 0.05)
    assert c.verdict is Verdict.NON_DISCRETE
    assert c.witness["shimizu_deficit"] > 0


@pytest.mark.parametrize("m", [LN3, 1.5, 2.0, 2.6])
def test_classify_gap_is_unknown(m):
    assert classify(m, math.pi / 2).verdict is Verdict.UNKNOWN


def test_certificate_reaches_alpha_half_pi_for_large_m():
    # the certificate is applied beyond the closed-form region; at m = 3 it proves discreteness at alpha = pi/2
    c = classify(3.0, math.pi / 2)
    assert c.verdict is Verdict.DISCRETE and c.min_lattice_norm > 2


def test_classify_rounded_boundary_input_is_unknown():
    # 1.0986 < ln 3 and 3.1416 > pi: just outside the certified region
    c = classify(1.0986, 3.1416)
    assert c.verdict is Verdict.UNKNOWN
    assert 1.999 < c.min_lattice_norm < 2


def test_classify_never_both():
    for m in np.linspace(0, 3, 13):
        for a in np.linspace(0.01, 2 * math.pi - 0.01, 37):
            c = classify(float(m), float(a))
            if c.verdict is Verdict.DISCRETE:
                assert c.shimizu_deficit <= 1e-9
