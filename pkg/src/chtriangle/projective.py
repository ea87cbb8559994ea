"""Linear algebra on C^{2,1}.

Vectors are complex numpy arrays of shape ``(3,)`` and isometries are complex
``(3, 3)`` arrays acting on column vectors.  Both are homogeneous: a vector
stands for a point of the projective plane, a matrix for an element of
PU(2,1), so nothing here depends on scalar representatives unless stated.
"""

from __future__ import annotations

import cmath
import enum
import math

import numpy as np

from .errors import ChainsIntersect, BadOrder, NotInteriorPoint, NotPolar, Singular, ZeroVector
from .tolerance import get_tolerances

#: Gram matrix of the Hermitian form, signature (2, 1).
J = np.diag([1.0, 1.0, -1.0]).astype(complex)

CVector3 = np.ndarray
Isometry = np.ndarray

_TANGENT_ULPS = 16 * np.finfo(float).eps


class PointClass(enum.Enum):
    NEGATIVE = "negative"
    NULL = "null"
    POSITIVE = "positive"


def vec(z1, z2, z3) -> CVector3:
    return np.array([z1, z2, z3], dtype=complex)


def hermitian_form(z, w) -> complex:
    """<z, w> = z1 conj(w1) + z2 conj(w2) - z3 conj(w3)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    re, im = [], []
    for k, s in ((0, 1.0), (1, 1.0), (2, -1.0)):
        a, b = z[k], w[k]
        re += [s * a.real * b.real, s * a.imag * b.imag]
        im += [s * a.imag * b.real, -s * a.real * b.imag]
    # exact summation keeps <c1,c2> = 1 exact for tangent chains built from shared entries
    return complex(math.fsum(re), math.fsum(im))


def norm_sq(z) -> float:
    return hermitian_form(z, z).real


def classify_vector(z) -> PointClass:
    z = np.asarray(z, dtype=complex)
    scale = float(np.vdot(z, z).real)
    if scale == 0.0:
        raise ZeroVector("the zero vector has no projective class")
    q = norm_sq(z)
    eps = get_tolerances().null * scale
    if q < -eps:
        return PointClass.NEGATIVE
    if q <= eps:
        return PointClass.NULL
    return PointClass.POSITIVE


def normalize_polar(c) -> CVector3:
    """Scale a positive vector so that <c, c> = 1."""
    c = np.asarray(c, dtype=complex)
    if classify_vector(c) is not PointClass.POSITIVE:
        raise NotPolar("polar vectors must be positive")
    return c / math.sqrt(norm_sq(c))


def bergman_distance(z, w) -> float:
    """Bergman distance between two negative vectors.

    Uses cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>).
    """
    for p in (z, w):
        if classify_vector(p) is not PointClass.NEGATIVE:
            raise NotInteriorPoint("Bergman distance needs negative vectors")
    zw = hermitian_form(z, w)
    ratio = (zw * zw.conjugate()).real / (norm_sq(z) * norm_sq(w))
    return 2.0 * math.acosh(math.sqrt(max(ratio, 1.0)))


def chain_distance(c1, c2) -> float:
    """Distance between ultra-parallel (or boundary-tangent) complex geodesics."""
    x = abs(hermitian_form(normalize_polar(c1), normalize_polar(c2)))
    if x < 1.0 - get_tolerances().geo:
        raise ChainsIntersect(f"|<c1,c2>| = {x:.6g} < 1: the complex geodesics meet")
    # acosh is singular at 1: a few ulps of round-off in x would read as ~1e-8 of distance
    if x <= 1.0 + _TANGENT_ULPS:
        return 0.0
    return 2.0 * math.acosh(x)


def reflection_matrix(c, n: int) -> Isometry:
    """Minimal complex reflection of order ``n`` in the geodesic polar to ``c``.

    z -> -z + (1 - mu) <z,c>/<c,c> c  with mu = exp(2 pi i / n).  The
    representative returned satisfies M**n = (-1)**n I exactly (up to
    round-off), not merely projectively.
    """
    if int(n) != n or n < 2:
        raise BadOrder(f"reflection order must be an integer >= 2, got {n!r}")
    c = np.asarray(c, dtype=complex)
    if classify_vector(c) is not PointClass.POSITIVE:
        raise NotPolar("reflection needs a positive polar vector")
    mu = cmath.exp(2j * math.pi / n)
    # <z, c> = (J c)^H z
    return -np.eye(3, dtype=complex) + (1 - mu) / norm_sq(c) * np.outer(c, (J @ c).conj())


def det_normalize(m) -> Isometry:
    """Divide by the principal cube root of the determinant."""
    m = np.asarray(m, dtype=complex)
    d = complex(np.linalg.det(m))
    if abs(d) == 0.0:
        raise Singular("matrix is singular")
    return m / d ** (1.0 / 3.0)


def projective_equal(a, b) -> bool:
    """True iff a and b define the same element of PU(2,1).

    Equivalent to a b^-1 = lam I with |lam| = 1 after determinant
    normalization, but tested as a least-squares scalar fit a ~ lam b on
    matrices scaled to unit largest entry: neither a cube root of det nor an
    inverse is formed, so large entries (long words) do not amplify round-off.
    """
    eps = get_tolerances().mat
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for x in (a, b):
        if not np.all(np.isfinite(x)) or np.linalg.matrix_rank(x) < 3:
            raise Singular("matrix is singular")
    a = a / np.abs(a).max()
    b = b / np.abs(b).max()
    lam = np.vdot(b, a) / np.vdot(b, b)
    return bool(np.abs(a - lam * b).max() <= eps)


def form_residual(m) -> float:
    """Entrywise residual of M^H J M = lambda J after dividing out lambda.

    Returns ``inf`` when lambda is not a positive real (the matrix is then not
    a holomorphic isometry of the ball at all).
    """
    m = np.asarray(m, dtype=complex)
    k = m.conj().T @ J @ m
    lam = np.trace(k @ J) / 3.0
    if lam.real <= 0 or abs(lam.imag) > 1e-6 * abs(lam):
        return math.inf
    return float(np.abs(k / lam.real - J).max())


def apply(m, z) -> CVector3:
    return np.asarray(m, dtype=complex) @ np.asarray(z, dtype=complex)


def same_point(z, w) -> bool:
    """Projective equality of two vectors."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    k = int(np.argmax(np.abs(w)))
    if abs(w[k]) == 0.0 or abs(z[k]) == 0.0:
        return False
    zs, ws = z / z[k], w / w[k]
    return bool(np.abs(zs - ws).max() <= get_tolerances().mat * max(1.0, float(np.abs(ws).max())))
