"""The Heisenberg model of the boundary sphere.

Boundary points are either :class:`HeisPoint` ``(zeta, nu)`` with ``zeta``
complex and ``nu`` real, or the distinguished :data:`INFINITY`.  The maps
:func:`from_boundary` / :func:`to_boundary` pass between these coordinates and
null vectors of C^{2,1}; everything else is a concrete matrix or a closed
formula on Heisenberg coordinates.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BadOrder, InfiniteArgument, NotBoundary, NotUnit
from .projective import PointClass, classify_vector, vec
from .tolerance import get_tolerances


@dataclass(frozen=True)
class HeisPoint:
    zeta: complex
    nu: float

    def __iter__(self):
        yield self.zeta
        yield self.nu


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

BoundaryPoint = Union[HeisPoint, _Infinity]

ORIGIN = HeisPoint(0j, 0.0)


def is_infinity(p) -> bool:
    return p is INFINITY


def cygan_distance(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """rho_0(p, q) = | |z1 - z2|^2 - i(n1 - n2) - 2i Im(z1 conj(z2)) |^(1/2)."""
    if p is INFINITY or q is INFINITY:
        raise InfiniteArgument("the Cygan metric is defined on finite points only")
    z1, n1 = complex(p.zeta), float(p.nu)
    z2, n2 = complex(q.zeta), float(q.nu)
    w = abs(z1 - z2) ** 2 - 1j * (n1 - n2) - 2j * (z1 * z2.conjugate()).imag
    return math.sqrt(abs(w))


def from_boundary(z) -> BoundaryPoint:
    """Stereographic projection of a null vector to Heisenberg coordinates."""
    z = np.asarray(z, dtype=complex)
    if classify_vector(z) is not PointClass.NULL:
        raise NotBoundary("only null vectors lie on the boundary")
    s = z[1] + z[2]
    if abs(s) <= get_tolerances().null * float(np.linalg.norm(z)):
        return INFINITY
    return HeisPoint(complex(z[0] / s), float(((z[1] - z[2]) / s).imag))


def to_boundary(p: BoundaryPoint):
    if p is INFINITY:
        return vec(0, 1, -1)
    zeta, nu = complex(p.zeta), float(p.nu)
    x = abs(zeta) ** 2 - 1j * nu
    return vec(2 * zeta, 1 - x, 1 + x)


def act(m, p: BoundaryPoint) -> BoundaryPoint:
    """Image of a boundary point under an isometry given as a matrix."""
    return from_boundary(np.asarray(m, dtype=complex) @ to_boundary(p))


@dataclass(frozen=True)
class HeisTranslation:
    xi: complex
    nu: float

    def inverse(self) -> "HeisTranslation":
        return HeisTranslation(-self.xi, -self.nu)

    def __call__(self, p: BoundaryPoint) -> BoundaryPoint:
        if p is INFINITY:
            return INFINITY
        xi, zeta = complex(self.xi), complex(p.zeta)
        return HeisPoint(xi + zeta, p.nu + self.nu + 2 * (xi * zeta.conjugate()).imag)


IDENTITY_TRANSLATION = HeisTranslation(0j, 0.0)


def compose_translations(a: HeisTranslation, b: HeisTranslation) -> HeisTranslation:
    """Heisenberg product a * b (apply b first, then a)."""
    xa, xb = complex(a.xi), complex(b.xi)
    return HeisTranslation(xa + xb, a.nu + b.nu + 2 * (xa * xb.conjugate()).imag)


def translation_matrix(t: HeisTranslation):
    xi, nu = complex(t.xi), float(t.nu)
    h = (abs(xi) ** 2 - 1j * nu) / 2
    xb = xi.conjugate()
    return np.array(
        [
            [1, xi, xi],
            [-xb, 1 - h, -h],
            [xb, h, 1 + h],
        ],
        dtype=complex,
    )


def rotation_matrix(mu: complex):
    mu = complex(mu)
    if abs(abs(mu) - 1.0) > get_tolerances().mat:
        raise NotUnit(f"rotation factor must have modulus 1, got |mu| = {abs(mu):.6g}")
    return np.diag([mu, 1, 1]).astype(complex)


def _root_of_unity(n: int) -> complex:
    if int(n) != n or n < 2:
        raise BadOrder(f"order must be an integer >= 2, got {n!r}")
    return cmath.exp(2j * math.pi / n)


def vertical_reflection_matrix(phi: complex, n: int):
    """Order-n complex reflection in the vertical chain zeta = phi."""
    mu = _root_of_unity(n)
    phi = complex(phi)
    k = 1 - mu
    a = abs(phi) ** 2
    pb = phi.conjugate()
    return np.array(
        [
            [-mu, -k * phi, -k * phi],
            [-k * pb, k * a - 1, k * a],
            [k * pb, -k * a, -k * a - 1],
        ],
        dtype=complex,
    )


def vertical_reflection_factors(phi: complex, n: int) -> tuple[complex, HeisTranslation]:
    """(mu, T) with the reflection in C_phi equal to R_mu composed with T.

    The vertical part is read off the reflection matrix itself (image of the
    origin): nu = 2 |phi|^2 sin(2 pi / n).
    """
    mu = _root_of_unity(n)
    phi = complex(phi)
    t = HeisTranslation((mu.conjugate() - 1) * phi, 2 * abs(phi) ** 2 * math.sin(2 * math.pi / n))
    return mu, t


def rotate_vertical_chain(zeta: complex, xi: complex, n: int) -> complex:
    """Foot of the image of C_xi under the order-n reflection in C_zeta."""
    mu = _root_of_unity(n)
    return mu * xi - (mu - 1) * zeta


@dataclass(frozen=True)
class VerticalChain:
    zeta0: complex


@dataclass(frozen=True)
class FiniteChain:
    zeta0: complex
    nu0: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("finite chain radius must be positive")

    def contains(self, p: BoundaryPoint, tol: float | None = None) -> bool:
        if p is INFINITY:
            return False
        tol = get_tolerances().geo if tol is None else tol
        z0, z = complex(self.zeta0), complex(p.zeta)
        return (
            abs(abs(z - z0) - self.radius) <= tol
            and abs(p.nu - (self.nu0 - 2 * (z * z0.conjugate()).imag)) <= tol
        )


ChainRep = Union[VerticalChain, FiniteChain]


def chain_polar(c: ChainRep):
    if isinstance(c, VerticalChain):
        zb = complex(c.zeta0).conjugate()
        return vec(1, -zb, zb)
    z0, nu0, r0 = complex(c.zeta0), float(c.nu0), float(c.radius)
    a = abs(z0) ** 2
    return vec(2 * z0, 1 + r0**2 - a + 1j * nu0, 1 - r0**2 + a - 1j * nu0)


class Side(enum.Enum):
    INSIDE = "inside"
    ON = "on"
    OUTSIDE = "outside"


def spinal_sphere_side(p: BoundaryPoint) -> Side:
    """Position relative to the unit spinal sphere |zeta|^4 + nu^2 = 1."""
    if p is INFINITY:
        return Side.OUTSIDE
    s = abs(p.zeta) ** 4 + p.nu**2 - 1.0
    eps = get_tolerances().geo
    if s < -eps:
        return Side.INSIDE
    if s > eps:
        return Side.OUTSIDE
    return Side.ON
