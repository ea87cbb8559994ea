"""Standard configuration of an ultra-parallel [m1, m2, 0; n1, n2, n3] triangle.

C1 and C2 are the vertical chains through phi1 = r2 e^{i theta} and
phi2 = -r1 e^{-i theta}, C3 is the unit circle in C x {0}, and
theta = (pi - alpha) / 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadOrder, BadRadius, DegenerateTriangle, NoSuchTriangle
from .projective import hermitian_form, normalize_polar, reflection_matrix, vec
from .tolerance import get_tolerances

TWO_PI = 2.0 * math.pi


def existence_rhs(r1: float, r2: float, r3: float) -> float:
    """Upper bound for cos(alpha): (r1^2 + r2^2 + r3^2 - 1) / (2 r1 r2 r3)."""
    for r in (r1, r2, r3):
        if not r >= 1.0:
            raise BadRadius(f"r_k = cosh(m_k/2) must be >= 1, got {r!r}")
    return (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2.0 * r1 * r2 * r3)


def triangle_exists(r1: float, r2: float, r3: float, alpha: float) -> bool:
    rhs = existence_rhs(r1, r2, r3)
    # rhs - cos(alpha) written as (rhs - 1) + 2 sin^2(alpha/2) to keep small alpha honest
    return (rhs - 1.0) + 2.0 * math.sin(alpha / 2.0) ** 2 > 0.0


@dataclass(frozen=True)
class TriangleParams:
    m1: float
    m2: float
    alpha: float
    n1: int = 3
    n2: int = 3
    n3: int = 2
    m3: float = field(default=0.0, init=False)

    def __post_init__(self):
        if not (self.m1 >= 0 and self.m2 >= 0):
            raise BadRadius("chain distances must be non-negative")
        for n in (self.n1, self.n2, self.n3):
            if int(n) != n or n < 2:
                raise BadOrder(f"reflection orders must be integers >= 2, got {n!r}")
        if not 0.0 < self.alpha < TWO_PI:
            raise NoSuchTriangle(f"angular invariant must lie in (0, 2pi), got {self.alpha!r}")

    @classmethod
    def symmetric(cls, m: float, alpha: float, n1: int = 3, n2: int = 3, n3: int = 2):
        return cls(m, m, alpha, n1, n2, n3)

    @property
    def r1(self) -> float:
        return math.cosh(self.m1 / 2)

    @property
    def r2(self) -> float:
        return math.cosh(self.m2 / 2)

    @property
    def r3(self) -> float:
        return 1.0

    @property
    def theta(self) -> float:
        return (math.pi - self.alpha) / 2


@dataclass(frozen=True, eq=False)
class TriangleGroup:
    params: TriangleParams
    c1: np.ndarray
    c2: np.ndarray
    c3: np.ndarray
    gen1: np.ndarray
    gen2: np.ndarray
    gen3: np.ndarray

    @property
    def phi1(self) -> complex:
        return self.params.r2 * cmath.exp(1j * self.params.theta)

    @property
    def phi2(self) -> complex:
        return -self.params.r1 * cmath.exp(-1j * self.params.theta)

    @property
    def polars(self):
        return (self.c1, self.c2, self.c3)

    @property
    def generators(self):
        return (self.gen1, self.gen2, self.gen3)

    def order(self, k: int) -> int:
        return (self.params.n1, self.params.n2, self.params.n3)[k - 1]

    def generator(self, k: int) -> np.ndarray:
        return self.generators[k - 1]

    @cached_property
    def _powers(self):
        out = {}
        for k in (1, 2, 3):
            g = self.generator(k)
            acc = np.eye(3, dtype=complex)
            for e in range(self.order(k)):
                out[k, e] = acc
                acc = acc @ g
        return out

    def power(self, k: int, e: int) -> np.ndarray:
        return self._powers[k, e % self.order(k)]


def build_triangle(params: TriangleParams) -> TriangleGroup:
    r1, r2, th = params.r1, params.r2, params.theta
    if not triangle_exists(r1, r2, params.r3, params.alpha):
        raise NoSuchTriangle("angular invariant violates the existence criterion")
    w2 = r2 * cmath.exp(-1j * th)
    w1 = r1 * cmath.exp(1j * th)
    c1 = vec(1, -w2, w2)
    c2 = vec(1, w1, -w1)
    c3 = vec(0, 1, 0)
    return TriangleGroup(
        params=params,
        c1=c1,
        c2=c2,
        c3=c3,
        gen1=reflection_matrix(c1, params.n1),
        gen2=reflection_matrix(c2, params.n2),
        gen3=reflection_matrix(c3, params.n3),
    )


def angular_invariant(c1, c2, c3) -> float:
    """arg(<c3,c2><c1,c3><c2,c1>) in [0, 2pi), polar vectors normalised first."""
    c1, c2, c3 = (normalize_polar(c) for c in (c1, c2, c3))
    factors = (hermitian_form(c3, c2), hermitian_form(c1, c3), hermitian_form(c2, c1))
    if min(abs(f) for f in factors) <= get_tolerances().geo:
        raise DegenerateTriangle("a pairwise inner product of the polar vectors vanishes")
    a = cmath.phase(factors[0] * factors[1] * factors[2])
    return a + TWO_PI if a < 0 else a
