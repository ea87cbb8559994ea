"""Words in <iota1, iota2>, their orbits, and the translation lattice.

A :class:`Word` is a reduced word in the free product of two cyclic groups:
alternating syllables ``(generator, exponent)`` with ``1 <= exponent < n``.
Written as a string each syllable expands to repeated letters, so ``"112"``
is iota1^2 iota2, and a word acts on the left: ``"212"`` means apply iota2,
then iota1, then iota2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BadWord, InternalInconsistency, NotInOrbitForm, NotTranslation, UnsupportedType
from .heisenberg import (
    INFINITY,
    ORIGIN,
    HeisTranslation,
    compose_translations,
    to_boundary,
    translation_matrix,
)
from .projective import projective_equal
from .tolerance import get_tolerances
from .triangle import TriangleGroup

SQRT3 = math.sqrt(3.0)

COSET_LABELS = ("Id", "j1", "j2", "j1^2", "j2^2", "j1j2", "j2j1")


@dataclass(frozen=True)
class Word:
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.syllables:
            if gen not in (1, 2) or exp < 1:
                raise BadWord(f"bad syllable {(gen, exp)!r}")
            if gen == prev:
                raise BadWord("adjacent syllables must use different generators")
            prev = gen

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text in ("", "Id"):
            return cls()
        syl: list[tuple[int, int]] = []
        for ch in text:
            if ch not in "12":
                raise BadWord(f"unknown letter {ch!r} in {text!r}")
            g = int(ch)
            if syl and syl[-1][0] == g:
                syl[-1] = (g, syl[-1][1] + 1)
            else:
                syl.append((g, 1))
        return cls(tuple(syl))

    def __len__(self) -> int:
        return sum(e for _, e in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "Id"
        return "".join(str(g) * e for g, e in self.syllables)

    def check_orders(self, n1: int, n2: int) -> None:
        for g, e in self.syllables:
            if e >= (n1 if g == 1 else n2):
                raise BadWord(f"exponent {e} of generator {g} is not below its order")


IDENTITY_WORD = Word()


def enumerate_words(max_len: int, n1: int = 3, n2: int = 3) -> Iterator[Word]:
    """All reduced words of letter length <= max_len, shortest first."""
    orders = {1: n1, 2: n2}

    def tails(length: int, last: int):
        if length == 0:
            yield ()
            return
        for g in (1, 2):
            if g == last:
                continue
            for e in range(1, min(orders[g] - 1, length) + 1):
                for rest in tails(length - e, g):
                    yield ((g, e),) + rest

    for length in range(max_len + 1):
        for syl in tails(length, 0):
            yield Word(syl)


def evaluate_word_matrix(w: Word, g: TriangleGroup) -> np.ndarray:
    w.check_orders(g.params.n1, g.params.n2)
    m = np.eye(3, dtype=complex)
    for gen, e in w.syllables:
        m = m @ g.power(gen, e)
    return m


def _phi(k: int, g: TriangleGroup) -> complex:
    if k == 1:
        return g.phi1
    if k == 2:
        return g.phi2
    raise BadWord(f"no planar rotation for generator {k!r}")


def project_rotation(k: int, exp: int, z: complex, g: TriangleGroup) -> complex:
    """j_k^exp(z): rotation of C about phi_k through exp * 2pi / n_k."""
    mu = cmath.exp(2j * math.pi * exp / g.order(k))
    return mu * z + (1 - mu) * _phi(k, g)


def word_at(w: Word, z: complex, g: TriangleGroup) -> complex:
    for gen, e in reversed(w.syllables):
        z = project_rotation(gen, e, z, g)
    return z


def orbit_points(max_len: int, g: TriangleGroup) -> list[tuple[Word, complex]]:
    """(w, f_w(0)) for every reduced word up to ``max_len`` letters."""
    return [(w, word_at(w, 0j, g)) for w in enumerate_words(max_len, g.params.n1, g.params.n2)]


def translation_part_of(m) -> HeisTranslation:
    """Recover (xi, nu) from a matrix that is projectively a Heisenberg translation.

    A translation is lam * T(xi, nu) with T[0, 0] = 1, and T sends the origin
    [0, 1, 1] to [2 xi, 1 - x, 1 + x] with x = |xi|^2 - i nu and fixes
    [0, 1, -1].  Reading these vectors directly avoids dividing by the small
    z2 + z3 of the stereographic projection, which loses |xi|^2 digits.
    """
    m = np.asarray(m, dtype=complex)
    e = m @ to_boundary(INFINITY)
    lam = (e[1] - e[2]) / 2
    # fixing infinity means e is proportional to [0, 1, -1], up to round-off in m's entries
    off = max(abs(e[0]), abs(e[1] + e[2]))
    if lam == 0 or off > get_tolerances().mat * max(abs(lam), float(np.abs(m).max())):
        raise NotTranslation("matrix does not fix infinity")
    # R_mu T scales row 0 by mu; the check is relative to the entry size for the same reason
    rot = m[0, 0] / lam
    if abs(rot - 1.0) > get_tolerances().mat * max(1.0, float(np.abs(m).max()) / abs(lam)):
        raise NotTranslation(f"rotational part {rot:.6g} is not 1")
    o = m @ to_boundary(ORIGIN)
    xi = complex(o[0] / (2 * lam))
    x = (o[2] - o[1]) / (2 * lam)
    t = HeisTranslation(xi, float(-x.imag))
    if not projective_equal(translation_matrix(t), m):
        raise NotTranslation("matrix is not a Heisenberg translation")
    return t


@dataclass(frozen=True)
class TranslationLattice:
    v1: complex
    v2: complex
    t1: float
    t2: float
    h_nu: float
    coset_reps: dict

    def rep(self, label: str) -> complex:
        return self.coset_reps[label]

    def point(self, label: str, x: int, y: int) -> complex:
        return self.coset_reps[label] + x * self.v1 + y * self.v2


_COSET_WORDS = {
    "Id": "Id",
    "j1": "1",
    "j2": "2",
    "j1^2": "11",
    "j2^2": "22",
    "j1j2": "12",
    "j2j1": "21",
}

T1_WORD = Word.parse("212")
T2_WORD = Word.parse("112")


def _require_setting(g: TriangleGroup) -> None:
    p = g.params
    if p.n1 != 3 or p.n2 != 3 or abs(p.m1 - p.m2) > get_tolerances().geo:
        raise UnsupportedType("the translation lattice is derived for n1 = n2 = 3 and m1 = m2")


def closed_form_lattice(r: float, theta: float) -> tuple[complex, complex, float, float, float]:
    """(v1, v2, t1, t2, h_nu) as closed forms in r and theta."""
    rc = r * math.cos(theta)
    v1 = 2 * SQRT3 * rc * 1j
    v2 = rc * (3 + 1j * SQRT3)
    t1 = 12 * SQRT3 * rc * rc
    t2 = 12 * r * r * math.sin(theta) * math.cos(theta)
    return v1, v2, t1, t2, 24 * SQRT3 * rc * rc


def translation_lattice(g: TriangleGroup, check: bool = True) -> TranslationLattice:
    _require_setting(g)
    r, th = g.params.r1, g.params.theta
    v1, v2, t1, t2, h_nu = closed_form_lattice(r, th)
    if check:
        m1 = evaluate_word_matrix(T1_WORD, g)
        m2 = evaluate_word_matrix(T2_WORD, g)
        tr1 = translation_part_of(m1)
        tr2 = translation_part_of(m2)
        # commutator through the group law: multiplying four large matrices costs
        # |m|^2 digits, and m1, m2 were just verified to be these translations
        h = compose_translations(
            compose_translations(tr1.inverse(), tr2.inverse()), compose_translations(tr1, tr2)
        )
        scale = max(1.0, abs(t1), abs(h_nu))
        # 1e-9 relative, widened to a forward round-off bound once the word entries grow large
        roundoff = 64 * np.finfo(float).eps * float(np.abs(m1).max() * np.abs(m2).max())
        eps = max(1e-9, roundoff) * scale
        diffs = (
            abs(tr1.xi - v1),
            abs(tr1.nu - t1),
            abs(tr2.xi - v2),
            abs(tr2.nu - t2),
            abs(h.xi),
            abs(h.nu - h_nu),
        )
        if max(diffs) > eps:
            raise InternalInconsistency(f"closed-form lattice disagrees with matrices: {diffs}")
    reps = {label: word_at(Word.parse(w), 0j, g) for label, w in _COSET_WORDS.items()}
    return TranslationLattice(v1=v1, v2=v2, t1=t1, t2=t2, h_nu=h_nu, coset_reps=reps)


def decompose_orbit_point(f0: complex, lat: TranslationLattice, accept: float = 1e-6):
    """Write an orbit point as p + x v1 + y v2 with p a coset representative.

    Returns ``(label, x, y)``.  Among representatives giving integral
    coordinates the smallest |x| + |y| wins, then label order.
    """
    a = np.array([[lat.v1.real, lat.v2.real], [lat.v1.imag, lat.v2.imag]])
    eps = get_tolerances().geo * (1 + abs(f0))
    best = None
    for order, label in enumerate(COSET_LABELS):
        d = f0 - lat.coset_reps[label]
        xy = np.linalg.solve(a, [d.real, d.imag])
        x, y = (int(round(c)) for c in xy)
        if max(abs(xy[0] - x), abs(xy[1] - y)) > accept:
            continue
        if abs(lat.point(label, x, y) - f0) > eps:
            continue
        key = (abs(x) + abs(y), order)
        if best is None or key < best[0]:
            best = (key, (label, x, y))
    if best is None:
        raise NotInOrbitForm(f"{f0!r} is not of the form p + x v1 + y v2")
    return best[1]
