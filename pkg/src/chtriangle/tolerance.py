"""Library-wide numeric tolerances.

The active values live in a context variable, so they can be tightened or
loosened for a block of code without touching global state::

    with tolerances(geo=1e-12):
        classify(m, alpha)
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerances:
    mat: float = DEFAULT_EPS  # projective matrix equality
    null: float = DEFAULT_EPS  # dead-band around the null cone
    geo: float = DEFAULT_EPS  # geometric comparisons and predicate boundaries

    @classmethod
    def uniform(cls, eps: float) -> "Tolerances":
        return cls(mat=eps, null=eps, geo=eps)


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "chtriangle_tolerances", default=Tolerances()
)


def get_tolerances() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def tolerances(base: Tolerances | None = None, **overrides: float):
    """Temporarily replace the active tolerances."""
    tol = base if base is not None else _current.get()
    if overrides:
        tol = dataclasses.replace(tol, **overrides)
    token = _current.set(tol)
    try:
        yield tol
    finally:
        _current.reset(token)
