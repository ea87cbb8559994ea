"""Exception hierarchy.

Every error raised by the library derives from :class:`GeometryError`, which is
itself a ``ValueError`` so callers that only care about bad input can catch
that instead.
"""


class GeometryError(ValueError):
    pass


class ZeroVector(GeometryError):
    pass


class NotInteriorPoint(GeometryError):
    pass


class ChainsIntersect(GeometryError):
    pass


class BadOrder(GeometryError):
    pass


class NotPolar(GeometryError):
    pass


class Singular(GeometryError):
    pass


class InfiniteArgument(GeometryError):
    pass


class NotBoundary(GeometryError):
    pass


class NotUnit(GeometryError):
    pass


class BadRadius(GeometryError):
    pass


class NoSuchTriangle(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class BadWord(GeometryError):
    pass


class UnsupportedType(GeometryError):
    pass


class NotTranslation(GeometryError):
    pass


class NotInOrbitForm(GeometryError):
    pass


class FixesInfinity(GeometryError):
    pass


class DegenerateSphere(GeometryError):
    pass


class InternalInconsistency(RuntimeError):
    """A numeric path disagrees with its closed-form counterpart."""
