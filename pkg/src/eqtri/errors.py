"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class EqtriError(Exception):
    """Base class for all toolkit errors."""


class MalformedFacetError(EqtriError, ValueError):
    """A facet repeats a vertex, is empty, or carries an invalid token."""


class AbsentFaceError(EqtriError, KeyError):
    """A simplex was expected to be a face of the complex but is not."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class UnknownVertexError(EqtriError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class OverlapError(EqtriError, ValueError):
    """Two complexes that must be vertex-disjoint share a token."""


class PreconditionError(EqtriError, ValueError):
    pass


class PurityError(PreconditionError):
    """An operation that needs a pure complex of a given dimension got another."""


class InvolutionError(EqtriError, ValueError):
    pass


class CommutativityError(EqtriError, ValueError):
    pass


class EquivarianceError(EqtriError, ValueError):
    pass


class ShapeError(EqtriError, ValueError):
    """A vertex link does not have the shape a surgery step requires."""


class NotABipyramidError(ShapeError):
    pass


class ApexEdgePresentError(ShapeError):
    pass


class InducedLinkError(EqtriError, ValueError):
    pass


class IsomorphismError(EqtriError, ValueError):
    pass


class FixedVertexError(EqtriError, ValueError):
    pass


class GeometryError(EqtriError, ValueError):
    """Exact-geometry input violates the reflection-splitting configuration."""


class NotReflectionInvariantError(GeometryError):
    pass


class NonComplexError(GeometryError):
    """Folded simplices fail to form a simplicial complex."""


class ParseError(EqtriError, ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
