"""Error types raised by the sqmk engine."""

from typing import Any, Optional


class SqmkError(Exception):
    """Base class for every error raised by the engine."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class UnknownGenerator(SqmkError):
    """A word or expression mentions a symbol the presentation never declared."""


class UnknownCell(SqmkError):
    """A cell is not a generator of the presentation at hand."""


class InvalidHom(SqmkError):
    """Generator images do not define a homomorphism."""


class NoncentralWitness(SqmkError):
    """A kernel element failed a commutation spot check."""


class NotACycle(SqmkError):
    """A degree-1 element has nontrivial boundary."""


class NotFree(SqmkError):
    """The degree-0 group of a presentation has relators."""


class MissingStructure(SqmkError):
    """A model lacks a flag or oracle required by the requested mode."""


class SimplicialIdentityViolation(SqmkError):
    """A model failed its face/degeneracy self-check."""


class AxiomFailure(SqmkError):
    """Determinant-functor data failed verification."""


class EnumerationBudgetExceeded(SqmkError):
    """A model enumeration grew past the configured cell budget."""


class ZeroInput(SqmkError):
    """Zero passed where a unit is required."""


class DegreeOverflow(SqmkError):
    """A rational function exceeded the configured degree cap."""


class NonSquare(SqmkError):
    """Square matrix required."""


class UnsupportedField(SqmkError):
    """Ring descriptor outside the supported list."""


class NotAcyclic(SqmkError):
    """A 3-periodic complex is not exact at some spot."""

    def __init__(self, message: str, spot: Optional[int] = None):
        super().__init__(message, witness=spot)
        self.spot = spot


class NotInvertible(SqmkError):
    """Matrix is singular."""


class NotTriangular(SqmkError):
    """Matrix is not upper triangular."""


class MismatchedPair(SqmkError):
    """Two weak triangles do not share the required edges."""


class NotA3x3(SqmkError):
    """Four 3-cells do not satisfy the 3x3 matching equations."""


class ModeMismatch(SqmkError):
    """Operation needs a presentation built in another mode."""


class MissingWitness(SqmkError):
    """A required witness cell is not available in the model."""


class SearchExhausted(SqmkError):
    """A bounded search ended before reaching every target."""
