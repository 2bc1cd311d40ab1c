"""Exception types shared across the package."""

from __future__ import annotations


class KmrootsError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(KmrootsError):
    """Vector or matrix dimensions do not match the GCM rank."""


class GCMValidationError(KmrootsError):
    """A matrix violates the generalised-Cartan-matrix invariants.

    Carries the full list of violations; each violation is a
    (kind, i, j) triple with 1-based cell coordinates and kind in
    {"DiagonalNotTwo", "PositiveOffDiagonal", "AsymmetricZero"}.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        parts = ["%s at (%d,%d)" % v for v in self.violations]
        super().__init__("invalid GCM: " + "; ".join(parts))


class InputFormatError(KmrootsError):
    """A JSON input file could not be parsed or has the wrong shape."""


class SliceTooShallow(KmrootsError):
    """The supplied root slice does not reach the heights a query needs."""


class NotASubset(KmrootsError):
    """An operation requiring a subset relation was given incomparable sets."""


class NotNilpotent(KmrootsError):
    """The argument fails the nilpotency characterisation."""


class EqualOrOpposite(KmrootsError):
    """A pair operation was called on alpha = +/-beta."""


class PreconditionViolated(KmrootsError):
    """A documented operation precondition does not hold for the inputs."""


class InstancePreconditionViolated(PreconditionViolated):
    """A gallery-approach instance fails one of its named preconditions."""

    def __init__(self, name: str):
        self.name = name
        super().__init__("instance precondition violated: " + name)


class NotFiniteType(KmrootsError):
    """A symmetric closed set produced a Cartan matrix outside the finite
    classification; for genuinely closed symmetric input this would be
    implementation-falsifying."""


class UnrecognizedDiagram(KmrootsError):
    """A connected Cartan matrix matched none of the reference diagrams."""


class ClosureEscaped(KmrootsError):
    """A closure that is provably finite escaped its cap or hit an imaginary
    root; implementation-falsifying when raised."""
