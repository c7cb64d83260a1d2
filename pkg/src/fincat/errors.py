"""Exception types shared across the package."""
from __future__ import annotations


class FincatError(Exception):
    """Base class for every error this package raises deliberately."""


class DuplicateElement(FincatError):
    """An element id was declared twice in one collection."""


class UnknownElement(FincatError):
    """An id was used that the relevant collection does not contain."""


class ResourceLimit(FincatError):
    """A requested enumeration exceeds the configured size bound."""


class TagCollision(FincatError):
    """Two tagged ids of a disjoint union encode to the same token."""


class NotSurjective(FincatError):
    """A map required to be onto misses at least one target element.

    The unhit element is available as ``witness``.
    """

    def __init__(self, message: str, witness: str):
        super().__init__(message)
        self.witness = witness


class Contradiction(FincatError):
    """Declared size facts force incompatible tags for one name.

    ``facts`` holds the conflicting pair, as human-readable strings.
    """

    def __init__(self, message: str, facts: tuple[str, str]):
        super().__init__(message)
        self.facts = facts


class LawViolation(FincatError):
    """An equality pairing fails one of the equivalence laws.

    ``witness`` is the offending pair or triple of element ids.
    """

    def __init__(self, message: str, witness: tuple[str, ...]):
        super().__init__(message)
        self.witness = witness


class NonReflexive(LawViolation):
    pass


class NonSymmetric(LawViolation):
    pass


class NonTransitive(LawViolation):
    pass


class ValidationFailed(FincatError):
    """A structure required to be valid has axiom violations.

    ``report`` carries one finding per violation, each with a witness.
    """

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report


class NotASkeleton(FincatError):
    """A functor presented as a skeleton fails skeleton verification."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report
