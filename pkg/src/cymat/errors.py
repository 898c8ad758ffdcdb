"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CymatError(Exception):
    """Base class for all library errors."""


class EmptySet(CymatError):
    pass


class DegenerateSet(CymatError):
    pass


class OutOfRange(CymatError):
    pass


class SpreadTooLarge(CymatError):
    pass


class NonUniformCardinality(CymatError):
    pass


class EmptyFamily(CymatError):
    pass


class NotMembers(CymatError):
    pass


class BadSubset(CymatError):
    pass


class WrongCardinality(CymatError):
    pass


class MissingCyclicBasis(CymatError):
    pass


class AxiomViolation(CymatError):
    """The exchange axiom fails; ``witness`` holds ``(b1, b2, x)``."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class CyclicityViolation(CymatError):
    pass


class TooLarge(CymatError):
    """A resource cap was exceeded."""


class NotFound(CymatError):
    pass


class RankDeficient(CymatError):
    pass


class NotIrreducible(CymatError):
    pass


class ZeroElement(CymatError):
    pass


class ParseError(CymatError):
    pass
