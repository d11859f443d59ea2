"""Domain errors with stable codes.

Every error the library raises on purpose derives from PuiseuxError and
carries a machine-readable ``code``; the CLI prints that code on stderr and
maps the class to its exit status (2 for ParseError, 1 for the rest).
"""

from __future__ import annotations


class PuiseuxError(Exception):
    """Base class for all domain errors."""

    code = "error"


class ZeroDenominator(PuiseuxError):
    code = "zero-denominator"


class NegativeValue(PuiseuxError):
    """A rational outside Q>=0 reached a boundary that only models Q>=0."""

    code = "negative-value"


class NotPrime(PuiseuxError):
    code = "not-prime"


class ParseError(PuiseuxError):
    """Malformed monoid expression or rational literal.

    ``position`` is a 0-based character offset into the rejected text."""

    code = "syntax"

    def __init__(self, position: int, expected: str, found: str = ""):
        self.position = position
        self.expected = expected
        self.found = found
        shown = found if found else "end of input"
        super().__init__(f"at position {position}: expected {expected}, found {shown}")


class ValidationError(PuiseuxError):
    """Structurally valid syntax describing an invalid monoid."""

    code = "invalid-monoid"


class NegativeGenerator(ValidationError):
    code = "negative-generator"


class MixedSignsGeneratesGroup(PuiseuxError):
    """Generators of both signs generate a group, not a Puiseux monoid."""

    code = "mixed-signs"


class TrivialMonoid(PuiseuxError):
    """The zero monoid has no nonzero elements to take statistics over."""

    code = "trivial-monoid"


class NotAMember(PuiseuxError):
    code = "not-a-member"


class NonSquarefreeDenominator(PuiseuxError):
    code = "non-squarefree-denominator"


class ContradictionError(PuiseuxError):
    """Two classification rules produced opposite verdicts (engine bug)."""

    code = "contradiction"


class UnsupportedQuery(PuiseuxError):
    """The requested computation is undefined or infinite for this family."""

    code = "unsupported"
