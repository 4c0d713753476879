"""Exception hierarchy. The CLI maps these onto exit codes."""

from __future__ import annotations


class ProjconstError(Exception):
    """Base class for all library errors."""


class DomainError(ProjconstError, ValueError):
    """Input outside the domain of an operation (range, normalization, shape)."""


class HypothesisViolation(DomainError):
    """A closed form was asked for outside the region where it holds."""


class DegenerateFunctionalError(DomainError):
    """The zero functional has no kernel hyperplane."""


class NotAProjectionError(DomainError):
    """The vector does not pair to 1 with the functional."""


class InfeasibleVectorError(DomainError):
    """The singular pairing is not realisable by any sequence with that tail."""


class SolverError(ProjconstError, RuntimeError):
    """Internal failure of a numerical routine (a bracket that should exist does not)."""


class MalformedInput(ProjconstError, ValueError):
    """Input that cannot be parsed into the expected structure."""

    def __init__(self, message: str, problems: list[str] | None = None):
        super().__init__(message)
        self.problems = problems or [message]
