"""
Exception hierarchy and CLI exit codes.
"""

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NON_PROPORTIONAL = 2
EXIT_INTERNAL = 3


class CuspforgeError(Exception):
    """Base class for every error raised by cuspforge."""


class DomainError(CuspforgeError, ValueError):
    """An operation was called outside its mathematical domain."""


class DegenerateLatticeError(DomainError):
    """Generators do not span a full-rank lattice."""


class DegenerateIntersectionError(DomainError):
    """A congruence system has an infinite solution family."""


class ParallelCurvesError(DomainError):
    """Two curves with proportional slopes were intersected."""

    def __init__(self, message: str, identical: bool):
        super().__init__(message)
        self.identical = identical


class CosetLimitError(CuspforgeError):
    """A coset enumeration would exceed the configured cap."""

    def __init__(self, index: int, cap: int):
        super().__init__(f"index {index} exceeds the coset cap {cap}")
        self.index = index
        self.cap = cap


class UnsupportedCaseError(CuspforgeError):
    """A closed form was requested outside the hypotheses it is valid under."""


class InputError(CuspforgeError, ValueError):
    """User supplied data could not be parsed or validated."""


class InternalConsistencyError(CuspforgeError):
    """Two independent computations of the same quantity disagree."""
