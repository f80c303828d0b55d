"""Exception hierarchy shared by all solvers."""

from __future__ import annotations


class MFASSError(Exception):
    """Base class for every error raised by this package."""


class InfeasibleInstance(MFASSError):
    """More jobs than the per-period limits can absorb over the horizon."""


class InfeasibleSchedule(MFASSError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "infeasible schedule")


class NotSeriesParallel(MFASSError):
    """Raised when the network is not two-terminal series-parallel.

    ``witness`` holds the irreducible remainder as ``(tail, head)`` pairs.
    """

    def __init__(self, witness: list[tuple[int, int]], message: str | None = None):
        self.witness = witness
        super().__init__(message or f"network is not series-parallel; irreducible remainder {witness}")


class TooLarge(MFASSError):
    pass


class BudgetExceeded(MFASSError):
    pass


class WrongTopology(MFASSError):
    pass


class PreconditionViolated(MFASSError):
    pass


class NoPerfectMatching(MFASSError):
    pass


class UnsupportedInstance(MFASSError):
    pass


class ParseError(MFASSError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
