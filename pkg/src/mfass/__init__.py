"""Scheduling one-period arc outages in a flow network to maximize total throughput."""

from mfass.errors import (BudgetExceeded, InfeasibleInstance, InfeasibleSchedule, MFASSError,
                          NoPerfectMatching, NotSeriesParallel, ParseError, PreconditionViolated,
                          TooLarge, UnsupportedInstance, WrongTopology)
from mfass.model import (Arc, FlowNetwork, Instance, InstanceClassTags, Schedule, ThroughputReport,
                         classify, evaluate, max_flow, validate_instance, validate_schedule)

__version__ = "0.1.0"

__all__ = [
    "Arc", "BudgetExceeded", "FlowNetwork", "InfeasibleInstance", "InfeasibleSchedule", "Instance",
    "InstanceClassTags", "MFASSError", "NoPerfectMatching", "NotSeriesParallel", "ParseError",
    "PreconditionViolated", "Schedule", "ThroughputReport", "TooLarge", "UnsupportedInstance", "WrongTopology",
    "classify", "evaluate", "max_flow", "validate_instance", "validate_schedule",
]
