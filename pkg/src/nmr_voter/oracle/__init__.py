"""Requirement oracle: state, trace and exhaustive checks."""

from .exhaustive import enumerate_and_check
from .invariants import check_state_invariants
from .mutations import MUTATIONS, mutate
from .soak import soak
from .trace import TraceChecker, check_trace

__all__ = [
    "MUTATIONS",
    "TraceChecker",
    "check_state_invariants",
    "check_trace",
    "enumerate_and_check",
    "mutate",
    "soak",
]
