"""Fault-injection scenario generation and execution."""

from .generator import (
    check_simul_fault_hypothesis,
    faulty_units,
    generate_scenario,
    inject,
    readings_of,
)
from .runner import format_summary, record_state, run, snapshot, summarize

__all__ = [
    "check_simul_fault_hypothesis",
    "faulty_units",
    "format_summary",
    "generate_scenario",
    "inject",
    "readings_of",
    "record_state",
    "run",
    "snapshot",
    "summarize",
]
