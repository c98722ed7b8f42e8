"""Data models for the voter, its scenarios and oracle verdicts."""

from .domain import (
    IsolationStatus,
    MiscompStatus,
    Reading,
    SignalHealth,
    UnitData,
    UnitOutput,
    UnitStatus,
    ValidityStatus,
)
from .scenario import (
    BehaviorKind,
    CycleInput,
    FaultProfile,
    InjectedUnit,
    Scenario,
    TraceRecord,
    UnitBehavior,
)
from .state import AbstractState, VoterState
from .verdict import EnumerationReport, Finding, SoakReport, Verdict

__all__ = [
    "AbstractState",
    "BehaviorKind",
    "CycleInput",
    "EnumerationReport",
    "FaultProfile",
    "Finding",
    "InjectedUnit",
    "IsolationStatus",
    "MiscompStatus",
    "Reading",
    "Scenario",
    "SoakReport",
    "SignalHealth",
    "TraceRecord",
    "UnitBehavior",
    "UnitData",
    "UnitOutput",
    "UnitStatus",
    "ValidityStatus",
    "Verdict",
    "VoterState",
]
