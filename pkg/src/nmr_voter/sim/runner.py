"""Drive the voter over a scenario and record a per-cycle trace."""

import logging
from collections import Counter
from collections.abc import Sequence
from typing import Any

from ..models.domain import IsolationStatus, ValidityStatus
from ..models.scenario import Scenario, TraceRecord, UnitSnapshot, VoterSnapshot
from ..models.state import AbstractState, VoterState
from ..voting import voter
from .generator import readings_of

logger = logging.getLogger(__name__)


def snapshot(
    vs: VoterState, cycle: int, ground_truth: int | None, prev: VoterState | None
) -> TraceRecord:
    """Flatten a voter state into the trace record of ``cycle``."""
    units = tuple(
        UnitSnapshot(
            uid=d.uid,
            val=d.u_output.reading.val,
            health=d.u_output.reading.hw_hlth,
            miscomp_status=d.u_status.miscomp_status,
            iso_status=d.u_status.iso_status,
            risky_count=d.u_status.risky_count,
        )
        for d in vs.u_data_lst
    )
    return TraceRecord(
        cycle=cycle,
        units=units,
        voter=VoterSnapshot(
            prime_uid=vs.prime_uid,
            output_val=vs.voter_output.reading.val,
            output_age=vs.output_age,
            validity=vs.voter_validity,
        ),
        prime_switched=prev is not None and prev.prime_uid != vs.prime_uid,
        ground_truth=ground_truth,
    )


def run(scenario: Scenario) -> list[TraceRecord]:
    """Run the voter over every cycle of the scenario.

    The first cycle initialises the voter; every later cycle is one step.

    Raises:
        InitError: if the voter cannot be initialised from the first cycle.
    """
    config = scenario.config
    first, *rest = scenario.cycles
    vs = voter.init(config, readings_of(first, config))
    trace = [snapshot(vs, 0, first.ground_truth, None)]
    for index, cycle in enumerate(rest, start=1):
        prev = vs
        vs = voter.step(prev, readings_of(cycle, config), config)
        trace.append(snapshot(vs, index, cycle.ground_truth, prev))
    logger.info("seed %d: %s", scenario.seed, format_summary(summarize(trace)))
    return trace


def record_state(record: TraceRecord) -> AbstractState:
    """Abstract state S0-S4 of a trace record."""
    validity = record.voter.validity
    if validity is ValidityStatus.NOT_VALID:
        return AbstractState.S4
    if validity is ValidityStatus.UN_ID:
        return AbstractState.S3
    if record.voter.output_age > 0:
        return AbstractState.S1
    if any(u.iso_status is IsolationStatus.ISOLATED for u in record.units):
        return AbstractState.S2
    return AbstractState.S0


def summarize(trace: Sequence[TraceRecord]) -> dict[str, Any]:
    """Headline numbers of a trace.

    ``max_age`` ignores not_valid records, whose age is the sentinel
    rather than a measured age.
    """
    final = trace[-1]
    states = Counter(record_state(r).value for r in trace)
    ages = [r.voter.output_age for r in trace if r.voter.validity is not ValidityStatus.NOT_VALID]
    return {
        "cycles": len(trace),
        "switches": sum(1 for r in trace if r.prime_switched),
        "isolations": sum(1 for u in final.units if u.iso_status is IsolationStatus.ISOLATED),
        "final": final.voter.validity.value,
        "max_age": max(ages, default=0),
        "states": dict(sorted(states.items())),
    }


def format_summary(summary: dict[str, Any]) -> str:
    keys = ("cycles", "switches", "isolations", "final", "max_age")
    return " ".join(f"{key}={summary[key]}" for key in keys)
