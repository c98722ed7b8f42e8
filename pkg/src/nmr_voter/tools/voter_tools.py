"""MCP tools for generating, running and checking voter scenarios."""

import asyncio
import logging

from pydantic import ValidationError

from ..config import VoterConfig, validate_config
from ..errors import VoterError
from ..feeds.files import fetch_scenario, parse_scenario
from ..models.domain import SignalHealth
from ..models.scenario import FaultProfile, Scenario
from ..oracle import check_trace, enumerate_and_check
from ..sim import generator, runner

logger = logging.getLogger(__name__)

TOOL_BUDGET = 10**6


def _config(
    num_units: int,
    delta: int,
    persistence_lmt: int,
    max_simul_fault: int,
    min_required: int | None,
) -> VoterConfig:
    return validate_config(
        {
            "num_units": num_units,
            "delta": delta,
            "persistence_lmt": persistence_lmt,
            "max_simul_fault": max_simul_fault,
            "min_required": min_required,
        }
    )


async def _load(source: str | None, scenario_json: str | None) -> Scenario:
    if scenario_json:
        return parse_scenario(scenario_json)
    if source:
        return await fetch_scenario(source)
    raise VoterError("provide either source or scenario_json")


async def generate_scenario(
    num_units: int = 4,
    delta: int = 10,
    persistence_lmt: int = 3,
    max_simul_fault: int = 1,
    min_required: int | None = None,
    seed: int = 0,
    horizon: int = 50,
    fault_rate: float = 0.0,
    permanent_targets: list[int] | None = None,
    max_increment: int | None = None,
    violate_hypothesis: bool = False,
) -> dict:
    """Generate a seeded fault-injection scenario for an N-modular voter.

    The ground truth drifts smoothly; units report it with noise of at most
    delta unless a fault is injected. Permanent targets fail for the rest
    of the run from a random cycle in the first half. The same arguments
    always give the same scenario.

    Args:
        num_units: Number of redundant input units (at least 2*max_simul_fault + 1).
        delta: Noise threshold in measurement units.
        persistence_lmt: Consecutive risky cycles before a unit is isolated (>= 2).
        max_simul_fault: Maximum new simultaneous faults per cycle (>= 1).
        min_required: Minimum non-isolated units for a valid output
            (default max_simul_fault + 1).
        seed: Non-negative random seed.
        horizon: Number of cycles.
        fault_rate: Per-unit, per-cycle probability of a transient fault (0-1).
        permanent_targets: Unit ids that develop a permanent fault.
        max_increment: Largest ground-truth change per cycle (default 2*delta).
        violate_hypothesis: Allow more than max_simul_fault new faults per cycle.

    Returns:
        Dictionary with:
        - scenario: The scenario document (pass it to run_scenario or check_scenario)
        - hypothesis_ok: Whether every cycle respects the simultaneous fault hypothesis
        - error: Present instead of the above when the arguments are invalid
    """
    try:
        config = _config(num_units, delta, persistence_lmt, max_simul_fault, min_required)
        profile = FaultProfile(
            fault_rate=fault_rate,
            permanent_targets=tuple(permanent_targets or ()),
            horizon=horizon,
            max_increment=max_increment,
            violate_hypothesis=violate_hypothesis,
        )
        scenario = generator.generate_scenario(config, seed, profile)
    except (VoterError, ValidationError) as exc:
        return {"error": str(exc)}
    return {
        "scenario": scenario.model_dump(mode="json"),
        "hypothesis_ok": scenario.declared_hypothesis_ok,
    }


async def run_scenario(
    source: str | None = None,
    scenario_json: str | None = None,
    include_trace: bool = False,
) -> dict:
    """Run the voter over a scenario and summarise what it did.

    Args:
        source: Path or http(s) URL of a scenario JSON file.
        scenario_json: The scenario document itself, as a JSON string.
            Takes precedence over source.
        include_trace: Include the full per-cycle trace in the response.

    Returns:
        Dictionary with:
        - summary: cycles, switches, isolations, final validity, max_age and
          the number of cycles spent in each abstract state S0-S4
        - trace: (Optional) List of per-cycle records when include_trace=True
        - error: Present instead of the above when loading or initialisation fails
    """
    try:
        scenario = await _load(source, scenario_json)
        trace = await asyncio.to_thread(runner.run, scenario)
    except VoterError as exc:
        return {"error": str(exc)}
    result: dict = {"summary": runner.summarize(trace)}
    if include_trace:
        result["trace"] = [record.model_dump(mode="json") for record in trace]
    return result


async def check_scenario(source: str | None = None, scenario_json: str | None = None) -> dict:
    """Run a scenario and check the resulting trace against every requirement.

    Args:
        source: Path or http(s) URL of a scenario JSON file.
        scenario_json: The scenario document itself, as a JSON string.

    Returns:
        Dictionary with:
        - summary: Run summary as returned by run_scenario
        - verdict: {"pass": bool, "findings": [...], "notes": [...]}
        - error: Present instead of the above when loading or initialisation fails
    """
    try:
        scenario = await _load(source, scenario_json)
        trace = await asyncio.to_thread(runner.run, scenario)
        verdict = await asyncio.to_thread(check_trace, trace, scenario)
    except VoterError as exc:
        return {"error": str(exc)}
    return {
        "summary": runner.summarize(trace),
        "verdict": verdict.model_dump(mode="json", by_alias=True),
    }


async def enumerate_instances(
    num_units: int = 3,
    delta: int = 10,
    persistence_lmt: int = 2,
    max_simul_fault: int = 1,
    min_required: int | None = None,
    values: list[int] | None = None,
    healths: list[str] | None = None,
    horizon: int = 2,
) -> dict:
    """Exhaustively run and check the voter on every input sequence of a small instance.

    Every unit takes every combination of the given values and health
    statuses in every cycle. Requests above one million traces are refused.

    Args:
        num_units: Number of redundant input units.
        delta: Noise threshold.
        persistence_lmt: Isolation threshold (>= 2).
        max_simul_fault: Maximum new simultaneous faults per cycle.
        min_required: Minimum non-isolated units (default max_simul_fault + 1).
        values: Reading values to enumerate (default [0, 40]).
        healths: Health statuses to enumerate, "good" and/or "bad" (default both).
        horizon: Number of cycles per trace.

    Returns:
        Dictionary with verdict, traces, init_rejected, states_visited,
        transitions, conditioned_checked and conditioned_skipped, or an
        error key.
    """
    try:
        config = _config(num_units, delta, persistence_lmt, max_simul_fault, min_required)
        health_domain = [SignalHealth(h) for h in (healths or ["good", "bad"])]
        report = await asyncio.to_thread(
            enumerate_and_check,
            config,
            values or [0, 40],
            health_domain,
            horizon,
            TOOL_BUDGET,
        )
    except (VoterError, ValueError) as exc:
        return {"error": str(exc)}
    logger.debug("enumeration finished with %d traces", report.traces)
    return report.model_dump(mode="json", by_alias=True)
