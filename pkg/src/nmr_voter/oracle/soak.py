"""Randomized soak: many generated scenarios, each run and checked."""

import logging

from numpy.random import SFC64, Generator, SeedSequence

from ..config import VoterConfig
from ..errors import InitError
from ..models.domain import ValidityStatus
from ..models.scenario import FaultProfile, TraceRecord
from ..models.verdict import SoakReport, Verdict
from ..sim.generator import generate_scenario
from ..sim.runner import run
from .trace import check_trace

logger = logging.getLogger(__name__)

FAULT_RATES = (0.0, 0.02, 0.1, 0.3)
DELTAS = (2, 5, 10)


def _random_setup(rng: Generator, horizon: int) -> tuple[VoterConfig, FaultProfile]:
    num_units = int(rng.integers(4, 9))
    max_simul_fault = int(rng.integers(1, (num_units - 1) // 2 + 1))
    config = VoterConfig(
        num_units=num_units,
        delta=int(rng.choice(DELTAS)),
        persistence_lmt=int(rng.integers(2, 5)),
        max_simul_fault=max_simul_fault,
    )
    size = int(rng.integers(0, max_simul_fault + 2))
    targets = rng.choice(num_units, size=min(size, num_units), replace=False) + 1
    profile = FaultProfile(
        fault_rate=float(rng.choice(FAULT_RATES)),
        permanent_targets=tuple(sorted(int(uid) for uid in targets)),
        horizon=horizon,
    )
    return config, profile


def _margins(trace: list[TraceRecord], persistence_lmt: int) -> tuple[int | None, int | None]:
    switches = [0] + [r.cycle for r in trace if r.prime_switched]
    gaps = [b - a for a, b in zip(switches, switches[1:])]
    gap_margin = min(gaps) - persistence_lmt if gaps else None
    ages = [r.voter.output_age for r in trace if r.voter.validity != ValidityStatus.NOT_VALID]
    age_margin = 2 * (persistence_lmt - 1) - max(ages) if ages else None
    return gap_margin, age_margin


def _lowest(a: int | None, b: int | None) -> int | None:
    return b if a is None else a if b is None else min(a, b)


def soak(count: int, seed: int, horizon: int = 100) -> SoakReport:
    """Generate ``count`` hypothesis-respecting scenarios and check each trace.

    Configurations are drawn with 4 to 8 units and persistence_lmt 2 to 4;
    profiles mix transient fault rates with up to max_simul_fault + 1
    permanent targets. Findings carry the scenario seed in their detail;
    per-scenario notes are only logged.
    """
    rng = Generator(SFC64(SeedSequence(seed)))
    verdict = Verdict()
    cycles = switches = rejected = 0
    gap_margin: int | None = None
    age_margin: int | None = None
    for _ in range(count):
        config, profile = _random_setup(rng, horizon)
        scenario_seed = int(rng.integers(0, 2**32))
        scenario = generate_scenario(config, scenario_seed, profile)
        try:
            trace = run(scenario)
        except InitError:
            rejected += 1
            continue
        result = check_trace(trace, scenario)
        if not result.passed:
            tagged = [
                f.model_copy(update={"detail": f"seed {scenario_seed}: {f.detail}"})
                for f in result.findings
            ]
            verdict = verdict.merge(Verdict.of(tagged))
        logger.debug("seed %d: %d notes", scenario_seed, len(result.notes))
        cycles += len(trace)
        switches += sum(1 for r in trace if r.prime_switched)
        gap, age = _margins(trace, config.persistence_lmt)
        gap_margin = _lowest(gap_margin, gap)
        age_margin = _lowest(age_margin, age)
    logger.info("soaked %d scenarios, %d cycles, pass=%s", count, cycles, verdict.passed)
    return SoakReport(
        verdict=verdict,
        scenarios=count,
        cycles=cycles,
        switches=switches,
        init_rejected=rejected,
        min_switch_gap_margin=gap_margin,
        min_age_margin=age_margin,
    )
