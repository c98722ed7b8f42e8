"""Shared fixtures and builders for the voter tests."""

import pytest

from nmr_voter.config import VoterConfig
from nmr_voter.models.domain import Reading, SignalHealth, UnitOutput
from nmr_voter.models.scenario import BehaviorKind, CycleInput, InjectedUnit, Scenario


def make_outputs(vals, healths=None) -> list[UnitOutput]:
    """Unit outputs for uids 1..len(vals); healths given as 'g'/'b' letters."""
    healths = healths or "g" * len(vals)
    return [
        UnitOutput(
            uid=uid,
            reading=Reading(
                val=val, hw_hlth=SignalHealth.GOOD if h == "g" else SignalHealth.BAD
            ),
        )
        for uid, (val, h) in enumerate(zip(vals, healths), start=1)
    ]


def make_scenario(config: VoterConfig, rows, ground_truth: int = 100) -> Scenario:
    """Scenario from rows of per-unit (value, behaviour) pairs or plain values."""
    cycles = []
    for row in rows:
        units = []
        for uid, entry in enumerate(row, start=1):
            value, behavior = entry if isinstance(entry, tuple) else (entry, BehaviorKind.NOMINAL)
            units.append(InjectedUnit(uid=uid, behavior=behavior, value=value))
        cycles.append(CycleInput(ground_truth=ground_truth, units=tuple(units)))
    return Scenario(config=config, seed=0, declared_hypothesis_ok=True, cycles=tuple(cycles))


@pytest.fixture
def config4() -> VoterConfig:
    """Four units, delta 10, persistence 2, one simultaneous fault."""
    return VoterConfig(num_units=4, delta=10, persistence_lmt=2, max_simul_fault=1)


@pytest.fixture
def config4p3() -> VoterConfig:
    return VoterConfig(num_units=4, delta=10, persistence_lmt=3, max_simul_fault=1)


@pytest.fixture
def prime_fault_scenario(config4) -> Scenario:
    """Prime unit 1 reports bad health in cycles 1 and 2, isolated at cycle 2."""
    bad = (100, BehaviorKind.BAD_HEALTH)
    return make_scenario(
        config4,
        [
            [100, 101, 99, 100],
            [bad, 101, 99, 100],
            [bad, 100, 99, 101],
            [100, 100, 100, 100],
            [100, 102, 98, 100],
        ],
    )
