"""Seeded fault-injection scenario generation and fault-model bookkeeping."""

import logging
from collections.abc import Iterable, Mapping

from numpy.random import SFC64, Generator, SeedSequence

from ..config import VoterConfig
from ..errors import MissingUnit, ProfileError
from ..models.domain import Reading, SignalHealth, UnitOutput, adiff
from ..models.scenario import (
    BehaviorKind,
    CycleInput,
    FaultProfile,
    InjectedUnit,
    Scenario,
    UnitBehavior,
)

logger = logging.getLogger(__name__)


def inject(
    ground_truth: int,
    behaviors: Mapping[int, UnitBehavior],
    noise: Mapping[int, int],
    config: VoterConfig,
) -> CycleInput:
    """Resolve injected behaviours into the readings each unit delivers.

    Units missing from ``behaviors`` are nominal; missing noise is zero.

    Raises:
        ProfileError: if a deviant offset is within delta, a noise term
            exceeds delta, or an unknown uid is given.
    """
    delta = config.delta
    unknown = (behaviors.keys() | noise.keys()) - set(config.uids)
    if unknown:
        raise ProfileError(f"unknown units in injection: {sorted(unknown)}")
    units = []
    for uid in config.uids:
        behavior = behaviors.get(uid) or UnitBehavior.nominal()
        jitter = noise.get(uid, 0)
        if abs(jitter) > delta:
            raise ProfileError(f"noise {jitter} of unit {uid} exceeds delta {delta}")
        if behavior.kind is BehaviorKind.DEVIANT:
            if abs(behavior.offset) <= delta:
                raise ProfileError(f"deviant offset {behavior.offset} of unit {uid} is within delta")
            value = ground_truth + behavior.offset
        else:
            value = ground_truth + jitter
        units.append(InjectedUnit(uid=uid, behavior=behavior.kind, value=max(0, value)))
    return CycleInput(ground_truth=ground_truth, units=tuple(units))


def readings_of(cycle: CycleInput, config: VoterConfig) -> list[UnitOutput]:
    """Unit outputs the voter receives in this cycle, in uid order.

    Raises:
        MissingUnit: if the cycle does not list every configured unit.
    """
    by_uid = {u.uid: u for u in cycle.units}
    if sorted(by_uid) != list(config.uids):
        raise MissingUnit("cycle input does not list every configured unit")
    return [
        UnitOutput(
            uid=uid,
            reading=Reading(
                val=by_uid[uid].value,
                hw_hlth=SignalHealth.BAD
                if by_uid[uid].behavior is BehaviorKind.BAD_HEALTH
                else SignalHealth.GOOD,
            ),
        )
        for uid in config.uids
    ]


def faulty_units(cycle: CycleInput, delta: int) -> set[int]:
    """Units showing faulty behaviour: bad health or deviation beyond delta."""
    return {
        u.uid
        for u in cycle.units
        if u.behavior is BehaviorKind.BAD_HEALTH or adiff(u.value, cycle.ground_truth) > delta
    }


class PermanenceTracker:
    """Fault-model view of which units have a permanent fault.

    A unit whose faulty behaviour has lasted persistence_lmt consecutive
    cycles is permanently faulty from the next cycle on. This follows the
    fault model only and never looks at the voter's isolation decisions.
    """

    def __init__(self, config: VoterConfig):
        self.config = config
        self.streak: dict[int, int] = dict.fromkeys(config.uids, 0)
        self.permanent: set[int] = set()

    def new_faults(self, faulty: Iterable[int]) -> int:
        """Faulty units that were not already permanently faulty."""
        return sum(1 for uid in faulty if uid not in self.permanent)

    def advance(self, faulty: set[int]) -> None:
        for uid in self.streak:
            self.streak[uid] = self.streak[uid] + 1 if uid in faulty else 0
            if self.streak[uid] >= self.config.persistence_lmt:
                self.permanent.add(uid)


def _hypothesis_flags(config: VoterConfig, cycles: Iterable[CycleInput]) -> list[bool]:
    tracker = PermanenceTracker(config)
    flags = []
    for cycle in cycles:
        faulty = faulty_units(cycle, config.delta)
        flags.append(tracker.new_faults(faulty) <= config.max_simul_fault)
        tracker.advance(faulty)
    return flags


def check_simul_fault_hypothesis(scenario: Scenario) -> list[bool]:
    """Per cycle, whether at most max_simul_fault units without a permanent
    fault show faulty behaviour."""
    return _hypothesis_flags(scenario.config, scenario.cycles)


def _check_profile(config: VoterConfig, seed: int, profile: FaultProfile) -> None:
    if seed < 0:
        raise ProfileError("seed must be non-negative")
    targets = profile.permanent_targets
    if len(targets) > config.num_units:
        raise ProfileError("more permanent targets than units")
    if len(set(targets)) != len(targets):
        raise ProfileError("permanent targets must be distinct")
    outside = [uid for uid in targets if uid not in config.uids]
    if outside:
        raise ProfileError(f"permanent targets outside 1..{config.num_units}: {outside}")


def _offset(rng: Generator, low: int, high: int) -> int:
    magnitude = int(rng.integers(low, max(low, high) + 1))
    return magnitude if rng.random() < 0.5 else -magnitude


def generate_scenario(config: VoterConfig, seed: int, profile: FaultProfile) -> Scenario:
    """Generate a deterministic scenario for the given seed.

    Ground truth wanders by at most ``max_increment`` per cycle and never
    drops below the largest deviant offset (4*delta, and at least 1), so
    deviant readings are never clamped. Permanent targets start failing at
    a random cycle in the first half of the horizon and keep one behaviour
    (bad health or a deviation beyond 3*delta) for the rest of the run. Transient faults hit each other unit
    with probability ``fault_rate``. Unless the profile asks for a
    violation, faults beyond the simultaneous fault budget are dropped.

    Raises:
        ProfileError: for a profile inconsistent with the configuration.
    """
    _check_profile(config, seed, profile)
    rng = Generator(SFC64(SeedSequence(seed)))
    delta = config.delta
    floor = max(4 * delta, 1)
    max_increment = 2 * delta if profile.max_increment is None else profile.max_increment

    onsets = {
        uid: int(rng.integers(0, profile.horizon // 2 + 1)) for uid in profile.permanent_targets
    }
    permanent_behavior = {
        uid: UnitBehavior.bad_health()
        if rng.random() < 0.5
        else UnitBehavior.deviant(_offset(rng, 3 * delta + 1, 4 * delta))
        for uid in profile.permanent_targets
    }

    tracker = PermanenceTracker(config)
    ground_truth = floor + int(rng.integers(0, 10 * delta + 101))
    cycles = []
    for t in range(profile.horizon):
        candidates: list[tuple[int, UnitBehavior]] = [
            (uid, permanent_behavior[uid])
            for uid in sorted(onsets)
            if onsets[uid] <= t
        ]
        active = {uid for uid, _ in candidates}
        for uid in config.uids:
            hit = rng.random() < profile.fault_rate
            kind = rng.random()
            offset = _offset(rng, delta + 1, 4 * delta)
            if hit and uid not in active:
                behavior = (
                    UnitBehavior.bad_health() if kind < 0.5 else UnitBehavior.deviant(offset)
                )
                candidates.append((uid, behavior))

        behaviors: dict[int, UnitBehavior] = {}
        new = 0
        for uid, behavior in candidates:
            fresh = uid not in tracker.permanent
            if fresh and new >= config.max_simul_fault and not profile.violate_hypothesis:
                continue
            behaviors[uid] = behavior
            new += fresh

        noise = {uid: int(rng.integers(-delta, delta + 1)) for uid in config.uids}
        cycle = inject(ground_truth, behaviors, noise, config)
        cycles.append(cycle)
        tracker.advance(faulty_units(cycle, delta))
        ground_truth = max(floor, ground_truth + int(rng.integers(-max_increment, max_increment + 1)))

    flags = _hypothesis_flags(config, cycles)
    if not profile.violate_hypothesis and not all(flags):
        raise ProfileError("generated scenario breaks the simultaneous fault hypothesis")
    logger.debug("generated %d cycles for seed %d", len(cycles), seed)
    return Scenario(
        config=config, seed=seed, declared_hypothesis_ok=all(flags), cycles=tuple(cycles)
    )
