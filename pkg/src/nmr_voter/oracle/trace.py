"""Trace-level requirement checks, re-derived from recorded data.

Every predicate here is computed from the readings and statuses written
to the trace. Pairwise comparisons use a numpy distance matrix rather
than the voter's per-unit counting, so agreement between the two is
evidence rather than a restatement.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..config import VoterConfig
from ..errors import TraceMismatch
from ..models.domain import IsolationStatus, MiscompStatus, SignalHealth, ValidityStatus
from ..models.scenario import CycleInput, Scenario, TraceRecord
from ..models.state import AbstractState
from ..models.verdict import Finding, Verdict
from ..sim.generator import check_simul_fault_hypothesis, readings_of
from ..sim.runner import record_state

logger = logging.getLogger(__name__)

S0, S1, S2, S3, S4 = AbstractState
ALLOWED_EDGES: dict[AbstractState, frozenset[AbstractState]] = {
    S0: frozenset({S0, S1, S2, S4}),
    S1: frozenset({S0, S1, S2, S3, S4}),
    S2: frozenset({S1, S2, S4}),
    S3: frozenset({S2, S3, S4}),
    S4: frozenset({S4}),
}

MIS = MiscompStatus.MISCOMPARING
NOT_MIS = MiscompStatus.NOT_MISCOMPARING
MAYBE = MiscompStatus.MAYBE_MISCOMPARING


@dataclass(frozen=True, slots=True)
class RecordView:
    """Array form of one trace record.

    ``record`` is None for the synthetic view before the first cycle, in
    which every unit is non-isolated, not_miscomparing and at risky 0.
    """

    record: TraceRecord | None
    uids: tuple[int, ...]
    vals: np.ndarray
    good: np.ndarray
    isolated: np.ndarray
    risky: np.ndarray
    status: tuple[MiscompStatus, ...]

    @classmethod
    def of(cls, record: TraceRecord) -> "RecordView":
        units = record.units
        return cls(
            record=record,
            uids=tuple(u.uid for u in units),
            vals=np.array([u.val for u in units], dtype=np.int64),
            good=np.array([u.health == SignalHealth.GOOD for u in units], dtype=bool),
            isolated=np.array(
                [u.iso_status == IsolationStatus.ISOLATED for u in units], dtype=bool
            ),
            risky=np.array([u.risky_count for u in units], dtype=np.int64),
            status=tuple(MiscompStatus(u.miscomp_status) for u in units),
        )

    @classmethod
    def before_start(cls, config: VoterConfig) -> "RecordView":
        n = config.num_units
        return cls(
            record=None,
            uids=config.uids,
            vals=np.zeros(n, dtype=np.int64),
            good=np.ones(n, dtype=bool),
            isolated=np.zeros(n, dtype=bool),
            risky=np.zeros(n, dtype=np.int64),
            status=(NOT_MIS,) * n,
        )

    @property
    def cycle(self) -> int:
        return -1 if self.record is None else self.record.cycle

    @property
    def non_isolated(self) -> int:
        return int(np.count_nonzero(~self.isolated))

    def healthy(self) -> np.ndarray:
        not_mis = np.array([s == NOT_MIS for s in self.status], dtype=bool)
        return self.good & ~self.isolated & not_mis

    def first_healthy_uid(self) -> int | None:
        hits = np.flatnonzero(self.healthy())
        return self.uids[int(hits[0])] if hits.size else None

    def index(self, uid: int) -> int | None:
        try:
            return self.uids.index(uid)
        except ValueError:
            return None


@dataclass(frozen=True, slots=True)
class Rederived:
    """Independent classification of one cycle's good non-isolated pool."""

    pool: np.ndarray
    limit: int
    miscomparing: np.ndarray
    maybe: np.ndarray
    rem: int

    @property
    def healthy_exists(self) -> bool:
        return bool(np.any(~self.miscomparing & ~self.maybe))


def rederive(
    prev_isolated: np.ndarray, vals: np.ndarray, good: np.ndarray, config: VoterConfig
) -> Rederived:
    live = ~prev_isolated
    pool = np.flatnonzero(live & good)
    limit = max(0, config.max_simul_fault - int(np.count_nonzero(live & ~good)))
    v = vals[pool]
    apart = np.abs(v[:, None] - v[None, :]) > 2 * config.delta
    miscomparing = apart.sum(axis=1) >= limit + 1
    rem = max(0, limit - int(np.count_nonzero(miscomparing)))
    keep = ~miscomparing
    # agreement counted among the remaining pool, minus the unit itself
    agree = (~apart[:, keep]).sum(axis=1) - 1
    maybe = keep & (agree < rem)
    return Rederived(pool=pool, limit=limit, miscomparing=miscomparing, maybe=maybe, rem=rem)


class TraceChecker:
    """Requirement checks over one pair of consecutive trace records.

    Shared by check_trace and the exhaustive enumerator; callers carry
    the previous view and the cycle of the last prime switch.
    """

    def __init__(self, config: VoterConfig):
        self.config = config

    def rederive(self, prev: RecordView, now: RecordView) -> Rederived:
        return rederive(prev.isolated, now.vals, now.good, self.config)

    def unconditional(
        self, prev: RecordView, now: RecordView, cls: Rederived, last_switch: int
    ) -> list[Finding]:
        """Checks that hold for every input, faulty or not."""
        found: list[Finding] = []
        self._unit_checks(prev, now, found)
        self._classification_checks(now, cls, found)
        self._output_checks(now, found)
        if prev.record is None:
            self._start_checks(now, found)
        else:
            self._transition_checks(prev, now, last_switch, found)
        return found

    def next_switch(self, prev: RecordView, now: RecordView, last_switch: int) -> int:
        if prev.record is not None and now.record.voter.prime_uid != prev.record.voter.prime_uid:
            return now.cycle
        return last_switch

    def admissible_truths(
        self, prev: RecordView, now: RecordView, candidates: np.ndarray
    ) -> np.ndarray:
        """Candidate ground truths under which this cycle has at most
        max_simul_fault faulty units among those the voter had not isolated."""
        live = ~prev.isolated
        bad = int(np.count_nonzero(live & ~now.good))
        vals = now.vals[live & now.good]
        off = (np.abs(vals[None, :] - candidates[:, None]) > self.config.delta).sum(axis=1)
        return candidates[bad + off <= self.config.max_simul_fault]

    def local_fault_ok(self, prev: RecordView, now: RecordView, ground_truth: int) -> bool:
        return self.admissible_truths(prev, now, np.array([ground_truth], dtype=np.int64)).size > 0

    def conditioned(
        self, prev: RecordView, now: RecordView, ground_truth: int, cls: Rederived
    ) -> tuple[list[Finding], list[str]]:
        """Soundness, completeness and R12 against a known ground truth.

        Only meaningful when the fault hypothesis holds for this cycle.
        """
        delta = self.config.delta
        t = now.cycle
        found: list[Finding] = []
        notes: list[str] = []
        dev = np.abs(now.vals - ground_truth)
        complete = cls.pool.size >= 2 * cls.limit + 1
        for i in cls.pool:
            uid, status, d = now.uids[i], now.status[i], int(dev[i])
            if status == MIS and d <= delta:
                found.append(Finding(cycle=t, check="SoundA", uid=uid, detail=f"deviation {d}"))
            if status == NOT_MIS and d > 3 * delta:
                found.append(Finding(cycle=t, check="SoundB", uid=uid, detail=f"deviation {d}"))
            if not complete:
                continue
            if status == MAYBE:
                found.append(Finding(cycle=t, check="R2", uid=uid, detail="maybe_miscomparing"))
            if d > 3 * delta and status != MIS:
                found.append(Finding(cycle=t, check="CompA", uid=uid, detail=f"{status}, deviation {d}"))
            if d <= delta and status != NOT_MIS:
                found.append(Finding(cycle=t, check="CompB", uid=uid, detail=f"{status}, deviation {d}"))
        if complete:
            validity = now.record.voter.validity
            if now.non_isolated >= self.config.min_required and validity != ValidityStatus.VALID:
                found.append(Finding(cycle=t, check="R12", detail=str(validity)))
            bad = [now.uids[i] for i in np.flatnonzero(~prev.isolated & ~now.good)]
            if bad:
                notes.append(f"cycle {t}: bad-health units {bad} stay maybe_miscomparing (broad R2)")
        return found, notes

    def _unit_checks(self, prev: RecordView, now: RecordView, found: list[Finding]) -> None:
        p = self.config.persistence_lmt
        t = now.cycle
        for i, uid in enumerate(now.uids):
            risky, prev_risky = int(now.risky[i]), int(prev.risky[i])
            iso, status = bool(now.isolated[i]), now.status[i]
            if risky > p or (risky == p) != iso:
                found.append(Finding(cycle=t, check="R6", uid=uid, detail=f"risky_count {risky}"))
            if (risky == 0) != (bool(now.good[i]) and not iso and status == NOT_MIS):
                found.append(Finding(cycle=t, check="pf_healthy", uid=uid, detail=f"risky_count {risky}"))
            if prev.isolated[i]:
                if not iso or risky != prev_risky or status != prev.status[i]:
                    found.append(Finding(cycle=t, check="R7", uid=uid, detail="isolated unit changed"))
                continue
            flagged = not now.good[i] or status != NOT_MIS
            if risky not in (0, prev_risky + 1) or (risky == prev_risky + 1) != flagged:
                found.append(
                    Finding(
                        cycle=t,
                        check="R1",
                        uid=uid,
                        detail=f"risky_count {prev_risky} -> {risky} with {status}",
                    )
                )

    def _classification_checks(self, now: RecordView, cls: Rederived, found: list[Finding]) -> None:
        t = now.cycle
        for j, i in enumerate(cls.pool):
            uid, status = now.uids[i], now.status[i]
            if (status == MIS) != bool(cls.miscomparing[j]):
                found.append(Finding(cycle=t, check="R4", uid=uid, detail=str(status)))
            if (status == MAYBE) != bool(cls.maybe[j]):
                found.append(Finding(cycle=t, check="R5", uid=uid, detail=str(status)))

    def _output_checks(self, now: RecordView, found: list[Finding]) -> None:
        config = self.config
        p = config.persistence_lmt
        t = now.cycle
        voter = now.record.voter
        i = now.index(voter.prime_uid)
        if i is None:
            found.append(Finding(cycle=t, check="pf_v_output", uid=voter.prime_uid))
            return
        validity, age = voter.validity, voter.output_age
        valid = validity == ValidityStatus.VALID
        not_valid = validity == ValidityStatus.NOT_VALID
        enough = now.non_isolated >= config.min_required
        healthy = now.healthy()
        prime_iso = bool(now.isolated[i])
        fresh = bool(healthy[i]) and voter.output_val == int(now.vals[i])

        def flag(check: str, detail: str, uid: int | None = voter.prime_uid) -> None:
            found.append(Finding(cycle=t, check=check, uid=uid, detail=detail))

        if not_valid == enough:
            flag("R10", f"{now.non_isolated} non-isolated units with {validity}", None)
        if (validity == ValidityStatus.UN_ID) != (enough and prime_iso):
            flag("R11", f"{validity} with prime isolated={prime_iso}")
        if validity == ValidityStatus.UN_ID and healthy.any():
            flag("R11", "un_id while a unit provides healthy data", None)
        if enough and healthy.any() and not valid:
            flag("R13", f"{validity} while a unit provides healthy data", None)
        if valid and prime_iso:
            flag("pf_out_not_isolated", "valid output from an isolated prime")
        if valid and age != int(now.risky[i]):
            flag("R14", f"age {age} differs from prime risky_count {int(now.risky[i])}")
        if not not_valid:
            live = ~now.isolated
            if np.any(age - now.risky[live] >= p):
                flag("Claim5", f"age {age} outruns a non-isolated unit's risky_count")
            if age > 2 * (p - 1):
                flag("Prop3", f"age {age} above {2 * (p - 1)}")
        if (age < p) != valid or (age >= 2 * p) != not_valid:
            flag("R16", f"age {age} with {validity}")
        if (age == 0) != (valid and fresh):
            flag("R15", f"age {age} with {validity}")
        if age == 0 and not fresh:
            flag("R8", "fresh output is not the prime's healthy reading")

    def _start_checks(self, now: RecordView, found: list[Finding]) -> None:
        record = now.record
        first = now.first_healthy_uid()
        if first is None or record.voter.prime_uid != first:
            found.append(
                Finding(
                    cycle=now.cycle,
                    check="Init",
                    uid=record.voter.prime_uid,
                    detail=f"lowest healthy unit is {first}",
                )
            )
        if record.prime_switched:
            found.append(Finding(cycle=now.cycle, check="Switch", detail="switch flagged at start"))

    def _transition_checks(
        self, prev: RecordView, now: RecordView, last_switch: int, found: list[Finding]
    ) -> None:
        p = self.config.persistence_lmt
        t = now.cycle
        before, after = prev.record.voter, now.record.voter
        switched = after.prime_uid != before.prime_uid
        if now.record.prime_switched != switched:
            found.append(Finding(cycle=t, check="Switch", detail="prime_switched flag disagrees"))
        if switched:
            old = now.index(before.prime_uid)
            if old is None or not now.isolated[old]:
                found.append(
                    Finding(
                        cycle=t,
                        check="R9",
                        uid=after.prime_uid,
                        detail=f"prime {before.prime_uid} replaced while not isolated",
                    )
                )
            elif after.prime_uid != now.first_healthy_uid():
                found.append(
                    Finding(
                        cycle=t,
                        check="R9",
                        uid=after.prime_uid,
                        detail="new prime is not the lowest-uid healthy unit",
                    )
                )
            if t - last_switch < p:
                found.append(
                    Finding(cycle=t, check="Prop2", uid=after.prime_uid, detail=f"gap {t - last_switch}")
                )
        if after.validity != ValidityStatus.NOT_VALID and after.output_age not in (
            0,
            before.output_age + 1,
        ):
            found.append(
                Finding(
                    cycle=t,
                    check="R14",
                    detail=f"age {before.output_age} -> {after.output_age}",
                )
            )
        if before.validity == ValidityStatus.NOT_VALID and after.validity != ValidityStatus.NOT_VALID:
            found.append(Finding(cycle=t, check="S4", detail=f"left not_valid for {after.validity}"))
        edge = (record_state(prev.record), record_state(now.record))
        if edge[1] not in ALLOWED_EDGES[edge[0]]:
            found.append(Finding(cycle=t, check="Transition", detail=f"{edge[0]} -> {edge[1]}"))
        if after.output_age > 0 and (after.output_val != before.output_val or switched):
            found.append(
                Finding(cycle=t, check="R8", uid=after.prime_uid, detail="stale output was not retained")
            )


def _input_findings(record: TraceRecord, cycle: CycleInput, config: VoterConfig) -> list[Finding]:
    found = []
    if record.ground_truth is not None and record.ground_truth != cycle.ground_truth:
        found.append(Finding(cycle=record.cycle, check="Input", detail="ground truth differs"))
    for unit, out in zip(record.units, readings_of(cycle, config), strict=True):
        if unit.val != out.reading.val or unit.health != out.reading.hw_hlth:
            found.append(
                Finding(
                    cycle=record.cycle,
                    check="Input",
                    uid=unit.uid,
                    detail="recorded reading differs from the scenario",
                )
            )
    return found


def check_trace(
    trace: Sequence[TraceRecord], scenario: Scenario, config: VoterConfig | None = None
) -> Verdict:
    """Check a trace against its scenario.

    Unconditional checks run on every cycle. Soundness, completeness, the
    scoped R2 and R12 run on cycle t only when the fault hypothesis held
    on every cycle up to t, the voter's own isolation view also satisfies
    it at t, and enough units were non-isolated before the cycle.

    Raises:
        TraceMismatch: if the trace does not line up with the scenario.
    """
    config = config or scenario.config
    if len(trace) != len(scenario.cycles):
        raise TraceMismatch(
            f"trace has {len(trace)} records but the scenario has {len(scenario.cycles)} cycles"
        )
    for t, record in enumerate(trace):
        if record.cycle != t:
            raise TraceMismatch(f"record {t} is labelled cycle {record.cycle}")
        if tuple(u.uid for u in record.units) != config.uids:
            raise TraceMismatch(f"record {t} does not list the configured units in order")

    checker = TraceChecker(config)
    hypothesis = check_simul_fault_hypothesis(scenario.model_copy(update={"config": config}))
    findings: list[Finding] = []
    notes: list[str] = []
    prev = RecordView.before_start(config)
    last_switch = 0
    prefix_ok = True
    checked = skipped = 0
    for t, (record, cycle) in enumerate(zip(trace, scenario.cycles, strict=True)):
        now = RecordView.of(record)
        cls = checker.rederive(prev, now)
        findings += _input_findings(record, cycle, config)
        findings += checker.unconditional(prev, now, cls, last_switch)
        prefix_ok = prefix_ok and hypothesis[t]
        if prefix_ok and prev.non_isolated >= config.min_required:
            if checker.local_fault_ok(prev, now, cycle.ground_truth):
                found, seen = checker.conditioned(prev, now, cycle.ground_truth, cls)
                findings += found
                notes += seen
                checked += 1
            else:
                notes.append(f"cycle {t}: fault hypothesis holds but not under the voter's isolation view")
                skipped += 1
        else:
            skipped += 1
        last_switch = checker.next_switch(prev, now, last_switch)
        prev = now
    logger.debug("conditioned checks: %d run, %d skipped", checked, skipped)
    return Verdict.of(findings, notes)
