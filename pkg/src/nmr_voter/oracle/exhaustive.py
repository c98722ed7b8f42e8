"""Exhaustive enumeration of small voter instances."""

import logging
from collections.abc import Sequence
from itertools import product

import numpy as np

from ..config import VoterConfig
from ..errors import BudgetExceeded, ConfigError, NoHealthyUnit
from ..models.domain import Reading, SignalHealth, UnitOutput
from ..models.state import VoterState
from ..models.verdict import EnumerationReport, Finding, Verdict
from ..sim.runner import snapshot
from ..voting import voter
from .invariants import check_state_invariants
from .trace import RecordView, TraceChecker, rederive

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
MAX_FINDINGS = 50


class _Walk:
    """Depth-first walk of the input tree; every prefix is stepped once."""

    def __init__(
        self,
        config: VoterConfig,
        alphabet: list[tuple[UnitOutput, ...]],
        candidates: np.ndarray,
        horizon: int,
    ):
        self.config = config
        self.alphabet = alphabet
        self.candidates = candidates
        self.horizon = horizon
        self.checker = TraceChecker(config)
        self.path: list[tuple[UnitOutput, ...]] = []
        self.seen: set[VoterState] = set()
        self.findings: list[Finding] = []
        self.notes: set[str] = set()
        self.omitted = 0
        self.traces = 0
        self.init_rejected = 0
        self.transitions = 0
        self.conditioned_checked = 0
        self.conditioned_skipped = 0

    def run(self) -> EnumerationReport:
        start = RecordView.before_start(self.config)
        per_branch = len(self.alphabet) ** (self.horizon - 1)
        for outputs in self.alphabet:
            self.path.append(outputs)
            try:
                vs = voter.init(self.config, outputs)
            except NoHealthyUnit:
                self.init_rejected += 1
                self.traces += per_branch
                self._confirm_rejection(start, outputs)
            else:
                self._visit(vs, None, start, 0, 0, True)
            self.path.pop()

        notes = set(self.notes)
        if self.omitted:
            notes.add(f"{self.omitted} further findings omitted")
        return EnumerationReport(
            verdict=Verdict.of(self.findings, notes),
            traces=self.traces,
            init_rejected=self.init_rejected,
            states_visited=len(self.seen),
            transitions=self.transitions,
            conditioned_checked=self.conditioned_checked,
            conditioned_skipped=self.conditioned_skipped,
        )

    def _visit(
        self,
        vs: VoterState,
        prev_vs: VoterState | None,
        prev: RecordView,
        t: int,
        last_switch: int,
        prefix_ok: bool,
    ) -> None:
        if vs not in self.seen:
            self.seen.add(vs)
            self._report(check_state_invariants(vs, self.config).findings, t)

        now = RecordView.of(snapshot(vs, t, None, prev_vs))
        checker = self.checker
        cls = checker.rederive(prev, now)
        self._report(checker.unconditional(prev, now, cls, last_switch), t)

        admissible = checker.admissible_truths(prev, now, self.candidates)
        if prefix_ok and admissible.size and prev.non_isolated >= self.config.min_required:
            for truth in admissible:
                found, notes = checker.conditioned(prev, now, int(truth), cls)
                self._report(found, t)
                self.notes.update(notes)
            self.conditioned_checked += 1
        else:
            self.conditioned_skipped += 1

        if t + 1 == self.horizon:
            self.traces += 1
            return
        last_switch = checker.next_switch(prev, now, last_switch)
        for outputs in self.alphabet:
            self.path.append(outputs)
            nxt = voter.step(vs, outputs, self.config)
            self.transitions += 1
            self._visit(nxt, vs, now, t + 1, last_switch, prefix_ok and bool(admissible.size))
            self.path.pop()

    def _confirm_rejection(self, start: RecordView, outputs: tuple[UnitOutput, ...]) -> None:
        vals = np.array([o.reading.val for o in outputs], dtype=np.int64)
        good = np.array([o.reading.hw_hlth == SignalHealth.GOOD for o in outputs], dtype=bool)
        if rederive(start.isolated, vals, good, self.config).healthy_exists:
            self._report(
                [Finding(cycle=0, check="Init", detail="init rejected inputs with a healthy unit")], 0
            )

    def _report(self, findings: Sequence[Finding], t: int) -> None:
        if not findings:
            return
        room = MAX_FINDINGS - len(self.findings)
        where = self._describe_path(t)
        for finding in findings[:room]:
            detail = f"{finding.detail} [inputs {where}]".lstrip()
            self.findings.append(finding.model_copy(update={"detail": detail, "cycle": t}))
        self.omitted += max(0, len(findings) - room)

    def _describe_path(self, t: int) -> str:
        return " | ".join(
            ",".join(f"{o.reading.val}{o.reading.hw_hlth.value[0]}" for o in outputs)
            for outputs in self.path[: t + 1]
        )


def enumerate_and_check(
    config: VoterConfig,
    value_domain: Sequence[int],
    health_domain: Sequence[SignalHealth],
    horizon: int,
    budget: int = DEFAULT_BUDGET,
) -> EnumerationReport:
    """Run the voter on every input sequence over the given domains.

    Every reachable state gets the state checks and every transition the
    unconditional trace checks. The conditioned checks run against each
    candidate ground truth from ``value_domain`` that keeps the cycle
    within the fault hypothesis, on prefixes where every earlier cycle
    admitted at least one candidate.

    Raises:
        ConfigError: for empty domains, negative values or horizon < 1.
        BudgetExceeded: if more than ``budget`` sequences would be enumerated.
    """
    values = sorted(set(value_domain))
    healths = sorted({SignalHealth(h) for h in health_domain})
    if not values or values[0] < 0:
        raise ConfigError("value_domain", "must be a nonempty list of non-negative integers")
    if not healths:
        raise ConfigError("health_domain", "must not be empty")
    if horizon < 1:
        raise ConfigError("horizon", "must be at least 1")
    letters = (len(values) * len(healths)) ** config.num_units
    total = letters**horizon
    if total > budget:
        raise BudgetExceeded(f"{total} traces requested, budget is {budget}")

    readings = [Reading(val=v, hw_hlth=h) for v, h in product(values, healths)]
    alphabet = [
        tuple(UnitOutput(uid=uid, reading=r) for uid, r in zip(config.uids, combo, strict=True))
        for combo in product(readings, repeat=config.num_units)
    ]
    logger.info("enumerating %d traces over %d inputs per cycle", total, len(alphabet))
    report = _Walk(config, alphabet, np.array(values, dtype=np.int64), horizon).run()
    logger.info(
        "traces=%d states=%d transitions=%d pass=%s",
        report.traces,
        report.states_visited,
        report.transitions,
        report.verdict.passed,
    )
    return report
