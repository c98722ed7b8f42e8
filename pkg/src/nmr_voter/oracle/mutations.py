"""Stocked trace mutations, one per requirement the trace checks must catch."""

from collections.abc import Callable, Sequence

from ..config import VoterConfig
from ..errors import ConfigError, MutationError
from ..models.domain import IsolationStatus, MiscompStatus, SignalHealth, ValidityStatus
from ..models.scenario import TraceRecord, UnitSnapshot

Mutation = Callable[[list[TraceRecord], VoterConfig], list[TraceRecord]]


def _isolated(u: UnitSnapshot) -> bool:
    return u.iso_status == IsolationStatus.ISOLATED


def _with_unit(record: TraceRecord, uid: int, **changes) -> TraceRecord:
    units = tuple(u.model_copy(update=changes) if u.uid == uid else u for u in record.units)
    return record.model_copy(update={"units": units})


def _with_voter(record: TraceRecord, **changes) -> TraceRecord:
    return record.model_copy(update={"voter": record.voter.model_copy(update=changes)})


def _replace(trace: list[TraceRecord], t: int, record: TraceRecord) -> list[TraceRecord]:
    return trace[:t] + [record] + trace[t + 1 :]


def _risky_step(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Mark a healthy unit maybe_miscomparing without bumping its risky_count."""
    for t in range(1, len(trace)):
        before = {u.uid: u for u in trace[t - 1].units}
        for u in trace[t].units:
            if (
                not _isolated(before[u.uid])
                and not _isolated(u)
                and u.health == SignalHealth.GOOD
                and u.miscomp_status == MiscompStatus.NOT_MISCOMPARING
                and u.risky_count == 0
            ):
                changed = _with_unit(
                    trace[t], u.uid, miscomp_status=MiscompStatus.MAYBE_MISCOMPARING
                )
                return _replace(trace, t, changed)
    raise MutationError("no healthy unit after the first cycle")


def _early_isolation(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Isolate a unit in the last cycle before its risky_count gets there."""
    last = trace[-1]
    live = [u for u in last.units if not _isolated(u)]
    if not live:
        raise MutationError("every unit is already isolated in the last cycle")
    others = [u for u in live if u.uid != last.voter.prime_uid]
    target = (others or live)[-1]
    changed = _with_unit(last, target.uid, iso_status=IsolationStatus.ISOLATED)
    return _replace(trace, len(trace) - 1, changed)


def _revive(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Bring an isolated unit back."""
    for t in range(1, len(trace)):
        before = {u.uid: u for u in trace[t - 1].units}
        for u in trace[t].units:
            if _isolated(before[u.uid]) and _isolated(u):
                changed = _with_unit(trace[t], u.uid, iso_status=IsolationStatus.NOT_ISOLATED)
                return _replace(trace, t, changed)
    raise MutationError("no unit stays isolated over two cycles")


def _spurious_switch(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Hand the output to another unit while the prime is still non-isolated."""
    for t in range(1, len(trace)):
        record = trace[t]
        prime = record.voter.prime_uid
        by_uid = {u.uid: u for u in record.units}
        if _isolated(by_uid[prime]):
            continue
        others = [u.uid for u in record.units if u.uid != prime and not _isolated(u)]
        if others:
            changed = _with_voter(record, prime_uid=others[0]).model_copy(
                update={"prime_switched": True}
            )
            return _replace(trace, t, changed)
    raise MutationError("no cycle with a non-isolated prime and another candidate")


def _age_jump(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Advance the output age by two in one cycle."""
    for t in range(1, len(trace)):
        if trace[t].voter.validity != ValidityStatus.NOT_VALID:
            age = trace[t - 1].voter.output_age + 2
            return _replace(trace, t, _with_voter(trace[t], output_age=age))
    raise MutationError("every cycle after the first is not_valid")


def _stale_fresh_output(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Report a freshly refreshed output as aged."""
    for t in range(1, len(trace)):
        voter = trace[t].voter
        if voter.validity == ValidityStatus.VALID and voter.output_age == 0:
            age = trace[t - 1].voter.output_age + 1
            return _replace(trace, t, _with_voter(trace[t], output_age=age))
    raise MutationError("no refreshed valid output after the first cycle")


def _overdue_valid(trace: list[TraceRecord], config: VoterConfig) -> list[TraceRecord]:
    """Keep a valid output whose age has reached persistence_lmt."""
    for t, record in enumerate(trace):
        if record.voter.validity == ValidityStatus.VALID:
            return _replace(trace, t, _with_voter(record, output_age=config.persistence_lmt))
    raise MutationError("no valid output in the trace")


MUTATIONS: dict[str, Mutation] = {
    "R1": _risky_step,
    "R6": _early_isolation,
    "R7": _revive,
    "R9": _spurious_switch,
    "R14": _age_jump,
    "R15": _stale_fresh_output,
    "R16": _overdue_valid,
}


def mutate(trace: Sequence[TraceRecord], check_id: str, config: VoterConfig) -> list[TraceRecord]:
    """Return a copy of ``trace`` broken so that check ``check_id`` fails.

    Raises:
        ConfigError: for an unknown mutation kind.
        MutationError: if the trace has no site for this mutation.
    """
    try:
        mutation = MUTATIONS[check_id]
    except KeyError:
        raise ConfigError("kind", f"unknown mutation {check_id!r}, expected one of {sorted(MUTATIONS)}") from None
    return mutation(list(trace), config)
