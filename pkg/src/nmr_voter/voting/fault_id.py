"""Per-cycle deviation fault identification.

Units that were isolated before the cycle or report bad health take no
part in the mutual deviation checks. Among the rest, a unit is
miscomparing when it miscompares with more than mis_flt_lmt others; a
remaining unit that agrees with fewer than rem_mis_flt_lmt of the
remaining units is maybe_miscomparing. Everyone else is not_miscomparing.
"""

from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import VoterConfig
from ..errors import MissingUnit
from ..models.domain import IsolationStatus, SignalHealth, UnitOutput, UnitStatus, miscompares


class CycleClassification(BaseModel):
    """Result of fault identification for one cycle."""

    model_config = ConfigDict(frozen=True)

    good_non_iso: tuple[UnitOutput, ...] = Field(
        description="Outputs of non-isolated units with good health, in uid order"
    )
    mis_flt_lmt: int = Field(ge=0, description="Deviation fault budget among good-health units")
    miscomparing_ids: frozenset[int] = Field(default_factory=frozenset)
    maybe_ids: frozenset[int] = Field(default_factory=frozenset)
    rem_mis_flt_lmt: int = Field(ge=0)

    @model_validator(mode="after")
    def _consistent(self) -> "CycleClassification":
        pool = {z.uid for z in self.good_non_iso}
        if self.miscomparing_ids & self.maybe_ids:
            raise ValueError("a unit cannot be both miscomparing and maybe_miscomparing")
        if not (self.miscomparing_ids | self.maybe_ids) <= pool:
            raise ValueError("classified units must be good-health non-isolated units")
        if self.rem_mis_flt_lmt != max(0, self.mis_flt_lmt - len(self.miscomparing_ids)):
            raise ValueError("rem_mis_flt_lmt must equal mis_flt_lmt - |miscomparing_ids|")
        return self


def _index_outputs(
    prev_statuses: Sequence[tuple[int, UnitStatus]], outputs: Sequence[UnitOutput]
) -> tuple[dict[int, UnitStatus], dict[int, UnitOutput]]:
    statuses = dict(prev_statuses)
    by_uid: dict[int, UnitOutput] = {}
    for out in outputs:
        if out.uid in by_uid:
            raise MissingUnit(f"duplicate output for unit {out.uid}")
        by_uid[out.uid] = out
    if len(statuses) != len(prev_statuses) or statuses.keys() != by_uid.keys():
        missing = sorted(statuses.keys() ^ by_uid.keys())
        raise MissingUnit(f"unit outputs do not match configured units: {missing}")
    return statuses, by_uid


def good_non_isolated(
    prev_statuses: Sequence[tuple[int, UnitStatus]], outputs: Sequence[UnitOutput]
) -> list[UnitOutput]:
    """Outputs of units not isolated before this cycle and reporting good health.

    Raises:
        MissingUnit: if the uids of outputs and statuses differ.
    """
    statuses, by_uid = _index_outputs(prev_statuses, outputs)
    return [
        by_uid[uid]
        for uid in sorted(by_uid)
        if statuses[uid].iso_status is IsolationStatus.NOT_ISOLATED
        and by_uid[uid].reading.hw_hlth is SignalHealth.GOOD
    ]


def compute_mis_flt_lmt(config: VoterConfig, k: int) -> int:
    """Deviation faults still possible once k bad-health units are counted."""
    return max(0, config.max_simul_fault - k)


def miscomparing_many_check(
    pool: Sequence[UnitOutput], limit: int, z: UnitOutput, delta: int
) -> bool:
    """True when z miscompares with at least limit + 1 other units of pool."""
    others = sum(1 for w in pool if w.uid != z.uid and miscompares(w.reading, z.reading, delta))
    return others >= limit + 1


def agreeing_many_check(
    pool: Sequence[UnitOutput], limit: int, z: UnitOutput, delta: int
) -> bool:
    """True when z is within 2*delta of at least limit other units of pool."""
    if limit == 0:
        return True
    others = sum(
        1 for w in pool if w.uid != z.uid and not miscompares(w.reading, z.reading, delta)
    )
    return others >= limit


def classify_cycle(
    prev_statuses: Sequence[tuple[int, UnitStatus]],
    outputs: Sequence[UnitOutput],
    config: VoterConfig,
) -> CycleClassification:
    """Classify every good-health non-isolated unit for this cycle.

    Args:
        prev_statuses: (uid, status) pairs from the previous cycle.
        outputs: One output per configured unit for the current cycle.
        config: Voter parameters.

    Returns:
        CycleClassification; units in neither id set are not_miscomparing.

    Raises:
        MissingUnit: if outputs and statuses cover different units.
    """
    pool = good_non_isolated(prev_statuses, outputs)
    non_isolated = sum(
        1 for _, s in prev_statuses if s.iso_status is IsolationStatus.NOT_ISOLATED
    )
    mis_flt_lmt = compute_mis_flt_lmt(config, non_isolated - len(pool))
    delta = config.delta

    miscomparing = frozenset(
        z.uid for z in pool if miscomparing_many_check(pool, mis_flt_lmt, z, delta)
    )
    negb_mis = [z for z in pool if z.uid not in miscomparing]
    rem = max(0, mis_flt_lmt - len(miscomparing))
    maybe = frozenset(
        z.uid for z in negb_mis if not agreeing_many_check(negb_mis, rem, z, delta)
    )
    return CycleClassification(
        good_non_iso=tuple(pool),
        mis_flt_lmt=mis_flt_lmt,
        miscomparing_ids=miscomparing,
        maybe_ids=maybe,
        rem_mis_flt_lmt=rem,
    )
