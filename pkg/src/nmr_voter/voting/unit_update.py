"""Build the updated per-unit data list for a cycle."""

import logging
from collections.abc import Sequence

from ..config import VoterConfig
from ..errors import MissingUnit, UidMismatch
from ..models.domain import (
    IsolationStatus,
    MiscompStatus,
    SignalHealth,
    UnitData,
    UnitOutput,
    make_status,
    make_unit_data,
)
from .fault_id import CycleClassification, classify_cycle

logger = logging.getLogger(__name__)


def update_unit(
    prev: UnitData, now: UnitOutput, cls: CycleClassification, config: VoterConfig
) -> UnitData:
    """Apply this cycle's classification to one unit.

    An isolated unit keeps its status; only its latest output is recorded.
    Otherwise risky_count resets to zero for a unit identified as
    non-faulty and grows by one for anything else, and the unit is
    isolated once the count reaches persistence_lmt.

    Raises:
        UidMismatch: if prev and now belong to different units.
    """
    if prev.uid != now.uid:
        raise UidMismatch(f"unit data {prev.uid} paired with output of unit {now.uid}")
    if prev.isolated:
        return make_unit_data(now, prev.u_status)

    if now.reading.hw_hlth is SignalHealth.BAD or now.uid in cls.maybe_ids:
        miscomp = MiscompStatus.MAYBE_MISCOMPARING
    elif now.uid in cls.miscomparing_ids:
        miscomp = MiscompStatus.MISCOMPARING
    else:
        miscomp = MiscompStatus.NOT_MISCOMPARING

    if miscomp is MiscompStatus.NOT_MISCOMPARING:
        risky = 0
    else:
        risky = prev.u_status.risky_count + 1

    if risky == config.persistence_lmt:
        iso = IsolationStatus.ISOLATED
        logger.debug("unit %d isolated after %d risky cycles", now.uid, risky)
    else:
        iso = IsolationStatus.NOT_ISOLATED
    return make_unit_data(now, make_status(config, iso, miscomp, risky))


def build_updated_list(
    prev_list: Sequence[UnitData], outputs: Sequence[UnitOutput], config: VoterConfig
) -> tuple[UnitData, ...]:
    """Classify the cycle and update every unit, keeping uid order.

    Raises:
        MissingUnit: if the units in prev_list, outputs and the
            configuration differ.
    """
    if tuple(d.uid for d in prev_list) != config.uids:
        raise MissingUnit("previous unit list does not match the configured uids")
    cls = classify_cycle([(d.uid, d.u_status) for d in prev_list], outputs, config)
    by_uid = {out.uid: out for out in outputs}
    return tuple(update_unit(d, by_uid[d.uid], cls, config) for d in prev_list)
