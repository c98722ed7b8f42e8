"""Voter state initialisation, per-cycle transition and output generation."""

import logging
from collections.abc import Sequence

from ..config import VoterConfig
from ..errors import MissingUnit, NoHealthyUnit
from ..models.domain import (
    Reading,
    SignalHealth,
    UnitData,
    UnitOutput,
    ValidityStatus,
    count_non_isolated,
    healthy_unit_list,
    initial_status,
    is_healthy_data,
    isolated_uids,
    make_unit_data,
)
from ..models.state import AbstractState, VoterState, make_state
from .unit_update import build_updated_list

logger = logging.getLogger(__name__)


def _pre_state(config: VoterConfig, outputs: Sequence[UnitOutput]) -> tuple[UnitData, ...]:
    """Synthetic previous-cycle list: every unit healthy with risky_count 0.

    Only the statuses feed classification; the recorded readings are the
    first-cycle values marked good so each entry is well formed.
    """
    values = {out.uid: out.reading.val for out in outputs}
    status = initial_status()
    return tuple(
        make_unit_data(
            UnitOutput(uid=uid, reading=Reading(val=values.get(uid, 0), hw_hlth=SignalHealth.GOOD)),
            status,
        )
        for uid in config.uids
    )


def init(config: VoterConfig, first_outputs: Sequence[UnitOutput]) -> VoterState:
    """Build the voter state from the first cycle's outputs.

    The prime unit is the lowest-uid unit providing healthy data.

    Raises:
        MissingUnit: if first_outputs does not cover the configured units.
        NoHealthyUnit: if no unit provides healthy data in the first cycle.
    """
    if sorted(out.uid for out in first_outputs) != list(config.uids):
        raise MissingUnit("first cycle outputs do not match the configured uids")
    new_list = build_updated_list(_pre_state(config, first_outputs), first_outputs, config)
    healthy = healthy_unit_list(new_list)
    if not healthy:
        raise NoHealthyUnit("no unit provides healthy data in the first cycle")
    prime = healthy[0]
    if count_non_isolated(new_list) < config.min_required:
        return make_state(
            config, new_list, prime.u_output, ValidityStatus.NOT_VALID, config.age_sentinel, prime
        )
    logger.debug("voter initialised with prime unit %d", prime.uid)
    return make_state(config, new_list, prime.u_output, ValidityStatus.VALID, 0, prime)


def step(vs: VoterState, outputs: Sequence[UnitOutput], config: VoterConfig) -> VoterState:
    """Advance the voter by one cycle.

    Raises:
        MissingUnit: if outputs does not cover the configured units.
    """
    new_list = build_updated_list(vs.u_data_lst, outputs, config)

    if count_non_isolated(new_list) < config.min_required:
        if vs.voter_validity is not ValidityStatus.NOT_VALID:
            logger.debug("non-isolated units below min_required, voter output not valid")
        return make_state(
            config,
            new_list,
            vs.voter_output,
            ValidityStatus.NOT_VALID,
            config.age_sentinel,
            vs.presrvd_data,
        )

    prime = next(d for d in new_list if d.uid == vs.prime_uid)
    if prime.isolated:
        healthy = healthy_unit_list(new_list)
        if healthy:
            new_prime = healthy[0]
            logger.debug("prime unit %d isolated, switching to %d", prime.uid, new_prime.uid)
            return make_state(
                config, new_list, new_prime.u_output, ValidityStatus.VALID, 0, new_prime
            )
        return make_state(
            config,
            new_list,
            vs.voter_output,
            ValidityStatus.UN_ID,
            vs.output_age + 1,
            vs.presrvd_data,
        )

    if is_healthy_data(prime):
        return make_state(config, new_list, prime.u_output, ValidityStatus.VALID, 0, prime)
    return make_state(
        config,
        new_list,
        vs.voter_output,
        ValidityStatus.VALID,
        vs.output_age + 1,
        vs.presrvd_data,
    )


def abstract_state(vs: VoterState) -> AbstractState:
    """Map a concrete state to its abstract state S0-S4."""
    if vs.voter_validity is ValidityStatus.NOT_VALID:
        return AbstractState.S4
    if vs.voter_validity is ValidityStatus.UN_ID:
        return AbstractState.S3
    if vs.output_age > 0:
        return AbstractState.S1
    if isolated_uids(vs.u_data_lst):
        return AbstractState.S2
    return AbstractState.S0
