"""Voter state record and its abstract-state view."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator

from ..config import VoterConfig
from .domain import (
    UnitData,
    UnitOutput,
    ValidityStatus,
    config_from_context,
    count_non_isolated,
    healthy_unit_list,
    is_healthy_data,
)


class AbstractState(StrEnum):
    """The five abstract states of the voter's transition diagram."""

    S0 = "S0"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"


class VoterState(BaseModel):
    """Full voter record carried from one cycle to the next.

    Invariants are checked on construction. Those needing designer
    parameters run only when the VoterConfig is supplied through the
    validation context (see ``make_state``).
    """

    model_config = ConfigDict(frozen=True)

    u_data_lst: tuple[UnitData, ...] = Field(description="Per-unit data in uid order")
    voter_output: UnitOutput = Field(description="Prime unit uid and selected reading")
    voter_validity: ValidityStatus
    output_age: int = Field(ge=0, description="Cycles since voter_output was refreshed")
    presrvd_data: UnitData = Field(
        description="Prime unit data from the cycle voter_output was measured"
    )

    @property
    def prime_uid(self) -> int:
        return self.voter_output.uid

    def unit(self, uid: int) -> UnitData:
        for d in self.u_data_lst:
            if d.uid == uid:
                return d
        raise KeyError(uid)

    def violated_invariants(self, config: VoterConfig | None = None) -> list[str]:
        """Names of state invariants that do not hold."""
        bad: list[str] = []
        uids = [d.uid for d in self.u_data_lst]
        if self.voter_output.uid not in uids:
            bad.append("pf_v_output")
            return bad
        if not (self.presrvd_data.u_output == self.voter_output and is_healthy_data(self.presrvd_data)):
            bad.append("pf_presrvd_data")
        valid = self.voter_validity is ValidityStatus.VALID
        if (self.output_age == 0) != (valid and self.presrvd_data in self.u_data_lst):
            bad.append("pf_age")
        prime = self.unit(self.voter_output.uid)
        if valid and prime.isolated:
            bad.append("pf_out_not_isolated")
        if config is None:
            return bad

        if uids != list(config.uids):
            bad.append("pf_ud_lst")
        count = count_non_isolated(self.u_data_lst)
        enough = count >= config.min_required
        healthy = healthy_unit_list(self.u_data_lst)
        validity = self.voter_validity
        if (not enough) != (validity is ValidityStatus.NOT_VALID):
            bad.append("pf_validity:not_valid")
        if (enough and prime.isolated) != (validity is ValidityStatus.UN_ID):
            bad.append("pf_validity:un_id")
        if validity is ValidityStatus.UN_ID and healthy:
            bad.append("pf_validity:un_id_healthy")
        if enough and healthy and not valid:
            bad.append("pf_validity:valid")
        if valid and self.output_age != prime.u_status.risky_count:
            bad.append("pf_risky_cnt")
        if validity is not ValidityStatus.NOT_VALID:
            limit = config.persistence_lmt
            if any(
                self.output_age - d.u_status.risky_count >= limit
                for d in self.u_data_lst
                if not d.isolated
            ):
                bad.append("pf_age_bound")
        if (self.output_age < config.persistence_lmt) != valid or (
            self.output_age >= config.age_sentinel
        ) != (validity is ValidityStatus.NOT_VALID):
            bad.append("pf_age_validity")
        return bad

    @model_validator(mode="after")
    def _state_invariants(self, info: ValidationInfo) -> "VoterState":
        bad = self.violated_invariants(config_from_context(info))
        if bad:
            raise ValueError("voter state invariants violated: " + ", ".join(bad))
        return self


def make_state(
    config: VoterConfig,
    u_data_lst: tuple[UnitData, ...],
    voter_output: UnitOutput,
    voter_validity: ValidityStatus,
    output_age: int,
    presrvd_data: UnitData,
) -> VoterState:
    """Smart constructor that asserts every state invariant."""
    return VoterState.model_validate(
        {
            "u_data_lst": u_data_lst,
            "voter_output": voter_output,
            "voter_validity": voter_validity,
            "output_age": output_age,
            "presrvd_data": presrvd_data,
        },
        context={"config": config},
    )
