"""Core per-unit data types and their invariants."""

from collections.abc import Iterable
from enum import StrEnum
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator

from ..config import VoterConfig

UnitId = Annotated[int, Field(ge=1, description="Port-based unit identifier")]


class SignalHealth(StrEnum):
    """Self-identified health status reported with each reading."""

    GOOD = "good"
    BAD = "bad"


class MiscompStatus(StrEnum):
    """Outcome of deviation fault identification for a unit."""

    MISCOMPARING = "miscomparing"
    NOT_MISCOMPARING = "not_miscomparing"
    MAYBE_MISCOMPARING = "maybe_miscomparing"


class IsolationStatus(StrEnum):
    ISOLATED = "isolated"
    NOT_ISOLATED = "not_isolated"


class ValidityStatus(StrEnum):
    """Reliability grade of the voter output."""

    VALID = "valid"
    UN_ID = "un_id"
    NOT_VALID = "not_valid"


def config_from_context(info: ValidationInfo) -> VoterConfig | None:
    if isinstance(info.context, dict):
        return info.context.get("config")
    return None


class Reading(BaseModel):
    """A measured value together with the unit's self-reported health."""

    model_config = ConfigDict(frozen=True)

    val: int = Field(ge=0, description="Measured value")
    hw_hlth: SignalHealth = Field(description="Self-identified health")


class UnitOutput(BaseModel):
    """What the voter receives from one unit in one cycle."""

    model_config = ConfigDict(frozen=True)

    reading: Reading
    uid: UnitId


class UnitStatus(BaseModel):
    """Accumulated fault status of a unit.

    risky_count never exceeds persistence_lmt and reaches it exactly when
    the unit is isolated. That bound needs the configuration, so it is
    only enforced when a VoterConfig is passed in the validation context.
    """

    model_config = ConfigDict(frozen=True)

    iso_status: IsolationStatus
    miscomp_status: MiscompStatus
    risky_count: int = Field(ge=0, description="Consecutive cycles not identified as non-faulty")

    @model_validator(mode="after")
    def _risky_count_bound(self, info: ValidationInfo) -> "UnitStatus":
        config = config_from_context(info)
        if config is None:
            return self
        limit = config.persistence_lmt
        if self.risky_count > limit:
            raise ValueError(f"risky_count {self.risky_count} exceeds persistence_lmt {limit}")
        isolated = self.iso_status is IsolationStatus.ISOLATED
        if (self.risky_count == limit) != isolated:
            raise ValueError("risky_count reaches persistence_lmt iff the unit is isolated")
        return self


class UnitData(BaseModel):
    """A unit's latest output together with its accumulated status."""

    model_config = ConfigDict(frozen=True)

    u_output: UnitOutput
    u_status: UnitStatus

    @model_validator(mode="after")
    def _zero_risk_iff_healthy(self) -> "UnitData":
        if (self.u_status.risky_count == 0) != is_healthy_data(self):
            raise ValueError(
                "risky_count is zero iff health is good, the unit is not isolated "
                "and it is not_miscomparing"
            )
        return self

    @property
    def uid(self) -> int:
        return self.u_output.uid

    @property
    def isolated(self) -> bool:
        return self.u_status.iso_status is IsolationStatus.ISOLATED


def make_status(
    config: VoterConfig,
    iso_status: IsolationStatus,
    miscomp_status: MiscompStatus,
    risky_count: int,
) -> UnitStatus:
    """Smart constructor for UnitStatus that enforces the persistence bound."""
    return UnitStatus.model_validate(
        {
            "iso_status": iso_status,
            "miscomp_status": miscomp_status,
            "risky_count": risky_count,
        },
        context={"config": config},
    )


def make_unit_data(output: UnitOutput, status: UnitStatus) -> UnitData:
    return UnitData.model_validate({"u_output": output, "u_status": status})


def initial_status() -> UnitStatus:
    """Status every unit is assumed to have before the first cycle."""
    return UnitStatus(
        iso_status=IsolationStatus.NOT_ISOLATED,
        miscomp_status=MiscompStatus.NOT_MISCOMPARING,
        risky_count=0,
    )


def adiff(a: int, b: int) -> int:
    """Absolute difference of two measurements."""
    return a - b if a >= b else b - a


def miscompares(a: Reading, b: Reading, delta: int) -> bool:
    """True when two same-cycle readings deviate by more than 2*delta."""
    return adiff(a.val, b.val) > 2 * delta


def is_healthy_data(d: UnitData) -> bool:
    """True when the unit's current output may feed the controller."""
    return (
        d.u_output.reading.hw_hlth is SignalHealth.GOOD
        and d.u_status.iso_status is IsolationStatus.NOT_ISOLATED
        and d.u_status.miscomp_status is MiscompStatus.NOT_MISCOMPARING
    )


def count_non_isolated(units: Iterable[UnitData]) -> int:
    return sum(1 for d in units if not d.isolated)


def healthy_unit_list(units: Iterable[UnitData]) -> list[UnitData]:
    """Units currently providing healthy data, in list order."""
    return [d for d in units if is_healthy_data(d)]


def isolated_uids(units: Iterable[UnitData]) -> set[int]:
    return {d.uid for d in units if d.isolated}
