"""Pydantic models for fault-injection scenarios and per-cycle traces."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import VoterConfig
from .domain import IsolationStatus, MiscompStatus, SignalHealth, UnitId, ValidityStatus


class BehaviorKind(StrEnum):
    NOMINAL = "nominal"
    DEVIANT = "deviant"
    BAD_HEALTH = "bad_health"


class UnitBehavior(BaseModel):
    """Injected behaviour of one unit in one cycle.

    A deviant unit reports ground truth plus ``offset``; the other kinds
    report ground truth plus noise. The offset bound depends on delta and
    is checked when the behaviour is injected.
    """

    model_config = ConfigDict(frozen=True)

    kind: BehaviorKind
    offset: int | None = Field(default=None, description="Deviation from ground truth")

    @model_validator(mode="after")
    def _offset_only_for_deviant(self) -> "UnitBehavior":
        if (self.kind is BehaviorKind.DEVIANT) != (self.offset is not None):
            raise ValueError("offset is required for deviant behaviour and only for it")
        return self

    @classmethod
    def nominal(cls) -> "UnitBehavior":
        return cls(kind=BehaviorKind.NOMINAL)

    @classmethod
    def deviant(cls, offset: int) -> "UnitBehavior":
        return cls(kind=BehaviorKind.DEVIANT, offset=offset)

    @classmethod
    def bad_health(cls) -> "UnitBehavior":
        return cls(kind=BehaviorKind.BAD_HEALTH)


class InjectedUnit(BaseModel):
    """One unit's entry in a scenario cycle, with its resolved reading value."""

    model_config = ConfigDict(frozen=True)

    uid: UnitId
    behavior: BehaviorKind
    value: int = Field(ge=0, description="Final reading value delivered to the voter")


class CycleInput(BaseModel):
    """Ground truth of one cycle and what every unit delivers."""

    model_config = ConfigDict(frozen=True)

    ground_truth: int = Field(ge=0)
    units: tuple[InjectedUnit, ...]

    @model_validator(mode="after")
    def _unique_uids(self) -> "CycleInput":
        uids = [u.uid for u in self.units]
        if len(uids) != len(set(uids)):
            raise ValueError("each unit may appear only once per cycle")
        return self


class Scenario(BaseModel):
    """A ground-truth-aware input trajectory for one voter."""

    model_config = ConfigDict(frozen=True)

    config: VoterConfig
    seed: int
    declared_hypothesis_ok: bool
    cycles: tuple[CycleInput, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _one_entry_per_unit(self) -> "Scenario":
        expected = list(self.config.uids)
        for index, cycle in enumerate(self.cycles):
            if sorted(u.uid for u in cycle.units) != expected:
                raise ValueError(f"cycle {index} does not list every configured unit once")
        return self


class FaultProfile(BaseModel):
    """Knobs for scenario generation."""

    model_config = ConfigDict(frozen=True)

    fault_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    permanent_targets: tuple[int, ...] = Field(default=())
    horizon: int = Field(default=50, ge=1)
    max_increment: int | None = Field(
        default=None, ge=0, description="Largest ground-truth change per cycle (default 2*delta)"
    )
    violate_hypothesis: bool = False


class UnitSnapshot(BaseModel):
    model_config = ConfigDict(frozen=True)

    uid: UnitId
    val: int = Field(ge=0)
    health: SignalHealth
    miscomp_status: MiscompStatus
    iso_status: IsolationStatus
    risky_count: int = Field(ge=0)


class VoterSnapshot(BaseModel):
    model_config = ConfigDict(frozen=True)

    prime_uid: UnitId
    output_val: int = Field(ge=0)
    output_age: int = Field(ge=0)
    validity: ValidityStatus


class TraceRecord(BaseModel):
    """Inputs and resulting voter state of a single cycle."""

    model_config = ConfigDict(frozen=True)

    cycle: int = Field(ge=0)
    units: tuple[UnitSnapshot, ...]
    voter: VoterSnapshot
    prime_switched: bool
    ground_truth: int | None = Field(default=None, ge=0)
