"""Designer-configurable parameters of the voter unit."""

from collections.abc import Mapping
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_core import PydanticCustomError

from .errors import ConfigError

FIELDS = ("num_units", "delta", "persistence_lmt", "max_simul_fault", "min_required")


def _bound(field: str, message: str) -> PydanticCustomError:
    return PydanticCustomError("config_bound", message, {"field": field})


class VoterConfig(BaseModel):
    """Parameters fixed for the lifetime of a voter.

    Measurements are natural numbers compared by absolute difference, so
    every parameter is an integer.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", strict=True)

    num_units: int = Field(ge=1, description="Count N of redundant input units")
    delta: int = Field(ge=0, description="Noise threshold in measurement units")
    persistence_lmt: int = Field(
        ge=2, description="Consecutive risky cycles after which a unit is isolated"
    )
    max_simul_fault: int = Field(
        ge=1, description="Maximum new simultaneous faults per cycle"
    )
    min_required: int = Field(
        ge=1, description="Minimum non-isolated units for valid operation"
    )

    @model_validator(mode="before")
    @classmethod
    def _default_min_required(cls, data: Any) -> Any:
        if isinstance(data, Mapping) and data.get("min_required") is None:
            data = dict(data)
            data.pop("min_required", None)
            simul = data.get("max_simul_fault")
            if isinstance(simul, int) and not isinstance(simul, bool):
                data["min_required"] = simul + 1
        return data

    @model_validator(mode="after")
    def _cross_bounds(self) -> "VoterConfig":
        if self.min_required < self.max_simul_fault + 1:
            raise _bound(
                "min_required",
                "min_required must be at least max_simul_fault + 1",
            )
        if self.num_units < 2 * self.max_simul_fault + 1:
            raise _bound(
                "num_units",
                "num_units must be at least 2*max_simul_fault + 1",
            )
        if self.num_units < self.min_required:
            raise _bound("num_units", "num_units must be at least min_required")
        return self

    @property
    def uids(self) -> tuple[int, ...]:
        """Configured unit ids, 1..num_units in port order."""
        return tuple(range(1, self.num_units + 1))

    @property
    def age_sentinel(self) -> int:
        """Output age reported while the voter is not_valid."""
        return 2 * self.persistence_lmt


def validate_config(raw: Mapping[str, Any]) -> VoterConfig:
    """Build a VoterConfig from a plain mapping.

    Args:
        raw: Mapping with num_units, delta, persistence_lmt and
            max_simul_fault; min_required is optional and defaults to
            max_simul_fault + 1.

    Returns:
        A VoterConfig satisfying every bound.

    Raises:
        ConfigError: naming the first violated field.
    """
    if not isinstance(raw, Mapping):
        raise ConfigError("config", "expected a mapping of parameter names to integers")
    try:
        return VoterConfig.model_validate(dict(raw))
    except ValidationError as exc:
        error = exc.errors()[0]
        ctx = error.get("ctx") or {}
        if "field" in ctx:
            field = ctx["field"]
        elif error["loc"]:
            field = str(error["loc"][0])
        else:
            field = "config"
        raise ConfigError(field, error["msg"]) from exc
