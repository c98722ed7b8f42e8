"""Oracle findings and verdicts."""

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Finding(BaseModel):
    """A single violated check."""

    model_config = ConfigDict(frozen=True)

    cycle: int | None = Field(default=None, description="Cycle index, None for state-only checks")
    check: str = Field(description="Check id, e.g. R9, Prop2, SoundA")
    uid: int | None = Field(default=None, description="Unit concerned, if any")
    detail: str = ""

    def sort_key(self) -> tuple:
        return (
            -1 if self.cycle is None else self.cycle,
            self.check,
            -1 if self.uid is None else self.uid,
            self.detail,
        )


class Verdict(BaseModel):
    """Aggregate oracle result; passes exactly when there are no findings."""

    model_config = ConfigDict(frozen=True)

    findings: tuple[Finding, ...] = ()
    notes: tuple[str, ...] = Field(default=(), description="Observations that do not fail")

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return not self.findings

    @classmethod
    def of(cls, findings, notes=()) -> "Verdict":
        return cls(
            findings=tuple(sorted(findings, key=Finding.sort_key)),
            notes=tuple(sorted(set(notes))),
        )

    def merge(self, other: "Verdict") -> "Verdict":
        """Combine two verdicts; associative and independent of order."""
        return Verdict.of(self.findings + other.findings, self.notes + other.notes)

    def checks(self) -> set[str]:
        return {f.check for f in self.findings}


class EnumerationReport(BaseModel):
    """Verdict of an exhaustive run plus coverage statistics."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    traces: int = Field(description="Input sequences enumerated")
    init_rejected: int = Field(description="First-cycle inputs without any healthy unit")
    states_visited: int = Field(description="Distinct voter states reached")
    transitions: int = Field(description="Voter steps taken")
    conditioned_checked: int = Field(default=0)
    conditioned_skipped: int = Field(default=0)


class SoakReport(BaseModel):
    """Verdict of a randomized soak run.

    The margins are the smallest slack seen against the prime-stability
    gap (switch gap minus persistence_lmt) and the age bound
    (2*(persistence_lmt-1) minus the largest valid or un_id age); both
    stay non-negative on a passing run.
    """

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    scenarios: int
    cycles: int
    switches: int
    init_rejected: int = 0
    min_switch_gap_margin: int | None = Field(default=None, description="None if no switch occurred")
    min_age_margin: int | None = None
