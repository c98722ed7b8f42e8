"""State-level requirement checks on a single VoterState.

These re-derive every VoterState invariant from the raw fields, without
calling VoterState.violated_invariants, so a state built with
model_construct (bypassing validation) can still be judged.
"""

from ..config import VoterConfig
from ..models.domain import (
    IsolationStatus,
    MiscompStatus,
    SignalHealth,
    UnitData,
    ValidityStatus,
)
from ..models.state import VoterState
from ..models.verdict import Finding, Verdict


def _healthy(d: UnitData) -> bool:
    return (
        d.u_output.reading.hw_hlth == SignalHealth.GOOD
        and d.u_status.iso_status == IsolationStatus.NOT_ISOLATED
        and d.u_status.miscomp_status == MiscompStatus.NOT_MISCOMPARING
    )


def _isolated(d: UnitData) -> bool:
    return d.u_status.iso_status == IsolationStatus.ISOLATED


def check_state_invariants(vs: VoterState, config: VoterConfig) -> Verdict:
    """Judge one voter state against every state requirement.

    Each finding is named after the requirement it breaks (R6, R8, R10,
    R11, R13, R14, R15, R16, Claim5) or the record-level property
    (pf_ud_lst, pf_v_output, pf_healthy, pf_out_not_isolated).
    """
    findings: list[Finding] = []

    def flag(check: str, uid: int | None = None, detail: str = "") -> None:
        findings.append(Finding(check=check, uid=uid, detail=detail))

    p = config.persistence_lmt
    units = list(vs.u_data_lst)
    uids = [d.u_output.uid for d in units]
    if tuple(uids) != config.uids:
        flag("pf_ud_lst", detail=f"uids {uids} differ from configured {list(config.uids)}")

    for d in units:
        risky = d.u_status.risky_count
        if risky > p or (risky == p) != _isolated(d):
            flag("R6", d.u_output.uid, f"risky_count {risky} with {d.u_status.iso_status}")
        if (risky == 0) != _healthy(d):
            flag("pf_healthy", d.u_output.uid, f"risky_count {risky}")

    prime_uid = vs.voter_output.uid
    prime = next((d for d in units if d.u_output.uid == prime_uid), None)
    if prime is None:
        flag("pf_v_output", prime_uid, "prime unit is not in the unit list")
        return Verdict.of(findings)

    validity = vs.voter_validity
    valid = validity == ValidityStatus.VALID
    not_valid = validity == ValidityStatus.NOT_VALID
    age = vs.output_age
    live = [d for d in units if not _isolated(d)]
    enough = len(live) >= config.min_required
    healthy = [d for d in units if _healthy(d)]

    if vs.presrvd_data.u_output != vs.voter_output or not _healthy(vs.presrvd_data):
        flag("R8", prime_uid, "preserved data is not the healthy data behind the output")
    if (age == 0) != (valid and vs.presrvd_data in units):
        flag("R15", prime_uid, f"age {age} with {validity}")
    if not_valid == enough:
        flag("R10", detail=f"{len(live)} non-isolated units with {validity}")
    if (validity == ValidityStatus.UN_ID) != (enough and _isolated(prime)):
        flag("R11", prime_uid, f"{validity} with prime {prime.u_status.iso_status}")
    if validity == ValidityStatus.UN_ID and healthy:
        flag("R11", detail="un_id while a unit provides healthy data")
    if enough and healthy and not valid:
        flag("R13", detail=f"{validity} while a unit provides healthy data")
    if valid and _isolated(prime):
        flag("pf_out_not_isolated", prime_uid)
    if valid and age != prime.u_status.risky_count:
        flag("R14", prime_uid, f"age {age} differs from risky_count {prime.u_status.risky_count}")
    if not not_valid:
        for d in live:
            if age - d.u_status.risky_count >= p:
                flag("Claim5", d.u_output.uid, f"age {age}, risky_count {d.u_status.risky_count}")
    if (age < p) != valid or (age >= 2 * p) != not_valid:
        flag("R16", detail=f"age {age} with {validity}")
    return Verdict.of(findings)
