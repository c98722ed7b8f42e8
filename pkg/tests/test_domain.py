"""Tests for the core unit data types and their invariants."""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from nmr_voter.config import VoterConfig
from nmr_voter.models.domain import (
    IsolationStatus,
    MiscompStatus,
    Reading,
    SignalHealth,
    UnitData,
    UnitOutput,
    UnitStatus,
    adiff,
    count_non_isolated,
    healthy_unit_list,
    initial_status,
    is_healthy_data,
    isolated_uids,
    make_status,
    make_unit_data,
    miscompares,
)

CONFIG = VoterConfig(num_units=4, delta=10, persistence_lmt=3, max_simul_fault=1)


def _data(uid, health, iso, miscomp, risky) -> UnitData:
    return UnitData(
        u_output=UnitOutput(uid=uid, reading=Reading(val=100, hw_hlth=health)),
        u_status=UnitStatus(iso_status=iso, miscomp_status=miscomp, risky_count=risky),
    )


# ---------------------------------------------------------------------------
# adiff / miscompares
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(("a", "b", "expected"), [(7, 7, 0), (3, 10, 7), (100, 40, 60)])
def test_adiff(a, b, expected):
    assert adiff(a, b) == expected
    assert adiff(b, a) == expected


def test_deviation_of_exactly_two_delta_is_allowed():
    good = SignalHealth.GOOD
    assert not miscompares(Reading(val=40, hw_hlth=good), Reading(val=20, hw_hlth=good), 10)
    assert miscompares(Reading(val=41, hw_hlth=good), Reading(val=20, hw_hlth=good), 10)


@given(st.integers(0, 10_000), st.integers(0, 100))
def test_reading_never_miscompares_with_itself(val, delta):
    r = Reading(val=val, hw_hlth=SignalHealth.GOOD)
    assert not miscompares(r, r, delta)


def test_negative_reading_rejected():
    with pytest.raises(ValidationError):
        Reading(val=-1, hw_hlth=SignalHealth.GOOD)


def test_uid_must_be_positive():
    with pytest.raises(ValidationError):
        UnitOutput(uid=0, reading=Reading(val=1, hw_hlth=SignalHealth.GOOD))


# ---------------------------------------------------------------------------
# UnitStatus / UnitData smart constructors
# ---------------------------------------------------------------------------


@given(
    iso=st.sampled_from(IsolationStatus),
    miscomp=st.sampled_from(MiscompStatus),
    risky=st.integers(0, 5),
)
def test_status_accepted_iff_persistence_bound_holds(iso, miscomp, risky):
    """risky_count <= persistence_lmt, reaching it exactly when isolated."""
    expected = risky <= 3 and (risky == 3) == (iso is IsolationStatus.ISOLATED)
    try:
        make_status(CONFIG, iso, miscomp, risky)
        accepted = True
    except ValidationError:
        accepted = False
    assert accepted == expected


@given(
    health=st.sampled_from(SignalHealth),
    iso=st.sampled_from(IsolationStatus),
    miscomp=st.sampled_from(MiscompStatus),
    risky=st.integers(0, 3),
)
def test_unit_data_accepted_iff_zero_risk_means_healthy(health, iso, miscomp, risky):
    """risky_count is zero exactly for good, non-isolated, not_miscomparing units."""
    healthy = (
        health is SignalHealth.GOOD
        and iso is IsolationStatus.NOT_ISOLATED
        and miscomp is MiscompStatus.NOT_MISCOMPARING
    )
    try:
        d = _data(1, health, iso, miscomp, risky)
        accepted = True
    except ValidationError:
        accepted = False
    assert accepted == ((risky == 0) == healthy)
    if accepted:
        assert is_healthy_data(d) == (d.u_status.risky_count == 0)


def test_status_without_config_skips_persistence_bound():
    """Bounds needing persistence_lmt only apply with a config in context."""
    status = UnitStatus(
        iso_status=IsolationStatus.NOT_ISOLATED,
        miscomp_status=MiscompStatus.MISCOMPARING,
        risky_count=9,
    )
    assert status.risky_count == 9


def test_healthy_data_examples():
    good = _data(1, SignalHealth.GOOD, IsolationStatus.NOT_ISOLATED, MiscompStatus.NOT_MISCOMPARING, 0)
    bad = _data(2, SignalHealth.BAD, IsolationStatus.NOT_ISOLATED, MiscompStatus.MAYBE_MISCOMPARING, 2)

    assert is_healthy_data(good)
    assert not is_healthy_data(bad)


def test_make_unit_data_rejects_inconsistent_pair():
    output = UnitOutput(uid=1, reading=Reading(val=5, hw_hlth=SignalHealth.BAD))
    with pytest.raises(ValidationError):
        make_unit_data(output, initial_status())


# ---------------------------------------------------------------------------
# list helpers
# ---------------------------------------------------------------------------


def test_list_helpers():
    units = [
        _data(1, SignalHealth.GOOD, IsolationStatus.NOT_ISOLATED, MiscompStatus.NOT_MISCOMPARING, 0),
        _data(2, SignalHealth.GOOD, IsolationStatus.ISOLATED, MiscompStatus.MISCOMPARING, 3),
        _data(3, SignalHealth.BAD, IsolationStatus.NOT_ISOLATED, MiscompStatus.MAYBE_MISCOMPARING, 1),
        _data(4, SignalHealth.GOOD, IsolationStatus.NOT_ISOLATED, MiscompStatus.NOT_MISCOMPARING, 0),
    ]

    assert count_non_isolated(units) == 3
    assert [d.uid for d in healthy_unit_list(units)] == [1, 4]
    assert isolated_uids(units) == {2}


def test_initial_status_is_healthy():
    status = initial_status()

    assert status.iso_status is IsolationStatus.NOT_ISOLATED
    assert status.miscomp_status is MiscompStatus.NOT_MISCOMPARING
    assert status.risky_count == 0
