"""Tests for voter initialisation, the per-cycle step and abstract states."""

import time

import pytest
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, initialize, invariant, rule

from nmr_voter.config import VoterConfig
from nmr_voter.errors import MissingUnit, NoHealthyUnit
from nmr_voter.models.domain import ValidityStatus
from nmr_voter.models.state import AbstractState
from nmr_voter.oracle import check_state_invariants
from nmr_voter.voting import abstract_state, init, step

from .conftest import make_outputs

CONFIG = VoterConfig(num_units=4, delta=10, persistence_lmt=2, max_simul_fault=1)


def _drive(rows, config=CONFIG):
    """Run init on the first row of (vals, healths) pairs and step through the rest."""
    vals, healths = rows[0]
    states = [init(config, make_outputs(vals, healths))]
    for vals, healths in rows[1:]:
        states.append(step(states[-1], make_outputs(vals, healths), config))
    return states


NOMINAL = ([100, 100, 100, 100], "gggg")


# ---------------------------------------------------------------------------
# init
# ---------------------------------------------------------------------------


def test_init_picks_lowest_uid_prime():
    vs = init(CONFIG, make_outputs([100, 101, 99, 100]))

    assert vs.prime_uid == 1
    assert vs.output_age == 0
    assert vs.voter_validity is ValidityStatus.VALID
    assert abstract_state(vs) is AbstractState.S0


def test_init_skips_bad_health_units():
    vs = init(CONFIG, make_outputs([100, 105, 95, 100], "bggg"))

    assert vs.prime_uid == 2
    assert vs.voter_output.reading.val == 105


def test_init_without_healthy_unit_fails():
    with pytest.raises(NoHealthyUnit):
        init(CONFIG, make_outputs([100] * 4, "bbbb"))


def test_init_requires_every_unit():
    with pytest.raises(MissingUnit):
        init(CONFIG, make_outputs([100] * 3))


# ---------------------------------------------------------------------------
# step
# ---------------------------------------------------------------------------


def test_healthy_prime_refreshes_output():
    states = _drive([NOMINAL, ([104, 100, 100, 100], "gggg")])

    assert states[1].prime_uid == 1
    assert states[1].voter_output.reading.val == 104
    assert states[1].output_age == 0


def test_unhealthy_prime_ages_retained_output():
    states = _drive([NOMINAL, ([300, 100, 100, 100], "bggg"), NOMINAL])

    assert [s.output_age for s in states] == [0, 1, 0]
    assert states[1].voter_output == states[0].voter_output
    assert [abstract_state(s) for s in states] == [AbstractState.S0, AbstractState.S1, AbstractState.S0]


def test_isolated_prime_switches_to_lowest_healthy_unit():
    bad_prime = ([100, 100, 100, 100], "bggg")
    states = _drive([NOMINAL, bad_prime, bad_prime])

    final = states[-1]
    assert final.unit(1).isolated
    assert final.prime_uid == 2
    assert final.output_age == 0
    assert final.voter_validity is ValidityStatus.VALID
    assert abstract_state(final) is AbstractState.S2


def test_isolated_prime_without_healthy_unit_is_un_id():
    states = _drive(
        [NOMINAL, ([100] * 4, "bggg"), ([100] * 4, "bbbb"), NOMINAL]
    )

    un_id = states[2]
    assert un_id.voter_validity is ValidityStatus.UN_ID
    assert un_id.output_age == 2
    assert un_id.voter_output == states[0].voter_output
    assert abstract_state(un_id) is AbstractState.S3
    assert states[3].prime_uid == 2
    assert states[3].voter_validity is ValidityStatus.VALID


def test_too_many_isolations_are_not_valid_forever():
    three_bad = ([100] * 4, "bbbg")
    states = _drive([NOMINAL, three_bad, three_bad, NOMINAL, NOMINAL])

    for vs in states[2:]:
        assert vs.voter_validity is ValidityStatus.NOT_VALID
        assert vs.output_age == CONFIG.age_sentinel
        assert abstract_state(vs) is AbstractState.S4
    assert states[4].voter_output == states[1].voter_output


def test_step_requires_every_unit():
    vs = init(CONFIG, make_outputs([100] * 4))
    with pytest.raises(MissingUnit):
        step(vs, make_outputs([100] * 3), CONFIG)


def test_abstract_state_s1_with_longer_persistence():
    config = VoterConfig(num_units=4, delta=10, persistence_lmt=4, max_simul_fault=1)
    bad_prime = ([100] * 4, "bggg")
    states = _drive([NOMINAL, bad_prime, bad_prime], config)

    assert states[-1].output_age == 2
    assert abstract_state(states[-1]) is AbstractState.S1


# ---------------------------------------------------------------------------
# stateful exploration
# ---------------------------------------------------------------------------

readings = st.lists(
    st.tuples(st.sampled_from([0, 15, 40, 100]), st.sampled_from("gb")),
    min_size=4,
    max_size=4,
)


class VoterMachine(RuleBasedStateMachine):
    """Arbitrary input sequences, hypothesis-respecting or not."""

    @initialize(val=st.sampled_from([0, 15, 40, 100]))
    def start(self, val):
        self.vs = init(CONFIG, make_outputs([val] * 4))
        self.not_valid_seen = False

    @rule(row=readings)
    def cycle(self, row):
        prev = self.vs
        vals = [v for v, _ in row]
        healths = "".join(h for _, h in row)
        self.vs = step(prev, make_outputs(vals, healths), CONFIG)

        isolated_before = {d.uid for d in prev.u_data_lst if d.isolated}
        assert isolated_before <= {d.uid for d in self.vs.u_data_lst if d.isolated}
        if self.vs.prime_uid != prev.prime_uid:
            assert self.vs.unit(prev.prime_uid).isolated
        if self.vs.voter_validity is not ValidityStatus.NOT_VALID:
            assert self.vs.output_age in (0, prev.output_age + 1)

    @invariant()
    def state_checks_pass(self):
        assert check_state_invariants(self.vs, CONFIG).passed
        assert self.vs.violated_invariants(CONFIG) == []

    @invariant()
    def not_valid_is_absorbing(self):
        if self.not_valid_seen:
            assert self.vs.voter_validity is ValidityStatus.NOT_VALID
        self.not_valid_seen = self.vs.voter_validity is ValidityStatus.NOT_VALID

    @invariant()
    def age_bound(self):
        if self.vs.voter_validity is not ValidityStatus.NOT_VALID:
            assert self.vs.output_age <= 2 * (CONFIG.persistence_lmt - 1)


VoterMachine.TestCase.settings = settings(max_examples=200, stateful_step_count=12, deadline=None)
TestVoterMachine = VoterMachine.TestCase


# ---------------------------------------------------------------------------
# latency
# ---------------------------------------------------------------------------


def test_single_step_at_eight_units_is_sub_millisecond():
    config = VoterConfig(num_units=8, delta=10, persistence_lmt=3, max_simul_fault=3)
    vs = init(config, make_outputs([100] * 8))
    rows = [
        make_outputs([100, 104, 96, 130, 100, 99, 101, 100], "gggggggg"),
        make_outputs([100, 100, 100, 100, 100, 100, 100, 100], "bggggggg"),
    ]
    step(vs, rows[0], config)

    best = float("inf")
    for _ in range(5):
        start = time.perf_counter()
        for i in range(100):
            vs = step(vs, rows[i % 2], config)
        best = min(best, (time.perf_counter() - start) / 100)

    assert best < 1e-3
