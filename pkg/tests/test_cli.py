"""Tests for the nmr-voter command line."""

import json

import pytest

from nmr_voter.cli import main
from nmr_voter.feeds.files import dump_scenario, load_trace
from nmr_voter.models.scenario import BehaviorKind
from nmr_voter.oracle import MUTATIONS

from .conftest import make_scenario


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenario.json"
    assert main(["generate", "--seed", "1", "--cycles", "12", "--fault-rate", "0.1", "--out", str(path)]) == 0
    return path


# ---------------------------------------------------------------------------
# generate / run / check
# ---------------------------------------------------------------------------


def test_generate_to_stdout(capsys):
    assert main(["generate", "--seed", "4", "--cycles", "3"]) == 0

    scenario = json.loads(capsys.readouterr().out)
    assert scenario["seed"] == 4
    assert len(scenario["cycles"]) == 3


def test_run_then_check_passes(scenario_file, tmp_path, capsys):
    trace_file = tmp_path / "trace.jsonl"

    assert main(["run", str(scenario_file), "--trace", str(trace_file)]) == 0
    assert capsys.readouterr().out.startswith("cycles=12 ")
    assert len(load_trace(trace_file)) == 12

    assert main(["check", str(scenario_file), str(trace_file)]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_run_json_summary(scenario_file, capsys):
    assert main(["run", str(scenario_file), "--json"]) == 0

    summary = json.loads(capsys.readouterr().out)
    assert summary["cycles"] == 12
    assert set(summary["states"]) <= {"S0", "S1", "S2", "S3", "S4"}


@pytest.mark.parametrize("kind", sorted(MUTATIONS))
def test_mutated_trace_fails_check(prime_fault_scenario, tmp_path, capsys, kind):
    scenario_file = tmp_path / "scenario.json"
    trace_file = tmp_path / "trace.jsonl"
    broken = tmp_path / "broken.jsonl"
    dump_scenario(prime_fault_scenario, scenario_file)
    main(["run", str(scenario_file), "--trace", str(trace_file)])

    assert main(["mutate", str(trace_file), "--scenario", str(scenario_file), "--kind", kind, "--out", str(broken)]) == 0
    capsys.readouterr()

    assert main(["check", str(scenario_file), str(broken), "--json"]) == 1
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["pass"] is False
    assert kind in {f["check"] for f in verdict["findings"]}


def test_generate_and_run_are_reproducible(tmp_path, capsys):
    outputs = []
    for name in ("first", "second"):
        scenario_file = tmp_path / f"{name}.json"
        trace_file = tmp_path / f"{name}.jsonl"
        generate = ["generate", "--seed", "7", "--cycles", "40", "--fault-rate", "0.2", "--permanent", "1"]
        assert main([*generate, "--out", str(scenario_file)]) == 0
        assert main(["run", str(scenario_file), "--trace", str(trace_file)]) == 0
        outputs.append((scenario_file.read_bytes(), trace_file.read_bytes()))

    assert outputs[0] == outputs[1]
    assert len(outputs[0][1].splitlines()) == 40


def test_check_json_verdict(scenario_file, tmp_path, capsys):
    trace_file = tmp_path / "trace.jsonl"
    main(["run", str(scenario_file), "--trace", str(trace_file)])
    capsys.readouterr()

    assert main(["check", str(scenario_file), str(trace_file), "--json"]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["pass"] is True
    assert verdict["findings"] == []


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def test_enumerate_small_instance(capsys):
    assert main(["enumerate", "--units", "3", "--values", "0,40", "--horizon", "2"]) == 0

    out = capsys.readouterr().out
    assert out.startswith("traces=64 ")
    assert "PASS" in out


def test_enumerate_over_budget():
    assert main(["enumerate", "--budget", "10"]) == 2


# ---------------------------------------------------------------------------
# error exits
# ---------------------------------------------------------------------------


def test_invalid_config_exits_2(capsys):
    assert main(["generate", "--persistence", "1"]) == 2
    assert "persistence_lmt" in capsys.readouterr().err


def test_missing_scenario_exits_2(tmp_path):
    assert main(["run", str(tmp_path / "nope.json")]) == 2


def test_truncated_trace_exits_2(scenario_file, tmp_path):
    trace_file = tmp_path / "trace.jsonl"
    main(["run", str(scenario_file), "--trace", str(trace_file)])
    lines = trace_file.read_text().splitlines()
    trace_file.write_text("\n".join(lines[:-1]) + "\n")

    assert main(["check", str(scenario_file), str(trace_file)]) == 2


def test_no_healthy_unit_at_start_exits_3(config4, tmp_path, capsys):
    bad = (100, BehaviorKind.BAD_HEALTH)
    path = tmp_path / "all_bad.json"
    dump_scenario(make_scenario(config4, [[bad] * 4, [100] * 4]), path)

    assert main(["run", str(path)]) == 3
    assert "healthy" in capsys.readouterr().err


def test_unknown_mutation_kind_is_a_usage_error(scenario_file, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["mutate", "t.jsonl", "--scenario", str(scenario_file), "--kind", "R99", "--out", str(tmp_path / "x")])

    assert exc.value.code == 2


def test_small_soak(capsys):
    assert main(["soak", "--count", "2", "--horizon", "20", "--seed", "5"]) == 0

    out = capsys.readouterr().out
    assert out.startswith("scenarios=2 ")
    assert "PASS" in out
