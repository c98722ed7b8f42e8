"""Tests for MCP tools."""

import json

import pytest


# ---------------------------------------------------------------------------
# generate_scenario
# ---------------------------------------------------------------------------


@pytest.mark.asyncio
async def test_generate_returns_scenario_document():
    """The scenario comes back as plain JSON data with its hypothesis flag."""
    from nmr_voter.tools.voter_tools import generate_scenario

    result = await generate_scenario(seed=3, horizon=10, fault_rate=0.1)

    assert result["hypothesis_ok"] is True
    assert result["scenario"]["seed"] == 3
    assert len(result["scenario"]["cycles"]) == 10
    json.dumps(result)


@pytest.mark.asyncio
async def test_generate_bad_config_is_an_error():
    """Invalid configuration is reported, not raised."""
    from nmr_voter.tools.voter_tools import generate_scenario

    result = await generate_scenario(persistence_lmt=1)

    assert "persistence_lmt" in result["error"]


@pytest.mark.asyncio
async def test_generate_bad_profile_is_an_error():
    from nmr_voter.tools.voter_tools import generate_scenario

    result = await generate_scenario(permanent_targets=[9])
    assert "error" in result

    result = await generate_scenario(fault_rate=1.5)
    assert "error" in result


# ---------------------------------------------------------------------------
# run_scenario / check_scenario
# ---------------------------------------------------------------------------


@pytest.mark.asyncio
async def test_run_scenario_from_json(prime_fault_scenario):
    from nmr_voter.tools.voter_tools import run_scenario

    result = await run_scenario(scenario_json=prime_fault_scenario.model_dump_json())

    assert result["summary"]["switches"] == 1
    assert result["summary"]["isolations"] == 1
    assert "trace" not in result


@pytest.mark.asyncio
async def test_run_scenario_with_trace(prime_fault_scenario, tmp_path):
    from nmr_voter.feeds.files import dump_scenario
    from nmr_voter.tools.voter_tools import run_scenario

    path = tmp_path / "scenario.json"
    dump_scenario(prime_fault_scenario, path)

    result = await run_scenario(source=str(path), include_trace=True)

    assert [r["voter"]["prime_uid"] for r in result["trace"]] == [1, 1, 2, 2, 2]
    assert result["trace"][2]["prime_switched"] is True


@pytest.mark.asyncio
async def test_run_scenario_needs_a_source():
    from nmr_voter.tools.voter_tools import run_scenario

    result = await run_scenario()

    assert "error" in result


@pytest.mark.asyncio
async def test_check_scenario_passes(prime_fault_scenario):
    from nmr_voter.tools.voter_tools import check_scenario

    result = await check_scenario(scenario_json=prime_fault_scenario.model_dump_json())

    assert result["verdict"]["pass"] is True
    assert result["verdict"]["findings"] == []
    assert result["summary"]["cycles"] == 5


@pytest.mark.asyncio
async def test_generated_scenario_feeds_check():
    """generate_scenario output can be passed straight to check_scenario."""
    from nmr_voter.tools.voter_tools import check_scenario, generate_scenario

    generated = await generate_scenario(seed=9, horizon=30, fault_rate=0.1, permanent_targets=[3])
    result = await check_scenario(scenario_json=json.dumps(generated["scenario"]))

    assert result["verdict"]["pass"] is True


@pytest.mark.asyncio
async def test_check_scenario_malformed_json():
    from nmr_voter.tools.voter_tools import check_scenario

    result = await check_scenario(scenario_json='{"seed": 1}')

    assert "error" in result


# ---------------------------------------------------------------------------
# enumerate_instances
# ---------------------------------------------------------------------------


@pytest.mark.asyncio
async def test_enumerate_defaults():
    from nmr_voter.tools.voter_tools import enumerate_instances

    result = await enumerate_instances()

    assert result["verdict"]["pass"] is True
    assert result["traces"] == 4096
    assert result["init_rejected"] == 20


@pytest.mark.asyncio
async def test_enumerate_refuses_large_requests():
    from nmr_voter.tools.voter_tools import enumerate_instances

    result = await enumerate_instances(num_units=4, values=[0, 15, 40], horizon=3)

    assert "error" in result


@pytest.mark.asyncio
async def test_enumerate_unknown_health():
    from nmr_voter.tools.voter_tools import enumerate_instances

    result = await enumerate_instances(healths=["fine"])

    assert "error" in result
