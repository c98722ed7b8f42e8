"""Tests for scenario and trace file feeds."""

import json

import httpx
import pytest

from nmr_voter.errors import ScenarioParseError
from nmr_voter.feeds.files import (
    dump_scenario,
    dump_trace,
    fetch_scenario,
    is_url,
    load_scenario,
    load_trace,
    parse_scenario,
    parse_trace,
    read_scenario,
)
from nmr_voter.sim import run


def _client(handler) -> httpx.AsyncClient:
    return httpx.AsyncClient(transport=httpx.MockTransport(handler))


# ---------------------------------------------------------------------------
# local files
# ---------------------------------------------------------------------------


def test_scenario_file_round_trip(prime_fault_scenario, tmp_path):
    path = tmp_path / "scenario.json"

    dump_scenario(prime_fault_scenario, path)

    assert path.read_text().endswith("}\n")
    assert load_scenario(path) == prime_fault_scenario
    assert read_scenario(str(path)) == prime_fault_scenario


def test_trace_is_json_lines(prime_fault_scenario, tmp_path):
    trace = run(prime_fault_scenario)
    path = tmp_path / "trace.jsonl"

    dump_trace(trace, path)

    assert len(path.read_text().splitlines()) == len(trace)
    assert load_trace(path) == trace


def test_blank_trace_lines_are_skipped(prime_fault_scenario):
    trace = run(prime_fault_scenario)
    text = "\n\n".join(record.model_dump_json() for record in trace[:2]) + "\n\n"

    assert parse_trace(text) == trace[:2]


def test_bad_trace_line_names_the_line():
    with pytest.raises(ScenarioParseError, match=r"t\.jsonl:2"):
        parse_trace("\n{}\n", "t.jsonl")


def test_invalid_scenario_json():
    with pytest.raises(ScenarioParseError, match="scenario.json"):
        parse_scenario('{"seed": 1}', "scenario.json")


def test_scenario_with_missing_unit_is_rejected(prime_fault_scenario):
    data = prime_fault_scenario.model_dump(mode="json")
    data["cycles"][1]["units"] = data["cycles"][1]["units"][:3]

    with pytest.raises(ScenarioParseError):
        parse_scenario(json.dumps(data))


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioParseError):
        load_scenario(tmp_path / "absent.json")


# ---------------------------------------------------------------------------
# URLs
# ---------------------------------------------------------------------------


def test_is_url():
    assert is_url("https://example.org/s.json")
    assert is_url("http://localhost:8000/s.json")
    assert not is_url("scenarios/s.json")


async def test_fetch_scenario_over_http(prime_fault_scenario):
    body = prime_fault_scenario.model_dump_json()

    def handler(request: httpx.Request) -> httpx.Response:
        assert request.url.path == "/s.json"
        return httpx.Response(200, text=body)

    async with _client(handler) as client:
        scenario = await fetch_scenario("https://example.org/s.json", client)

    assert scenario == prime_fault_scenario


async def test_fetch_scenario_http_error():
    async with _client(lambda request: httpx.Response(404)) as client:
        with pytest.raises(ScenarioParseError, match="s.json"):
            await fetch_scenario("https://example.org/s.json", client)


async def test_fetch_scenario_local_path(prime_fault_scenario, tmp_path):
    path = tmp_path / "scenario.json"
    dump_scenario(prime_fault_scenario, path)

    assert await fetch_scenario(str(path)) == prime_fault_scenario
