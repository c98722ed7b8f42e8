"""Scenario and trace file handling.

Scenarios are single JSON documents; traces are JSON Lines with one
TraceRecord per line. Scenario sources may also be http(s) URLs.
"""

import asyncio
from collections.abc import Iterable
from pathlib import Path

import httpx
from pydantic import ValidationError

from ..errors import ScenarioParseError
from ..models.scenario import Scenario, TraceRecord

FETCH_TIMEOUT = 30.0


def is_url(source: str) -> bool:
    return source.startswith(("http://", "https://"))


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """Parse scenario JSON.

    Raises:
        ScenarioParseError: if the text is not a valid scenario.
    """
    try:
        return Scenario.model_validate_json(text)
    except ValidationError as exc:
        raise ScenarioParseError(f"{source}: {exc}") from exc


def parse_trace(text: str, source: str = "<trace>") -> list[TraceRecord]:
    """Parse a JSON Lines trace, skipping blank lines.

    Raises:
        ScenarioParseError: if any line is not a valid trace record.
    """
    trace = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            trace.append(TraceRecord.model_validate_json(line))
        except ValidationError as exc:
            raise ScenarioParseError(f"{source}:{lineno}: {exc}") from exc
    return trace


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc.strerror or exc}") from exc


async def fetch_scenario(source: str, client: httpx.AsyncClient | None = None) -> Scenario:
    """Load a scenario from a local path or an http(s) URL.

    Args:
        source: File path or URL.
        client: Optional client to reuse; one is created per call otherwise.

    Raises:
        ScenarioParseError: if the source cannot be read or parsed.
    """
    if not is_url(source):
        return load_scenario(source)
    try:
        if client is None:
            async with httpx.AsyncClient() as own:
                response = await own.get(source, timeout=FETCH_TIMEOUT)
        else:
            response = await client.get(source, timeout=FETCH_TIMEOUT)
        response.raise_for_status()
    except httpx.HTTPError as exc:
        raise ScenarioParseError(f"{source}: {exc}") from exc
    return parse_scenario(response.text, source)


def read_scenario(source: str) -> Scenario:
    """Synchronous entry point for fetch_scenario."""
    if is_url(source):
        return asyncio.run(fetch_scenario(source))
    return load_scenario(source)


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(_read(path), str(path))


def dump_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(scenario.model_dump_json(indent=2) + "\n", encoding="utf-8")


def load_trace(path: str | Path) -> list[TraceRecord]:
    return parse_trace(_read(path), str(path))


def dump_trace(trace: Iterable[TraceRecord], path: str | Path) -> None:
    Path(path).write_text(
        "".join(record.model_dump_json() + "\n" for record in trace), encoding="utf-8"
    )
