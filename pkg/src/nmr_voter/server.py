"""NMR Voter MCP Server - FastMCP server with stdio/HTTP transport."""

import logging
import os

from fastmcp import FastMCP

# Suppress FastMCP's INFO logs to reduce console noise
logging.getLogger("fastmcp").setLevel(logging.WARNING)

from .tools.voter_tools import (  # noqa: E402
    check_scenario,
    enumerate_instances,
    generate_scenario,
    run_scenario,
)

# Create the MCP server
mcp = FastMCP(
    "NMR Voter MCP",
    instructions=(
        "Simulate and verify an N-modular redundant voter that selects one of "
        "N redundant sensor readings, identifies deviating units and isolates "
        "permanently faulty ones.\n\n"
        "Tools:\n"
        "- generate_scenario: build a seeded fault-injection scenario "
        "(units, delta, persistence_lmt, max_simul_fault, fault_rate, "
        "permanent_targets, horizon)\n"
        "- run_scenario: run the voter over a scenario and summarise switches, "
        "isolations, final validity and output age\n"
        "- check_scenario: run a scenario and check the trace against every "
        "requirement; returns findings with check ids such as R9 or SoundA\n"
        "- enumerate_instances: exhaustively check a small instance over every "
        "input sequence\n\n"
        "Tips:\n"
        "- Pass the scenario returned by generate_scenario to run_scenario or "
        "check_scenario as scenario_json (JSON-encoded).\n"
        "- Scenario files can also be given by path or http(s) URL via source.\n"
        "- Keep enumerate_instances small: traces grow as "
        "(values*healths)^(units*horizon)."
    ),
)

# Register tools
mcp.tool(generate_scenario)
mcp.tool(run_scenario)
mcp.tool(check_scenario)
mcp.tool(enumerate_instances)


def main():
    """Run the MCP server.

    Uses stdio transport by default (for MCP client auto-start).
    Set MCP_TRANSPORT=http to run as an HTTP server for remote access.
    """
    transport = os.getenv("MCP_TRANSPORT", "stdio")

    if transport == "http":
        host = os.getenv("MCP_HOST", "0.0.0.0")
        port = int(os.getenv("MCP_PORT", "8000"))
        print(f"Starting NMR Voter MCP server on {host}:{port}")
        print(f"MCP endpoint: http://{host}:{port}/mcp")
        mcp.run(transport="http", host=host, port=port, show_banner=False)
    else:
        mcp.run(transport="stdio", show_banner=False)


if __name__ == "__main__":
    main()
