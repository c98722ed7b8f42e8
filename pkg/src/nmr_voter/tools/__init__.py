"""MCP tools for the voter."""
