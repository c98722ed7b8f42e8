"""Scenario and trace file feeds."""
