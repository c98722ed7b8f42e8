"""Fault identification, isolation and output generation."""

from .voter import abstract_state, init, step

__all__ = ["abstract_state", "init", "step"]
