"""NMR Voter - N-modular redundant input selection with fault isolation."""

__version__ = "0.1.0"
