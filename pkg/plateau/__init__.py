"""Plateaued p-ary functions, exact Walsh spectra and three-weight linear codes."""

__version__ = "0.1.0"
