"""Tensor joins of weighted hypergraphs and their spectra."""

__version__ = "0.1.0"
