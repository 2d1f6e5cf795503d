"""Exact computations in the Chow and cohomology rings of BPGL_p."""

__version__ = "0.1.0"
