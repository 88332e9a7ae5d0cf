"""Exact origami constructions: towers, fold axioms, classification and Alhazen."""

__version__ = "0.1.0"
