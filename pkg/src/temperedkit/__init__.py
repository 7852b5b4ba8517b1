"""Combinatorial machinery for tempered fundamental groups of polystable fibrations."""

__version__ = "0.1.0"
