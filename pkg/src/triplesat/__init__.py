"""Cube-and-conquer SAT toolkit for the boolean Pythagorean triples problem."""

__version__ = "0.1.0"
