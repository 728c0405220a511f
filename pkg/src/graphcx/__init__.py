"""Homology, Morse matchings and lattice computations for complexes of not i-connected graphs."""

__version__ = "0.1.0"
