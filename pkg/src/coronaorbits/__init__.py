"""Matchings on corona graphs and Borel orbits on pairs of complementary subspaces."""

__version__ = "0.1.0"
