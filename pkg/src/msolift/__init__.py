"""Clique-separator decompositions, ordered tree extensions and MSO type composition."""

__version__ = "0.1.0"
