"""Exact verification of the identity chain behind the classification of
proper biharmonic hypersurfaces in 4-dimensional space forms."""

__version__ = "0.1.0"
