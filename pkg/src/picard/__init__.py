"""Explicit reduction theory and cohomology for the Picard modular group SU(2,1; Z[i])."""

__version__ = "0.1.0"
