"""Exact harmonic analysis on the Heisenberg group: Weyl transforms, twisted
convolution, spherical functions and Hecke-Bochner coefficients."""

__version__ = "0.1.0"
