"""Certified verification of Radon, Bergström and power-mean type inequalities."""

__version__ = "0.1.0"
