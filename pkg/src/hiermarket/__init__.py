"""Multilevel market simulator: spin agents, cluster noise, factor pricing."""

__version__ = "0.1.0"
