"""Exact decision procedures for Kähler differentials of valuation-ring
extensions of prime degree, deeply ramified fields and a Hahn-series oracle."""

__version__ = "0.1.0"
