"""Covariants, subdiscriminants and vanishing ideals of matrices with few eigenvalues."""

__version__ = "0.1.0"
