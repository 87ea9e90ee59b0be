"""Numerical tolerances shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermiticity: float = 1e-10
    psd: float = 1e-10
    trace: float = 1e-10
    pure_norm: float = 1e-9
    schmidt_norm: float = 1e-9
    dct_norm: float = 1e-10
    agreement: float = 1e-9
    # relative floor for clamping eigenvalues/radicands that rounding pushed below zero
    clamp: float = 1e-12


TOL = Tolerances()
