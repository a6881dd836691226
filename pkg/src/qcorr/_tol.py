"""Numerical tolerances shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-10
    hermitian: float = 1e-10
    trace: float = 1e-10
    psd: float = 1e-9
    entropy_cutoff: float = 1e-12
    trace_preserving: float = 1e-9
    unitality: float = 1e-8
    commutator: float = 1e-8
    lindblad_identity: float = 1e-9
    evolve_state: float = 1e-7
    converged: float = 1e-6


TOL = Tolerances()
