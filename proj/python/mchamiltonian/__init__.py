"""Effective low-energy Hamiltonians from Monte Carlo transition matrices."""

from ._core import (
    ConfigError,
    EffectiveHamiltonian,
    Lattice,
    NumericalError,
    PhysicalParams,
    Potential,
    SamplerConfig,
    TransitionMatrix,
    avg_energy,
    build_heff,
    estimate_matrix,
    exact_box_matrix,
    free_box_element,
    free_box_matrix,
    free_kernel,
    free_thermo,
    harmonic_kernel,
    ho_exact_energy,
    ho_thermo,
    partition,
    reproduce,
    sech2_exact_spectrum,
    specific_heat,
    thermo_curve,
)

__all__ = [
    "ConfigError",
    "EffectiveHamiltonian",
    "Lattice",
    "NumericalError",
    "PhysicalParams",
    "Potential",
    "SamplerConfig",
    "TransitionMatrix",
    "avg_energy",
    "build_heff",
    "estimate_matrix",
    "exact_box_matrix",
    "free_box_element",
    "free_box_matrix",
    "free_kernel",
    "free_thermo",
    "harmonic_kernel",
    "ho_exact_energy",
    "ho_thermo",
    "partition",
    "reproduce",
    "sech2_exact_spectrum",
    "specific_heat",
    "thermo_curve",
]
