"""Collective attenuation of exciton relaxation in a dissipative dimer.

A coupled oscillator pair with asymmetric phonon coupling relaxes
through a single collective channel whose decay constant is the site
dephasing rate scaled down by the attenuation factor
alpha = (|eta| j12 / omega0)^2.  The package provides the exciton
transformation, the rate algebra, closed-form and numerical dynamics
of the one-excitation density matrix, and the inverse analyses that
recover |eta| from measured lifetime ratios.
"""

from .analysis import (
    EtaEstimate,
    NoSolutionError,
    SweepResult,
    estimate_eta,
    estimate_eta_limit,
    find_alpha_minimum,
    sweep_inverse_alpha,
)
from .dynamics import (
    EvolutionParams,
    OneExcitationState,
    StepSizeError,
    analytic_evolve,
    from_site_basis,
    lindblad_generator,
    numeric_evolve,
    to_site_basis,
)
from .excitons import (
    DegenerateDimerError,
    DimerParams,
    ExcitonFrame,
    basis_map,
    exciton_frame,
    exciton_frequencies,
    lambda2_from_eta,
    mixing_angle,
    renormalized_gap,
    su2_identity_check,
)
from .rates import (
    BathSpec,
    RateSet,
    ResonantModeError,
    attenuation_factor,
    bose_occupation,
    decay_constant,
    frequency_renormalization,
    helix_attenuation,
    limit_inverse_alpha,
    load_modes_csv,
    rate_set,
    renormalized_frequencies,
)
from .units import (
    C_CM_PER_FS,
    KB_CM1_PER_K,
    angular_to_wavenumber,
    thermal_energy,
    wavenumber_to_angular,
)

__version__ = "0.1.0"

__all__ = [
    "C_CM_PER_FS",
    "KB_CM1_PER_K",
    "wavenumber_to_angular",
    "angular_to_wavenumber",
    "thermal_energy",
    "DimerParams",
    "ExcitonFrame",
    "DegenerateDimerError",
    "lambda2_from_eta",
    "renormalized_gap",
    "mixing_angle",
    "exciton_frequencies",
    "exciton_frame",
    "basis_map",
    "su2_identity_check",
    "BathSpec",
    "RateSet",
    "ResonantModeError",
    "bose_occupation",
    "attenuation_factor",
    "decay_constant",
    "rate_set",
    "limit_inverse_alpha",
    "helix_attenuation",
    "frequency_renormalization",
    "renormalized_frequencies",
    "load_modes_csv",
    "OneExcitationState",
    "EvolutionParams",
    "StepSizeError",
    "analytic_evolve",
    "numeric_evolve",
    "to_site_basis",
    "from_site_basis",
    "lindblad_generator",
    "SweepResult",
    "EtaEstimate",
    "NoSolutionError",
    "sweep_inverse_alpha",
    "find_alpha_minimum",
    "estimate_eta",
    "estimate_eta_limit",
    "__version__",
]
