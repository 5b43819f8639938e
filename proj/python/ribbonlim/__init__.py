"""Python bindings for the ribbonlim core library.

The compiled module exposes the pointwise operations of the model:
relaxation constants, the relaxed integrand with its two-point
decomposition, and the reduced energy density. Charts, frames, and mesh
generation stay on the C++/CLI side.
"""

from ._core import (
    DensityPoint,
    InputError,
    NumericalError,
    ReducedDensity,
    Rigidity,
    alpha_constants,
    brute_force_biconjugate,
    orthotropic_alphas,
    orthotropic_reduced_density,
    relaxed_integrand,
    two_point_decomposition,
)

__all__ = [
    "DensityPoint",
    "InputError",
    "NumericalError",
    "ReducedDensity",
    "Rigidity",
    "alpha_constants",
    "brute_force_biconjugate",
    "orthotropic_alphas",
    "orthotropic_reduced_density",
    "relaxed_integrand",
    "two_point_decomposition",
]

__version__ = "0.1.0"
