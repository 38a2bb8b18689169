"""Hermite, Bargmann and Fock-space numerics for Fourier multipliers and Weyl transforms."""
from .basis import FockRep, HermiteRep, SpaceTag, basis_size, enumerate_indices, evaluate, space_norm
from .errors import NumericalGuardError
from .multipliers import (
    NormScan,
    OperatorMatrix,
    apply_S_phi_gmult,
    apply_S_phi_kernel,
    apply_S_phi_spectral,
    apply_S_tilde,
    apply_S_tilde_kernel,
    multiplier_matrix,
    op_norm,
    phi_from_m,
    uncertainty_scan,
)
from .report import Report
from .symbols import SymbolFn, builtin
from .transforms import bargmann, bargmann_adjoint, bargmann_integral, gauss_bargmann, gauss_bargmann_rep
from .weyl import RadialSymbol, kernel_bessel, kernel_series, laguerre_coeffs

__version__ = "0.1.0"

__all__ = [
    "FockRep",
    "HermiteRep",
    "SpaceTag",
    "basis_size",
    "enumerate_indices",
    "evaluate",
    "space_norm",
    "NumericalGuardError",
    "NormScan",
    "OperatorMatrix",
    "apply_S_phi_gmult",
    "apply_S_phi_kernel",
    "apply_S_phi_spectral",
    "apply_S_tilde",
    "apply_S_tilde_kernel",
    "multiplier_matrix",
    "op_norm",
    "phi_from_m",
    "uncertainty_scan",
    "Report",
    "SymbolFn",
    "builtin",
    "bargmann",
    "bargmann_adjoint",
    "bargmann_integral",
    "gauss_bargmann",
    "gauss_bargmann_rep",
    "RadialSymbol",
    "kernel_bessel",
    "kernel_series",
    "laguerre_coeffs",
]
