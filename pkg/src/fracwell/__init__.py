"""Spectrum of the fractional Laplacian in the one-dimensional infinite well."""

from .errors import (ConvergenceError, DegenerateSpectrumError, DiagnosticError, DomainError,
                     FracwellError)
from .galerkin import GalerkinMatrix, QuadratureSpec, assemble, element
from .kernel import BasisIndex, Parity, f_even, g_odd
from .specfun import LevyIndex
from .spectrum import Spectrum, asymptotic_energy, solve

__version__ = "0.1.0"

__all__ = [
    "BasisIndex", "ConvergenceError", "DegenerateSpectrumError", "DiagnosticError",
    "DomainError", "FracwellError", "GalerkinMatrix", "LevyIndex", "Parity",
    "QuadratureSpec", "Spectrum", "assemble", "asymptotic_energy", "element", "f_even",
    "g_odd", "solve",
]
