"""Exceptional (Juddian) spectrum of the driven Rabi model.

Constraint polynomials, Bethe-type root equations, product-form
wavefunctions, and a truncated-Fock diagonalization used as an independent
check.
"""

from .bethe import (
    OdeCoefficients,
    RootSet,
    bethe_residual,
    constraint_residual,
    rabi_ode_coefficients,
    roots_via_recurrence,
    solve_bethe,
    zhang_conditions,
)
from .constraints import (
    constraint_poly,
    crossing_coincidence,
    exceptional_couplings,
    heun_tail,
    verify_interlacing,
)
from .model import Branch, ExceptionalLevel, ModelParams, exceptional_energy, validate_params
from .ratpoly import RatPoly, isolate_positive_roots, sturm_count
from .spectrum import build_hamiltonian, degeneracy_at, eigen_spectrum, sweep_levels
from .wavefunction import Component, WavefunctionPair, component_eval, schrodinger_residual

__version__ = "0.1.0"
