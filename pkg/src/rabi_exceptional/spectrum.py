"""Truncated-Fock diagonalization of the full Hamiltonian.

Basis |n> (x) |s>, s in {up, down} of sigma_z, interleaved as index 2n + s so
the matrix is banded with half-bandwidth 3. This route shares no code with the
constraint or Bethe machinery and serves as their independent check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import CutoffTooSmall, NotConverged
from .model import ModelParams

log = logging.getLogger(__name__)

DEFAULT_NMAX = 60
DEFAULT_TOL = 1e-6


@dataclass
class FockHamiltonian:
    n_max: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_hamiltonian(p: ModelParams, n_max: int = DEFAULT_NMAX) -> FockHamiltonian:
    if n_max < 1:
        raise CutoffTooSmall(f"n_max must be >= 1, got {n_max}")
    p = p.as_float()
    dim = 2 * (n_max + 1)
    h = np.zeros((dim, dim))
    n = np.arange(n_max + 1)
    h[2 * n, 2 * n] = n * p.omega + p.delta
    h[2 * n + 1, 2 * n + 1] = n * p.omega - p.delta
    h[2 * n, 2 * n + 1] = h[2 * n + 1, 2 * n] = p.epsilon
    m = n[:-1]
    amp = p.g * np.sqrt(m + 1.0)
    # sigma_x flips the spin while a^dag + a moves one boson
    h[2 * m, 2 * (m + 1) + 1] = h[2 * (m + 1) + 1, 2 * m] = amp
    h[2 * m + 1, 2 * (m + 1)] = h[2 * (m + 1), 2 * m + 1] = amp
    return FockHamiltonian(n_max, h)


def eigen_spectrum(h: FockHamiltonian, k: int | None = None) -> np.ndarray:
    """k smallest eigenvalues in ascending order."""
    k = h.dim if k is None else k
    if not 1 <= k <= h.dim:
        raise ValueError(f"k must be in [1, {h.dim}], got {k}")
    return np.linalg.eigvalsh(h.matrix)[:k]


@dataclass
class SpectrumTable:
    g_grid: np.ndarray
    levels: np.ndarray
    n_max: int
    omega: float
    delta: float
    epsilon: float

    def rows(self):
        for g, row in zip(self.g_grid, self.levels):
            yield g, row


def sweep_levels(
    p: ModelParams,
    g_min: float,
    g_max: float,
    steps: int,
    k: int,
    n_max: int = DEFAULT_NMAX,
    extra_g=(),
) -> SpectrumTable:
    """k lowest levels on a uniform g grid (plus any ``extra_g`` points merged in)."""
    if not g_min < g_max:
        raise ValueError("g_min must be below g_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    grid = np.linspace(g_min, g_max, steps)
    if len(extra_g):
        grid = np.unique(np.concatenate([grid, np.asarray(extra_g, dtype=float)]))
    pf = p.as_float()
    levels = np.array([eigen_spectrum(build_hamiltonian(pf.with_g(g), n_max), k) for g in grid])
    return SpectrumTable(grid, levels, n_max, pf.omega, pf.delta, pf.epsilon)


def converged_levels(p: ModelParams, n_max: int, upto: float, tol: float) -> np.ndarray:
    """Eigenvalues below ``upto``, checked against a doubled cutoff."""
    a = np.linalg.eigvalsh(build_hamiltonian(p, n_max).matrix)
    b = np.linalg.eigvalsh(build_hamiltonian(p, 2 * n_max).matrix)
    count = int(np.searchsorted(a, upto)) + 2
    drift = np.max(np.abs(a[:count] - b[:count]))
    if drift >= tol:
        raise NotConverged(f"doubling n_max={n_max} moves levels by {drift:.3e} (tolerance {tol:.1e})")
    return a


def degeneracy_at(p: ModelParams, e_target: float, n_max: int = DEFAULT_NMAX, tol: float = DEFAULT_TOL) -> int:
    """Number of eigenvalues within ``tol`` of ``e_target``."""
    levels = converged_levels(p.as_float(), n_max, e_target + 1.0, tol / 10)
    return int(np.count_nonzero(np.abs(levels - e_target) <= tol))
