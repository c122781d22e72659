import math

import numpy as np
import pytest

from conftest import FIG1, FIG3
from rabi_exceptional.constraints import exceptional_couplings
from rabi_exceptional.errors import CutoffTooSmall, NotConverged
from rabi_exceptional.model import Branch, ModelParams, exceptional_energy
from rabi_exceptional.spectrum import (
    build_hamiltonian,
    converged_levels,
    degeneracy_at,
    eigen_spectrum,
    sweep_levels,
)


def count_below(a, x):
    """Eigenvalues of symmetric a below x, from the signs of the LDL^T pivots of a - x I."""
    m = np.array(a, dtype=float) - x * np.eye(len(a))
    neg = 0
    for k in range(len(m)):
        piv = m[k, k]
        if piv == 0:
            piv = 1e-300
        neg += piv < 0
        m[k + 1 :, k + 1 :] -= np.outer(m[k + 1 :, k], m[k, k + 1 :]) / piv
    return neg


def bisect_eigs(a):
    r = np.max(np.sum(np.abs(a), axis=1)) + 1
    out = []
    for i in range(len(a)):
        lo, hi = -r, r
        for _ in range(200):
            mid = (lo + hi) / 2
            if count_below(a, mid) > i:
                hi = mid
            else:
                lo = mid
            if hi - lo < 1e-14:
                break
        out.append((lo + hi) / 2)
    return np.array(out)


def test_decoupled():
    ev = eigen_spectrum(build_hamiltonian(ModelParams(1, 0, 1.2, 0), 5))
    assert np.allclose(ev, sorted(n + s for n in range(6) for s in (1.2, -1.2)))


def test_decoupled_first_four():
    ev = eigen_spectrum(build_hamiltonian(ModelParams(1, 0, 1.2, 0), 5), 4)
    assert np.allclose(ev, [-1.2, -0.2, 0.8, 1.2])


def test_pure_drive():
    ev = eigen_spectrum(build_hamiltonian(ModelParams(1, 0, 0, 0.5), 5))
    assert np.allclose(ev, sorted(n + s for n in range(6) for s in (0.5, -0.5)))


def test_bare_oscillator():
    ev = eigen_spectrum(build_hamiltonian(ModelParams(1, 0, 0, 0), 4), 6)
    assert np.allclose(ev, [0, 0, 1, 1, 2, 2])


def test_displaced_oscillator():
    ev = eigen_spectrum(build_hamiltonian(ModelParams(1, 0.5, 0, 0), 60), 2)
    assert np.allclose(ev, [-0.25, -0.25], atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_against_inertia_bisection(seed):
    rng = np.random.default_rng(seed)
    p = ModelParams(1.0, *rng.uniform([0, 0, -1], [1.2, 2, 1]))
    h = build_hamiltonian(p, 3)
    assert h.dim == 8
    assert np.max(np.abs(eigen_spectrum(h) - bisect_eigs(h.matrix))) < 1e-12


def test_symmetric_and_deterministic():
    h = build_hamiltonian(FIG1.as_float().with_g(0.7), 20)
    assert np.array_equal(h.matrix, h.matrix.T)
    assert np.array_equal(eigen_spectrum(h, 5), eigen_spectrum(h, 5))


def test_bad_k_and_cutoff():
    with pytest.raises(ValueError):
        eigen_spectrum(build_hamiltonian(FIG1, 2), 0)
    with pytest.raises(CutoffTooSmall):
        build_hamiltonian(FIG1, 0)


def test_truncation_converged():
    for g in (0.3, 0.8, 1.2):
        p = FIG1.as_float().with_g(g)
        a = eigen_spectrum(build_hamiltonian(p, 60))
        b = eigen_spectrum(build_hamiltonian(p, 120))
        k = int(np.count_nonzero(np.abs(a) <= 12))
        assert np.max(np.abs(a[:k] - b[:k])) <= 1e-9


def test_lowest_level_decreases_with_cutoff():
    p = FIG1.as_float().with_g(1.0)
    vals = [eigen_spectrum(build_hamiltonian(p, n), 1)[0] for n in (4, 8, 16, 32)]
    assert all(b <= a + 1e-14 for a, b in zip(vals, vals[1:]))


def test_not_converged():
    with pytest.raises(NotConverged):
        converged_levels(FIG1.as_float().with_g(1.0), 3, 2.0, 1e-9)


def test_sweep_shape():
    t = sweep_levels(FIG1, 0.0, 0.5, 2, 1, 3)
    assert t.levels.shape == (2, 1)
    t = sweep_levels(FIG1, 0.0, 0.5, 3, 2, 3, extra_g=[0.1])
    assert t.g_grid.tolist() == [0.0, 0.1, 0.25, 0.5]


def test_crossing_degeneracy_fig1():
    g = 0.9317039005170286
    e = 2 - g * g + 0.5
    assert degeneracy_at(FIG1.as_float().with_g(g), e) == 2


def test_no_crossing_fig3():
    for g in exceptional_couplings(FIG3, 2).couplings_g:
        p = FIG3.as_float().with_g(g)
        assert degeneracy_at(p, exceptional_energy(p, 2)) == 1


def test_far_from_levels():
    assert degeneracy_at(FIG1.as_float().with_g(0.5), 0.123456, tol=1e-6) == 0


def test_oracle_consistency():
    for base in (FIG1, FIG3):
        for branch in Branch:
            for n in range(1, 6):
                for g in exceptional_couplings(base, n, branch).couplings_g:
                    p = base.as_float().with_g(g)
                    ev = eigen_spectrum(build_hamiltonian(p, 60))
                    assert np.min(np.abs(ev - exceptional_energy(p, n, branch))) <= 1e-8
