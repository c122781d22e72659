"""Two-component exceptional wavefunctions in the Bargmann representation.

PLUS branch:  psi_+ = exp(-g z/omega) S(z),  S = prod (z - z_i) (monic)
              psi_- = exp(-g z/omega) * -(1/delta) [(omega z + g) S' - (g^2/omega + E - eps) S]
MINUS branch: psi_- = exp(+g z/omega) (-1)^N S(z)
              psi_+ = exp(+g z/omega) * -(1/delta) [(omega z - g) T' - (g^2/omega + E + eps) T],  T = (-1)^N S
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .bethe import RootSet
from .errors import ZeroDelta
from .model import Branch, ModelParams, exceptional_energy

POLE_EXCLUSION = 1e-3


class Component(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass
class WavefunctionPair:
    branch: Branch
    n: int
    roots: RootSet
    params: ModelParams
    energy: float | None = None

    def __post_init__(self):
        self.branch = Branch.parse(self.branch)
        self.params = self.params.as_float()
        if self.energy is None:
            self.energy = exceptional_energy(self.params, self.n, self.branch)

    @property
    def single_component(self) -> bool:
        return self.params.delta == 0

    def polynomials(self) -> tuple[Polynomial, Polynomial]:
        """Polynomial prefactors (of psi_+, psi_-) multiplying the exponential."""
        p = self.params
        w, g, e, d, E = p.omega, p.g, p.epsilon, p.delta, self.energy
        s = Polynomial.fromroots(self.roots.roots) if self.n else Polynomial([1.0])
        if self.branch is Branch.PLUS:
            main = s
            lin = Polynomial([g, w])
            shift = g * g / w + E - e
        else:
            main = (-1) ** self.n * s
            lin = Polynomial([-g, w])
            shift = g * g / w + E + e
        if d == 0:
            partner = Polynomial([0.0])
        else:
            # the z^n terms cancel on the exceptional energy
            partner = (-(lin * main.deriv() - shift * main) / d).cutdeg(max(self.n - 1, 0))
        return (main, partner) if self.branch is Branch.PLUS else (partner, main)

    def exponent(self) -> float:
        return -self.branch.sign * self.params.g / self.params.omega


def component_eval(w: WavefunctionPair, which: Component, z):
    """Value of psi_+ or psi_- at (complex) z."""
    which = Component(which.value if isinstance(which, enum.Enum) else which)
    if w.single_component:
        partner = Component.MINUS if w.branch is Branch.PLUS else Component.PLUS
        if which is partner:
            raise ZeroDelta("partner component is undefined at delta = 0")
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    fp, fm, _, _ = _branch_values(w, zz)
    out = fp if which is Component.PLUS else fm
    return out if np.ndim(z) else out[0]


def standard_grid(p: ModelParams) -> np.ndarray:
    """16 points on each circle |z| = 1, 2 plus 13 points on [-3, 3], away from +/- g/omega."""
    t = 2 * np.pi * np.arange(16) / 16
    pts = np.concatenate([np.exp(1j * t), 2 * np.exp(1j * t), np.linspace(-3, 3, 13).astype(complex)])
    pole = float(p.g) / float(p.omega)
    keep = (np.abs(pts - pole) > POLE_EXCLUSION) & (np.abs(pts + pole) > POLE_EXCLUSION)
    return pts[keep]


def _product_derivs(roots: np.ndarray, z: np.ndarray):
    """S, S', S'' of the monic product at z, without expanding coefficients."""
    if len(roots) == 0:
        one = np.ones_like(z)
        return one, 0 * one, 0 * one
    diff = z[:, None] - roots[None, :]
    s = np.prod(diff, axis=1)
    # elementary symmetric sums over the factors give exact derivatives even at a root
    d1 = np.zeros_like(z)
    d2 = np.zeros_like(z)
    n = len(roots)
    for i in range(n):
        others = np.delete(diff, i, axis=1)
        d1 = d1 + np.prod(others, axis=1)
        for j in range(n):
            if j != i:
                d2 = d2 + np.prod(np.delete(diff, [i, j], axis=1), axis=1)
    return s, d1, d2


def _branch_values(w: WavefunctionPair, z: np.ndarray):
    """(psi_+, psi_-, psi_+', psi_-') on the sample points, from the product form."""
    p = w.params
    om, g, e, d, E = p.omega, p.g, p.epsilon, p.delta, w.energy
    s, s1, s2 = _product_derivs(w.roots.roots, z)
    if w.branch is Branch.PLUS:
        lin, shift, sign = om * z + g, g * g / om + E - e, 1.0
    else:
        lin, shift, sign = om * z - g, g * g / om + E + e, (-1.0) ** w.n
    m0, m1, m2 = sign * s, sign * s1, sign * s2
    if d == 0:
        q0 = q1 = np.zeros_like(z)
    else:
        q0 = -(lin * m1 - shift * m0) / d
        q1 = -(om * m1 + lin * m2 - shift * m1) / d
    k = w.exponent()
    ex = np.exp(k * z)
    main, dmain = ex * m0, ex * (k * m0 + m1)
    part, dpart = ex * q0, ex * (k * q0 + q1)
    if w.branch is Branch.PLUS:
        return main, part, dmain, dpart
    return part, main, dpart, dmain


def schrodinger_residual(w: WavefunctionPair, z_samples=None) -> float:
    """Max residual of the coupled first-order system, relative to the largest component value."""
    p = w.params
    om, g, e, d, E = p.omega, p.g, p.epsilon, p.delta, w.energy
    z = standard_grid(p) if z_samples is None else np.asarray(z_samples, dtype=complex)
    fp, fm, dp, dm = _branch_values(w, z)
    r1 = (om * z + g) * dp + (g * z + e - E) * fp + d * fm
    r2 = (om * z - g) * dm - (g * z + e + E) * fm + d * fp
    scale = max(np.max(np.abs(fp)), np.max(np.abs(fm)))
    if w.single_component:
        # only the populated component is constrained; the other vanishes identically
        r = r1 if w.branch is Branch.PLUS else r2
        return float(np.max(np.abs(r)) / scale)
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))) / scale)
