"""Bethe-type algebraic equations for the roots of the exceptional wavefunctions.

The polynomial factor S(z) = prod (z - z_i) of the PLUS-branch component solves

    X(z) S'' + Y(z) S' + Z(z) S = 0,

a second-order ODE of the shape covered by Zhang's theorem. Its roots obey

    sum_{j != i} 2 omega / (z_i - z_j)
        = (N omega^2 + 2 eps omega)/(omega z_i - g) + (N omega^2 - omega^2)/(omega z_i + g) + 2 g.

MINUS-branch quantities are the PLUS ones with epsilon -> -epsilon and z -> -z.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .constraints import heun_series, surface_residual
from .errors import CoincidentRoots, NoConvergence, OffSurface, PoleCollision, VanishingA
from .model import Branch, ModelParams, exceptional_energy

log = logging.getLogger(__name__)

DISTINCT_TOL = 1e-9
RESIDUAL_TOL = 1e-10
SURFACE_TOL = 1e-8
MAX_ITER = 200
MAX_HALVINGS = 8


@dataclass
class RootSet:
    """Roots z_1..z_n of the product-form wavefunction factor.

    ``degenerate`` marks the atomic-limit representation (delta = 0), where all
    roots coincide at -g/omega (PLUS) or +g/omega (MINUS) and the Bethe
    equations are singular.
    """

    roots: np.ndarray
    degenerate: bool = False
    max_residual: float | None = None
    iterations: int | None = None

    def __post_init__(self):
        self.roots = np.asarray(self.roots, dtype=complex).reshape(-1)

    @property
    def n(self) -> int:
        return len(self.roots)

    def is_real(self, tol=1e-9) -> bool:
        return bool(np.all(np.abs(self.roots.imag) <= tol * np.maximum(1, np.abs(self.roots))))

    def sorted(self) -> np.ndarray:
        return np.sort_complex(self.roots)

    def negated(self) -> "RootSet":
        return RootSet(-self.roots, self.degenerate, self.max_residual, self.iterations)


@dataclass
class OdeCoefficients:
    a: np.ndarray = field(default_factory=lambda: np.zeros(5))
    b: np.ndarray = field(default_factory=lambda: np.zeros(4))
    c: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.a = _pad(self.a, 5)
        self.b = _pad(self.b, 4)
        self.c = _pad(self.c, 3)
        if not np.any(self.a):
            raise ValueError("X(z) must not vanish identically")

    def X(self, z):
        return Polynomial(self.a)(z)

    def Y(self, z):
        return Polynomial(self.b)(z)

    def Z(self, z):
        return Polynomial(self.c)(z)

    def reflected(self) -> "OdeCoefficients":
        """Coefficients of the ODE obeyed by S(-z)."""
        sa = np.array([(-1) ** k for k in range(5)])
        sb = np.array([(-1) ** (k + 1) for k in range(4)])
        sc = np.array([(-1) ** k for k in range(3)])
        return OdeCoefficients(self.a * sa, self.b * sb, self.c * sc)


def _pad(v, n):
    v = np.asarray(v, dtype=float).reshape(-1)
    if len(v) > n:
        raise ValueError(f"expected at most {n} coefficients, got {len(v)}")
    return np.concatenate([v, np.zeros(n - len(v))])


def rabi_ode_coefficients(p: ModelParams, energy: float, branch: Branch = Branch.PLUS) -> OdeCoefficients:
    """Map the Rabi second-order equation onto X, Y, Z.

    The z-linear coefficient of Z goes into ``c[1]``; b_0 = (g/omega)(2g^2 - omega^2 - 2 eps omega)
    and b_1 = omega^2 - 2g^2 - 2 E omega, as read off the ODE itself.
    """
    branch = Branch.parse(branch)
    q = p.for_branch(branch).as_float()
    w, g, d, e = q.omega, q.g, q.delta, q.epsilon
    E = float(energy)
    a = [-g * g, 0.0, w * w, 0.0, 0.0]
    b = [2 * g**3 / w - 2 * e * g - w * g, w * w - 2 * g * g - 2 * E * w, -2 * w * g, 0.0]
    c = [E * E - d * d - e * e + 2 * e * g * g / w - g**4 / (w * w), 2 * g * (g * g / w + E - e), 0.0]
    coeffs = OdeCoefficients(a, b, c)
    return coeffs if branch is Branch.PLUS else coeffs.reflected()


@dataclass
class ZhangConditions:
    """Coefficient-matching conditions for a degree-n polynomial solution.

    Each entry is ``required - actual`` for c_2, c_1, c_0 respectively, so all
    three vanish for a genuine solution.
    """

    quadratic: float
    linear: Callable[[Sequence[complex]], complex]
    constant: Callable[[Sequence[complex]], complex]


def zhang_conditions(coeffs: OdeCoefficients, n: int) -> ZhangConditions:
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    quad = -n * (n - 1) * a[4] - n * b[3] - c[2]

    def linear(roots):
        s1 = np.sum(roots)
        return -(2 * (n - 1) * a[4] + b[3]) * s1 - n * (n - 1) * a[3] - n * b[2] - c[1]

    def constant(roots):
        z = np.asarray(roots, dtype=complex)
        s1 = np.sum(z)
        s2 = np.sum(z * z)
        e2 = (s1 * s1 - s2) / 2
        return (
            -(2 * (n - 1) * a[4] + b[3]) * s2
            - 2 * a[4] * e2
            - (2 * (n - 1) * a[3] + b[2]) * s1
            - n * (n - 1) * a[2]
            - n * b[1]
            - c[0]
        )

    return ZhangConditions(quad, linear, constant)


def _pair_sums(z: np.ndarray, power: int = 1) -> np.ndarray:
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inv = 1.0 / diff**power
    np.fill_diagonal(inv, 0.0)
    return inv


def _check_distinct(z: np.ndarray):
    if len(z) > 1:
        diff = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(diff, np.inf)
        if diff.min() < DISTINCT_TOL:
            raise CoincidentRoots("roots are not pairwise distinct")


def zhang_residual(coeffs: OdeCoefficients, roots) -> np.ndarray:
    """sum_{j!=i} 2/(z_i-z_j) + Y(z_i)/X(z_i) for every root."""
    z = np.asarray(roots, dtype=complex)
    _check_distinct(z)
    x = coeffs.X(z)
    if np.any(x == 0):
        raise PoleCollision("a root sits on a zero of X(z)")
    return 2 * _pair_sums(z).sum(axis=1) + coeffs.Y(z) / x


def _plus_terms(z, p: ModelParams, n: int):
    w, g, e = p.omega, p.g, p.epsilon
    lo = w * z - g
    hi = w * z + g
    if np.any(np.abs(lo) <= 1e-14 * max(1.0, g)) or np.any(np.abs(hi) <= 1e-14 * max(1.0, g)):
        raise PoleCollision("a root hit +/- g/omega")
    ka = n * w * w + 2 * e * w
    kb = n * w * w - w * w
    return lo, hi, ka, kb


def _plus_residual(z: np.ndarray, p: ModelParams, n: int) -> np.ndarray:
    lo, hi, ka, kb = _plus_terms(z, p, n)
    return 2 * p.omega * _pair_sums(z).sum(axis=1) - ka / lo - kb / hi - 2 * p.g


def _plus_jacobian(z: np.ndarray, p: ModelParams, n: int) -> np.ndarray:
    lo, hi, ka, kb = _plus_terms(z, p, n)
    w = p.omega
    inv2 = _pair_sums(z, 2)
    jac = 2 * w * inv2
    diag = -2 * w * inv2.sum(axis=1) + ka * w / lo**2 + kb * w / hi**2
    jac[np.diag_indices_from(jac)] = diag
    return jac


def bethe_residual(roots, p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> np.ndarray:
    """Residual of the algebraic equations, one entry per root.

    For MINUS this is the PLUS residual at (-z, -epsilon): the same zero set as
    the MINUS equations, with an overall sign flip.
    """
    z = np.asarray(roots.roots if isinstance(roots, RootSet) else roots, dtype=complex)
    if p.g <= 0:
        raise ValueError("the Bethe equations need g > 0")
    _check_distinct(z)
    branch = Branch.parse(branch)
    pf = p.for_branch(branch).as_float()
    return _plus_residual(z if branch is Branch.PLUS else -z, pf, n)


def constraint_residual(roots, p: ModelParams, n: int, branch: Branch = Branch.PLUS):
    """delta^2 + 2 N g^2 +/- 2 omega g sum z_i (vanishes on the exceptional surface)."""
    z = np.asarray(roots.roots if isinstance(roots, RootSet) else roots, dtype=complex)
    s = Branch.parse(branch).sign
    pf = p.as_float()
    val = pf.delta**2 + 2 * n * pf.g**2 + s * 2 * pf.omega * pf.g * np.sum(z)
    return val.real if abs(val.imag) <= 1e-12 * max(1.0, abs(val)) else val


def degenerate_roots(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> RootSet:
    """All roots at -g/omega (PLUS) or +g/omega (MINUS): the delta = 0 solution."""
    z0 = -Branch.parse(branch).sign * float(p.g) / float(p.omega)
    return RootSet(np.full(n, z0), degenerate=True)


def polynomial_solution(coeffs: OdeCoefficients, n: int) -> Polynomial:
    """Monic degree-n polynomial S with X S'' + Y S' + Z S ~ 0, by SVD null vector."""
    rows = n + 3
    mat = np.zeros((rows, n + 1))
    for k in range(n + 1):
        mono = Polynomial.basis(k)
        img = (
            Polynomial(coeffs.a) * mono.deriv(2)
            + Polynomial(coeffs.b) * mono.deriv(1)
            + Polynomial(coeffs.c) * mono
        )
        c = img.coef
        mat[: min(rows, len(c)), k] = c[:rows]
    scale = np.abs(mat).max(axis=0)
    scale[scale == 0] = 1.0
    _, _, vt = np.linalg.svd(mat / scale)
    s = vt[-1] / scale
    if s[-1] == 0:
        raise OffSurface("null vector has no leading term")
    return Polynomial(s / s[-1])


def _heun_poly(p: ModelParams, n: int) -> tuple[Polynomial, float]:
    series = heun_series(p, n, Branch.PLUS)
    g = float(p.g)
    u = Polynomial([0.5, -1 / (2 * g)])
    poly = Polynomial([0.0])
    term = Polynomial([1.0])
    for h in series.h:
        poly = poly + h * term
        term = term * u
    hmax = float(np.max(np.abs(series.h)))
    if abs(series.tail_a) > 1e-13:
        tail = abs(series.relation_tail / series.tail_a) / hmax
    else:
        tail = abs(series.relation_tail) / hmax
    return poly, tail


def roots_via_recurrence(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> RootSet:
    """Bethe roots as zeros of the truncated Heun series sum h_m ((g - z)/(2g))^m."""
    branch = Branch.parse(branch)
    if float(p.delta) == 0:
        return degenerate_roots(p, n, branch)
    if float(p.g) <= 0:
        raise ValueError("the Heun route needs g > 0")
    q = p.for_branch(branch)
    poly, tail = _heun_poly(q, n)
    if tail > SURFACE_TOL:
        raise OffSurface(f"Heun tail {tail:.3e} exceeds {SURFACE_TOL:g}")
    roots = poly.roots() if n else np.array([])
    rs = RootSet(roots)
    return rs if branch is Branch.PLUS else rs.negated()


def roots_via_ode(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> RootSet:
    """Bethe roots from the polynomial null vector of the ODE (no recurrence pivots)."""
    branch = Branch.parse(branch)
    q = p.for_branch(branch)
    coeffs = rabi_ode_coefficients(q, exceptional_energy(q.as_float(), n), Branch.PLUS)
    rs = RootSet(polynomial_solution(coeffs, n).roots() if n else [])
    return rs if branch is Branch.PLUS else rs.negated()


def _newton(z: np.ndarray, p: ModelParams, n: int, tol: float, max_iter: int):
    res = _plus_residual(z, p, n)
    norm = np.max(np.abs(res))
    for it in range(1, max_iter + 1):
        if norm <= tol:
            # one extra step tightens the answer without risk
            try:
                step = np.linalg.solve(_plus_jacobian(z, p, n), res)
                trial = z - step
                r2 = _plus_residual(trial, p, n)
                if np.max(np.abs(r2)) < norm:
                    z, res, norm = trial, r2, np.max(np.abs(r2))
            except (np.linalg.LinAlgError, PoleCollision):
                pass
            return z, norm, it - 1
        try:
            step = np.linalg.solve(_plus_jacobian(z, p, n), res)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        trial, r2, n2 = None, None, np.inf
        for _ in range(MAX_HALVINGS + 1):
            cand = z - lam * step
            try:
                rc = _plus_residual(cand, p, n)
            except (PoleCollision, CoincidentRoots):
                lam /= 2
                continue
            trial, r2, n2 = cand, rc, np.max(np.abs(rc))
            if n2 < norm:
                break
            lam /= 2
        if trial is None:
            break
        z, res, norm = trial, r2, n2
    raise NoConvergence(f"Newton did not reach {tol:g} after {max_iter} iterations (residual {norm:.3e})")


def solve_bethe(
    p: ModelParams,
    n: int,
    branch: Branch = Branch.PLUS,
    init: RootSet | None = None,
    tol: float = RESIDUAL_TOL,
    max_iter: int = MAX_ITER,
) -> RootSet:
    """Damped Newton solve of the algebraic equations on the exceptional surface."""
    branch = Branch.parse(branch)
    if float(p.g) <= 0:
        raise ValueError("the Bethe equations need g > 0")
    if float(p.delta) == 0:
        return degenerate_roots(p, n, branch)
    if surface_residual(p, n, branch) > SURFACE_TOL:
        raise OffSurface(f"parameters are not on the level-{n} exceptional surface")
    q = p.for_branch(branch).as_float()
    rng = np.random.default_rng(12345)

    starts = []
    if init is not None:
        z0 = np.asarray(init.roots, dtype=complex)
        starts.append(z0 if branch is Branch.PLUS else -z0)
    else:
        for route in (roots_via_recurrence, roots_via_ode):
            try:
                starts.append(route(q, n, Branch.PLUS).roots * (1 + 1e-6))
                break
            except (VanishingA, OffSurface, np.linalg.LinAlgError) as exc:
                log.debug("initial guess route %s failed: %s", route.__name__, exc)
        starts.append(-q.g / q.omega + 0.1 * (rng.standard_normal(n) + 1j * rng.standard_normal(n)))

    last = None
    for z0 in starts:
        try:
            z, norm, iters = _newton(np.array(z0, dtype=complex), q, n, tol, max_iter)
        except (NoConvergence, PoleCollision, CoincidentRoots) as exc:
            last = exc
            continue
        z = np.where(np.abs(z.imag) <= 1e-12 * np.maximum(1, np.abs(z)), z.real, z)
        rs = RootSet(z, max_residual=float(norm), iterations=iters)
        return rs if branch is Branch.PLUS else rs.negated()
    raise NoConvergence(str(last) if last else "no starting point converged")
