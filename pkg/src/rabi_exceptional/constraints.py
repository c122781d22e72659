"""Constraint polynomials for the exceptional (Juddian) levels.

Two independent routes locate the exceptional couplings:

* the Kus-type recurrence ``Q_k = (x - alpha_k) Q_{k-1} - beta_k x Q_{k-2}`` in
  ``x = (2g)^2``, evaluated exactly over the rationals;
* the three-term recurrence for the coefficients of the terminating confluent
  Heun series, in floating point, whose tail ``h_{N+1}`` vanishes on the
  exceptional surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import Boundary, NegativeLevel, OutOfTheoremRange, VanishingA
from .model import Branch, ModelParams, to_rational
from .ratpoly import RatPoly, isolate_positive_roots

RENORM_EVERY = 8


@dataclass(frozen=True)
class ConstraintRecurrence:
    omega: Fraction
    delta: Fraction
    epsilon: Fraction
    n_target: int
    primed: bool = False

    def _eps(self) -> Fraction:
        return -self.epsilon if self.primed else self.epsilon

    def alpha(self, k: int) -> Fraction:
        w, e = self.omega, self._eps()
        return (k * k * w * w + 2 * k * e * w - self.delta**2) / k

    def beta(self, k: int) -> Fraction:
        return (self.n_target - k + 1) * self.omega**2

    def polys(self) -> list[RatPoly]:
        """Q_0 .. Q_N, all with the target level N held fixed inside beta_k."""
        x = RatPoly.x()
        qs = [RatPoly.constant(1)]
        if self.n_target >= 1:
            qs.append(x - self.alpha(1))
        for k in range(2, self.n_target + 1):
            qs.append((x - self.alpha(k)) * qs[-1] - self.beta(k) * x * qs[-2])
        return qs


def _recurrence(p: ModelParams, n: int, branch: Branch) -> ConstraintRecurrence:
    if n < 0:
        raise NegativeLevel(f"level index must be >= 0, got {n}")
    branch = Branch.parse(branch)
    return ConstraintRecurrence(
        to_rational(p.omega),
        abs(to_rational(p.delta)),
        to_rational(p.epsilon),
        n,
        primed=branch is Branch.MINUS,
    )


def constraint_poly(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> RatPoly:
    """Monic Q_n(x), x = (2g)^2; its positive roots are the exceptional couplings.

    ``p.g`` is ignored. The MINUS branch is the same recurrence with epsilon -> -epsilon.
    """
    return _recurrence(p, n, branch).polys()[n]


def constraint_family(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> list[RatPoly]:
    return _recurrence(p, n, branch).polys()


# --------------------------------------------------------------------------
# Heun route


def heun_abc(p: ModelParams, n: int, m: int, branch: Branch = Branch.PLUS):
    """(A_m, B_m, C_m) of the Heun-coefficient recurrence for target level n."""
    q = p.for_branch(branch)
    w, g, d, e = q.omega, q.g, q.delta, q.epsilon
    a = m * (-1 + m - n - 2 * e / w)
    b = (1 - m + n) ** 2 - 4 * (m - 1) * g * g / (w * w) - d * d / (w * w) + 2 * (1 - m + n) * e / w
    c = 4 * (-2 + m - n) * g * g / (w * w)
    return a, b, c


@dataclass
class HeunSeries:
    """Coefficients h_0..h_n of the truncated series in x = (g - z)/(2g).

    ``relation_tail`` is A_{n+1} h_{n+1}, i.e. B_{n+1} h_n + C_{n+1} h_{n-1};
    it stays defined when A_{n+1} = 0 (epsilon = 0 for the PLUS branch).
    The sequence may have been rescaled by a positive factor; ``h[0]`` need
    not equal 1 after renormalization.
    """

    h: np.ndarray
    coeffs_abc: list = field(default_factory=list)
    relation_tail: float = 0.0
    tail_a: float = 0.0


def _vanishing(a: float, scale: float) -> bool:
    return abs(a) <= 1e-13 * max(1.0, scale)


def heun_series(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> HeunSeries:
    """Run the recurrence up to h_n; raises VanishingA if some A_m, 1 <= m <= n, is zero."""
    if n < 0:
        raise NegativeLevel(f"level index must be >= 0, got {n}")
    pf = p.as_float()
    if pf.g <= 0:
        raise ValueError("the Heun route needs g > 0")
    h = [1.0]
    prev = 0.0
    abc = []
    for m in range(1, n + 2):
        a, b, c = heun_abc(pf, n, m, branch)
        abc.append((a, b, c))
        rhs = b * h[-1] + c * (h[-2] if len(h) > 1 else prev)
        if m == n + 1:
            return HeunSeries(np.array(h), abc, rhs, a)
        if _vanishing(a, m * (m + n + 2)):
            raise VanishingA(f"A_{m} = 0 for level {n}, branch {Branch.parse(branch).value}")
        h.append(rhs / a)
        if m % RENORM_EVERY == 0:
            s = max(abs(h[-1]), abs(h[-2]))
            if s > 0:
                h = [v / s for v in h]
    raise AssertionError("unreachable")


def heun_tail(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> float:
    """h_{n+1} of the (renormalized) series; zero exactly on the exceptional surface."""
    s = heun_series(p, n, branch)
    if _vanishing(s.tail_a, (n + 1) * (2 * n + 3)):
        raise VanishingA(f"A_{n + 1} = 0 for level {n}, branch {Branch.parse(branch).value}")
    return s.relation_tail / s.tail_a


# --------------------------------------------------------------------------
# Root counting


def band_edge(k: int, omega: Fraction, epsilon: Fraction) -> Fraction:
    """Squared delta at which alpha_k changes sign: k^2 omega^2 + 2 k epsilon omega."""
    return k * k * omega * omega + 2 * k * epsilon * omega


def predicted_count(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> int:
    """N - k with k the band index of delta; raises Boundary on a band edge."""
    q = p.for_branch(branch)
    w, e = to_rational(q.omega), to_rational(q.epsilon)
    d2 = to_rational(q.delta) ** 2
    if d2 == 0:
        raise Boundary("delta = 0 is the degenerate atomic limit")
    k = 0
    for j in range(1, n + 1):
        edge = band_edge(j, w, e)
        if edge == d2:
            raise Boundary(f"delta^2 = {d2} sits on the band edge k={j}")
        if edge < d2:
            k = j
    return max(n - k, 0)


@dataclass
class RootCountReport:
    n: int
    branch: Branch
    predicted: int
    counted: int
    roots_x: list
    couplings_g: list

    @property
    def ok(self) -> bool:
        return self.predicted == self.counted


def exceptional_couplings(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> RootCountReport:
    """Positive roots of Q_n as couplings g = sqrt(x)/2, with the predicted count."""
    if n < 1:
        raise NegativeLevel(f"exceptional couplings need n >= 1, got {n}")
    branch = Branch.parse(branch)
    predicted = predicted_count(p, n, branch)
    roots = isolate_positive_roots(constraint_poly(p, n, branch))
    xs = [r.refined for r in roots]
    return RootCountReport(n, branch, predicted, len(xs), xs, [math.sqrt(x) / 2 for x in xs])


def _interlaces(inner: list, outer: list) -> bool:
    if len(outer) != len(inner) + 1:
        return False
    merged = []
    for i, a in enumerate(inner):
        merged += [outer[i], a]
    merged.append(outer[-1])
    return all(x < y for x, y in zip(merged, merged[1:])) and merged[0] > 0


def verify_interlacing(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> bool:
    """True iff Q_k and Q_{k-1} have k and k-1 positive roots that strictly interlace, k <= n."""
    q = p.for_branch(branch)
    w, e, d = to_rational(q.omega), to_rational(q.epsilon), to_rational(q.delta)
    if not (0 < d * d < w * w + 2 * e * w):
        raise OutOfTheoremRange(f"delta/omega = {float(d / w):.6g} outside (0, sqrt(1 + 2 epsilon/omega))")
    if n < 2:
        raise ValueError("interlacing needs n >= 2")
    roots = [[r.refined for r in isolate_positive_roots(poly)] for poly in constraint_family(p, n, branch)]
    for k in range(1, n + 1):
        if len(roots[k]) != k:
            return False
    return all(_interlaces(roots[k - 1], roots[k]) for k in range(2, n + 1))


def _driven(omega, delta, m):
    w = to_rational(omega)
    return ModelParams(w, Fraction(0), to_rational(delta), m * w / 2)


def crossing_coincidence(omega, delta, n: int, m: int) -> float:
    """Largest distance from a positive root of Q_n to the nearest one of Q'_{n+m}, epsilon = m omega/2."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    p = _driven(omega, delta, m)
    plus = [r.refined for r in isolate_positive_roots(constraint_poly(p, n, Branch.PLUS))]
    minus = [r.refined for r in isolate_positive_roots(constraint_poly(p, n + m, Branch.MINUS))]
    if len(plus) != len(minus):
        raise AssertionError(f"Q_{n} has {len(plus)} positive roots but Q'_{n + m} has {len(minus)}")
    if not plus:
        return 0.0
    return max(min(abs(x - y) for y in minus) for x in plus)


def coincidence_divides(omega, delta, n: int, m: int) -> bool:
    """Exact check that Q_n divides Q'_{n+m} at epsilon = m omega/2."""
    p = _driven(omega, delta, m)
    return (constraint_poly(p, n + m, Branch.MINUS) % constraint_poly(p, n, Branch.PLUS)).is_zero()


def surface_residual(p: ModelParams, n: int, branch: Branch = Branch.PLUS) -> float:
    """|Q_n(4 g^2)| relative to sum |c_k| x^k, with the parameters read exactly."""
    poly = constraint_poly(p.as_rational(), n, branch)
    x = 4 * to_rational(p.g) ** 2
    scale = sum(abs(c) * x**k for k, c in enumerate(poly.coeffs))
    return float(abs(poly(x)) / scale) if scale else 0.0
