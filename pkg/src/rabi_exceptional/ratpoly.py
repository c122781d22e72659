"""Exact univariate polynomials over the rationals, with Sturm root isolation.

Coefficients are stored low-to-high (``coeffs[k]`` multiplies ``x**k``) as
:class:`fractions.Fraction`, which keeps every value in lowest terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonSquarefree, ZeroPolynomial

BISECT_WIDTH = Fraction(1, 10**9)
NEWTON_STEPS = 10
RESIDUAL_TOL = 1e-12


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class RatPoly:
    __slots__ = ("coeffs", "_ints")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(Fraction(c) for c in coeffs)
        self._ints = None

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RatPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return RatPoly(), RatPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * inv
            quot[k - dd] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dd + j] -= c * b
        return RatPoly(quot), RatPoly(rem[:dd])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x):
        """Exact Horner evaluation for rationals; plain Horner for floats/complex."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of p(x) for rational x, in integer arithmetic only."""
        if self._ints is None:
            den = math.lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
            self._ints = [int(c * den) for c in self.coeffs]
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        if not self._ints:
            return 0
        # b^deg p(a/b) = sum c_k a^k b^(deg-k), with b > 0
        acc = self._ints[-1]
        bk = 1
        for c in reversed(self._ints[:-1]):
            bk *= b
            acc = acc * a + c * bk
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "RatPoly":
        return RatPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "RatPoly":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic form")
        inv = 1 / self.lead
        return RatPoly(c * inv for c in self.coeffs)

    def compose_scale(self, s) -> "RatPoly":
        """Return p(s*x)."""
        s = Fraction(s)
        return RatPoly(c * s**k for k, c in enumerate(self.coeffs))

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _coerce(v) -> RatPoly:
    return v if isinstance(v, RatPoly) else RatPoly([v])


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd by the Euclidean algorithm (exact)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def cauchy_bound(p: RatPoly) -> Fraction:
    """1 + max |c_k / c_deg|: every real root has modulus below this."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no root bound")
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_chain(p: RatPoly) -> list[RatPoly]:
    if p.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _variations(chain: Sequence[RatPoly], x: Fraction) -> int:
    count = 0
    prev = 0
    for q in chain:
        s = q.sign_at(x)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sturm_count(p: RatPoly, lo, hi, chain: Sequence[RatPoly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi].

    Zero values in the chain are skipped when counting sign changes, which keeps
    the count valid even when an endpoint is itself a root.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    chain = chain if chain is not None else sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    refined: float

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _residual_scale(p: RatPoly, x: float) -> float:
    ax = abs(x)
    return sum(abs(float(c)) * ax**k for k, c in enumerate(p.coeffs))


def refine_root(p: RatPoly, lo: Fraction, hi: Fraction, chain=None) -> RootInterval:
    """Shrink a certified single-root bracket, then polish the root with Newton."""
    chain = chain if chain is not None else sturm_chain(p)
    dp = p.derivative()
    if p.sign_at(hi) == 0:
        return RootInterval(lo, hi, float(hi))
    # a simple root is a sign change; once p(lo) != 0 plain bisection on p suffices
    while p.sign_at(lo) == 0:
        mid = (lo + hi) / 2
        if sturm_count(p, lo, mid, chain) == 1:
            hi = mid
        else:
            lo = mid
    s_hi = p.sign_at(hi)
    if s_hi == 0:
        return RootInterval(lo, hi, float(hi))
    while hi - lo > BISECT_WIDTH * max(1, abs(hi)):
        mid = (lo + hi) / 2
        s_mid = p.sign_at(mid)
        if s_mid == 0:
            return RootInterval(lo, mid, float(mid))
        if s_mid == s_hi:
            hi = mid
        else:
            lo = mid
    x = float((lo + hi) / 2)
    flo, fhi = float(lo), float(hi)
    for _ in range(NEWTON_STEPS):
        fx = Fraction(x)
        d = dp(fx)
        if d == 0:
            break
        step = float(p(fx) / d)
        nx = x - step
        if not flo <= nx <= fhi:
            break
        if nx == x:
            break
        x = nx
    # Newton can stall at the last ulp; exact bisection settles it.
    if abs(float(p(Fraction(x)))) > RESIDUAL_TOL * max(1.0, _residual_scale(p, x)):
        a, b = lo, hi
        while b - a > Fraction(abs(x) + 1) * Fraction(1, 2**60):
            m = (a + b) / 2
            s_m = p.sign_at(m)
            if s_m == 0:
                a = b = m
            elif s_m == s_hi:
                b = m
            else:
                a = m
        x = float((a + b) / 2)
    return RootInterval(lo, hi, x)


def is_squarefree_on(p: RatPoly, lo, hi) -> bool:
    g = poly_gcd(p, p.derivative())
    return g.degree < 1 or sturm_count(g, lo, hi) == 0


def isolate_positive_roots(p: RatPoly) -> list[RootInterval]:
    """Certified brackets and refined values for every root in (0, inf)."""
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    bound = cauchy_bound(p)
    if not is_squarefree_on(p, 0, bound):
        raise NonSquarefree("polynomial has a repeated positive root")
    chain = sturm_chain(p)
    out = []
    stack = [(Fraction(0), bound)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(p, lo, hi, chain)
        if n == 0:
            continue
        if n == 1:
            out.append(refine_root(p, lo, hi, chain))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda r: r.lo)
    return out


def positive_roots(p: RatPoly) -> list[float]:
    return [r.refined for r in isolate_positive_roots(p)]
