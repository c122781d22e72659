import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabi_exceptional.errors import NonSquarefree, ZeroPolynomial
from rabi_exceptional.ratpoly import (
    RatPoly,
    cauchy_bound,
    isolate_positive_roots,
    poly_gcd,
    sturm_chain,
    sturm_count,
)


def quad_roots(a, b, c):
    disc = math.sqrt(b * b - 4 * a * c)
    return sorted([(-b - disc) / (2 * a), (-b + disc) / (2 * a)])


def test_arithmetic_roundtrip():
    p = RatPoly([1, F(1, 2), 3])
    q = RatPoly([F(-2, 3), 1])
    quo, rem = divmod(p * q + RatPoly([5]), q)
    assert quo == p and rem == RatPoly([5])
    assert (p - p).is_zero()
    assert p.derivative() == RatPoly([F(1, 2), 6])
    assert p(F(2)) == 1 + 1 + 12


def test_coefficients_in_lowest_terms():
    p = RatPoly([F(2, 4), F(-6, 8)])
    assert p.coeffs == (F(1, 2), F(-3, 4))
    assert all(c.denominator > 0 for c in p.coeffs)


def test_gcd():
    a = RatPoly.from_roots([1, 2, 3])
    b = RatPoly.from_roots([2, 3, 7])
    assert poly_gcd(a, b) == RatPoly.from_roots([2, 3])


def test_sturm_chain_reference():
    # x^3 - 2x^2 + 3x - 5: chain [f, f', -10/9 x + 13/3, -3303/100]
    f = RatPoly([-5, 3, -2, 1])
    chain = sturm_chain(f)
    assert chain[2] == RatPoly([F(13, 3), F(-10, 9)])
    assert chain[3] == RatPoly([F(-3303, 100)])


def test_sturm_count_constructed():
    assert sturm_count(RatPoly.from_roots([1, 2, 3]), 0, 10) == 3


def test_sturm_count_no_real_roots():
    assert sturm_count(RatPoly([1, 0, 1]), -10, 10) == 0


def test_sturm_count_kus_quadratic():
    d2 = F(36, 25)
    p = RatPoly([d2 * d2 - 5 * d2 + 4, 3 * d2 - 8, 2])
    roots = quad_roots(2, float(3 * d2 - 8), float(d2 * d2 - 5 * d2 + 4))
    assert roots[0] < 0 < roots[1] == pytest.approx(2.1073, abs=1e-4)
    assert sturm_count(p, 0, 10**6) == 1


def test_sturm_count_endpoint_root():
    p = RatPoly.from_roots([1, 2])
    assert sturm_count(p, 1, 2) == 1
    assert sturm_count(p, 0, 1) == 1


def test_zero_polynomial_errors():
    with pytest.raises(ZeroPolynomial):
        sturm_count(RatPoly(), 0, 1)
    with pytest.raises(ZeroPolynomial):
        isolate_positive_roots(RatPoly())


def test_isolate_linear():
    (r,) = isolate_positive_roots(RatPoly([F(-14, 25), 1]))
    assert r.lo < F(14, 25) <= r.hi
    assert r.refined == pytest.approx(0.56, abs=1e-15)


def test_isolate_quadratic():
    p = RatPoly([F(798, 625), F(-96, 25), 1])
    got = [r.refined for r in isolate_positive_roots(p)]
    assert got == pytest.approx(quad_roots(1, -3.84, 1.2768), abs=1e-14)


def test_isolate_none():
    assert isolate_positive_roots(RatPoly([1, 0, 1])) == []


def test_double_root_is_rejected():
    with pytest.raises(NonSquarefree):
        isolate_positive_roots(RatPoly.from_roots([F(1, 3), F(1, 3), 2]))


def test_negative_double_root_is_fine():
    got = [r.refined for r in isolate_positive_roots(RatPoly.from_roots([-1, -1, 2]))]
    assert got == pytest.approx([2.0])


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=7, unique=True), rationals.filter(lambda v: v != 0))
def test_recovers_constructed_roots(roots, lead):
    p = RatPoly.from_roots(roots, lead)
    positive = sorted(r for r in roots if r > 0)
    found = isolate_positive_roots(p)
    assert len(found) == len(positive) == sturm_count(p, 0, cauchy_bound(p))
    for iv, r in zip(found, positive):
        assert iv.lo < r <= iv.hi
        assert sturm_count(p, iv.lo, iv.hi) == 1
        assert iv.refined == pytest.approx(float(r), rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=6, unique=True))
def test_refined_root_brackets(roots):
    p = RatPoly.from_roots(roots)
    for iv in isolate_positive_roots(p):
        x = F(iv.refined)
        h = F(1, 10**6) * max(1, abs(x))
        assert sturm_count(p, max(x - h, F(0)), x + h) == 1
        scale = sum(abs(float(c)) * abs(iv.refined) ** k for k, c in enumerate(p.coeffs))
        assert abs(float(p(x))) <= 1e-12 * max(1.0, scale)


def test_random_dense_polynomial_against_numpy():
    np = pytest.importorskip("numpy")
    rng = random.Random(7)
    for _ in range(20):
        coeffs = [F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(7)]
        if coeffs[-1] == 0:
            continue
        p = RatPoly(coeffs)
        ref = sorted(
            r.real
            for r in np.roots([float(c) for c in reversed(coeffs)])
            if abs(r.imag) < 1e-9 and r.real > 1e-9
        )
        got = [iv.refined for iv in isolate_positive_roots(p)]
        assert got == pytest.approx(ref, rel=1e-7, abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(st.lists(rationals, min_size=0, max_size=6), rationals)
def test_sign_at_matches_exact_value(coeffs, x):
    p = RatPoly(coeffs)
    v = p(x) if not p.is_zero() else 0
    assert p.sign_at(x) == (v > 0) - (v < 0)
