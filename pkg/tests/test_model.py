import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabi_exceptional.errors import NegativeLevel, NonFiniteField, NonPositiveOmega
from rabi_exceptional.model import (
    Branch,
    ExceptionalLevel,
    ModelParams,
    exceptional_energy,
    to_rational,
    validate_params,
)

G_ON_SURFACE = math.sqrt(0.14)


def test_validate_ok():
    p = ModelParams(1, 0.5, 1.2, 0.5)
    assert validate_params(p) == p


def test_validate_zero_omega():
    with pytest.raises(NonPositiveOmega):
        validate_params(ModelParams(0, 0.5, 1.2, 0.5))


def test_validate_nan():
    with pytest.raises(NonFiniteField):
        validate_params(ModelParams(1, float("nan"), 1.2, 0))


def test_negative_delta_is_normalized():
    assert validate_params(ModelParams(1, 0.5, -1.2, 0)).delta == 1.2


def test_zero_coupling_is_accepted():
    assert validate_params(ModelParams(1, 0, 1, 0)).g == 0


@pytest.mark.parametrize(
    "g, eps, branch, expected",
    [
        (0.0, 0.0, Branch.PLUS, 1.0),
        (G_ON_SURFACE, 0.5, Branch.PLUS, 1.36),
        (G_ON_SURFACE, 0.5, Branch.MINUS, 0.36),
    ],
)
def test_exceptional_energy(g, eps, branch, expected):
    assert exceptional_energy(ModelParams(1, g, 1.2, eps), 1, branch) == pytest.approx(expected, abs=1e-12)


def test_negative_level():
    with pytest.raises(NegativeLevel):
        exceptional_energy(ModelParams(1, 0.1, 1, 0), -1, Branch.PLUS)


def test_exact_energy_with_rationals():
    p = ModelParams(Fraction(1), Fraction(1, 2), Fraction(1), Fraction(1, 3))
    assert exceptional_energy(p, 2, Branch.MINUS) == Fraction(2) - Fraction(1, 4) - Fraction(1, 3)


def test_level_record():
    lvl = ExceptionalLevel.at(ModelParams(1, 0.5, 1, 0.25), 3, "minus")
    assert lvl.branch is Branch.MINUS
    assert lvl.energy == pytest.approx(3 - 0.25 - 0.25)


def test_decimal_strings_are_exact():
    assert to_rational("1.2") == Fraction(6, 5)
    assert to_rational("6/5") == Fraction(6, 5)


finite = st.floats(-5, 5, allow_nan=False)


@given(st.floats(0.1, 5), st.floats(0, 3), finite, st.integers(0, 20))
def test_minus_is_plus_with_flipped_drive(w, g, e, n):
    p = ModelParams(w, g, 1.0, e)
    assert exceptional_energy(p, n, Branch.MINUS) == pytest.approx(exceptional_energy(p.mirrored(), n, Branch.PLUS))


@given(st.floats(0.1, 5), st.floats(0, 3), st.floats(0, 3), finite, st.integers(0, 20))
def test_energy_decreases_with_coupling(w, g1, g2, e, n):
    lo, hi = sorted((g1, g2))
    p = ModelParams(w, 0, 1.0, e)
    assert exceptional_energy(p.with_g(hi), n) <= exceptional_energy(p.with_g(lo), n) + 1e-12
