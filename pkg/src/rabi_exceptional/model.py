"""Parameter and level types for the driven (generalised) Rabi model.

    H = omega a^dag a + g sigma_x (a^dag + a) + delta sigma_z + epsilon sigma_x
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Real

from .errors import NegativeLevel, NonFiniteField, NonPositiveOmega


class Branch(enum.Enum):
    """Solution family: PLUS ~ exp(-g z/omega), energy +epsilon; MINUS the mirror."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1

    @classmethod
    def parse(cls, value) -> "Branch":
        if isinstance(value, Branch):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class ModelParams:
    omega: Real
    g: Real
    delta: Real
    epsilon: Real

    def mirrored(self) -> "ModelParams":
        """Parameters with epsilon -> -epsilon (maps MINUS onto PLUS formulas)."""
        return replace(self, epsilon=-self.epsilon)

    def for_branch(self, branch: Branch) -> "ModelParams":
        return self if Branch.parse(branch) is Branch.PLUS else self.mirrored()

    def with_g(self, g) -> "ModelParams":
        return replace(self, g=g)

    def as_float(self) -> "ModelParams":
        return ModelParams(float(self.omega), float(self.g), float(self.delta), float(self.epsilon))

    def as_rational(self) -> "ModelParams":
        return ModelParams(*(to_rational(v) for v in (self.omega, self.g, self.delta, self.epsilon)))


def to_rational(value) -> Fraction:
    """Exact conversion; strings such as '6/5' or '1.2' are read as decimals, not floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float) and not math.isfinite(value):
        raise NonFiniteField(f"cannot convert {value!r} to a rational")
    return Fraction(value)


def validate_params(p: ModelParams) -> ModelParams:
    """Check the invariants and return the canonical form (delta made nonnegative)."""
    for name in ("omega", "g", "delta", "epsilon"):
        v = getattr(p, name)
        if not isinstance(v, Fraction) and not math.isfinite(float(v)):
            raise NonFiniteField(f"{name}={v!r} is not finite")
    if p.omega <= 0:
        raise NonPositiveOmega(f"omega must be positive, got {p.omega}")
    if p.delta < 0:
        p = replace(p, delta=-p.delta)
    return p


def exceptional_energy(p: ModelParams, n: int, branch: Branch = Branch.PLUS):
    """E = n omega - g^2/omega +/- epsilon."""
    if n < 0:
        raise NegativeLevel(f"level index must be >= 0, got {n}")
    branch = Branch.parse(branch)
    return n * p.omega - p.g * p.g / p.omega + branch.sign * p.epsilon


@dataclass(frozen=True)
class ExceptionalLevel:
    n: int
    branch: Branch
    energy: float

    @classmethod
    def at(cls, p: ModelParams, n: int, branch: Branch) -> "ExceptionalLevel":
        branch = Branch.parse(branch)
        return cls(n, branch, exceptional_energy(p, n, branch))
