"""Exception hierarchy shared by every module of the package."""


class RabiError(Exception):
    """Base class for computation errors (mapped to exit code 1 by the CLI)."""

    code = "RabiError"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class NonPositiveOmega(RabiError, ValueError):
    code = "NonPositiveOmega"


class NonFiniteField(RabiError, ValueError):
    code = "NonFiniteField"


class NegativeLevel(RabiError, ValueError):
    code = "NegativeLevel"


class ZeroPolynomial(RabiError, ValueError):
    code = "ZeroPolynomial"


class NonSquarefree(RabiError):
    """A repeated positive root; happens exactly at merging-level boundaries."""

    code = "NonSquarefree"


class VanishingA(RabiError):
    """A leading recurrence coefficient vanishes, so the Heun route cannot be used."""

    code = "VanishingA"


class Boundary(RabiError):
    code = "Boundary"


class OutOfTheoremRange(RabiError):
    code = "OutOfTheoremRange"


class PoleCollision(RabiError):
    code = "PoleCollision"


class CoincidentRoots(RabiError):
    code = "CoincidentRoots"


class OffSurface(RabiError):
    code = "OffSurface"


class NoConvergence(RabiError):
    code = "NoConvergence"


class ZeroDelta(RabiError):
    code = "ZeroDelta"


class CutoffTooSmall(RabiError, ValueError):
    code = "CutoffTooSmall"


class NotConverged(RabiError):
    code = "NotConverged"
