# errors.py
from typing import List, Optional


class HeckeError(Exception):
    """Base class for failures raised by the verifier."""

    exit_code = 1


class ParameterError(HeckeError, ValueError):
    """Malformed parameter pack or parameter file."""

    exit_code = 1


class InadmissibleParameters(HeckeError):
    """Parameters fail the admissibility conditions; carries the violated conditions."""

    exit_code = 2

    def __init__(self, violations: List[str], message: Optional[str] = None):
        self.violations = list(violations)
        super().__init__(message or "inadmissible parameters: " + "; ".join(self.violations))


class UnsupportedCase(HeckeError):
    exit_code = 2


class GuardrailExceeded(HeckeError):
    exit_code = 3

    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"tensor space of dimension {size} exceeds the limit {limit}")


class PresentationError(HeckeError, ValueError):
    pass


class InvarianceError(HeckeError, ArithmeticError):
    """An operator failed to preserve the subspace it was restricted to."""


class MurphyBasisError(HeckeError, ArithmeticError):
    pass
