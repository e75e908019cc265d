"""
Domain errors for the star-product engines.

Every error carries a stable machine code; the CLI maps codes to exit statuses.
"""
from __future__ import annotations

from typing import Any


class WorkbenchError(Exception):
    """Base error with a machine-readable code and optional details."""

    code = "WORKBENCH_ERROR"

    def __init__(self, message: str, code: str | None = None, details: dict[str, Any] | None = None):
        self.message = message
        if code is not None:
            self.code = code
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


class InputError(WorkbenchError):
    """Malformed input: unreadable files, bad flags, bad JSON."""

    code = "INPUT_ERROR"


class DimensionMismatch(WorkbenchError):
    code = "DIMENSION_MISMATCH"


class PoleAtPoint(WorkbenchError):
    code = "POLE_AT_POINT"


class NotPolynomialInParameter(WorkbenchError):
    code = "NOT_POLYNOMIAL_IN_PARAMETER"


class NotInvariant(WorkbenchError):
    code = "NOT_INVARIANT"


class NotNilpotent(WorkbenchError):
    code = "NOT_NILPOTENT"


class InvalidLieStructure(WorkbenchError):
    """Structure constants that are not antisymmetric or violate Jacobi."""

    code = "INVALID_LIE_STRUCTURE"


class UnexpectedPoleAtZero(WorkbenchError):
    code = "UNEXPECTED_POLE_AT_ZERO"


class ChartSingularity(WorkbenchError):
    code = "CHART_SINGULARITY"


class UnknownKind(WorkbenchError):
    code = "UNKNOWN_KIND"


class ForeignPole(WorkbenchError):
    """A coefficient has a pole outside {-1/(2m)} or at zero."""

    code = "FOREIGN_POLE"


class NoConvergence(WorkbenchError):
    code = "NO_CONVERGENCE"


class VerificationFailure(WorkbenchError):
    """An algebraic identity that must hold exactly did not."""

    code = "VERIFICATION_FAILED"
