"""
Mapping of workbench errors to CLI exit statuses and stderr payloads.
"""
import logging

from quantization.domain.errors import WorkbenchError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2


class ErrorHandler:
    """Error handler for workbench commands."""

    EXIT_CODES = {
        "INPUT_ERROR": EXIT_INPUT_ERROR,
        "DIMENSION_MISMATCH": EXIT_INPUT_ERROR,
        "POLE_AT_POINT": EXIT_INPUT_ERROR,
        "NOT_POLYNOMIAL_IN_PARAMETER": EXIT_INPUT_ERROR,
        "NOT_INVARIANT": EXIT_INPUT_ERROR,
        "NOT_NILPOTENT": EXIT_INPUT_ERROR,
        "INVALID_LIE_STRUCTURE": EXIT_INPUT_ERROR,
        "UNEXPECTED_POLE_AT_ZERO": EXIT_INPUT_ERROR,
        "CHART_SINGULARITY": EXIT_INPUT_ERROR,
        "UNKNOWN_KIND": EXIT_INPUT_ERROR,
        "FOREIGN_POLE": EXIT_VERIFICATION_FAILED,
        "NO_CONVERGENCE": EXIT_VERIFICATION_FAILED,
        "VERIFICATION_FAILED": EXIT_VERIFICATION_FAILED,
        "INTERNAL_ERROR": EXIT_INPUT_ERROR,
    }

    @classmethod
    def handle_error(cls, error: Exception) -> tuple[int, dict]:
        """Exit status and the {"error": ...} payload for stderr."""
        if isinstance(error, WorkbenchError):
            return cls.EXIT_CODES.get(error.code, EXIT_INPUT_ERROR), {"error": error.to_dict()}

        # Log unexpected errors
        logger.error(
            "unexpected_error",
            extra={"error": type(error).__name__, "details": {"message": str(error)}},
            exc_info=True,
        )
        return EXIT_INPUT_ERROR, {
            "error": {
                "code": "INTERNAL_ERROR",
                "message": str(error) or type(error).__name__,
                "details": {"type": type(error).__name__},
            }
        }
