# zonovol/core/exceptions.py

from typing import Any, Dict, Optional


class ZonovolError(Exception):
    """Base error; ``code`` and ``exit_code`` drive the command-line error handler."""

    code = "INTERNAL_ERROR"
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def with_details(self, **extra: Any) -> "ZonovolError":
        self.details.update(extra)
        return self


class DimensionError(ZonovolError):
    code = "DIMENSION_ERROR"


class SingularMatrixError(ZonovolError):
    code = "SINGULAR_MATRIX"

    def __init__(self, det: float, tol: float):
        super().__init__(
            f"matrix is singular: |det| = {abs(det):.3e} <= {tol:.1e}",
            {"det": det, "tol": tol},
        )
        self.det = det


class SpectralUnsupported(ZonovolError):
    """The spectrum is outside the real, distinct, positive case.

    ``reason`` is one of ``complex``, ``repeated``, ``non-positive``; callers
    fall back to the eigenvalue-agnostic methods.
    """

    code = "SPECTRAL_UNSUPPORTED"

    COMPLEX = "complex"
    REPEATED = "repeated"
    NON_POSITIVE = "non-positive"

    def __init__(self, reason: str, eigenvalues: Optional[list] = None):
        super().__init__(
            f"spectral path unsupported: {reason} eigenvalues",
            {"reason": reason, "eigenvalues": eigenvalues},
        )
        self.reason = reason


class ContractViolation(ZonovolError):
    code = "CONTRACT_VIOLATION"


class EmptyHorizonError(ZonovolError):
    code = "EMPTY_HORIZON"

    def __init__(self, horizon: int):
        super().__init__(f"horizon must be >= 1, got {horizon}", {"horizon": horizon})


class DomainError(ZonovolError):
    code = "DOMAIN_ERROR"


class DivergentRegionError(ZonovolError):
    code = "DIVERGENT_REGION"


class BudgetExceeded(ZonovolError):
    code = "BUDGET_EXCEEDED"

    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"exact method needs {needed} determinants, budget is {budget}",
            {"needed": needed, "budget": budget},
        )


class ModelParseError(ZonovolError):
    code = "MODEL_PARSE_ERROR"

    def __init__(
        self,
        message: str,
        *,
        path: Optional[str] = None,
        line: Optional[int] = None,
        field: Optional[str] = None,
    ):
        where = ", ".join(
            part
            for part in (
                path,
                f"line {line}" if line is not None else None,
                f"field {field}" if field else None,
            )
            if part
        )
        super().__init__(
            f"{where}: {message}" if where else message,
            {"path": path, "line": line, "field": field},
        )
        self.line = line
        self.field = field


class UsageError(ZonovolError):
    code = "USAGE_ERROR"
    exit_code = 2
