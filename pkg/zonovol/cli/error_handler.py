"""Maps errors raised by a command to an exit status and a stderr report."""

from __future__ import annotations

import json
import logging
import sys
from typing import Any, Dict

from pydantic import ValidationError

from zonovol.core.exceptions import UsageError, ZonovolError

_LOGGER = logging.getLogger("zonovol.error")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _build_error_payload(*, code: str, message: str, details: Any = None) -> Dict[str, Any]:
    return {"error": {"code": code, "message": message, "details": details}}


def usage_from_validation(exc: ValidationError) -> UsageError:
    """Flag combinations rejected by a schema become usage errors."""
    messages = "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'query'}: {err['msg']}"
        for err in exc.errors()
    )
    return UsageError(messages, {"errors": [err["msg"] for err in exc.errors()]})


def _emit(payload: Dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, default=str), file=sys.stderr)
        return
    error = payload["error"]
    print(f"error [{error['code']}]: {error['message']}", file=sys.stderr)


def handle_exception(exc: BaseException, fmt: str = "text") -> int:
    if isinstance(exc, ValidationError):
        exc = usage_from_validation(exc)

    if isinstance(exc, ZonovolError):
        _LOGGER.debug("command failed: %s %s", exc.code, exc.details)
        _emit(
            _build_error_payload(code=exc.code, message=exc.message, details=exc.details),
            fmt,
        )
        return exc.exit_code

    _LOGGER.exception("Unhandled error", exc_info=exc)
    _emit(
        _build_error_payload(code="INTERNAL_ERROR", message="an internal error occurred"),
        fmt,
    )
    return EXIT_FAILURE
