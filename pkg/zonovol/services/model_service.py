# zonovol/services/model_service.py

"""
Model files: parsing, rendering and name resolution.

A model file is a UTF-8 JSON document ``{"name": str, "A": [[...]], "B": [[...]]}``.
"""

import json
from pathlib import Path

from pydantic import ValidationError

from zonovol.core.config import settings
from zonovol.core.exceptions import DimensionError, ModelParseError
from zonovol.core.logging import get_logger
from zonovol.schemas.bench import ModelFile
from zonovol.schemas.matrix import SystemModel
from zonovol.seed import bundled_model_path, bundled_models

logger = get_logger(__name__)


def _location(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def _from_validation_error(exc: ValidationError, path: str) -> ModelParseError:
    first = exc.errors()[0]
    return ModelParseError(first["msg"], path=path, field=_location(first["loc"]))


def model_from_text(text: str, path: str = "<string>") -> SystemModel:
    """
    Parse a model document held in memory.

    Raises:
        ModelParseError: empty document, JSON syntax error (with line), missing
            or non-numeric fields (with field path)
        DimensionError: A not square, or B rows differ from A rows
    """
    if not text.strip():
        raise ModelParseError("model file is empty", path=path, line=1)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(exc.msg, path=path, line=exc.lineno) from exc

    try:
        document = ModelFile.model_validate(raw)
    except ValidationError as exc:
        raise _from_validation_error(exc, path) from exc

    _check_dimensions(document, path)
    try:
        return SystemModel(name=document.name, A=document.A, B=document.B)
    except ValidationError as exc:
        raise _from_validation_error(exc, path) from exc


def _check_dimensions(document: ModelFile, path: str) -> None:
    n_rows, n_cols = len(document.A), len(document.A[0])
    if n_rows != n_cols:
        raise DimensionError(
            f"{path}: A must be square, got {n_rows}x{n_cols}",
            {"path": path, "field": "A", "rows": n_rows, "cols": n_cols},
        )
    if len(document.B) != n_rows:
        raise DimensionError(
            f"{path}: B has {len(document.B)} rows but A has {n_rows}",
            {"path": path, "field": "B", "rows": len(document.B), "expected_rows": n_rows},
        )


def parse_model(path: str | Path) -> SystemModel:
    """
    Read and validate a model file.

    Raises:
        ModelParseError: unreadable file or invalid content
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelParseError(f"cannot read model file: {exc}", path=str(path)) from exc
    model = model_from_text(text, str(path))
    logger.debug("parsed model %s (n=%d, r=%d) from %s", model.name, model.n, model.r, path)
    return model


def render_model(model: SystemModel) -> str:
    """JSON text that ``model_from_text`` reads back entry for entry."""
    # json writes floats with repr, the shortest string that round-trips
    document = {"name": model.name, "A": model.A.tolist(), "B": model.B.tolist()}
    return json.dumps(document, indent=2) + "\n"


def resolve_model(name_or_path: str) -> SystemModel:
    """
    Load a model from a file path, or by name from MODEL_DIR and then the
    bundled examples.

    Raises:
        ModelParseError: nothing matches, or the match is invalid
    """
    candidate = Path(name_or_path)
    if candidate.is_file():
        return parse_model(candidate)

    if settings.MODEL_DIR:
        for filename in (name_or_path, f"{name_or_path}.json"):
            in_dir = Path(settings.MODEL_DIR) / filename
            if in_dir.is_file():
                return parse_model(in_dir)

    bundled = bundled_model_path(name_or_path)
    if bundled is not None:
        return parse_model(bundled)

    raise ModelParseError(
        f"no model file or bundled model named {name_or_path!r} "
        f"(bundled: {', '.join(bundled_models())})",
        path=name_or_path,
    )
