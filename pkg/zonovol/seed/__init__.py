# zonovol/seed/__init__.py

"""Bundled example models: ``ex1`` (reachable, n = 3) and ``ex2`` (controllable, n = 4)."""

from pathlib import Path
from typing import List, Optional

MODELS_DIR = Path(__file__).parent / "models"


def bundled_models() -> List[str]:
    return sorted(p.stem for p in MODELS_DIR.glob("*.json"))


def bundled_model_path(name: str) -> Optional[Path]:
    path = MODELS_DIR / f"{name}.json"
    return path if path.is_file() else None
