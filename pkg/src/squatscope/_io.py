from __future__ import annotations

import gzip
from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    """Path of a file bundled under ``squatscope/data``."""
    return Path(str(resources.files("squatscope") / "data" / name))


def open_text(path, mode: str = "rt"):
    """Open a UTF-8 text file, transparently handling ``.gz``."""
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, mode, encoding="utf-8")
    return open(path, mode, encoding="utf-8", newline=None if "r" in mode else "")
