"""Atomic file writes."""

import os
import tempfile
from pathlib import Path
from typing import Union

import structlog

logger = structlog.get_logger()


def write_text_atomic(path: Union[str, Path], text: str) -> Path:
    """Write text to a temp file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(dir=path.parent, suffix=path.suffix + ".tmp")
    try:
        # newline="" keeps "\n" line endings on every platform
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(temp_path, path)
        logger.debug("file_written", path=str(path), size=len(text))
    except Exception:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise
    return path
