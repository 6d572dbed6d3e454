"""Small shared helpers: stable seeding, atomic file writes."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path


def stable_seed(*parts: object) -> int:
    """Deterministic 64-bit seed from a tuple of printable parts.

    repr() keys through blake2b, so results are stable across runs,
    platforms, and PYTHONHASHSEED (unlike hash()).
    """
    text = repr(parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write text to path via tmp + rename so readers never see partials."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_bytes(path: str | Path, blob: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
