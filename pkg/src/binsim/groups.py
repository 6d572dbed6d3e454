"""Mnemonic classification tables.

Every decoded instruction gets bucketed into one of ten coarse groups
(arithmetic, data transfer, compare, logic, shift, bit manipulation,
floating point, conditional transfer, unconditional transfer, misc).
The per-architecture tables live in data files next to this module so
they can be audited and swapped without touching code: each line maps a
mnemonic prefix to a group, and classification picks the longest prefix
that matches.  Set TIKNIB_GROUP_TABLES to a directory containing
<arch>.txt files to override the packaged tables.
"""

from __future__ import annotations

import os
from importlib import resources

from .errors import BadGroupTable

GROUP_NAMES = (
    "arith",
    "data_transfer",
    "cmp",
    "logic",
    "shift",
    "bitmanip",
    "float",
    "ctransfer_cond",
    "ctransfer_uncond",
    "misc",
)

_GROUP_SET = frozenset(GROUP_NAMES)

# arch aliases accepted by load_table
_ARCH_FILES = {
    "x86": "x86.txt",
    "x86_64": "x86.txt",
    "arm": "arm.txt",
    "aarch64": "arm.txt",
    "mips": "mips.txt",
}

_ENV_OVERRIDE = "TIKNIB_GROUP_TABLES"


class GroupTable:
    """Longest-prefix mnemonic classifier backed by one table file."""

    def __init__(self, entries: dict[str, str], origin: str = "<memory>"):
        if not entries:
            raise BadGroupTable(f"{origin}: empty table")
        for prefix, group in entries.items():
            if not prefix:
                raise BadGroupTable(f"{origin}: empty prefix")
            if group not in _GROUP_SET:
                raise BadGroupTable(f"{origin}: unknown group {group!r} for prefix {prefix!r}")
        self.entries = dict(entries)
        self.origin = origin
        self._max_len = max(len(p) for p in entries)
        self._cache: dict[str, str] = {}

    @classmethod
    def from_text(cls, text: str, origin: str = "<memory>") -> "GroupTable":
        entries: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise BadGroupTable(f"{origin}:{lineno}: expected 'prefix group', got {raw!r}")
            prefix, group = parts
            if prefix in entries:
                raise BadGroupTable(f"{origin}:{lineno}: duplicate prefix {prefix!r}")
            entries[prefix] = group
        return cls(entries, origin)

    @classmethod
    def from_file(cls, path: str) -> "GroupTable":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read(), origin=path)

    def classify(self, mnemonic: str) -> str:
        """Return the group for a mnemonic, falling back to misc."""
        got = self._cache.get(mnemonic)
        if got is not None:
            return got
        entries = self.entries
        group = "misc"
        for n in range(min(len(mnemonic), self._max_len), 0, -1):
            hit = entries.get(mnemonic[:n])
            if hit is not None:
                group = hit
                break
        self._cache[mnemonic] = group
        return group


_TABLE_CACHE: dict[str, GroupTable] = {}


def load_table(arch: str) -> GroupTable:
    """Load the classification table for an architecture.

    Honors the TIKNIB_GROUP_TABLES override directory first, then falls
    back to the packaged data files.  Tables are cached per resolved
    file, so repeated loads are cheap.
    """
    fname = _ARCH_FILES.get(arch)
    if fname is None:
        raise BadGroupTable(f"no group table for arch {arch!r}")

    override = os.environ.get(_ENV_OVERRIDE)
    if override:
        path = os.path.join(override, fname)
        if not os.path.isfile(path):
            raise BadGroupTable(f"{_ENV_OVERRIDE} set but {path} does not exist")
        key = os.path.abspath(path)
        table = _TABLE_CACHE.get(key)
        if table is None:
            table = GroupTable.from_file(path)
            _TABLE_CACHE[key] = table
        return table

    key = f"pkg:{fname}"
    table = _TABLE_CACHE.get(key)
    if table is None:
        text = resources.files("binsim.data.groups").joinpath(fname).read_text("utf-8")
        table = GroupTable.from_text(text, origin=f"binsim/data/groups/{fname}")
        _TABLE_CACHE[key] = table
    return table
