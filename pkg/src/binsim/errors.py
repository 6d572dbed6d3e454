"""Exception types raised across the toolkit.

Everything derives from BinsimError so callers can catch the whole
family at CLI boundaries without masking programming errors.
"""

from __future__ import annotations


class BinsimError(Exception):
    """Base class for all toolkit errors."""


# -- loading ----------------------------------------------------------------

class NotElf(BinsimError):
    """Input file has no valid ELF magic/header."""


class TruncatedElf(BinsimError):
    """Structurally damaged ELF: tables point past end of file."""


class UnsupportedArch(BinsimError):
    """e_machine outside the supported set (x86, ARM, MIPS)."""


class NoSymbols(BinsimError):
    """Stripped binary: no usable FUNC symbols to delimit functions."""


class MalformedDebugInfo(BinsimError):
    """DWARF sections present but unparseable where needed."""


# -- disassembly / CFG ------------------------------------------------------

class DecodeError(BinsimError):
    """Undecodable byte sequence inside a claimed function body."""

    def __init__(self, addr: int, detail: str = ""):
        self.addr = addr
        msg = f"undecodable instruction at {addr:#x}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class BadGroupTable(BinsimError):
    """Mnemonic-group table file failed validation."""


class EmptyFunction(BinsimError):
    """Function body has zero decodable instructions."""


# -- features / scoring -----------------------------------------------------

class NegativeFeature(BinsimError):
    """Feature values must be non-negative counts or averages."""


class MissingFeature(BinsimError):
    """Requested feature absent (or unavailable) on one side."""


class EmptyFeatureSet(BinsimError):
    """Similarity over an empty feature selection is undefined."""


class UnknownFeature(BinsimError):
    """Name not in the canonical feature dictionary."""


class UnknownFunction(BinsimError):
    """Call-graph lookup for a function the graph has never seen."""


# -- evaluation -------------------------------------------------------------

class EmptyInput(BinsimError):
    """No data to work on (empty dataset, store, or pair set)."""


class EmptySelection(BinsimError):
    """A selector or manifest matched nothing."""


class DegenerateLabels(BinsimError):
    """Metric needs at least one positive and one negative label."""


class NoCandidates(BinsimError):
    """Pair generation found no TP candidate for any query."""


class TooFewGroups(BinsimError):
    """Fewer distinct function identities than requested folds."""


class EmptyCorpus(BinsimError):
    """Search corpus contains no records."""


class EmptyModel(BinsimError):
    """Model with no selected features cannot score pairs."""


# -- benchmark / CLI --------------------------------------------------------

class CompilerNotFound(BinsimError):
    """Requested compiler binary is not on PATH."""


class AllCellsFailed(BinsimError):
    """Every matrix cell failed to compile."""


class BadMatrixFile(BinsimError):
    """Benchmark matrix description failed to parse."""


class BadTestSpec(BinsimError):
    """Evaluation test spec failed to parse or validate."""
