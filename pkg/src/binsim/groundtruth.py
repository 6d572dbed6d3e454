"""Ground-truth identities and dataset sanitization.

Two functions are the same ground-truth function iff they share
(package, source_file, source_line, name).  Before that test means
anything the per-binary symbol crop has to be cleaned up, in a fixed
order: linker stubs out, compiler-runtime intrinsics out, duplicate
copies of one source function collapsed to a single representative,
and anything without a source locus dropped.  The order matters and is
part of the contract; each rule reports how much it removed.
"""

from __future__ import annotations

import fnmatch
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .loader import PLT_SECTION_NAMES, CompileConfig
from .util import atomic_write_text

# source-path globs that mark compiler-runtime code rather than package
# code; configurable because vendor toolchains add their own layouts
DEFAULT_INTRINSIC_PATTERNS: tuple[str, ...] = (
    "*libgcc*",
    "*/crt*",
    "crt*",
    "*crtstuff*",
    "*compiler-rt*",
    "*/gcc/config/*",
    "*/clang/*/lib/*",
)


@dataclass
class FunctionRecord:
    """One function in one compiled binary, plus its feature vector."""

    config: CompileConfig
    name: str
    addr: int
    source_file: str | None
    source_line: int | None
    features: dict[str, float | None] = field(default_factory=dict)
    section: str = ".text"

    @property
    def package(self) -> str:
        return self.config.package

    @property
    def binary(self) -> str:
        return self.config.binary

    def identity_key(self) -> tuple[str, str | None, int | None, str]:
        return (self.config.package, self.source_file, self.source_line, self.name)

    def options_key(self) -> tuple:
        return self.config.options_key()


def same_identity(a: FunctionRecord, b: FunctionRecord) -> bool:
    """Ground-truth equality: same package, source locus, and name."""
    return a.identity_key() == b.identity_key()


@dataclass
class SanitizeReport:
    drops: dict[str, int] = field(default_factory=dict)
    kept: int = 0

    def bump(self, rule: str) -> None:
        self.drops[rule] = self.drops.get(rule, 0) + 1


def _is_intrinsic(source_file: str, patterns: Sequence[str]) -> bool:
    for pat in patterns:
        if fnmatch.fnmatch(source_file, pat):
            return True
    return False


def sanitize(
    records: Iterable[FunctionRecord],
    *,
    intrinsic_patterns: Sequence[str] = DEFAULT_INTRINSIC_PATTERNS,
    source_root: str | None = None,
) -> tuple[list[FunctionRecord], SanitizeReport]:
    """Clean a record list in the fixed rule order.

    1. keep only functions in real code sections (PLT and stub
       sections are linker furniture, not package code)
    2. drop compiler intrinsics, recognized by their source paths
    3. within one (package, build-options) slice, collapse records
       sharing (source_file, source_line) to one representative:
       smallest name wins, then smallest (binary, addr) for
       determinism
    4. drop records with no source locus

    With source_root set, functions whose source lives outside that
    prefix are dropped between rules 2 and 3 (static-library pollution
    from other packages).  Idempotent by construction; returns the
    survivors in input order plus a per-rule drop report.
    """
    report = SanitizeReport()
    stage: list[FunctionRecord] = []
    for rec in records:
        if rec.section in PLT_SECTION_NAMES or not rec.section:
            report.bump("plt_or_stub")
            continue
        stage.append(rec)

    stage2: list[FunctionRecord] = []
    for rec in stage:
        if rec.source_file is not None and _is_intrinsic(rec.source_file, intrinsic_patterns):
            report.bump("intrinsic")
            continue
        stage2.append(rec)

    if source_root is not None:
        stage3: list[FunctionRecord] = []
        for rec in stage2:
            if rec.source_file is not None and not rec.source_file.startswith(source_root):
                report.bump("foreign_source")
                continue
            stage3.append(rec)
        stage2 = stage3

    # rule 3: records without loci pass through untouched (rule 4 owns
    # them) so the drop counts stay honest
    best: dict[tuple, FunctionRecord] = {}
    for rec in stage2:
        if rec.source_file is None or rec.source_line is None:
            continue
        key = (rec.config.package, rec.options_key(), rec.source_file, rec.source_line)
        cur = best.get(key)
        if cur is None:
            best[key] = rec
            continue
        if (rec.name, rec.binary, rec.addr) < (cur.name, cur.binary, cur.addr):
            best[key] = rec

    stage4: list[FunctionRecord] = []
    for rec in stage2:
        if rec.source_file is None or rec.source_line is None:
            stage4.append(rec)
            continue
        key = (rec.config.package, rec.options_key(), rec.source_file, rec.source_line)
        if best.get(key) is rec:
            stage4.append(rec)
        else:
            report.bump("duplicate_copy")

    out: list[FunctionRecord] = []
    for rec in stage4:
        if rec.source_file is None or rec.source_line is None:
            report.bump("no_source_locus")
            continue
        out.append(rec)

    report.kept = len(out)
    return out, report


def write_manifest(path: str | Path, records: Iterable[FunctionRecord]) -> int:
    """Identity manifest: loci and build labels, no features."""
    recs = sorted(
        records,
        key=lambda r: (
            r.config.package,
            r.source_file or "",
            r.source_line or 0,
            r.name,
            r.options_key(),
            r.binary,
        ),
    )
    buf = io.StringIO()
    for rec in recs:
        row = {
            "package": rec.config.package,
            "source_file": rec.source_file,
            "source_line": rec.source_line,
            "name": rec.name,
            "binary": rec.binary,
            "addr": rec.addr,
            "arch": rec.config.arch,
            "bits": rec.config.bits,
            "endianness": rec.config.endianness,
            "compiler": rec.config.compiler,
            "compiler_version": rec.config.compiler_version,
            "opt_level": rec.config.opt_level,
            "extra": sorted(rec.config.extra),
        }
        buf.write(json.dumps(row, separators=(",", ":")))
        buf.write("\n")
    atomic_write_text(path, buf.getvalue())
    return len(recs)


def read_manifest(path: str | Path) -> list[FunctionRecord]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            cfg = CompileConfig(
                package=d["package"],
                binary=d["binary"],
                arch=d["arch"],
                bits=int(d["bits"]),
                endianness=d["endianness"],
                compiler=d["compiler"],
                compiler_version=d["compiler_version"],
                opt_level=d["opt_level"],
                extra=frozenset(d.get("extra", ())),
            )
            out.append(
                FunctionRecord(
                    config=cfg,
                    name=d["name"],
                    addr=int(d["addr"]),
                    source_file=d.get("source_file"),
                    source_line=d.get("source_line"),
                )
            )
    return out
