"""Desk-scale dataset builder.

Compiles the bundled fixture programs across a compiler/optimization
matrix and labels each output binary with its full CompileConfig.  The
matrix file is plain text, one cell per line:

    <source> <compiler-cmd> <opt> [extra-flags...]

Sources resolve against the matrix file's directory first, then the
packaged fixtures.  Cells that cannot build are reported and skipped;
only a run where nothing builds is fatal.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .elf import ElfFile
from .errors import AllCellsFailed, BadMatrixFile, CompilerNotFound
from .loader import CompileConfig, arch_of_elf

_COMPILE_TIMEOUT = 180.0


@dataclass(frozen=True)
class MatrixCell:
    """One line of the matrix: what to build and how."""

    source: str
    compiler: str
    opt_level: str
    extra: tuple[str, ...] = ()

    def binary_name(self) -> str:
        stem = Path(self.source).stem
        cc = Path(self.compiler).name
        name = f"{stem}-{cc}-{self.opt_level}"
        if self.extra:
            tag = hashlib.sha1(" ".join(self.extra).encode()).hexdigest()[:8]
            name += f"-x{tag}"
        return name


@dataclass
class BuildReport:
    cells_total: int = 0
    built: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def skip(self, cell: MatrixCell, reason: str) -> None:
        self.skipped.append((cell.binary_name(), reason))


def parse_matrix(text: str) -> list[MatrixCell]:
    """Parse matrix text into cells.  '#' starts a comment."""
    cells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 3:
            raise BadMatrixFile(f"line {lineno}: need '<source> <compiler> <opt>', got {raw!r}")
        opt = parts[2].lstrip("-")
        if not opt.startswith("O"):
            raise BadMatrixFile(f"line {lineno}: optimization token {parts[2]!r} should look like O2")
        cells.append(MatrixCell(parts[0], parts[1], opt, tuple(parts[3:])))
    if not cells:
        raise BadMatrixFile("matrix file has no cells")
    return cells


def default_matrix_path() -> Path:
    return Path(str(resources.files("binsim.data").joinpath("matrix/default.txt")))


def fixtures_dir() -> Path:
    return Path(str(resources.files("binsim.data").joinpath("fixtures")))


def _resolve_source(source: str, matrix_dir: Path) -> Path | None:
    cand = Path(source)
    if cand.is_absolute():
        return cand if cand.is_file() else None
    for base in (matrix_dir, fixtures_dir()):
        p = base / source
        if p.is_file():
            return p
    return None


def compiler_version(cmd: str, _cache: dict = {}) -> str:
    """Best-effort toolchain version string.  Cached per command."""
    if cmd in _cache:
        return _cache[cmd]
    version = "unknown"
    for flag in ("-dumpfullversion", "-dumpversion"):
        try:
            out = subprocess.run(
                [cmd, flag], capture_output=True, text=True, timeout=30
            )
        except (OSError, subprocess.TimeoutExpired):
            break
        tok = out.stdout.strip().split()
        if out.returncode == 0 and tok:
            version = tok[0]
            break
    _cache[cmd] = version
    return version


def _build_cell(cell: MatrixCell, src: Path, out_dir: Path) -> tuple[Path, CompileConfig] | str:
    """Compile one cell.  Returns the labeled binary, or a failure reason."""
    out_path = out_dir / cell.binary_name()
    argv = [
        cell.compiler,
        "-g",
        f"-{cell.opt_level}",
        *cell.extra,
        str(src),
        "-o",
        str(out_path),
        "-lm",
    ]
    try:
        proc = subprocess.run(argv, capture_output=True, text=True, timeout=_COMPILE_TIMEOUT)
    except subprocess.TimeoutExpired:
        return "compile timed out"
    except OSError as exc:
        return f"compiler failed to launch: {exc}"
    if proc.returncode != 0:
        tail = (proc.stderr or proc.stdout).strip().splitlines()
        return "compile failed: " + (tail[-1] if tail else f"exit {proc.returncode}")

    elf = ElfFile.from_path(out_path)
    arch, bits = arch_of_elf(elf)
    config = CompileConfig(
        package=Path(cell.source).stem,
        binary=cell.binary_name(),
        arch=arch,
        bits=bits,
        endianness="little" if elf.little_endian else "big",
        compiler=Path(cell.compiler).name,
        compiler_version=compiler_version(cell.compiler),
        opt_level=cell.opt_level,
        extra=frozenset(cell.extra),
    )
    return out_path, config


def build_matrix(
    matrix_path: str | Path | None = None,
    out_dir: str | Path = "build",
    jobs: int = 0,
) -> tuple[list[tuple[Path, CompileConfig]], BuildReport]:
    """Build every cell of the matrix; parallel across cells.

    Missing compilers and failed compiles become report entries.  Raises
    CompilerNotFound when no listed compiler exists at all, and
    AllCellsFailed when nothing built for any other reason.
    """
    matrix_path = Path(matrix_path) if matrix_path else default_matrix_path()
    cells = parse_matrix(matrix_path.read_text())
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    report = BuildReport(cells_total=len(cells))
    available = {cc: shutil.which(cc) is not None for cc in {c.compiler for c in cells}}
    if not any(available.values()):
        raise CompilerNotFound(
            "no matrix compiler found on PATH: " + ", ".join(sorted(available))
        )

    runnable: list[tuple[MatrixCell, Path]] = []
    for cell in cells:
        if not available[cell.compiler]:
            report.skip(cell, f"compiler not found: {cell.compiler}")
            continue
        src = _resolve_source(cell.source, matrix_path.parent)
        if src is None:
            report.skip(cell, f"source not found: {cell.source}")
            continue
        runnable.append((cell, src))

    results: list[tuple[Path, CompileConfig]] = []
    workers = jobs if jobs > 0 else min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            (cell, pool.submit(_build_cell, cell, src, out_dir))
            for cell, src in runnable
        ]
        for cell, fut in futures:
            got = fut.result()
            if isinstance(got, str):
                report.skip(cell, got)
            else:
                results.append(got)

    if not results:
        raise AllCellsFailed(
            f"all {len(cells)} cells failed; first: {report.skipped[0][1]}"
        )
    report.built = len(results)
    results.sort(key=lambda pc: str(pc[0]))
    return results, report


def config_to_dict(config: CompileConfig) -> dict:
    d = config.as_fields()
    d["package"] = config.package
    d["binary"] = config.binary
    d["extra"] = sorted(config.extra)
    return d


def config_from_dict(d: dict) -> CompileConfig:
    return CompileConfig(
        package=d["package"],
        binary=d["binary"],
        arch=d["arch"],
        bits=int(d["bits"]),
        endianness=d["endianness"],
        compiler=d.get("compiler", "unknown"),
        compiler_version=d.get("compiler_version", "unknown"),
        opt_level=d.get("opt_level", "unknown"),
        extra=frozenset(d.get("extra", ())),
    )


def write_build_manifest(cells: list[tuple[Path, CompileConfig]], path: str | Path) -> None:
    """JSONL manifest of built binaries, atomic, sorted by path."""
    path = Path(path)
    rows = sorted(cells, key=lambda pc: str(pc[0]))
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=".manifest-")
    try:
        with os.fdopen(fd, "w") as fh:
            for bin_path, config in rows:
                row = {"path": str(bin_path), "config": config_to_dict(config)}
                fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_build_manifest(path: str | Path) -> list[tuple[Path, CompileConfig]]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            out.append((Path(row["path"]), config_from_dict(row["config"])))
    return out
