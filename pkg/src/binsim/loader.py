"""Symbol-guided function recovery from ELF binaries.

Function boundaries come from FUNC-typed symtab entries, never from
heuristic scanning: zero-size symbols are dropped, same-address
aliases collapse to the lexicographically smallest name, and
overlapping ranges keep the first symbol by (address, name) so the
returned bodies never overlap.  Source loci and type signatures are
pulled from DWARF when present, with a name fallback (clone suffixes
like .part.0/.isra.1/.cold stripped) for out-of-line copies whose
low_pc the compiler did not emit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import elf as elffmt
from .dwarf import DebugInfo, FunctionDebugEntry
from .errors import NoSymbols, UnsupportedArch

_MACHINE_MAP = {
    elffmt.EM_386: ("x86", 32),
    elffmt.EM_X86_64: ("x86", 64),
    elffmt.EM_ARM: ("arm", 32),
    elffmt.EM_AARCH64: ("arm", 64),
}

# Sections whose entries are linker-made stubs, not package code.
PLT_SECTION_NAMES = (".plt", ".plt.sec", ".plt.got", ".iplt", ".MIPS.stubs")


@dataclass(frozen=True)
class CompileConfig:
    """Where a binary came from: package plus the full option tuple."""

    package: str
    binary: str
    arch: str
    bits: int
    endianness: str
    compiler: str = "unknown"
    compiler_version: str = "unknown"
    opt_level: str = "unknown"
    extra: frozenset[str] = frozenset()

    def options_key(self) -> tuple:
        return (
            self.arch,
            self.bits,
            self.endianness,
            self.compiler,
            self.compiler_version,
            self.opt_level,
            tuple(sorted(self.extra)),
        )

    def as_fields(self) -> dict[str, object]:
        return {
            "arch": self.arch,
            "bits": self.bits,
            "endianness": self.endianness,
            "compiler": self.compiler,
            "compiler_version": self.compiler_version,
            "opt_level": self.opt_level,
            "extra": "+".join(sorted(self.extra)),
        }


@dataclass(frozen=True)
class TypeSignature:
    """Argument count, per-argument type ids, return type id."""

    nargs: int
    arg_type_ids: tuple[int, ...]
    ret_type_id: int


@dataclass
class RawFunction:
    """One symbol-delimited function body, plus DWARF loci if known."""

    name: str
    addr: int
    size: int
    section: str
    data: bytes = field(repr=False)
    source_file: str | None = None
    source_line: int | None = None


def base_symbol_name(name: str) -> str:
    """Strip compiler clone suffixes: foo.part.0 / foo.isra.1.cold -> foo."""
    dot = name.find(".")
    return name[:dot] if dot > 0 else name


class LoadedBinary:
    """A parsed binary: config, recovered functions, debug index."""

    def __init__(self, path: str | Path, elf: elffmt.ElfFile, config: CompileConfig):
        self.path = str(path)
        self.elf = elf
        self.config = config
        self.debug: DebugInfo | None = DebugInfo.from_elf(elf)
        self.functions: list[RawFunction] = self._recover_functions()
        self._annotate_from_debug()

    # -- function recovery ---------------------------------------------------

    def _recover_functions(self) -> list[RawFunction]:
        syms = [
            s
            for s in self.elf.symbols()
            if s.is_func
            and s.size > 0
            and s.shndx not in (elffmt.SHN_UNDEF, elffmt.SHN_ABS)
            and s.shndx < len(self.elf.sections)
        ]
        out: list[RawFunction] = []
        by_section: dict[int, list[elffmt.Symbol]] = {}
        for s in syms:
            by_section.setdefault(s.shndx, []).append(s)
        for shndx, group in sorted(by_section.items()):
            sec = self.elf.sections[shndx]
            if not sec.executable:
                continue
            data = sec.data()
            group.sort(key=lambda s: (s.value, s.name))
            last_addr = None
            last_end = -1
            for s in group:
                if s.value == last_addr:
                    continue  # alias: first (smallest) name already kept
                if s.value < last_end:
                    continue  # nested or overlapping range
                start = s.value - sec.addr
                if start < 0 or start >= len(data):
                    continue
                size = min(s.size, len(data) - start)
                out.append(
                    RawFunction(
                        name=s.name,
                        addr=s.value,
                        size=size,
                        section=sec.name,
                        data=data[start : start + size],
                    )
                )
                last_addr = s.value
                last_end = s.value + size
        if not out:
            raise NoSymbols(f"{self.path}: no usable FUNC symbols")
        out.sort(key=lambda f: (f.addr, f.name))
        return out

    # -- debug annotation ----------------------------------------------------

    def _debug_entry(self, fn: RawFunction) -> FunctionDebugEntry | None:
        if self.debug is None:
            return None
        entry = self.debug.by_low_pc.get(fn.addr)
        if entry is not None:
            return entry
        entry = self.debug.by_name.get(fn.name)
        if entry is not None:
            return entry
        return self.debug.by_name.get(base_symbol_name(fn.name))

    def _annotate_from_debug(self) -> None:
        if self.debug is None:
            return
        for fn in self.functions:
            entry = self._debug_entry(fn)
            if entry is None:
                continue
            fn.source_file = entry.decl_file
            fn.source_line = entry.decl_line

    def type_signature(self, fn: RawFunction) -> TypeSignature | None:
        """Signature from DWARF, or None when no debug info covers fn."""
        entry = self._debug_entry(fn)
        if entry is None or entry.arg_type_ids is None:
            return None
        return TypeSignature(
            nargs=len(entry.arg_type_ids),
            arg_type_ids=entry.arg_type_ids,
            ret_type_id=entry.ret_type_id
            if entry.ret_type_id is not None
            else 17,
        )

    # -- address helpers for call resolution ---------------------------------

    def read_code(self, addr: int, size: int) -> bytes | None:
        sec = self.elf.section_at(addr)
        if sec is None or not sec.executable:
            return None
        data = sec.data()
        start = addr - sec.addr
        if start < 0 or start + size > len(data):
            return None
        return data[start : start + size]

    def in_plt(self, addr: int) -> bool:
        sec = self.elf.section_at(addr)
        return sec is not None and sec.name in PLT_SECTION_NAMES


def arch_of_elf(elf: elffmt.ElfFile) -> tuple[str, int]:
    """(arch, bits) for a parsed ELF, or UnsupportedArch."""
    if elf.e_machine == elffmt.EM_MIPS:
        return "mips", 64 if elf.is64 else 32
    mapping = _MACHINE_MAP.get(elf.e_machine)
    if mapping is None:
        raise UnsupportedArch(f"e_machine {elf.e_machine}")
    return mapping


def load_binary(
    path: str | Path,
    package: str = "",
    binary: str | None = None,
    compiler: str = "unknown",
    compiler_version: str = "unknown",
    opt_level: str = "unknown",
    extra: frozenset[str] | tuple[str, ...] = (),
) -> LoadedBinary:
    """Parse an ELF and recover its functions.

    Arch, word size, and endianness come from the ELF header; the
    compile-provenance fields are caller-supplied because a binary
    does not reliably self-describe them.
    """
    elf = elffmt.ElfFile.from_path(path)
    arch, bits = arch_of_elf(elf)
    config = CompileConfig(
        package=package or Path(path).stem,
        binary=binary if binary is not None else Path(path).name,
        arch=arch,
        bits=bits,
        endianness="little" if elf.little_endian else "big",
        compiler=compiler,
        compiler_version=compiler_version,
        opt_level=opt_level,
        extra=frozenset(extra),
    )
    return LoadedBinary(path, elf, config)
