"""Minimal ELF reader: headers, sections, symbols, PLT relocations.

Covers exactly what function recovery needs: 32/64-bit, both byte
orders, section table with names, .symtab/.dynsym with string tables,
SHF_COMPRESSED debug sections (zlib), and the .rel/.rela.plt entries
used to map PLT stubs back to import names.  No segment/program-header
interpretation: symbol values and section vaddrs carry everything.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NotElf, TruncatedElf

ELF_MAGIC = b"\x7fELF"

ELFCLASS32 = 1
ELFCLASS64 = 2
ELFDATA2LSB = 1
ELFDATA2MSB = 2

ET_REL = 1
ET_EXEC = 2
ET_DYN = 3

EM_386 = 3
EM_MIPS = 8
EM_ARM = 40
EM_X86_64 = 62
EM_AARCH64 = 183

SHT_NULL = 0
SHT_PROGBITS = 1
SHT_SYMTAB = 2
SHT_STRTAB = 3
SHT_RELA = 4
SHT_NOBITS = 8
SHT_REL = 9
SHT_DYNSYM = 11

SHF_ALLOC = 0x2
SHF_EXECINSTR = 0x4
SHF_COMPRESSED = 0x800

ELFCOMPRESS_ZLIB = 1

STT_NOTYPE = 0
STT_OBJECT = 1
STT_FUNC = 2
STT_SECTION = 3
STT_FILE = 4

STB_LOCAL = 0
STB_GLOBAL = 1
STB_WEAK = 2

SHN_UNDEF = 0
SHN_ABS = 0xFFF1


@dataclass
class Section:
    index: int
    name: str
    sh_type: int
    flags: int
    addr: int
    offset: int
    size: int
    link: int
    info: int
    entsize: int
    _raw: bytes = field(repr=False, default=b"")
    _decompressed: bytes | None = field(repr=False, default=None)

    @property
    def executable(self) -> bool:
        return bool(self.flags & SHF_EXECINSTR)

    def data(self) -> bytes:
        if self.sh_type == SHT_NOBITS:
            return b""
        if self._decompressed is not None:
            return self._decompressed
        return self._raw

    def contains(self, addr: int) -> bool:
        return self.addr <= addr < self.addr + self.size


@dataclass(frozen=True)
class Symbol:
    name: str
    value: int
    size: int
    stype: int
    bind: int
    shndx: int

    @property
    def is_func(self) -> bool:
        return self.stype == STT_FUNC


@dataclass(frozen=True)
class Relocation:
    offset: int
    sym_index: int
    rtype: int


class ElfFile:
    """Parsed ELF image. Read-only; raw bytes are kept alive for slicing."""

    def __init__(self, blob: bytes, origin: str = "<bytes>"):
        self.origin = origin
        self._blob = blob
        if len(blob) < 20 or blob[:4] != ELF_MAGIC:
            raise NotElf(f"{origin}: bad ELF magic")
        ei_class = blob[4]
        ei_data = blob[5]
        if ei_class not in (ELFCLASS32, ELFCLASS64):
            raise NotElf(f"{origin}: bad EI_CLASS {ei_class}")
        if ei_data not in (ELFDATA2LSB, ELFDATA2MSB):
            raise NotElf(f"{origin}: bad EI_DATA {ei_data}")
        self.is64 = ei_class == ELFCLASS64
        self.little_endian = ei_data == ELFDATA2LSB
        self._e = "<" if self.little_endian else ">"
        try:
            self._parse_header()
            self._parse_sections()
        except struct.error as exc:
            raise TruncatedElf(f"{origin}: {exc}") from exc

    # -- construction -------------------------------------------------------

    @classmethod
    def from_path(cls, path: str | Path) -> "ElfFile":
        p = Path(path)
        try:
            blob = p.read_bytes()
        except OSError as exc:
            raise NotElf(f"{p}: {exc}") from exc
        return cls(blob, origin=str(p))

    # -- header/sections ----------------------------------------------------

    def _unpack(self, fmt: str, offset: int) -> tuple:
        fmt = self._e + fmt
        end = offset + struct.calcsize(fmt)
        if end > len(self._blob):
            raise TruncatedElf(f"{self.origin}: read past EOF at {offset:#x}")
        return struct.unpack_from(fmt, self._blob, offset)

    def _parse_header(self) -> None:
        if self.is64:
            (
                self.e_type,
                self.e_machine,
                _ver,
                self.entry,
                _phoff,
                self._shoff,
                _flags,
                _ehsize,
                _phentsize,
                _phnum,
                self._shentsize,
                self._shnum,
                self._shstrndx,
            ) = self._unpack("HHIQQQIHHHHHH", 16)
        else:
            (
                self.e_type,
                self.e_machine,
                _ver,
                self.entry,
                _phoff,
                self._shoff,
                _flags,
                _ehsize,
                _phentsize,
                _phnum,
                self._shentsize,
                self._shnum,
                self._shstrndx,
            ) = self._unpack("HHIIIIIHHHHHH", 16)

    def _section_header(self, idx: int) -> tuple:
        off = self._shoff + idx * self._shentsize
        if self.is64:
            return self._unpack("IIQQQQIIQQ", off)
        return self._unpack("IIIIIIIIII", off)

    def _parse_sections(self) -> None:
        self.sections: list[Section] = []
        if self._shoff == 0 or self._shnum == 0:
            return
        raw_headers = [self._section_header(i) for i in range(self._shnum)]
        # section-name string table
        if self._shstrndx < len(raw_headers):
            h = raw_headers[self._shstrndx]
            shstr = self._slice(h[4], h[5]) if h[1] != SHT_NOBITS else b""
        else:
            shstr = b""
        for i, h in enumerate(raw_headers):
            name_off, sh_type, flags, addr, offset, size, link, info, _align, entsize = h
            name = _cstr(shstr, name_off)
            raw = b"" if sh_type == SHT_NOBITS else self._slice(offset, size)
            sec = Section(
                index=i,
                name=name,
                sh_type=sh_type,
                flags=flags,
                addr=addr,
                offset=offset,
                size=size,
                link=link,
                info=info,
                entsize=entsize,
                _raw=raw,
            )
            self._maybe_decompress(sec)
            self.sections.append(sec)
        self._by_name: dict[str, Section] = {}
        for sec in self.sections:
            self._by_name.setdefault(sec.name, sec)

    def _slice(self, offset: int, size: int) -> bytes:
        if offset + size > len(self._blob):
            raise TruncatedElf(
                f"{self.origin}: section data [{offset:#x}+{size:#x}] past EOF"
            )
        return self._blob[offset : offset + size]

    def _maybe_decompress(self, sec: Section) -> None:
        raw = sec._raw
        if sec.flags & SHF_COMPRESSED and raw:
            hdr_fmt = "IIQQ" if self.is64 else "III"
            hdr_size = struct.calcsize(self._e + hdr_fmt)
            if len(raw) < hdr_size:
                return
            fields = struct.unpack_from(self._e + hdr_fmt, raw, 0)
            ch_type = fields[0]
            if ch_type == ELFCOMPRESS_ZLIB:
                try:
                    sec._decompressed = zlib.decompress(raw[hdr_size:])
                except zlib.error:
                    pass
        elif sec.name.startswith(".zdebug_") and raw[:4] == b"ZLIB":
            try:
                sec._decompressed = zlib.decompress(raw[12:])
            except zlib.error:
                pass

    # -- lookups ------------------------------------------------------------

    def section(self, name: str) -> Section | None:
        return self._by_name.get(name)

    def section_data(self, name: str) -> bytes:
        sec = self._by_name.get(name)
        if sec is None and not name.startswith(".zdebug"):
            sec = self._by_name.get(".zdebug" + name[len(".debug") :]) if name.startswith(".debug") else None
        return sec.data() if sec is not None else b""

    def section_at(self, addr: int) -> Section | None:
        """Alloc section whose vaddr range covers addr."""
        for sec in self.sections:
            if sec.flags & SHF_ALLOC and sec.size and sec.contains(addr):
                return sec
        return None

    # -- symbols ------------------------------------------------------------

    def _read_symbols(self, sh_type: int) -> list[Symbol]:
        out: list[Symbol] = []
        for sec in self.sections:
            if sec.sh_type != sh_type:
                continue
            strtab = (
                self.sections[sec.link].data() if sec.link < len(self.sections) else b""
            )
            data = sec.data()
            if self.is64:
                entsize, fmt = 24, "IBBHQQ"
            else:
                entsize, fmt = 16, "IIIBBH"
            n = len(data) // entsize if entsize else 0
            for i in range(n):
                if self.is64:
                    name_off, info, _other, shndx, value, size = struct.unpack_from(
                        self._e + fmt, data, i * entsize
                    )
                else:
                    name_off, value, size, info, _other, shndx = struct.unpack_from(
                        self._e + fmt, data, i * entsize
                    )
                out.append(
                    Symbol(
                        name=_cstr(strtab, name_off),
                        value=value,
                        size=size,
                        stype=info & 0xF,
                        bind=info >> 4,
                        shndx=shndx,
                    )
                )
        return out

    def symbols(self) -> list[Symbol]:
        return self._read_symbols(SHT_SYMTAB)

    def dynamic_symbols(self) -> list[Symbol]:
        return self._read_symbols(SHT_DYNSYM)

    # -- PLT relocation map --------------------------------------------------

    def plt_got_map(self) -> dict[int, str]:
        """GOT-slot address -> imported symbol name, from .rel(a).plt."""
        dynsyms = self.dynamic_symbols()
        out: dict[int, str] = {}
        for sec in self.sections:
            if sec.name not in (".rela.plt", ".rel.plt"):
                continue
            data = sec.data()
            if sec.sh_type == SHT_RELA:
                entsize = 24 if self.is64 else 12
                fmt = "QQq" if self.is64 else "IIi"
            else:
                entsize = 16 if self.is64 else 8
                fmt = "QQ" if self.is64 else "II"
            n = len(data) // entsize if entsize else 0
            for i in range(n):
                fields = struct.unpack_from(self._e + fmt, data, i * entsize)
                offset, info = fields[0], fields[1]
                sym_index = info >> (32 if self.is64 else 8)
                if 0 < sym_index < len(dynsyms):
                    name = dynsyms[sym_index].name
                    if name:
                        out[offset] = name
        return out


def _cstr(table: bytes, offset: int) -> str:
    if offset >= len(table):
        return ""
    end = table.find(b"\x00", offset)
    if end < 0:
        end = len(table)
    return table[offset:end].decode("utf-8", errors="replace")
