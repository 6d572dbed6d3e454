"""x86 / x86-64 length-and-mnemonic decoder.

Table-driven over the one-byte, 0F, 0F38, and 0F3A maps with full
ModRM/SIB/displacement/immediate length rules, REX, VEX (2/3-byte),
EVEX, and the legacy prefixes compilers actually emit.  Mnemonics are
exact for the instructions that matter to grouping and CFG recovery
(data moves, ALU ops, branches, calls); packed-SIMD opcodes fall back
to family names that the group tables route by prefix.

Immediate codes in the tables:
    b  imm8      w  imm16      z  imm16/32 by operand size
    v  imm16/32/64 by operand size (mov reg, imm)
    wb imm16+imm8 (enter)      p  far pointer      m  moffs (addr size)
"""

from __future__ import annotations

from typing import Iterator

from ..errors import DecodeError
from . import Insn

_PREFIXES = frozenset(
    (0xF0, 0xF2, 0xF3, 0x2E, 0x36, 0x3E, 0x26, 0x64, 0x65, 0x66, 0x67)
)

_GRP1 = ("add", "or", "adc", "sbb", "and", "sub", "xor", "cmp")
_GRP2 = ("rol", "ror", "rcl", "rcr", "shl", "shr", "sal", "sar")
_GRP3 = ("test", "test", "not", "neg", "mul", "imul", "div", "idiv")
_GRP5 = ("inc", "dec", "call", "call", "jmp", "jmp", "push", "bad")
_GRP7 = ("sgdt", "sidt", "lgdt", "lidt", "smsw", "bad", "lmsw", "invlpg")
_GRP15 = ("fxsave", "fxrstor", "ldmxcsr", "stmxcsr", "xsave", "lfence", "mfence", "sfence")

_CC = (
    "o", "no", "b", "ae", "e", "ne", "be", "a",
    "s", "ns", "p", "np", "l", "ge", "le", "g",
)

# x87 family names by escape opcode; precise enough for float grouping
_X87 = {
    0xD8: "fadd", 0xD9: "fld", 0xDA: "fiadd", 0xDB: "fild",
    0xDC: "fadd", 0xDD: "fld", 0xDE: "faddp", 0xDF: "fild",
}

# one-byte map: opcode -> (mnemonic, modrm, imm); None = invalid/special
_ONE: dict[int, tuple] = {}


def _fill(table, spec):
    for opcodes, entry in spec:
        if isinstance(opcodes, tuple):
            for op in range(opcodes[0], opcodes[1] + 1):
                table[op] = entry
        else:
            table[opcodes] = entry


_ALU = ("add", "or", "adc", "sbb", "and", "sub", "xor", "cmp")
for _i, _name in enumerate(_ALU):
    base = _i * 8
    _fill(_ONE, [
        ((base + 0, base + 3), (_name, True, None)),
        (base + 4, (_name, False, "b")),
        (base + 5, (_name, False, "z")),
    ])

_fill(_ONE, [
    (0x06, ("push", False, None)), (0x07, ("pop", False, None)),
    (0x0E, ("push", False, None)),
    (0x16, ("push", False, None)), (0x17, ("pop", False, None)),
    (0x1E, ("push", False, None)), (0x1F, ("pop", False, None)),
    (0x27, ("daa", False, None)), (0x2F, ("das", False, None)),
    (0x37, ("aaa", False, None)), (0x3F, ("aas", False, None)),
    ((0x40, 0x47), ("inc", False, None)),      # REX in 64-bit, handled upstream
    ((0x48, 0x4F), ("dec", False, None)),
    ((0x50, 0x57), ("push", False, None)),
    ((0x58, 0x5F), ("pop", False, None)),
    (0x60, ("pusha", False, None)), (0x61, ("popa", False, None)),
    (0x62, ("bound", True, None)),             # EVEX in 64-bit, handled upstream
    (0x63, ("arpl", True, None)),              # movsxd in 64-bit
    (0x68, ("push", False, "z")),
    (0x69, ("imul", True, "z")),
    (0x6A, ("push", False, "b")),
    (0x6B, ("imul", True, "b")),
    (0x6C, ("ins", False, None)), (0x6D, ("ins", False, None)),
    (0x6E, ("outs", False, None)), (0x6F, ("outs", False, None)),
    ((0x70, 0x7F), ("jcc", False, "b")),
    (0x80, ("#grp1", True, "b")),
    (0x81, ("#grp1", True, "z")),
    (0x82, ("#grp1", True, "b")),
    (0x83, ("#grp1", True, "b")),
    (0x84, ("test", True, None)), (0x85, ("test", True, None)),
    (0x86, ("xchg", True, None)), (0x87, ("xchg", True, None)),
    ((0x88, 0x8B), ("mov", True, None)),
    (0x8C, ("mov", True, None)),
    (0x8D, ("lea", True, None)),
    (0x8E, ("mov", True, None)),
    (0x8F, ("pop", True, None)),
    (0x90, ("nop", False, None)),
    ((0x91, 0x97), ("xchg", False, None)),
    (0x98, ("cwde", False, None)), (0x99, ("cdq", False, None)),
    (0x9A, ("call", False, "p")),
    (0x9B, ("fwait", False, None)),
    (0x9C, ("pushf", False, None)), (0x9D, ("popf", False, None)),
    (0x9E, ("sahf", False, None)), (0x9F, ("lahf", False, None)),
    ((0xA0, 0xA3), ("mov", False, "m")),
    (0xA4, ("movs", False, None)), (0xA5, ("movs", False, None)),
    (0xA6, ("cmps", False, None)), (0xA7, ("cmps", False, None)),
    (0xA8, ("test", False, "b")), (0xA9, ("test", False, "z")),
    (0xAA, ("stos", False, None)), (0xAB, ("stos", False, None)),
    (0xAC, ("lods", False, None)), (0xAD, ("lods", False, None)),
    (0xAE, ("scas", False, None)), (0xAF, ("scas", False, None)),
    ((0xB0, 0xB7), ("mov", False, "b")),
    ((0xB8, 0xBF), ("mov", False, "v")),
    (0xC0, ("#grp2", True, "b")),
    (0xC1, ("#grp2", True, "b")),
    (0xC2, ("ret", False, "w")),
    (0xC3, ("ret", False, None)),
    (0xC4, ("les", True, None)),               # VEX3 in 64-bit
    (0xC5, ("lds", True, None)),               # VEX2 in 64-bit
    (0xC6, ("mov", True, "b")),
    (0xC7, ("mov", True, "z")),
    (0xC8, ("enter", False, "wb")),
    (0xC9, ("leave", False, None)),
    (0xCA, ("ret", False, "w")),
    (0xCB, ("ret", False, None)),
    (0xCC, ("int3", False, None)),
    (0xCD, ("int", False, "b")),
    (0xCE, ("into", False, None)),
    (0xCF, ("iret", False, None)),
    (0xD0, ("#grp2", True, None)), (0xD1, ("#grp2", True, None)),
    (0xD2, ("#grp2", True, None)), (0xD3, ("#grp2", True, None)),
    (0xD4, ("aam", False, "b")), (0xD5, ("aad", False, "b")),
    (0xD6, ("salc", False, None)),
    (0xD7, ("xlat", False, None)),
    ((0xD8, 0xDF), ("#x87", True, None)),
    (0xE0, ("loopne", False, "b")), (0xE1, ("loope", False, "b")),
    (0xE2, ("loop", False, "b")), (0xE3, ("jcxz", False, "b")),
    (0xE4, ("in", False, "b")), (0xE5, ("in", False, "b")),
    (0xE6, ("out", False, "b")), (0xE7, ("out", False, "b")),
    (0xE8, ("call", False, "z")),
    (0xE9, ("jmp", False, "z")),
    (0xEA, ("jmp", False, "p")),
    (0xEB, ("jmp", False, "b")),
    (0xEC, ("in", False, None)), (0xED, ("in", False, None)),
    (0xEE, ("out", False, None)), (0xEF, ("out", False, None)),
    (0xF1, ("int1", False, None)),
    (0xF4, ("hlt", False, None)),
    (0xF5, ("cmc", False, None)),
    (0xF6, ("#grp3", True, "b?")),             # imm only for /0-/1 test
    (0xF7, ("#grp3", True, "z?")),
    (0xF8, ("clc", False, None)), (0xF9, ("stc", False, None)),
    (0xFA, ("cli", False, None)), (0xFB, ("sti", False, None)),
    (0xFC, ("cld", False, None)), (0xFD, ("std", False, None)),
    (0xFE, ("#grp4", True, None)),
    (0xFF, ("#grp5", True, None)),
])

# SSE/AVX family names for the sparse regions of the 0F map
_SSE_0F: dict[int, str] = {
    0x10: "movups", 0x11: "movups", 0x12: "movlps", 0x13: "movlps",
    0x14: "unpcklps", 0x15: "unpckhps", 0x16: "movhps", 0x17: "movhps",
    0x28: "movaps", 0x29: "movaps", 0x2A: "cvtsi2ss", 0x2B: "movntps",
    0x2C: "cvttss2si", 0x2D: "cvtss2si", 0x2E: "ucomiss", 0x2F: "comiss",
    0x50: "movmskps", 0x51: "sqrtps", 0x52: "rsqrtps", 0x53: "rcpps",
    0x54: "andps", 0x55: "andnps", 0x56: "orps", 0x57: "xorps",
    0x58: "addps", 0x59: "mulps", 0x5A: "cvtps2pd", 0x5B: "cvtdq2ps",
    0x5C: "subps", 0x5D: "minps", 0x5E: "divps", 0x5F: "maxps",
    0x60: "punpcklbw", 0x61: "punpcklwd", 0x62: "punpckldq", 0x63: "packsswb",
    0x64: "pcmpgtb", 0x65: "pcmpgtw", 0x66: "pcmpgtd", 0x67: "packuswb",
    0x68: "punpckhbw", 0x69: "punpckhwd", 0x6A: "punpckhdq", 0x6B: "packssdw",
    0x6C: "punpcklqdq", 0x6D: "punpckhqdq", 0x6E: "movd", 0x6F: "movdqa",
    0x70: "pshufd", 0x71: "psrlw", 0x72: "psrld", 0x73: "psrlq",
    0x74: "pcmpeqb", 0x75: "pcmpeqw", 0x76: "pcmpeqd",
    0x7E: "movd", 0x7F: "movdqa",
    0xC2: "cmpps", 0xC3: "movnti", 0xC4: "pinsrw", 0xC5: "pextrw",
    0xC6: "shufps",
    0xD1: "psrlw", 0xD2: "psrld", 0xD3: "psrlq", 0xD4: "paddq",
    0xD5: "pmullw", 0xD6: "movq", 0xD7: "pmovmskb",
    0xD8: "psubusb", 0xD9: "psubusw", 0xDA: "pminub", 0xDB: "pand",
    0xDC: "paddusb", 0xDD: "paddusw", 0xDE: "pmaxub", 0xDF: "pandn",
    0xE0: "pavgb", 0xE1: "psraw", 0xE2: "psrad", 0xE3: "pavgw",
    0xE4: "pmulhuw", 0xE5: "pmulhw", 0xE6: "cvttpd2dq", 0xE7: "movntdq",
    0xE8: "psubsb", 0xE9: "psubsw", 0xEA: "pminsw", 0xEB: "por",
    0xEC: "paddsb", 0xED: "paddsw", 0xEE: "pmaxsw", 0xEF: "pxor",
    0xF1: "psllw", 0xF2: "pslld", 0xF3: "psllq", 0xF4: "pmuludq",
    0xF5: "pmaddwd", 0xF6: "psadbw", 0xF7: "maskmovdqu",
    0xF8: "psubb", 0xF9: "psubw", 0xFA: "psubd", 0xFB: "psubq",
    0xFC: "paddb", 0xFD: "paddw", 0xFE: "paddd",
}

# 0F-map opcodes that carry an imm8 after ModRM
_IMM8_0F = frozenset((0x70, 0x71, 0x72, 0x73, 0xA4, 0xAC, 0xBA, 0xC2, 0xC4, 0xC5, 0xC6))

# 0F-map opcodes without ModRM
_NO_MODRM_0F = {
    0x05: "syscall", 0x06: "clts", 0x07: "sysret", 0x08: "invd",
    0x09: "wbinvd", 0x0B: "ud2", 0x0E: "femms",
    0x30: "wrmsr", 0x31: "rdtsc", 0x32: "rdmsr", 0x33: "rdpmc",
    0x34: "sysenter", 0x35: "sysexit", 0x77: "emms",
    0xA0: "push", 0xA1: "pop", 0xA2: "cpuid", 0xA8: "push", 0xA9: "pop",
    0xAA: "rsm",
}

_MODRM_0F_NAMES = {
    0x00: "#grp6", 0x01: "#grp7", 0x02: "lar", 0x03: "lsl",
    0x0D: "prefetch", 0x10: None, 0x18: "nop", 0x19: "nop", 0x1A: "nop",
    0x1B: "nop", 0x1C: "nop", 0x1D: "nop", 0x1E: "nop", 0x1F: "nop",
    0x20: "mov", 0x21: "mov", 0x22: "mov", 0x23: "mov",
    0x40: "cmov", 0xA3: "bt", 0xA4: "shld", 0xA5: "shld",
    0xAB: "bts", 0xAC: "shrd", 0xAD: "shrd", 0xAE: "#grp15", 0xAF: "imul",
    0xB0: "cmpxchg", 0xB1: "cmpxchg", 0xB2: "lss", 0xB3: "btr",
    0xB4: "lfs", 0xB5: "lgs", 0xB6: "movzx", 0xB7: "movzx",
    0xB8: "popcnt", 0xB9: "ud1", 0xBA: "#grp8", 0xBB: "btc",
    0xBC: "bsf", 0xBD: "bsr", 0xBE: "movsx", 0xBF: "movsx",
    0xC0: "xadd", 0xC1: "xadd", 0xC7: "cmpxchg8b",
}

# mandatory-prefix renames for common scalar/double forms
_PFX_RENAME = {
    (0xF3, 0x10): "movss", (0xF3, 0x11): "movss",
    (0xF2, 0x10): "movsd", (0xF2, 0x11): "movsd",
    (0x66, 0x10): "movupd", (0x66, 0x11): "movupd",
    (0x66, 0x28): "movapd", (0x66, 0x29): "movapd",
    (0xF3, 0x2A): "cvtsi2ss", (0xF2, 0x2A): "cvtsi2sd",
    (0xF3, 0x2C): "cvttss2si", (0xF2, 0x2C): "cvttsd2si",
    (0xF3, 0x2D): "cvtss2si", (0xF2, 0x2D): "cvtsd2si",
    (0x66, 0x2E): "ucomisd", (0x66, 0x2F): "comisd",
    (0xF3, 0x51): "sqrtss", (0xF2, 0x51): "sqrtsd", (0x66, 0x51): "sqrtpd",
    (0x66, 0x54): "andpd", (0x66, 0x55): "andnpd",
    (0x66, 0x56): "orpd", (0x66, 0x57): "xorpd",
    (0xF3, 0x58): "addss", (0xF2, 0x58): "addsd", (0x66, 0x58): "addpd",
    (0xF3, 0x59): "mulss", (0xF2, 0x59): "mulsd", (0x66, 0x59): "mulpd",
    (0xF3, 0x5A): "cvtss2sd", (0xF2, 0x5A): "cvtsd2ss", (0x66, 0x5A): "cvtpd2ps",
    (0xF3, 0x5C): "subss", (0xF2, 0x5C): "subsd", (0x66, 0x5C): "subpd",
    (0xF3, 0x5D): "minss", (0xF2, 0x5D): "minsd", (0x66, 0x5D): "minpd",
    (0xF3, 0x5E): "divss", (0xF2, 0x5E): "divsd", (0x66, 0x5E): "divpd",
    (0xF3, 0x5F): "maxss", (0xF2, 0x5F): "maxsd", (0x66, 0x5F): "maxpd",
    (0xF3, 0x6F): "movdqu", (0xF3, 0x7F): "movdqu",
    (0xF3, 0x7E): "movq", (0x66, 0xD6): "movq",
    (0xF3, 0xC2): "cmpss", (0xF2, 0xC2): "cmpsd",
    (0xF2, 0xE6): "cvtpd2dq", (0xF3, 0xE6): "cvtdq2pd",
    (0xF3, 0xB8): "popcnt", (0xF3, 0xBC): "tzcnt", (0xF3, 0xBD): "lzcnt",
    (0xF3, 0x1E): "nop",  # hint space; FA/FB handled as endbr
}


def _read(data: bytes, pos: int, n: int, addr: int) -> bytes:
    if pos + n > len(data):
        raise DecodeError(addr, "truncated instruction")
    return data[pos : pos + n]


def _modrm_span(data: bytes, pos: int, addr: int, asz: int) -> int:
    """Bytes consumed by ModRM + SIB + displacement."""
    m = _read(data, pos, 1, addr)[0]
    mod, rm = m >> 6, m & 7
    n = 1
    if asz == 16:
        if mod == 0 and rm == 6:
            n += 2
        elif mod == 1:
            n += 1
        elif mod == 2:
            n += 2
        return n
    if mod != 3 and rm == 4:
        sib = _read(data, pos + 1, 1, addr)[0]
        n += 1
        if mod == 0 and (sib & 7) == 5:
            n += 4
    if mod == 0 and rm == 5:
        n += 4
    elif mod == 1:
        n += 1
    elif mod == 2:
        n += 4
    return n


def _imm_size(code: str | None, osz: int, bits: int, rexw: bool, asz: int) -> int:
    if code is None:
        return 0
    if code == "b":
        return 1
    if code == "w":
        return 2
    if code == "z":
        return 2 if osz == 16 else 4
    if code == "v":
        if rexw:
            return 8
        return 2 if osz == 16 else 4
    if code == "p":
        return 2 + (2 if osz == 16 else 4)
    if code == "wb":
        return 3
    if code == "m":
        return asz // 8
    raise AssertionError(code)


def decode_one(data: bytes, pos: int, addr: int, bits: int) -> Insn:
    """Decode the instruction at data[pos]; addr is its virtual address."""
    start = pos
    osz = 32 if bits != 16 else 16
    asz = bits if bits != 16 else 16
    rexw = False
    last_rep = 0  # 0xF2/0xF3 if present
    seg66 = False

    # legacy prefixes
    while True:
        b = _read(data, pos, 1, addr)[0]
        if b in _PREFIXES:
            if b in (0xF2, 0xF3):
                last_rep = b
            elif b == 0x66:
                seg66 = True
                osz = 16
            elif b == 0x67:
                asz = 32 if bits == 64 else (16 if bits == 32 else 32)
            pos += 1
            continue
        break

    # REX (64-bit only)
    if bits == 64:
        while 0x40 <= b <= 0x4F:
            rexw = bool(b & 0x08)
            pos += 1
            b = _read(data, pos, 1, addr)[0]

    # VEX / EVEX
    vex_map = None
    if b == 0xC5 and bits == 64 or (b == 0xC5 and bits == 32 and pos + 1 < len(data) and data[pos + 1] >= 0xC0):
        pos += 2
        vex_map = 1
    elif b == 0xC4 and (bits == 64 or (pos + 1 < len(data) and data[pos + 1] >= 0xC0)):
        vex_map = _read(data, pos + 1, 1, addr)[0] & 0x1F
        pos += 3
    elif b == 0x62 and bits == 64:
        p0 = _read(data, pos + 1, 1, addr)[0]
        vex_map = p0 & 0x07
        pos += 4
    if vex_map is not None:
        op = _read(data, pos, 1, addr)[0]
        pos += 1
        if vex_map == 1:
            return _decode_0f(data, pos, start, addr, op, bits, osz, asz, rexw, last_rep, seg66, vex=True)
        # maps 2/3 mirror 0F38/0F3A: ModRM always, imm8 on map 3
        pos += _modrm_span(data, pos, addr, asz)
        if vex_map == 3:
            pos += 1
        return Insn(addr=addr, size=pos - start, mnemonic="vop")

    op = b
    pos += 1
    if op == 0x0F:
        op2 = _read(data, pos, 1, addr)[0]
        pos += 1
        return _decode_0f(data, pos, start, addr, op2, bits, osz, asz, rexw, last_rep, seg66, vex=False)

    entry = _ONE.get(op)
    if entry is None:
        raise DecodeError(addr, f"opcode {op:#04x}")
    mnem, has_modrm, imm = entry

    # mode-dependent reinterpretations
    if bits == 64:
        if op in (0x06, 0x07, 0x0E, 0x16, 0x17, 0x1E, 0x1F, 0x27, 0x2F,
                  0x37, 0x3F, 0x60, 0x61, 0x82, 0x9A, 0xCE, 0xD4, 0xD5, 0xD6, 0xEA):
            raise DecodeError(addr, f"opcode {op:#04x} invalid in 64-bit mode")
        if op == 0x63:
            mnem = "movsxd"

    reg = None
    if has_modrm:
        reg = (_read(data, pos, 1, addr)[0] >> 3) & 7
        pos += _modrm_span(data, pos, addr, asz)

    # group mnemonics
    if mnem == "#grp1":
        mnem = _GRP1[reg]
    elif mnem == "#grp2":
        mnem = _GRP2[reg]
    elif mnem == "#grp3":
        mnem = _GRP3[reg]
        imm = {"b?": "b", "z?": "z"}[imm] if reg in (0, 1) else None
    elif mnem == "#grp4":
        mnem = ("inc", "dec")[reg] if reg in (0, 1) else "bad"
    elif mnem == "#grp5":
        mnem = _GRP5[reg]
    elif mnem == "#x87":
        mnem = _X87[op]
    if imm in ("b?", "z?"):
        imm = None

    imm_n = _imm_size(imm, osz, bits, rexw, asz)
    imm_pos = pos
    pos += imm_n
    size = pos - start
    if size > 15:
        raise DecodeError(addr, "instruction longer than 15 bytes")

    branch = None
    target = None
    if op == 0xE8:
        branch = "call"
        target = _rel_target(data, imm_pos, imm_n, addr, size)
    elif op in (0xE9, 0xEB):
        branch = "jump"
        target = _rel_target(data, imm_pos, imm_n, addr, size)
    elif 0x70 <= op <= 0x7F:
        mnem = "j" + _CC[op - 0x70]
        branch = "jcond"
        target = _rel_target(data, imm_pos, imm_n, addr, size)
    elif op in (0xE0, 0xE1, 0xE2, 0xE3):
        if op == 0xE3:
            mnem = "jrcxz" if bits == 64 else "jecxz"
        branch = "jcond"
        target = _rel_target(data, imm_pos, imm_n, addr, size)
    elif op in (0xC2, 0xC3, 0xCA, 0xCB, 0xCF):
        branch = "ret"
    elif op == 0xFF:
        if reg in (2, 3):
            branch = "icall"
        elif reg in (4, 5):
            branch = "ijump"
    elif op == 0x9A:
        branch = "icall"  # far direct: no flat target
    elif op == 0xEA:
        branch = "ijump"

    return Insn(addr=addr, size=size, mnemonic=mnem, branch=branch, target=target)


def _decode_0f(
    data, pos, start, addr, op, bits, osz, asz, rexw, last_rep, seg66, vex
):
    mnem = None
    branch = None
    target = None
    has_modrm = True
    imm_n = 0

    if op in (0x38, 0x3A):
        # three-byte maps: opcode, ModRM, imm8 for 0F3A
        op3 = _read(data, pos, 1, addr)[0]
        pos += 1
        pos += _modrm_span(data, pos, addr, asz)
        if op == 0x3A:
            pos += 1
        base = "pext3a" if op == 0x3A else "pext38"
        if op == 0x38 and op3 in (0xF0, 0xF1):
            base = "crc32" if last_rep == 0xF2 else "movbe"
        size = pos - start
        if size > 15:
            raise DecodeError(addr, "instruction longer than 15 bytes")
        return Insn(addr=addr, size=size, mnemonic=base)

    if op in _NO_MODRM_0F:
        mnem = _NO_MODRM_0F[op]
        has_modrm = False
    elif 0x80 <= op <= 0x8F:
        mnem = "j" + _CC[op - 0x80]
        has_modrm = False
        imm_n = 2 if osz == 16 and bits != 64 else 4
    elif 0xC8 <= op <= 0xCF:
        mnem = "bswap"
        has_modrm = False
    elif 0x90 <= op <= 0x9F:
        mnem = "set" + _CC[op - 0x90]
    elif 0x40 <= op <= 0x4F:
        mnem = "cmov" + _CC[op - 0x40]
    elif op == 0x0F:  # 3DNow: ModRM + opcode byte
        span = _modrm_span(data, pos, addr, asz)
        pos += span + 1
        return Insn(addr=addr, size=pos - start, mnemonic="f3dnow")
    else:
        name = _MODRM_0F_NAMES.get(op)
        if name is None:
            name = _SSE_0F.get(op)
        if name is None:
            raise DecodeError(addr, f"opcode 0f {op:#04x}")
        mnem = name

    # mandatory-prefix renames and specials
    if has_modrm is False and op == 0x05 and bits != 64:
        mnem = "syscall"  # same name either mode
    pfx = 0x66 if seg66 else last_rep
    if pfx and (pfx, op) in _PFX_RENAME:
        mnem = _PFX_RENAME[(pfx, op)]

    reg = None
    if has_modrm:
        modrm = _read(data, pos, 1, addr)[0]
        reg = (modrm >> 3) & 7
        if op == 0x1E and last_rep == 0xF3 and modrm in (0xFA, 0xFB):
            pos += 1
            return Insn(addr=addr, size=pos - start,
                        mnemonic="endbr64" if modrm == 0xFA else "endbr32")
        if mnem == "#grp6":
            mnem = "sldt"
        elif mnem == "#grp7":
            mnem = _GRP7[reg] if (modrm >> 6) != 3 else "smsw"
        elif mnem == "#grp8":
            mnem = ("bad", "bad", "bad", "bad", "bt", "bts", "btr", "btc")[reg]
        elif mnem == "#grp15":
            if (modrm >> 6) == 3:
                mnem = {5: "lfence", 6: "mfence", 7: "sfence"}.get(reg, "xmisc")
            else:
                mnem = _GRP15[reg] if reg != 5 else "xrstor"
        elif mnem == "cmov":
            mnem = "cmove"
        pos += _modrm_span(data, pos, addr, asz)
        if op in _IMM8_0F:
            imm_n = 1

    imm_pos = pos
    pos += imm_n
    size = pos - start
    if size > 15:
        raise DecodeError(addr, "instruction longer than 15 bytes")

    if 0x80 <= op <= 0x8F:
        branch = "jcond"
        target = _rel_target(data, imm_pos, imm_n, addr, size)
    elif op == 0x05 and mnem == "syscall":
        branch = None  # falls through; kernel returns
    elif mnem == "ud2":
        branch = "ret"  # trap: no successors

    if vex and mnem and not mnem.startswith(("v", "endbr")):
        mnem = "v" + mnem
    return Insn(addr=addr, size=size, mnemonic=mnem, branch=branch, target=target)


def _rel_target(data: bytes, imm_pos: int, imm_n: int, addr: int, size: int) -> int:
    disp = int.from_bytes(data[imm_pos : imm_pos + imm_n], "little", signed=True)
    return (addr + size + disp) & 0xFFFFFFFFFFFFFFFF


def decode(data: bytes, addr: int, bits: int) -> Iterator[Insn]:
    pos = 0
    while pos < len(data):
        insn = decode_one(data, pos, addr + pos, bits)
        yield insn
        pos += insn.size
