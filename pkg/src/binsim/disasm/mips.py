"""MIPS32/MIPS64 decoder (classic encodings, big or little endian).

Every instruction is one 4-byte word keyed on the 6-bit major opcode,
with SPECIAL/SPECIAL2/SPECIAL3/REGIMM/COP1 sub-tables.  Branches and
jumps carry delay_slot=True so the CFG builder keeps the following
instruction attached to the branching block.  FP mnemonics keep their
dotted format suffix (add.s, c.eq.d) which the group tables route by
the dotted prefix.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import DecodeError
from . import Insn

_SPECIAL = {
    0x00: "sll", 0x02: "srl", 0x03: "sra", 0x04: "sllv", 0x06: "srlv",
    0x07: "srav", 0x0C: "syscall", 0x0D: "break", 0x0F: "sync",
    0x10: "mfhi", 0x11: "mthi", 0x12: "mflo", 0x13: "mtlo",
    0x14: "dsllv", 0x16: "dsrlv", 0x17: "dsrav",
    0x18: "mult", 0x19: "multu", 0x1A: "div", 0x1B: "divu",
    0x1C: "dmult", 0x1D: "dmultu", 0x1E: "ddiv", 0x1F: "ddivu",
    0x20: "add", 0x21: "addu", 0x22: "sub", 0x23: "subu",
    0x24: "and", 0x25: "or", 0x26: "xor", 0x27: "nor",
    0x2A: "slt", 0x2B: "sltu",
    0x2C: "dadd", 0x2D: "daddu", 0x2E: "dsub", 0x2F: "dsubu",
    0x30: "tge", 0x31: "tgeu", 0x32: "tlt", 0x33: "tltu",
    0x34: "teq", 0x36: "tne",
    0x38: "dsll", 0x3A: "dsrl", 0x3B: "dsra",
    0x3C: "dsll32", 0x3E: "dsrl32", 0x3F: "dsra32",
}

_SPECIAL2 = {0x00: "madd", 0x01: "maddu", 0x02: "mul", 0x04: "msub",
             0x05: "msubu", 0x20: "clz", 0x21: "clo"}

_OPCODE = {
    0x08: "addi", 0x09: "addiu", 0x0A: "slti", 0x0B: "sltiu",
    0x0C: "andi", 0x0D: "ori", 0x0E: "xori", 0x0F: "lui",
    0x18: "daddi", 0x19: "daddiu", 0x1A: "ldl", 0x1B: "ldr",
    0x20: "lb", 0x21: "lh", 0x22: "lwl", 0x23: "lw",
    0x24: "lbu", 0x25: "lhu", 0x26: "lwr", 0x27: "lwu",
    0x28: "sb", 0x29: "sh", 0x2A: "swl", 0x2B: "sw",
    0x2C: "sdl", 0x2D: "sdr", 0x2E: "swr", 0x2F: "cache",
    0x30: "ll", 0x31: "lwc1", 0x32: "lwc2", 0x33: "pref",
    0x34: "lld", 0x35: "ldc1", 0x36: "ldc2", 0x37: "ld",
    0x38: "sc", 0x39: "swc1", 0x3A: "swc2",
    0x3C: "scd", 0x3D: "sdc1", 0x3E: "sdc2", 0x3F: "sd",
}

_FP_FMT = {16: ".s", 17: ".d", 20: ".w", 21: ".l", 22: ".ps"}

_FP_FUNCT = {
    0x00: "add", 0x01: "sub", 0x02: "mul", 0x03: "div",
    0x04: "sqrt", 0x05: "abs", 0x06: "mov", 0x07: "neg",
    0x08: "round", 0x09: "trunc", 0x0A: "ceil", 0x0B: "floor",
    0x0C: "round", 0x0D: "trunc", 0x0E: "ceil", 0x0F: "floor",
    0x11: "movc", 0x12: "movz", 0x13: "movn",
    0x15: "recip", 0x16: "rsqrt",
    0x20: "cvt", 0x21: "cvt", 0x24: "cvt", 0x25: "cvt",
}


def decode(data: bytes, addr: int, bits: int, little: bool) -> Iterator[Insn]:
    pos = 0
    while pos + 4 <= len(data):
        yield _decode_one(
            int.from_bytes(data[pos : pos + 4], "little" if little else "big"),
            addr + pos,
        )
        pos += 4
    if pos != len(data):
        raise DecodeError(addr + pos, "trailing bytes (not a 4-byte multiple)")


def _sign16(v: int) -> int:
    return v - 0x10000 if v & 0x8000 else v


def _branch_target(addr: int, imm16: int) -> int:
    return (addr + 4 + (_sign16(imm16) << 2)) & 0xFFFFFFFFFFFFFFFF


def _decode_one(w: int, addr: int) -> Insn:
    op = w >> 26
    rs = (w >> 21) & 0x1F
    rt = (w >> 16) & 0x1F
    imm16 = w & 0xFFFF

    if op == 0:
        funct = w & 0x3F
        if funct == 0x08:  # jr
            branch = "ret" if rs == 31 else "ijump"
            return Insn(addr, 4, "jr", branch, None, delay_slot=True)
        if funct == 0x09:  # jalr
            return Insn(addr, 4, "jalr", "icall", None, delay_slot=True)
        if funct in (0x0A, 0x0B):
            return Insn(addr, 4, "movz" if funct == 0x0A else "movn")
        if funct == 0x01:  # MOVCI: move on FP condition flag
            return Insn(addr, 4, "movt" if rt & 1 else "movf")
        name = _SPECIAL.get(funct)
        if name is None:
            raise DecodeError(addr, f"SPECIAL funct {funct:#04x}")
        if w == 0:
            name = "nop"
        elif name == "or" and rt == 0:
            name = "move"
        return Insn(addr, 4, name)

    if op == 1:  # REGIMM
        names = {0x00: "bltz", 0x01: "bgez", 0x02: "bltzl", 0x03: "bgezl",
                 0x10: "bltzal", 0x11: "bgezal", 0x12: "bltzall", 0x13: "bgezall"}
        name = names.get(rt)
        if name is None:
            return Insn(addr, 4, "tge")  # trap immediates
        target = _branch_target(addr, imm16)
        if name in ("bltzal", "bgezal", "bltzall", "bgezall"):
            if name == "bgezal" and rs == 0:
                return Insn(addr, 4, "bal", "call", target, delay_slot=True)
            return Insn(addr, 4, name, "call", target, delay_slot=True)
        return Insn(addr, 4, name, "jcond", target, delay_slot=True)

    if op in (2, 3):  # j / jal
        target = ((addr + 4) & ~0x0FFFFFFF) | ((w & 0x3FFFFFF) << 2)
        if op == 2:
            return Insn(addr, 4, "j", "jump", target, delay_slot=True)
        return Insn(addr, 4, "jal", "call", target, delay_slot=True)

    if op in (4, 5, 20, 21):  # beq/bne (+likely)
        name = "beq" if op in (4, 20) else "bne"
        target = _branch_target(addr, imm16)
        if op == 4 and rs == 0 and rt == 0:
            return Insn(addr, 4, "b", "jump", target, delay_slot=True)
        if rt == 0:
            name += "z"
        if op >= 20:
            name += "l"
        return Insn(addr, 4, name, "jcond", target, delay_slot=True)

    if op in (6, 7, 22, 23):  # blez/bgtz (+likely)
        name = "blez" if op in (6, 22) else "bgtz"
        if op >= 22:
            name += "l"
        return Insn(addr, 4, name, "jcond", _branch_target(addr, imm16), delay_slot=True)

    if op == 0x10 or op == 0x12:  # COP0/COP2
        return Insn(addr, 4, "mfc0" if (w >> 23) & 1 == 0 else "mtc0")

    if op == 0x11:  # COP1
        if rs == 0x08:  # BC1: FP condition branch
            name = "bc1t" if rt & 1 else "bc1f"
            return Insn(addr, 4, name, "jcond", _branch_target(addr, imm16), delay_slot=True)
        if rs in (0x00, 0x04):
            return Insn(addr, 4, "mfc1" if rs == 0 else "mtc1")
        if rs in (0x01, 0x05):
            return Insn(addr, 4, "dmfc1" if rs == 1 else "dmtc1")
        if rs in (0x02, 0x06):
            return Insn(addr, 4, "cfc1" if rs == 2 else "ctc1")
        fmt = _FP_FMT.get(rs, ".s")
        funct = w & 0x3F
        if 0x30 <= funct <= 0x3F:
            conds = ("f", "un", "eq", "ueq", "olt", "ult", "ole", "ule",
                     "sf", "ngle", "seq", "ngl", "lt", "nge", "le", "ngt")
            return Insn(addr, 4, "c." + conds[funct - 0x30] + fmt)
        base = _FP_FUNCT.get(funct, "fop")
        return Insn(addr, 4, base + fmt)

    if op == 0x13:  # COP1X: indexed FP loads + madd.fmt
        return Insn(addr, 4, "madd.s")

    if op == 0x1C:  # SPECIAL2
        name = _SPECIAL2.get(w & 0x3F)
        return Insn(addr, 4, name if name else "mul")

    if op == 0x1F:  # SPECIAL3
        funct = w & 0x3F
        if funct == 0x00:
            return Insn(addr, 4, "ext")
        if funct == 0x04:
            return Insn(addr, 4, "ins")
        if funct == 0x20:  # BSHFL: seb/seh/wsbh
            sa = (w >> 6) & 0x1F
            return Insn(addr, 4, {0x02: "wsbh", 0x10: "seb", 0x18: "seh"}.get(sa, "bshfl"))
        if funct == 0x3B:
            return Insn(addr, 4, "rdhwr")
        return Insn(addr, 4, "ext")

    name = _OPCODE.get(op)
    if name is None:
        raise DecodeError(addr, f"opcode {op:#04x}")
    return Insn(addr, 4, name)
