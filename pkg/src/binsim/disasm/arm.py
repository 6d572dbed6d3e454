"""ARM decoders: A32 (classic 4-byte encodings) and AArch64.

Fixed-width decoding keyed on the major encoding classes.  Mnemonics
are as precise as grouping needs: exact for ALU/branch/load-store,
family names for the long tail.  NEON/VFP instructions carry a v
prefix (vadd, vldr) and scalar FP its f names (fadd), matching how the
group tables route float work by prefix.  Thumb is out of scope: the
toolchain configs used here emit A32.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import DecodeError
from . import Insn

_A32_COND = (
    "eq", "ne", "cs", "cc", "mi", "pl", "vs", "vc",
    "hi", "ls", "ge", "lt", "gt", "le", "", "",
)

_A32_DP = (
    "and", "eor", "sub", "rsb", "add", "adc", "sbc", "rsc",
    "tst", "teq", "cmp", "cmn", "orr", "mov", "bic", "mvn",
)

_A64_COND = (
    "eq", "ne", "cs", "cc", "mi", "pl", "vs", "vc",
    "hi", "ls", "ge", "lt", "gt", "le", "al", "nv",
)


def _word(data: bytes, pos: int, addr: int, little: bool) -> int:
    if pos + 4 > len(data):
        raise DecodeError(addr, "truncated word")
    return int.from_bytes(data[pos : pos + 4], "little" if little else "big")


def _signed(value: int, bits: int) -> int:
    if value & (1 << (bits - 1)):
        value -= 1 << bits
    return value


# -- A32 --------------------------------------------------------------------


def decode_arm32(data: bytes, addr: int, little: bool) -> Iterator[Insn]:
    pos = 0
    while pos + 4 <= len(data):
        yield _decode_a32_one(_word(data, pos, addr + pos, little), addr + pos)
        pos += 4
    if pos != len(data):
        raise DecodeError(addr + pos, "trailing bytes (not a 4-byte multiple)")


def _decode_a32_one(w: int, addr: int) -> Insn:
    cond = (w >> 28) & 0xF
    suffix = _A32_COND[cond]
    op1 = (w >> 25) & 0x7

    if cond == 0xF:
        # unconditional space: BLX imm, PLD, NEON, barriers
        if (w >> 25) & 0x7 == 0x5:  # BLX <imm>
            off = _signed(w & 0xFFFFFF, 24) << 2
            return Insn(addr, 4, "blx", "call", (addr + 8 + off) & 0xFFFFFFFF)
        if (w >> 20) & 0xFF in (0x57,):  # barriers: dmb/dsb/isb
            return Insn(addr, 4, "dmb")
        if (w >> 24) & 0xF in (0xF, 0xE, 0xD, 0xC, 0x4, 0x5, 0x6, 0x7, 0x2, 0x3):
            return Insn(addr, 4, "vop")  # NEON / pld family
        return Insn(addr, 4, "vop")

    # branches first: bits 27-25 = 101
    if op1 == 0x5:
        link = bool(w & (1 << 24))
        off = _signed(w & 0xFFFFFF, 24) << 2
        target = (addr + 8 + off) & 0xFFFFFFFF
        if link:
            return Insn(addr, 4, "bl" + suffix, "call", target)
        if cond == 0xE:
            return Insn(addr, 4, "b", "jump", target)
        return Insn(addr, 4, "b" + suffix, "jcond", target)

    # media/misc region with bit7/bit4 set: BX/BLX reg, CLZ, mul, extras
    if op1 == 0 and (w >> 4) & 0xF == 0x1 and (w >> 20) & 0xFF == 0x12:
        rm = w & 0xF
        name = "bx" + suffix
        branch = "ret" if rm == 14 and cond == 0xE else ("ijump" if cond == 0xE else "jcond")
        return Insn(addr, 4, name, branch, None)
    if op1 == 0 and (w >> 4) & 0xF == 0x3 and (w >> 20) & 0xFF == 0x12:
        return Insn(addr, 4, "blx" + suffix, "icall", None)

    if op1 in (0, 1):
        # data processing / multiplies / halfword transfers
        if op1 == 0 and (w >> 4) & 0x9 == 0x9:
            hi = (w >> 20) & 0x1F
            low = (w >> 4) & 0xF
            if low == 0x9:
                if hi in (0x00, 0x01):
                    return Insn(addr, 4, "mul" + suffix)
                if hi in (0x02, 0x03):
                    return Insn(addr, 4, "mla" + suffix)
                if 0x08 <= hi <= 0x0F:
                    name = ("umull", "umlal", "smull", "smlal")[(hi >> 1) & 3]
                    return Insn(addr, 4, name + suffix)
                if hi in (0x10, 0x14):
                    return Insn(addr, 4, "swp" + suffix)
                if 0x18 <= hi <= 0x1F:
                    return Insn(addr, 4, ("strex" if hi & 1 == 0 else "ldrex") + suffix)
                return Insn(addr, 4, "mul" + suffix)
            # halfword/doubleword loads/stores: ldrh/strh/ldrsb/ldrsh/ldrd/strd
            load = bool(w & (1 << 20))
            return Insn(addr, 4, ("ldrh" if load else "strh") + suffix)
        opcode = (w >> 21) & 0xF
        sets_flags = bool(w & (1 << 20))
        name = _A32_DP[opcode]
        if name in ("tst", "teq", "cmp", "cmn") and not sets_flags:
            if op1 == 1:
                # immediate row without S: movw/movt, msr imm, hints
                if opcode == 0x8:
                    return Insn(addr, 4, "movw" + suffix)
                if opcode == 0xA:
                    return Insn(addr, 4, "movt" + suffix)
                if opcode == 0x9 and (w >> 16) & 0xF == 0:
                    return Insn(addr, 4, "nop")  # nop/yield/wfe hint space
                return Insn(addr, 4, "msr" + suffix)
            # register row without S: MRS/MSR/CLZ/misc space
            if (w >> 4) & 0xF == 0x1 and (w >> 16) & 0xF == 0xF:
                return Insn(addr, 4, "clz" + suffix)
            return Insn(addr, 4, "msr" + suffix)
        if name == "mov" and op1 == 0:
            # mov rd, rm <shift> is the standalone-shift spelling; keep
            # the shift name so the shift counts survive
            imm5 = (w >> 7) & 0x1F
            stype = (w >> 5) & 0x3
            by_reg = bool(w & (1 << 4))
            if by_reg or imm5 or stype:
                if stype == 3 and not by_reg and imm5 == 0:
                    name = "rrx"
                else:
                    name = ("lsl", "lsr", "asr", "ror")[stype]
        mnem = name + suffix
        # mov pc, lr = return; any write to pc redirects control
        rd = (w >> 12) & 0xF
        if rd == 15 and name not in ("tst", "teq", "cmp", "cmn"):
            rm = w & 0xF
            if name == "mov" and rm == 14 and cond == 0xE:
                return Insn(addr, 4, mnem, "ret", None)
            return Insn(addr, 4, mnem, "ijump" if cond == 0xE else "jcond", None)
        return Insn(addr, 4, mnem)

    if op1 in (2, 3):
        # word/byte load-store (register offset when op1=3 and bit4=0)
        if op1 == 3 and w & (1 << 4):
            # media instructions: sxtb/uxtb/bfi/ubfx/...
            sbz = (w >> 20) & 0x1F
            if sbz in (0x1A, 0x1E, 0x1B, 0x1F):
                return Insn(addr, 4, "bfi" + suffix)
            return Insn(addr, 4, "uxt" + suffix)
        load = bool(w & (1 << 20))
        byte = bool(w & (1 << 22))
        rt = (w >> 12) & 0xF
        name = ("ldr" if load else "str") + ("b" if byte else "")
        if load and rt == 15:
            # ldr pc, [...]: jump-table dispatch or tail
            return Insn(addr, 4, name + suffix, "ijump" if cond == 0xE else "jcond", None)
        return Insn(addr, 4, name + suffix)

    if op1 == 4:
        # block transfer: ldm/stm, push/pop
        load = bool(w & (1 << 20))
        reglist = w & 0xFFFF
        name = "ldm" if load else "stm"
        if load and reglist & (1 << 15):
            # pop including pc = return
            return Insn(addr, 4, name + suffix, "ret" if cond == 0xE else "jcond", None)
        return Insn(addr, 4, name + suffix)

    if op1 == 6:
        # coprocessor loads/stores: vldr/vstr live here
        load = bool(w & (1 << 20))
        return Insn(addr, 4, ("vldr" if load else "vstr") + suffix)

    if op1 == 7:
        if w & (1 << 24):
            return Insn(addr, 4, "svc" + suffix)
        # cdp/mcr/mrc and VFP data processing
        coproc = (w >> 8) & 0xF
        if coproc in (10, 11):
            return Insn(addr, 4, "vadd" + suffix)  # VFP dataproc family
        if w & (1 << 4):
            return Insn(addr, 4, ("mrc" if w & (1 << 20) else "mcr") + suffix)
        return Insn(addr, 4, "cdp" + suffix)

    return Insn(addr, 4, "udf")


# -- AArch64 ----------------------------------------------------------------


def decode_aarch64(data: bytes, addr: int, little: bool) -> Iterator[Insn]:
    pos = 0
    while pos + 4 <= len(data):
        yield _decode_a64_one(_word(data, pos, addr + pos, little), addr + pos)
        pos += 4
    if pos != len(data):
        raise DecodeError(addr + pos, "trailing bytes (not a 4-byte multiple)")


def _decode_a64_one(w: int, addr: int) -> Insn:
    op0 = (w >> 25) & 0xF

    # -- branches / exceptions / system: op0 = 101x
    if op0 in (0xA, 0xB):
        top = w >> 26
        if top & 0x1F == 0x05:  # B / BL (bit31 = link)
            off = _signed(w & 0x3FFFFFF, 26) << 2
            target = (addr + off) & 0xFFFFFFFFFFFFFFFF
            if w >> 31:
                return Insn(addr, 4, "bl", "call", target)
            return Insn(addr, 4, "b", "jump", target)
        if (w >> 24) & 0xFF == 0x54:  # B.cond
            off = _signed((w >> 5) & 0x7FFFF, 19) << 2
            cond = _A64_COND[w & 0xF]
            return Insn(addr, 4, "b." + cond, "jcond", (addr + off) & 0xFFFFFFFFFFFFFFFF)
        if (w >> 25) & 0x3F == 0x1A:  # CBZ/CBNZ
            off = _signed((w >> 5) & 0x7FFFF, 19) << 2
            name = "cbnz" if w & (1 << 24) else "cbz"
            return Insn(addr, 4, name, "jcond", (addr + off) & 0xFFFFFFFFFFFFFFFF)
        if (w >> 25) & 0x3F == 0x1B:  # TBZ/TBNZ
            off = _signed((w >> 5) & 0x3FFF, 14) << 2
            name = "tbnz" if w & (1 << 24) else "tbz"
            return Insn(addr, 4, name, "jcond", (addr + off) & 0xFFFFFFFFFFFFFFFF)
        if (w >> 25) & 0x7F == 0x6B:  # unconditional branch (register)
            opc = (w >> 21) & 0xF
            if opc == 0:
                return Insn(addr, 4, "br", "ijump", None)
            if opc == 1:
                return Insn(addr, 4, "blr", "icall", None)
            if opc == 2:
                return Insn(addr, 4, "ret", "ret", None)
            return Insn(addr, 4, "eret", "ret", None)
        if (w >> 24) & 0xFF == 0xD4:  # exception generation
            typ = (w >> 21) & 0x7
            ll = w & 0x3
            if typ == 0 and ll == 1:
                return Insn(addr, 4, "svc")
            if typ == 1:
                return Insn(addr, 4, "brk", "ret", None)
            return Insn(addr, 4, "hlt", "ret", None)
        if (w >> 22) & 0x3FF == 0x354:  # system: hints, barriers, MSR/MRS
            if (w >> 12) & 0xFFF == 0x032 and (w & 0xFE0) == 0:
                return Insn(addr, 4, "nop")
            crn = (w >> 12) & 0xF
            if crn == 3:
                return Insn(addr, 4, "dmb")
            return Insn(addr, 4, "msr")
        if (w >> 19) & 0x7FF in (0x6A9, 0x6AD):
            return Insn(addr, 4, "msr")
        return Insn(addr, 4, "sys")

    # -- data processing immediate: op0 = 100x
    if op0 in (0x8, 0x9):
        grp = (w >> 23) & 0x7
        if grp in (0, 1):  # PC-relative
            return Insn(addr, 4, "adrp" if w >> 31 else "adr")
        if grp in (2, 3):  # add/sub immediate
            name = "sub" if w & (1 << 30) else "add"
            if w & (1 << 29):  # setting flags
                rd = w & 0x1F
                if rd == 31:
                    return Insn(addr, 4, "cmn" if name == "add" else "cmp")
                name += "s"
            return Insn(addr, 4, name)
        if grp == 4:  # logical immediate
            opc = (w >> 29) & 0x3
            name = ("and", "orr", "eor", "ands")[opc]
            if name == "ands" and (w & 0x1F) == 31:
                return Insn(addr, 4, "tst")
            return Insn(addr, 4, name)
        if grp == 5:  # move wide
            opc = (w >> 29) & 0x3
            return Insn(addr, 4, ("movn", "mov", "movz", "movk")[opc])
        if grp == 6:  # bitfield; shift-immediate and extend spellings are
            # sbfm/ubfm aliases and the shift counts want the real names
            opc = (w >> 29) & 0x3
            immr = (w >> 16) & 0x3F
            imms = (w >> 10) & 0x3F
            top = 63 if w >> 31 else 31
            if opc == 2:  # ubfm
                if imms == top:
                    return Insn(addr, 4, "lsr")
                if imms + 1 == immr:
                    return Insn(addr, 4, "lsl")
                if immr == 0 and imms in (7, 15):
                    return Insn(addr, 4, "uxt")
                return Insn(addr, 4, "ubfm")
            if opc == 0:  # sbfm
                if imms == top:
                    return Insn(addr, 4, "asr")
                if immr == 0 and imms in (7, 15, 31):
                    return Insn(addr, 4, "sxt")
                return Insn(addr, 4, "sbfm")
            return Insn(addr, 4, "bfm")
        # extr; with both sources equal it is ror-immediate
        if (w >> 16) & 0x1F == (w >> 5) & 0x1F:
            return Insn(addr, 4, "ror")
        return Insn(addr, 4, "extr")

    # -- loads/stores: op0 = x1x0
    if op0 & 0x5 == 0x4:
        simd = bool(w & (1 << 26))
        # load/store pair: bits 29-27 = 101
        if (w >> 27) & 0x7 == 0x5 and ((w >> 23) & 0x3) != 0x3 or (w >> 28) & 0x3 == 0x2:
            load = bool(w & (1 << 22))
            name = "ldp" if load else "stp"
            return Insn(addr, 4, ("v" + name) if simd else name)
        load_opc = (w >> 22) & 0x3
        name = "str" if load_opc == 0 else "ldr"
        return Insn(addr, 4, ("v" + name) if simd else name)

    # -- data processing register: op0 = x101
    if op0 & 0x7 == 0x5:
        if (w >> 28) & 0x1 and (w >> 24) & 0x1:  # 3-source
            o0 = (w >> 15) & 1
            return Insn(addr, 4, "msub" if o0 else "madd")
        if (w >> 24) & 0x1F == 0x0A:  # logical shifted register
            opc = (w >> 29) & 0x3
            neg = bool(w & (1 << 21))
            names = (("and", "bic"), ("orr", "orn"), ("eor", "eon"), ("ands", "bics"))
            name = names[opc][int(neg)]
            if name == "orr" and (w >> 5) & 0x1F == 31 and ((w >> 10) & 0x3F) == 0:
                name = "mov"
            if name == "ands" and (w & 0x1F) == 31:
                name = "tst"
            return Insn(addr, 4, name)
        if (w >> 24) & 0x1F == 0x0B:  # add/sub register
            name = "sub" if w & (1 << 30) else "add"
            if w & (1 << 29):
                rd = w & 0x1F
                if rd == 31:
                    return Insn(addr, 4, "cmn" if name == "add" else "cmp")
                name += "s"
            return Insn(addr, 4, name)
        if (w >> 21) & 0xF == 0x6 and (w >> 28) & 1:  # 2-source / 1-source
            if (w >> 30) & 1 and (w >> 29) & 1 == 0 and (w >> 10) and False:
                pass
            if w & (1 << 30):  # 1-source: rbit/rev/clz/cls
                opc = (w >> 10) & 0x3F
                return Insn(addr, 4, ("rbit", "rev16", "rev", "rev", "clz", "cls")[min(opc, 5)])
            opcode = (w >> 10) & 0x3F
            if opcode in (2, 3):
                return Insn(addr, 4, "udiv" if opcode == 2 else "sdiv")
            if 8 <= opcode <= 11:
                return Insn(addr, 4, ("lsl", "lsr", "asr", "ror")[opcode - 8])
            return Insn(addr, 4, "crc32")
        if (w >> 21) & 0x7 == 0x2 and (w >> 10) & 0x3 in (0, 1, 2, 3) and (w >> 24) & 0x1F == 0x1A:
            sub = (w >> 10) & 0x3F
            if (w >> 21) & 0x7 == 2:
                return Insn(addr, 4, "ccmp")
        if (w >> 24) & 0x1F == 0x1A:
            grp2 = (w >> 21) & 0x7
            if grp2 in (0,):
                return Insn(addr, 4, "adc" if not w & (1 << 30) else "sbc")
            if grp2 == 2:
                return Insn(addr, 4, "ccmp" if w & (1 << 30) else "ccmn")
            if grp2 == 4:
                opc2 = (w >> 10) & 0x3
                names = ("csel", "csinc", "csinv", "csneg")
                idx = (int(bool(w & (1 << 30))) << 1) | (opc2 & 1)
                return Insn(addr, 4, names[idx])
        return Insn(addr, 4, "dpreg")

    # -- data processing SIMD & FP: op0 = x111
    if op0 & 0x7 == 0x7:
        # scalar FP ops sit in the 11110 class with bit 28 set
        if (w >> 24) & 0x1F in (0x1E, 0x1F):
            typ = (w >> 22) & 0x3
            if (w >> 21) & 1 and (w >> 10) & 0x3 == 0x2 and False:
                pass
            opcode = (w >> 12) & 0xF
            if (w >> 21) & 1:
                names = {0: "fmul", 1: "fdiv", 2: "fadd", 3: "fsub",
                         4: "fmax", 5: "fmin", 6: "fmaxnm", 7: "fminnm", 8: "fnmul"}
                if (w >> 10) & 0x3 == 0x2:
                    return Insn(addr, 4, names.get((w >> 12) & 0xF, "fop"))
                if (w >> 10) & 0x3F == 0x10:
                    one = (w >> 15) & 0x3F
                    return Insn(addr, 4, {0: "fmov", 1: "fabs", 2: "fneg", 3: "fsqrt"}.get(one & 3, "fcvt"))
                if (w >> 10) & 0xF == 0x8:
                    return Insn(addr, 4, "fcmp")
                if (w >> 10) & 0x3 == 0x1:
                    return Insn(addr, 4, "fccmp")
                if (w >> 10) & 0x3 == 0x3:
                    return Insn(addr, 4, "fcsel")
                return Insn(addr, 4, "fcvt")
            return Insn(addr, 4, "fcvt" if (w >> 16) & 0x7 else "fmov")
        return Insn(addr, 4, "vadd")  # vector integer/poly families

    if op0 == 0x0 or op0 == 0x2:
        return Insn(addr, 4, "udf")
    return Insn(addr, 4, "unk")
