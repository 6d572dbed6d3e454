"""Per-architecture instruction decoders.

Decoders recover what the feature pipeline needs and no more:
instruction boundaries, a mnemonic precise enough for group
classification, and branch/call semantics (kind + direct target).
Operand values, register allocation, and prefixes-as-semantics are out
of scope on purpose.

Branch kinds:
    jump   direct unconditional jump (target known)
    jcond  direct conditional jump (target known, falls through)
    ijump  indirect or far jump (no static target)
    call   direct call (target known)
    icall  indirect call
    ret    return / terminal (no successors)

A decoder yields Insn items in address order and raises DecodeError on
bytes it cannot decode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import DecodeError, UnsupportedArch


@dataclass(frozen=True)
class Insn:
    addr: int
    size: int
    mnemonic: str
    branch: str | None = None
    target: int | None = None
    delay_slot: bool = False  # a delay slot follows (MIPS)


def decode(
    data: bytes, addr: int, arch: str, bits: int, endianness: str
) -> Iterator[Insn]:
    """Dispatch to the right decoder; yields Insn in address order."""
    little = endianness == "little"
    if arch == "x86_64":
        arch, bits = "x86", 64
    elif arch == "aarch64":
        arch, bits = "arm", 64
    if arch == "x86":
        from . import x86

        return x86.decode(data, addr, bits)
    if arch == "arm" and bits == 32:
        from . import arm

        return arm.decode_arm32(data, addr, little)
    if arch == "arm" and bits == 64:
        from . import arm

        return arm.decode_aarch64(data, addr, little)
    if arch == "mips":
        from . import mips

        return mips.decode(data, addr, bits, little)
    raise UnsupportedArch(f"no decoder for {arch}/{bits}")


__all__ = ["Insn", "decode", "DecodeError"]
