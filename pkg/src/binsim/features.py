"""Numeric function features and the feature store.

Fifty features per function, in three layers:

* 41 control-flow features: block/edge/loop/SCC counts, instruction
  counts per semantic group (plus composites), and size aggregates.
  Block sizes are measured in instructions, loop and SCC sizes in
  blocks.
* 6 call-graph features: caller/callee/import counts, distinct and
  total.
* 3 type features from debug info: argument count, the product of
  per-argument type identifiers, and the return type identifier.
  When a binary has no usable debug info these are stored as
  unavailable (None) rather than zero, and scoring skips them
  pairwise.

The canonical name order below is the on-disk field order for the
JSON-lines store and the CSV export, so diffs stay stable.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .cfg import CallGraph, FunctionCFG, LoopInfo, analyze_loops, build_cfg, build_callgraph
from .disasm import decode
from .errors import DecodeError, EmptyFunction, UnknownFunction
from .groups import GroupTable, load_table
from .groundtruth import FunctionRecord, sanitize
from .loader import LoadedBinary, TypeSignature
from .util import atomic_write_text

# group-count features and the composites derived from them; each name
# maps to the set of groups it sums over
_GROUP_SUMS: dict[str, tuple[str, ...]] = {
    "all": (
        "arith", "data_transfer", "cmp", "logic", "shift", "bitmanip",
        "float", "ctransfer_cond", "ctransfer_uncond", "misc",
    ),
    "arith": ("arith",),
    "arith_shift": ("arith", "shift"),
    "bitmanip": ("bitmanip",),
    "cmp": ("cmp",),
    "ctransfer": ("ctransfer_cond", "ctransfer_uncond"),
    "ctransfer_cond": ("ctransfer_cond",),
    "ctransfer_uncond": ("ctransfer_uncond",),
    "dtransfer": ("data_transfer",),
    "dtransfer_misc": ("data_transfer", "misc"),
    "float": ("float",),
    "logic": ("logic",),
    "misc": ("misc",),
    "shift": ("shift",),
}

_GROUP_ORDER = tuple(sorted(_GROUP_SUMS))

CFG_FEATURES: tuple[str, ...] = (
    "cfg_n_bb",
    "cfg_n_edge",
    "cfg_n_loop",
    "cfg_n_loop_inter",
    "cfg_n_scc",
    "cfg_n_backedge",
    *(f"inst_n_{g}" for g in _GROUP_ORDER),
    "cfg_avg_edges_per_bb",
    "cfg_avg_bb_size",
    "cfg_sum_bb_size",
    "cfg_avg_loop_size",
    "cfg_sum_loop_size",
    "cfg_avg_scc_size",
    "cfg_sum_scc_size",
    *(f"inst_avg_{g}" for g in _GROUP_ORDER),
)

CG_FEATURES: tuple[str, ...] = (
    "cg_n_callers",
    "cg_n_callees",
    "cg_n_imported_callees",
    "cg_n_incoming_calls",
    "cg_n_outgoing_calls",
    "cg_n_imported_calls",
)

TYPE_FEATURES: tuple[str, ...] = ("t_nargs", "t_args", "t_ret")

PRESEMANTIC: tuple[str, ...] = CFG_FEATURES + CG_FEATURES
FEATURE_NAMES: tuple[str, ...] = PRESEMANTIC + TYPE_FEATURES

assert len(CFG_FEATURES) == 41
assert len(FEATURE_NAMES) == 50


def extract_cfg_features(
    cfg: FunctionCFG, loops: LoopInfo, table: GroupTable
) -> dict[str, float]:
    counts = {g: 0 for g in _GROUP_SUMS["all"]}
    for block in cfg.blocks:
        for ins in block.insns:
            counts[table.classify(ins.mnemonic)] += 1

    n_bb = cfg.n_blocks
    bb_sizes = [b.n_insns for b in cfg.blocks]
    loop_sizes = [len(s) for s in loops.loops]
    scc_sizes = [len(s) for s in loops.sccs]

    def avg(xs: Sequence[int]) -> float:
        return sum(xs) / len(xs) if xs else 0.0

    out: dict[str, float] = {
        "cfg_n_bb": n_bb,
        "cfg_n_edge": len(cfg.edges),
        "cfg_n_loop": len(loops.loops),
        "cfg_n_loop_inter": loops.inter_loops,
        "cfg_n_scc": len(loops.sccs),
        "cfg_n_backedge": len(loops.back_edges),
    }
    for g in _GROUP_ORDER:
        out[f"inst_n_{g}"] = sum(counts[p] for p in _GROUP_SUMS[g])
    out["cfg_avg_edges_per_bb"] = len(cfg.edges) / n_bb
    out["cfg_avg_bb_size"] = avg(bb_sizes)
    out["cfg_sum_bb_size"] = sum(bb_sizes)
    out["cfg_avg_loop_size"] = avg(loop_sizes)
    out["cfg_sum_loop_size"] = sum(loop_sizes)
    out["cfg_avg_scc_size"] = avg(scc_sizes)
    out["cfg_sum_scc_size"] = sum(scc_sizes)
    for g in _GROUP_ORDER:
        out[f"inst_avg_{g}"] = out[f"inst_n_{g}"] / n_bb
    return out


def extract_cg_features(graph: CallGraph, fn_addr: int) -> dict[str, float]:
    if fn_addr not in graph.entries:
        raise UnknownFunction(f"address {fn_addr:#x} is not a call-graph node")
    stats = graph.stats(fn_addr)
    return {
        "cg_n_callers": stats.callers,
        "cg_n_callees": stats.callees,
        "cg_n_imported_callees": stats.imported_callees,
        "cg_n_incoming_calls": stats.incoming_calls,
        "cg_n_outgoing_calls": stats.outgoing_calls,
        "cg_n_imported_calls": stats.imported_calls,
    }


def extract_type_features(sig: TypeSignature | None) -> dict[str, float | None]:
    if sig is None:
        return {"t_nargs": None, "t_args": None, "t_ret": None}
    prod = 1
    for t in sig.arg_type_ids:
        prod *= t
    return {"t_nargs": sig.nargs, "t_args": prod, "t_ret": sig.ret_type_id}


@dataclass
class ExtractReport:
    """What happened while extracting one binary."""

    n_functions: int = 0
    n_extracted: int = 0
    decode_failures: list[tuple[str, int, str]] = field(default_factory=list)
    sanitize_drops: dict[str, int] = field(default_factory=dict)


def extract_binary(lb: LoadedBinary) -> tuple[list[FunctionRecord], ExtractReport]:
    """Run the full per-binary pipeline: sanitize symbols, disassemble,
    build CFGs and the call graph, and emit one record per function.

    Functions whose bytes will not decode are dropped and reported, not
    fatal: packed or data-in-text oddities should cost one function,
    not the binary.
    """
    cfg_table = load_table(lb.config.arch)
    report = ExtractReport(n_functions=len(lb.functions))

    candidates = []
    for fn in lb.functions:
        candidates.append(
            FunctionRecord(
                config=lb.config,
                name=fn.name,
                addr=fn.addr,
                source_file=fn.source_file,
                source_line=fn.source_line,
                section=fn.section,
                features={},
            )
        )
    kept, san_report = sanitize(candidates)
    report.sanitize_drops = san_report.drops

    # the call graph covers every recovered function, sanitized or not:
    # callers do not stop existing because they were deduplicated
    raw_by_addr = {fn.addr: fn for fn in lb.functions}
    cfgs: dict[int, FunctionCFG] = {}
    decode_ok: set[int] = set()
    for fn in lb.functions:
        try:
            insns = list(
                decode(fn.data, fn.addr, lb.config.arch, lb.config.bits, lb.config.endianness)
            )
            cfgs[fn.addr] = build_cfg(insns)
            decode_ok.add(fn.addr)
        except (DecodeError, EmptyFunction) as exc:
            report.decode_failures.append((fn.name, fn.addr, str(exc)))

    graph = build_callgraph(
        {addr: c.calls for addr, c in cfgs.items()},
        decode_ok,
        lb.in_plt,
    )

    records: list[FunctionRecord] = []
    for rec in kept:
        cfg = cfgs.get(rec.addr)
        if cfg is None:
            continue
        loops = analyze_loops(cfg)
        feats: dict[str, float | None] = {}
        feats.update(extract_cfg_features(cfg, loops, cfg_table))
        feats.update(extract_cg_features(graph, rec.addr))
        feats.update(extract_type_features(lb.type_signature(raw_by_addr[rec.addr])))
        rec.features = {name: feats[name] for name in FEATURE_NAMES}
        records.append(rec)
    report.n_extracted = len(records)
    return records, report


# -- feature store -----------------------------------------------------------

_CONFIG_FIELDS = (
    "package", "binary", "arch", "bits", "endianness",
    "compiler", "compiler_version", "opt_level", "extra",
)
_IDENTITY_FIELDS = ("name", "addr", "source_file", "source_line")


def record_to_dict(rec: FunctionRecord) -> dict:
    d: dict = {
        "package": rec.config.package,
        "binary": rec.config.binary,
        "arch": rec.config.arch,
        "bits": rec.config.bits,
        "endianness": rec.config.endianness,
        "compiler": rec.config.compiler,
        "compiler_version": rec.config.compiler_version,
        "opt_level": rec.config.opt_level,
        "extra": sorted(rec.config.extra),
        "name": rec.name,
        "addr": rec.addr,
        "source_file": rec.source_file,
        "source_line": rec.source_line,
        "features": {name: rec.features.get(name) for name in FEATURE_NAMES},
    }
    return d


def record_from_dict(d: dict) -> FunctionRecord:
    from .loader import CompileConfig

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
    return FunctionRecord(
        config=cfg,
        name=d["name"],
        addr=int(d["addr"]),
        source_file=d.get("source_file"),
        source_line=d.get("source_line"),
        features=dict(d.get("features", {})),
    )


def write_store(path: str | Path, records: Iterable[FunctionRecord]) -> int:
    """Write records as JSON lines in a stable order; returns the count."""
    recs = sorted(
        records,
        key=lambda r: (
            r.config.package, r.config.binary, r.config.options_key(), r.addr,
        ),
    )
    buf = io.StringIO()
    for rec in recs:
        buf.write(json.dumps(record_to_dict(rec), separators=(",", ":")))
        buf.write("\n")
    atomic_write_text(path, buf.getvalue())
    return len(recs)


def read_store(path: str | Path) -> list[FunctionRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(record_from_dict(json.loads(line)))
    return records


def write_csv(path: str | Path, records: Iterable[FunctionRecord]) -> int:
    """Flat CSV with the same columns and order as the JSON store."""
    recs = sorted(
        records,
        key=lambda r: (
            r.config.package, r.config.binary, r.config.options_key(), r.addr,
        ),
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(_CONFIG_FIELDS) + list(_IDENTITY_FIELDS) + list(FEATURE_NAMES))
    for rec in recs:
        d = record_to_dict(rec)
        row = [
            d["package"], d["binary"], d["arch"], d["bits"], d["endianness"],
            d["compiler"], d["compiler_version"], d["opt_level"],
            "+".join(d["extra"]),
            d["name"], d["addr"],
            d["source_file"] if d["source_file"] is not None else "",
            d["source_line"] if d["source_line"] is not None else "",
        ]
        for name in FEATURE_NAMES:
            v = d["features"][name]
            row.append("" if v is None else v)
        writer.writerow(row)
    atomic_write_text(path, buf.getvalue())
    return len(recs)
