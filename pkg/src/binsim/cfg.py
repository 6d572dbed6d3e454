"""Control-flow recovery: basic blocks, loops, SCCs, and call graphs.

Blocks are built from a decoded instruction list.  Calls do not end
blocks (matching how mainstream disassemblers carve functions), and a
branch whose target lies outside the function contributes no edge.  On
MIPS the delay-slot instruction is absorbed into the branching block so
the partition matches what actually executes together.

Loop structure follows the classic recipe: iterative dominators from
the entry, back edge (t, h) iff h dominates t, natural loops collected
backward from t and merged when they share a header.  SCCs come from
Tarjan's algorithm over every block, singletons included; unreachable
blocks are excluded from dominance but still appear in block totals
and in the SCC partition.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .disasm import Insn
from .errors import EmptyFunction

_TERMINATORS = frozenset(("jump", "jcond", "ijump", "ret"))
_CALL_KINDS = frozenset(("call", "icall"))


@dataclass
class BasicBlock:
    index: int
    insns: list[Insn]

    @property
    def start(self) -> int:
        return self.insns[0].addr

    @property
    def end(self) -> int:
        last = self.insns[-1]
        return last.addr + last.size

    @property
    def n_insns(self) -> int:
        return len(self.insns)


@dataclass
class FunctionCFG:
    entry: int
    blocks: list[BasicBlock]
    edges: tuple[tuple[int, int], ...]  # (from-block, to-block), sorted, dedup
    calls: list[Insn] = field(default_factory=list)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def successors(self) -> list[list[int]]:
        succ: list[list[int]] = [[] for _ in self.blocks]
        for a, b in self.edges:
            succ[a].append(b)
        return succ

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.blocks]
        for a, b in self.edges:
            pred[b].append(a)
        return pred


def build_cfg(insns: Sequence[Insn]) -> FunctionCFG:
    """Partition a function's instructions into blocks and wire edges."""
    if not insns:
        raise EmptyFunction("cannot build a CFG from zero instructions")

    starts = {ins.addr for ins in insns}

    # a terminator's span may include the following delay-slot
    # instruction; record the index of the last instruction of each span
    span_end: dict[int, int] = {}  # index of branch insn -> index of span end
    absorbed: set[int] = set()  # addrs living inside a delay slot
    n = len(insns)
    for i, ins in enumerate(insns):
        if ins.branch in _TERMINATORS:
            end = i
            if ins.delay_slot and i + 1 < n:
                end = i + 1
                absorbed.add(insns[i + 1].addr)
            span_end[i] = end

    leaders = {insns[0].addr}
    for i, ins in enumerate(insns):
        if i in span_end:
            if ins.branch in ("jump", "jcond") and ins.target is not None:
                t = ins.target
                if t in starts and t not in absorbed:
                    leaders.add(t)
            nxt = span_end[i] + 1
            if nxt < n:
                leaders.add(insns[nxt].addr)

    blocks: list[BasicBlock] = []
    cur: list[Insn] = []
    close_after = -1
    for i, ins in enumerate(insns):
        if cur and ins.addr in leaders and i > close_after:
            blocks.append(BasicBlock(len(blocks), cur))
            cur = []
        cur.append(ins)
        if i in span_end:
            close_after = span_end[i]
        if i == close_after:
            blocks.append(BasicBlock(len(blocks), cur))
            cur = []
            close_after = -1
    if cur:
        blocks.append(BasicBlock(len(blocks), cur))

    block_at = {b.start: b.index for b in blocks}
    edges: set[tuple[int, int]] = set()
    for b in blocks:
        branch_ins = None
        for ins in b.insns[-2:]:
            if ins.branch in _TERMINATORS:
                branch_ins = ins
        here = b.index
        if branch_ins is None:
            if here + 1 < len(blocks):
                edges.add((here, here + 1))
            continue
        kind = branch_ins.branch
        if kind in ("jump", "jcond") and branch_ins.target is not None:
            t = block_at.get(branch_ins.target)
            if t is not None:
                edges.add((here, t))
        if kind == "jcond" and here + 1 < len(blocks):
            edges.add((here, here + 1))

    calls = [ins for ins in insns if ins.branch in _CALL_KINDS]
    # tail transfers: an unconditional jump out of the function body acts
    # as call plus return in one, so hand it to the call graph as well
    for ins in insns:
        if ins.branch == "jump" and ins.target is not None \
                and ins.target not in block_at:
            calls.append(ins)
    return FunctionCFG(
        entry=insns[0].addr,
        blocks=blocks,
        edges=tuple(sorted(edges)),
        calls=calls,
    )


@dataclass
class LoopInfo:
    back_edges: tuple[tuple[int, int], ...]
    loops: tuple[frozenset[int], ...]  # merged per header, sorted by header
    inter_loops: int
    sccs: tuple[frozenset[int], ...]


def _dominators(n: int, succ: list[list[int]], pred: list[list[int]]) -> list[int]:
    """Bitmask dominator sets over the reachable subgraph; unreachable
    nodes get an empty mask."""
    reach = [False] * n
    order: list[int] = []
    stack = [0]
    reach[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in succ[v]:
            if not reach[w]:
                reach[w] = True
                stack.append(w)

    full = (1 << n) - 1
    dom = [0] * n
    for v in range(n):
        if reach[v]:
            dom[v] = full
    dom[0] = 1
    changed = True
    while changed:
        changed = False
        for v in order:
            if v == 0:
                continue
            acc = full
            for p in pred[v]:
                if reach[p]:
                    acc &= dom[p]
            acc |= 1 << v
            if acc != dom[v]:
                dom[v] = acc
                changed = True
    return dom


def _tarjan_sccs(n: int, succ: list[list[int]]) -> list[frozenset[int]]:
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 1

    for root in range(n):
        if visited[root]:
            continue
        # iterative DFS so deep CFGs cannot blow the recursion limit
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(pi, len(succ[v])):
                w = succ[v][j]
                if not visited[w]:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return comps


def analyze_loops(cfg: FunctionCFG) -> LoopInfo:
    n = cfg.n_blocks
    succ = cfg.successors()
    pred = cfg.predecessors()
    dom = _dominators(n, succ, pred)

    back: list[tuple[int, int]] = []
    for t, h in cfg.edges:
        if dom[t] and (dom[t] >> h) & 1:
            back.append((t, h))

    by_header: dict[int, set[int]] = {}
    for t, h in back:
        body = by_header.setdefault(h, {h})
        if t in body:
            continue
        work = [t]
        body.add(t)
        while work:
            v = work.pop()
            for p in pred[v]:
                if p not in body and dom[p]:
                    body.add(p)
                    work.append(p)

    loops = tuple(frozenset(by_header[h]) for h in sorted(by_header))
    inter = 0
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            if loops[i] & loops[j]:
                inter += 1

    return LoopInfo(
        back_edges=tuple(sorted(back)),
        loops=loops,
        inter_loops=inter,
        sccs=tuple(_tarjan_sccs(n, succ)),
    )


@dataclass
class CallGraphStats:
    callers: int
    callees: int
    imported_callees: int
    incoming_calls: int
    outgoing_calls: int
    imported_calls: int


class CallGraph:
    """Whole-binary direct-call graph.

    Built from each function's call instructions plus its tail jumps: a
    direct transfer whose target is a known function entry becomes a
    local edge; one whose target sits in a PLT-like stub region counts
    as imported.  Indirect calls carry no target and are ignored, as
    are direct transfers into space that is neither (mid-function
    targets from data-in-code).
    """

    def __init__(self) -> None:
        self.local_edges: dict[int, dict[int, int]] = {}  # caller -> callee -> count
        self.imported_edges: dict[int, dict[int, int]] = {}  # caller -> stub -> count
        self._callers: dict[int, set[int]] = {}
        self._incoming: dict[int, int] = {}
        self.entries: set[int] = set()

    def stats(self, fn_addr: int) -> CallGraphStats:
        loc = self.local_edges.get(fn_addr, {})
        imp = self.imported_edges.get(fn_addr, {})
        return CallGraphStats(
            callers=len(self._callers.get(fn_addr, ())),
            callees=len(loc),
            imported_callees=len(imp),
            incoming_calls=self._incoming.get(fn_addr, 0),
            outgoing_calls=sum(loc.values()) + sum(imp.values()),
            imported_calls=sum(imp.values()),
        )


def build_callgraph(
    call_sites: Mapping[int, Iterable[Insn]],
    entry_addrs: Iterable[int],
    is_imported: Callable[[int], bool],
) -> CallGraph:
    """Reduce per-function call lists into one CallGraph.

    call_sites maps function entry -> that function's call instructions
    (cfg.calls); entry_addrs lists every recovered function entry;
    is_imported says whether an address lies in a stub region.
    """
    cg = CallGraph()
    cg.entries = set(entry_addrs)
    for fn in cg.entries:
        cg.local_edges.setdefault(fn, {})
        cg.imported_edges.setdefault(fn, {})
    for caller, insns in call_sites.items():
        loc = cg.local_edges.setdefault(caller, {})
        imp = cg.imported_edges.setdefault(caller, {})
        for ins in insns:
            if ins.target is None or ins.branch not in ("call", "jump"):
                continue
            t = ins.target
            if t in cg.entries:
                loc[t] = loc.get(t, 0) + 1
                cg._callers.setdefault(t, set()).add(caller)
                cg._incoming[t] = cg._incoming.get(t, 0) + 1
            elif is_imported(t):
                imp[t] = imp.get(t, 0) + 1
    return cg
