"""Binary code similarity via presemantic numeric features.

Pipeline: load ELF functions (symbol-guided) -> disassemble -> CFG/call
graph -> numeric feature vectors -> relative-difference similarity ->
greedy AUC feature selection -> grouped k-fold evaluation and ranked
search.

Submodules map to pipeline stages: loader (ELF/DWARF), disasm (per-arch
decoders), cfg, features, groundtruth, scoring, evaluate, search,
minibench (desk-scale benchmark matrix), cli.
"""

__version__ = "0.1.0"
