"""Certified moduli of uniform continuity for expressions on [0, 1].

Exact dyadic arithmetic, rigorous interval enclosures, bounded-depth
binary-tree search, witness-pair extraction and an independent partition
verifier, tied together by a deterministic CLI (``uctcert``).
"""

from .binseq import (
    BoundedStream,
    downward_closure,
    dyadic_to_word,
    interleave,
    proj0,
    proj1,
    word_to_dyadic,
)
from .dyadic import (
    Dyadic,
    DyadicInterval,
    UNIT,
    interval_of_word,
    level_grid,
)
from .enclosure import (
    Enclosure,
    approx_compare,
    eval_enclosure,
    local_modulus,
    oscillation_upper,
    point_enclosure,
)
from .expr import parse as parse_expr
from .modulus import (
    ModulusCertificate,
    ModulusConfig,
    NodeData,
    VerifyCertified,
    VerifyCounterexample,
    VerifyInconclusive,
    extract_modulus,
    extract_modulus_detailed,
    membership_of,
    node_witness,
    verify_modulus,
)
from .trees import (
    ExplicitTree,
    FullTree,
    PathResult,
    UNBOUNDED,
    load_tree,
    longest_path,
    lpp_reduction,
    tree_height,
    wkl_path,
)
from .witness import (
    ViolationOracle,
    WitnessReport,
    find_witnesses,
    level_flag,
    witness_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BoundedStream",
    "Dyadic",
    "DyadicInterval",
    "Enclosure",
    "ExplicitTree",
    "FullTree",
    "ModulusCertificate",
    "ModulusConfig",
    "NodeData",
    "PathResult",
    "UNBOUNDED",
    "UNIT",
    "VerifyCertified",
    "VerifyCounterexample",
    "VerifyInconclusive",
    "ViolationOracle",
    "WitnessReport",
    "approx_compare",
    "downward_closure",
    "dyadic_to_word",
    "eval_enclosure",
    "extract_modulus",
    "extract_modulus_detailed",
    "find_witnesses",
    "interleave",
    "interval_of_word",
    "level_flag",
    "level_grid",
    "load_tree",
    "local_modulus",
    "longest_path",
    "lpp_reduction",
    "membership_of",
    "node_witness",
    "oscillation_upper",
    "parse_expr",
    "point_enclosure",
    "proj0",
    "proj1",
    "tree_height",
    "verify_modulus",
    "witness_grid",
    "wkl_path",
    "word_to_dyadic",
]
