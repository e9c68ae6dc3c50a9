"""Certified moduli of uniform continuity on [0, 1].

The extraction pipeline builds a tree of bisection cells whose nodes hold
witness pairs for half the target oscillation, follows its longest path to
a cell where the oscillation provably dies out, reads a candidate step off
the local modulus there, and then has the candidate checked by an
independent partition-based verifier.  Failed candidates are halved, so
the certificate that comes back is sound regardless of how the tree stage
was steered (exhaustive per level, or greedily along the child with the
larger oscillation bound).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dyadic import (
    Dyadic,
    DyadicInterval,
    HALF,
    UNIT,
    ZERO,
    interval_of_word,
    least_pow2_at_most,
)
from .enclosure import (
    DEFAULT_PREC_CAP,
    DEFAULT_SPLIT_DEPTH,
    DEFAULT_START_BITS,
    Enclosure,
    abs_diff_enclosure,
    approx_compare,
    eval_enclosure,
    local_modulus,
    oscillation_upper,
    point_enclosure,
)
from .errors import DepthExhausted, RefinementBudgetExceeded
from .trees import ExplicitTree, longest_path
from .witness import WitnessReport, find_witnesses


@dataclass(frozen=True)
class ModulusConfig:
    """Knobs for extraction and verification.

    tree max_depth defaults to 24 for the greedy strategy and 12 for the
    faithful one; inner_depth bounds the per-node witness search.  The
    delta exponent cap is separate from the tree depth: steep functions
    need steps finer than any tree level the strategies explore.  The
    resolution cap bounds the verifier partition (2**m cells); beyond it
    the search reports exhaustion rather than attempting an intractable
    scan.
    """

    strategy: str = "greedy"
    max_depth: int | None = None
    inner_depth: int = 4
    start_bits: int = DEFAULT_START_BITS
    prec_cap: int = DEFAULT_PREC_CAP
    split_depth: int = DEFAULT_SPLIT_DEPTH
    descent_split_depth: int = 3
    pair_split_depth: int = 8
    delta_exp_cap: int = 40
    resolution_exp: int | None = None
    resolution_cap: int = 24

    def tree_depth(self) -> int:
        if self.max_depth is not None:
            return self.max_depth
        return 24 if self.strategy == "greedy" else 12


@dataclass(frozen=True)
class NodeData:
    """A bisection cell with its witness report and membership verdict."""

    word: str
    interval: DyadicInterval
    report: WitnessReport
    membership: str  # "in" | "out"
    cert: Enclosure | None


def node_witness(
    f,
    epsilon: Dyadic,
    word: str,
    max_depth: int,
    *,
    start_bits: int = DEFAULT_START_BITS,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> WitnessReport:
    """Witness search on the cell of ``word``: grid points are drawn from
    inside the cell, the distance bound is the cell width, and the
    oscillation target is half the global epsilon."""
    return find_witnesses(
        f,
        epsilon.half(),
        Dyadic(1, len(word)),
        max_depth,
        domain=interval_of_word(word),
        start_bits=start_bits,
        prec_cap=prec_cap,
    )


def membership_of(
    f,
    epsilon: Dyadic,
    report: WitnessReport,
    *,
    start_bits: int = DEFAULT_START_BITS,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> tuple[str, Enclosure | None]:
    """In/Out verdict for a node from its witness report.

    Nodes without a pair are Out.  For found pairs the oscillation is
    compared against the gap (epsilon/4, epsilon/2); the certifying
    enclosure is attached either way.
    """
    if not report.found:
        return "out", None
    quarter = epsilon.scaled_pow2(-2)
    result = approx_compare(
        lambda bits: abs_diff_enclosure(
            point_enclosure(f, report.x, bits), point_enclosure(f, report.y, bits)
        ),
        quarter,
        epsilon.half(),
        start_bits=start_bits,
        prec_cap=prec_cap,
    )
    return ("in" if result.is_high else "out"), result.enclosure


def classify_node(f, epsilon: Dyadic, word: str, cfg: ModulusConfig) -> NodeData:
    report = node_witness(
        f,
        epsilon,
        word,
        cfg.inner_depth,
        start_bits=cfg.start_bits,
        prec_cap=cfg.prec_cap,
    )
    verdict, cert = membership_of(
        f, epsilon, report, start_bits=cfg.start_bits, prec_cap=cfg.prec_cap
    )
    return NodeData(word, interval_of_word(word), report, verdict, cert)


def build_faithful_tree(
    f, epsilon: Dyadic, cfg: ModulusConfig
) -> tuple[list[NodeData], list[tuple[str, ...]]]:
    """Level-by-level membership tree (children of Out nodes are outside
    the tree by prefix closure and are not expanded)."""
    nodes: list[NodeData] = []
    root = classify_node(f, epsilon, "", cfg)
    nodes.append(root)
    if root.membership == "out":
        return nodes, []
    levels: list[tuple[str, ...]] = [("",)]
    frontier = [""]
    for _ in range(cfg.tree_depth()):
        level: list[str] = []
        for parent in frontier:
            for bit in ("0", "1"):
                node = classify_node(f, epsilon, parent + bit, cfg)
                nodes.append(node)
                if node.membership == "in":
                    level.append(node.word)
        if not level:
            break
        levels.append(tuple(level))
        frontier = level
    return nodes, levels


def greedy_descent(
    f, epsilon: Dyadic, cfg: ModulusConfig
) -> tuple[list[NodeData], str | None]:
    """Descend into the In-child with the larger certified oscillation
    bound (ties go left); stops below the last In node."""
    nodes: list[NodeData] = []
    root = classify_node(f, epsilon, "", cfg)
    nodes.append(root)
    if root.membership == "out":
        return nodes, None
    word = ""
    for _ in range(cfg.tree_depth()):
        children = []
        for bit in ("0", "1"):
            node = classify_node(f, epsilon, word + bit, cfg)
            nodes.append(node)
            if node.membership == "in":
                children.append(node)
        if not children:
            break
        if len(children) == 1:
            word = children[0].word
            continue
        osc0 = oscillation_upper(
            f, children[0].interval, cfg.start_bits, cfg.descent_split_depth
        )
        osc1 = oscillation_upper(
            f, children[1].interval, cfg.start_bits, cfg.descent_split_depth
        )
        word = children[1].word if osc1 > osc0 else children[0].word
    return nodes, word


@dataclass(frozen=True)
class ModulusCertificate:
    """A verified modulus: |x - y| < 2**-delta_exp implies |f(x) - f(y)| < epsilon.

    certified is always True on successful extraction; the verification
    block records the partition resolution and the global oscillation
    bound established by the independent check.
    """

    epsilon: Dyadic
    delta_exp: int
    strategy: str
    xi_interval: DyadicInterval
    depth_used: int
    resolution_exp: int
    max_osc_upper: Dyadic
    certified: bool

    @property
    def delta(self) -> Dyadic:
        return Dyadic(1, self.delta_exp)

    def to_json_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "delta_exp": self.delta_exp,
            "strategy": self.strategy,
            "xi_interval": [str(self.xi_interval.lo), str(self.xi_interval.hi)],
            "depth_used": self.depth_used,
            "verification": {
                "resolution_exp": self.resolution_exp,
                "max_osc_upper": str(self.max_osc_upper),
                "certified": self.certified,
            },
        }


# -- independent verifier -------------------------------------------------------


@dataclass(frozen=True)
class VerifyCertified:
    max_osc_upper: Dyadic
    resolution_exp: int

    kind = "certified"


@dataclass(frozen=True)
class VerifyCounterexample:
    x: Dyadic
    y: Dyadic
    cert: Enclosure
    resolution_exp: int

    kind = "counterexample"


@dataclass(frozen=True)
class VerifyInconclusive:
    resolution_exp: int

    kind = "inconclusive"


VerifyResult = VerifyCertified | VerifyCounterexample | VerifyInconclusive


class _Verifier:
    def __init__(self, f, epsilon: Dyadic, delta: Dyadic, cfg: ModulusConfig):
        self.f = f
        self.epsilon = epsilon
        self.delta = delta
        self.cfg = cfg
        minimal = least_pow2_at_most(delta.half())
        if cfg.resolution_exp is None:
            self.m = minimal
        else:
            if cfg.resolution_exp < minimal:
                raise ValueError(
                    f"resolution 2^-{cfg.resolution_exp} is coarser than the "
                    f"required 2^-{minimal} for delta {delta}"
                )
            self.m = cfg.resolution_exp
        if self.m > cfg.resolution_cap:
            # 2**m cells: refuse to start a partition that cannot finish.
            raise DepthExhausted(
                f"partition resolution 2^-{self.m} exceeds the cap "
                f"2^-{cfg.resolution_cap}"
            )
        self.slack = epsilon.scaled_pow2(-2)
        self._encs: dict[tuple[Dyadic, Dyadic, int], Enclosure] = {}
        self._points: dict[tuple[Dyadic, int], Enclosure] = {}

    def _enc(self, interval: DyadicInterval, bits: int) -> Enclosure:
        key = (interval.lo, interval.hi, bits)
        enc = self._encs.get(key)
        if enc is None:
            enc = eval_enclosure(self.f, interval, bits)
            self._encs[key] = enc
        return enc

    def _point(self, x: Dyadic, bits: int) -> Enclosure:
        key = (x, bits)
        enc = self._points.get(key)
        if enc is None:
            enc = point_enclosure(self.f, x, bits)
            self._points[key] = enc
        return enc

    def _pair_bound(self, a: DyadicInterval, b: DyadicInterval, bits: int) -> Dyadic:
        ea = self._enc(a, bits)
        eb = self._enc(b, bits)
        return max(ea.hi - eb.lo, eb.hi - ea.lo)

    def _candidates(self, a: DyadicInterval, b: DyadicInterval):
        points_a = (a.lo, a.midpoint(), a.hi)
        points_b = (b.lo, b.midpoint(), b.hi)
        for s in points_a:
            for t in points_b:
                if not abs(s - t) < self.delta:
                    continue
                try:
                    result = approx_compare(
                        lambda bits: abs_diff_enclosure(
                            self._point(s, bits), self._point(t, bits)
                        ),
                        self.epsilon,
                        self.epsilon + self.slack,
                        start_bits=self.cfg.start_bits,
                        prec_cap=self.cfg.prec_cap,
                    )
                except RefinementBudgetExceeded:
                    continue
                if result.is_high:
                    return s, t, result.enclosure
        return None

    @staticmethod
    def _gap(a: DyadicInterval, b: DyadicInterval) -> Dyadic:
        if b.lo > a.hi:
            return b.lo - a.hi
        if a.lo > b.hi:
            return a.lo - b.hi
        return ZERO

    def _resolve(self, a: DyadicInterval, b: DyadicInterval, depth: int):
        bits = min(self.cfg.start_bits << depth, self.cfg.prec_cap)
        bound = self._pair_bound(a, b, bits)
        if bound < self.epsilon:
            return "below", bound
        cex = self._candidates(a, b)
        if cex is not None:
            return "counterexample", cex
        if depth >= self.cfg.pair_split_depth:
            return "unresolved", bound
        worst = ZERO
        unresolved = False
        for sub_a in a.halves():
            for sub_b in b.halves():
                if not self._gap(sub_a, sub_b) < self.delta:
                    continue
                status, payload = self._resolve(sub_a, sub_b, depth + 1)
                if status == "counterexample":
                    return status, payload
                if status == "unresolved":
                    unresolved = True
                if payload > worst:
                    worst = payload
        return ("unresolved" if unresolved else "below"), worst

    def run(self) -> VerifyResult:
        cells = 1 << self.m
        offset = 1
        while offset <= cells and Dyadic(offset - 1, self.m) < self.delta:
            offset += 1
        max_offset = offset - 1
        max_osc = ZERO
        unresolved = False
        for i in range(cells):
            cell_i = DyadicInterval(Dyadic(i, self.m), Dyadic(i + 1, self.m))
            for o in range(0, max_offset + 1):
                j = i + o
                if j >= cells:
                    break
                cell_j = DyadicInterval(Dyadic(j, self.m), Dyadic(j + 1, self.m))
                status, payload = self._resolve(cell_i, cell_j, 0)
                if status == "counterexample":
                    x, y, cert = payload
                    return VerifyCounterexample(x, y, cert, self.m)
                if status == "unresolved":
                    unresolved = True
                if payload > max_osc:
                    max_osc = payload
        if unresolved:
            return VerifyInconclusive(self.m)
        return VerifyCertified(max_osc, self.m)


def verify_modulus(
    f, epsilon: Dyadic, delta: Dyadic, config: ModulusConfig | None = None
) -> VerifyResult:
    """Check, by partitioning [0, 1], whether delta is a modulus for epsilon.

    The partition width is at most delta/2 (finer on request); every pair
    of cells closer than delta gets a certified oscillation bound, with
    adaptive bisection and precision raising on pairs that start above
    epsilon.  Counterexamples carry exact points and a certified lower
    bound above epsilon; Inconclusive only occurs on budget exhaustion.
    """
    if not delta > 0 or delta > HALF:
        raise ValueError("verify_modulus requires 0 < delta <= 1/2")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    cfg = config if config is not None else ModulusConfig()
    return _Verifier(f, epsilon, delta, cfg).run()


# -- extraction ------------------------------------------------------------------


def _candidate_exponent(
    f, epsilon: Dyadic, xi: DyadicInterval | None, cfg: ModulusConfig
) -> tuple[int, Dyadic | None]:
    """Candidate step exponent from local continuity at the path cell.

    With no In node anywhere the whole domain already passed the witness
    stage and the coarsest admissible step is proposed directly.
    """
    if xi is None:
        return 1, None
    delta_local = local_modulus(
        f,
        xi,
        epsilon.half(),
        bits=cfg.start_bits,
        split_depth=cfg.split_depth,
        k_cap=cfg.delta_exp_cap,
    )
    target = min(delta_local, epsilon)
    n = 1
    while not Dyadic(1, n - 1) < target:
        n += 1
        if n > cfg.delta_exp_cap:
            raise DepthExhausted(f"candidate step fell below 2^-{cfg.delta_exp_cap}")
    return n, delta_local


def extract_modulus_detailed(
    f, epsilon: Dyadic, config: ModulusConfig | None = None
) -> tuple[ModulusCertificate, dict]:
    """extract_modulus plus a diagnostics dict (nodes, path, candidates)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    cfg = config if config is not None else ModulusConfig()
    if cfg.strategy not in ("greedy", "faithful"):
        raise ValueError(f"unknown strategy {cfg.strategy!r}")

    if cfg.strategy == "faithful":
        nodes, levels = build_faithful_tree(f, epsilon, cfg)
        if not levels:
            xi_word = None
        else:
            tree = ExplicitTree(word for level in levels for word in level)
            path = longest_path(tree, len(levels) - 1)
            xi_word = path.word[: path.longest_len]
        level_sizes = [len(level) for level in levels]
    else:
        nodes, xi_word = greedy_descent(f, epsilon, cfg)
        level_sizes = None

    xi = interval_of_word(xi_word) if xi_word is not None else None
    candidate_exp, delta_local = _candidate_exponent(f, epsilon, xi, cfg)

    # Each retry halves the candidate, so the partition resolution is left
    # to track the minimal admissible value for the current delta.
    n = candidate_exp
    verify_cfg = replace(cfg, resolution_exp=None)
    while n <= cfg.delta_exp_cap:
        result = verify_modulus(f, epsilon, Dyadic(1, n), verify_cfg)
        if result.kind == "certified":
            certificate = ModulusCertificate(
                epsilon=epsilon,
                delta_exp=n,
                strategy=cfg.strategy,
                xi_interval=xi if xi is not None else UNIT,
                depth_used=len(xi_word) if xi_word is not None else 0,
                resolution_exp=result.resolution_exp,
                max_osc_upper=result.max_osc_upper,
                certified=True,
            )
            diagnostics = {
                "nodes": nodes,
                "path_word": xi_word,
                "candidate_exp": candidate_exp,
                "delta_local": delta_local,
                "level_sizes": level_sizes,
            }
            return certificate, diagnostics
        n += 1
    raise DepthExhausted(
        f"no step down to 2^-{cfg.delta_exp_cap} could be certified for epsilon {epsilon}"
    )


def extract_modulus(
    f, epsilon: Dyadic, config: ModulusConfig | None = None
) -> ModulusCertificate:
    """Certified modulus of uniform continuity for f on [0, 1] at epsilon."""
    return extract_modulus_detailed(f, epsilon, config)[0]
