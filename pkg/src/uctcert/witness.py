"""Bounded-depth search for pairs violating a candidate modulus.

Given f, epsilon and delta, the oracle decides for grid pairs (x, y)
whether they certifiably violate the modulus condition (exact |x - y| <
delta and certified |f(x) - f(y)| > epsilon) or provably miss it by the
level margin 2**-n.  Levels are scanned until some pair certifies; at that
flip level the pair is coded into a tree branch by interleaving the two
grid words, and from then on only that branch grows (by zeros).  Extracting
the longest path of the finished tree and splitting it recovers the pair.

A run that never flips is reported as NoneUpTo(depth): no grid pair at any
scanned level passes the margined test, which is the strongest statement a
bounded search can make.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binseq import interleave, proj0, proj1, word_to_dyadic
from .dyadic import Dyadic, DyadicInterval, UNIT
from .enclosure import (
    DEFAULT_PREC_CAP,
    DEFAULT_START_BITS,
    Enclosure,
    abs_diff_enclosure,
    approx_compare,
    point_enclosure,
)
from .trees import ExplicitTree, PathResult, longest_path


@dataclass(frozen=True, slots=True)
class GammaVerdict:
    """A 0/1 answer together with the clause that justified it.

    value 1: exact distance |x - y| < delta held and ``cert`` bounds
    |f(x) - f(y)| strictly above epsilon.  value 0: either the pair is
    farther apart than delta - 2**-n ("distance") or ``cert`` bounds the
    oscillation strictly below epsilon + 2**-n ("oscillation").
    """

    value: int
    clause: str
    cert: Enclosure | None


class ViolationOracle:
    """Monotone decision oracle gamma(x, y, n) for modulus violations.

    Once a pair certifies at some level it stays certified at every deeper
    level (the 1-answers are cached with the least level that produced
    them); all other state is a point-enclosure cache, so queries are
    reproducible in any order.
    """

    def __init__(
        self,
        f,
        epsilon: Dyadic,
        delta: Dyadic,
        *,
        start_bits: int = DEFAULT_START_BITS,
        prec_cap: int = DEFAULT_PREC_CAP,
    ):
        if not epsilon > 0 or not delta > 0:
            raise ValueError("epsilon and delta must be positive")
        self.f = f
        self.epsilon = epsilon
        self.delta = delta
        self.start_bits = start_bits
        self.prec_cap = prec_cap
        self._ones: dict[tuple[Dyadic, Dyadic], tuple[int, Enclosure]] = {}
        self._points: dict[tuple[Dyadic, int], Enclosure] = {}

    def _point(self, x: Dyadic, bits: int) -> Enclosure:
        key = (x, bits)
        enc = self._points.get(key)
        if enc is None:
            enc = point_enclosure(self.f, x, bits)
            self._points[key] = enc
        return enc

    def query_detail(self, x: Dyadic, y: Dyadic, n: int) -> GammaVerdict:
        if n < 1:
            raise ValueError("level must be >= 1")
        if y < x:
            x, y = y, x
        key = (x, y)
        hit = self._ones.get(key)
        if hit is not None and n >= hit[0]:
            return GammaVerdict(1, "violation", hit[1])
        if not y - x < self.delta:
            return GammaVerdict(0, "distance", None)
        result = approx_compare(
            lambda bits: abs_diff_enclosure(self._point(x, bits), self._point(y, bits)),
            self.epsilon,
            self.epsilon + Dyadic(1, n),
            start_bits=self.start_bits,
            prec_cap=self.prec_cap,
        )
        if result.is_high:
            if hit is None or n < hit[0]:
                self._ones[key] = (n, result.enclosure)
            return GammaVerdict(1, "violation", result.enclosure)
        return GammaVerdict(0, "oscillation", result.enclosure)

    def query(self, x: Dyadic, y: Dyadic, n: int) -> int:
        return self.query_detail(x, y, n).value


def witness_grid(n: int, domain: DyadicInterval = UNIT) -> list[Dyadic]:
    """The 2**n coding-grid points of level n, mapped affinely into domain.

    The right endpoint is excluded: it is not the value of any length-n
    word, and any violation involving it shows up at nearby interior points
    of deeper levels.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    width = domain.width()
    return [domain.lo + Dyadic(k, n) * width for k in range(1 << n)]


@dataclass(frozen=True, slots=True)
class FlipData:
    level: int
    x_index: int
    y_index: int
    x: Dyadic
    y: Dyadic
    cert: Enclosure


def scan_level(oracle: ViolationOracle, n: int, domain: DyadicInterval = UNIT):
    """Level flag plus the minimal certifying pair, if any.

    Pairs are scanned with x minimal first, then y; for fixed x the scan
    stops as soon as distances reach delta (they only grow with y).
    """
    points = witness_grid(n, domain)
    for i, x in enumerate(points):
        for j in range(i + 1, len(points)):
            y = points[j]
            if not y - x < oracle.delta:
                break
            verdict = oracle.query_detail(x, y, n)
            if verdict.value == 1:
                return 1, FlipData(n, i, j, x, y, verdict.cert)
    return 0, None


def level_flag(oracle: ViolationOracle, n: int, domain: DyadicInterval = UNIT) -> int:
    """1 iff some pair on the level-n grid certifies a violation.

    Non-decreasing in n: level grids nest and 1-answers persist.
    """
    return scan_level(oracle, n, domain)[0]


@dataclass
class WitnessTreeState:
    """Levels of the search tree, indexed by word length.

    While no flip has happened every level is full; the flip level grafts
    the interleaved pair branch, after which exactly one maximal word
    exists and each further step extends it by a zero.
    """

    levels: list[tuple[str, ...]] = field(default_factory=lambda: [("",)])
    flags: list[int] = field(default_factory=list)
    flip: FlipData | None = None
    built: int = 0

    def max_word(self) -> str:
        return self.levels[-1][0]


def build_level(
    state: WitnessTreeState,
    oracle: ViolationOracle,
    n: int,
    domain: DyadicInterval = UNIT,
) -> WitnessTreeState:
    """Extend the tree by one construction step (level n)."""
    if n != state.built + 1:
        raise ValueError(f"levels must be built in order; next is {state.built + 1}")
    if state.flip is None:
        bit, flip = scan_level(oracle, n, domain)
        state.flags.append(bit)
        full = tuple(format(k, f"0{n}b") for k in range(1 << n))
        state.levels.append(full)
        if bit:
            state.flip = flip
            x_word = format(flip.x_index, f"0{n}b")
            y_word = format(flip.y_index, f"0{n}b")
            branch = interleave(x_word, y_word)
            for length in range(n + 1, 2 * n + 1):
                state.levels.append((branch[:length],))
    else:
        state.flags.append(1)
        state.levels.append((state.max_word() + "0",))
    state.built = n
    return state


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of a bounded witness search.

    outcome "found" carries the exact pair, its flip level and the
    enclosure certifying the oscillation bound; "none_up_to" records the
    depth exhausted.  The trace holds the per-level flags and the tree
    level sizes.
    """

    outcome: str
    depth: int
    x: Dyadic | None = None
    y: Dyadic | None = None
    flip_level: int | None = None
    cert: Enclosure | None = None
    flags: tuple[int, ...] = ()
    level_sizes: tuple[int, ...] = ()
    path: PathResult | None = None

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    def to_json_dict(self, include_trace: bool = False) -> dict:
        if self.found:
            out = {
                "outcome": "found",
                "x": str(self.x),
                "y": str(self.y),
                "flip_level": self.flip_level,
                "cert_lo": str(self.cert.lo),
            }
        else:
            out = {"outcome": "none_up_to", "depth": self.depth}
        if include_trace:
            out["trace"] = {
                "flags": list(self.flags),
                "level_sizes": list(self.level_sizes),
            }
        return out


def find_witnesses(
    f,
    epsilon: Dyadic,
    delta: Dyadic,
    max_depth: int,
    *,
    domain: DyadicInterval = UNIT,
    start_bits: int = DEFAULT_START_BITS,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> WitnessReport:
    """Run the level construction to max_depth and decode the result.

    The assembled tree is searched for its longest path; splitting the path
    into even and odd positions recovers the grid words of the pair, whose
    values must (and do) equal the pair recorded at the flip.  Exhausting
    max_depth without a flip is a first-class outcome, not an error.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    oracle = ViolationOracle(
        f, epsilon, delta, start_bits=start_bits, prec_cap=prec_cap
    )
    state = WitnessTreeState()
    for n in range(1, max_depth + 1):
        build_level(state, oracle, n, domain)

    tree = ExplicitTree(word for level in state.levels for word in level)
    search_depth = len(state.levels) - 1
    path = longest_path(tree, search_depth)
    level_sizes = tuple(len(level) for level in state.levels)

    if state.flip is None:
        return WitnessReport(
            outcome="none_up_to",
            depth=max_depth,
            flags=tuple(state.flags),
            level_sizes=level_sizes,
            path=path,
        )

    width = domain.width()
    decoded_x = domain.lo + word_to_dyadic(proj0(path.word)) * width
    decoded_y = domain.lo + word_to_dyadic(proj1(path.word)) * width
    flip = state.flip
    if (decoded_x, decoded_y) != (flip.x, flip.y):
        raise AssertionError(
            f"path decode ({decoded_x}, {decoded_y}) disagrees with flip pair "
            f"({flip.x}, {flip.y})"
        )
    return WitnessReport(
        outcome="found",
        depth=max_depth,
        x=flip.x,
        y=flip.y,
        flip_level=flip.level,
        cert=flip.cert,
        flags=tuple(state.flags),
        level_sizes=level_sizes,
        path=path,
    )
