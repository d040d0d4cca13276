"""Length-based dynamic-programming paragraph aligner.

Each candidate bead (arity 1-1, 1-0, 0-1, 2-1, 1-2 or 2-2) is priced as
the negative log probability of the length discrepancy between its two
sides plus the negative log prior of its arity; the aligner minimizes the
total bead cost over all monotone segmentations.  ``exhaustive_align``
searches the same space by enumeration and serves as an oracle for the
dynamic program.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

from .beads import AlignmentLink, BitextAlignment, links_cover
from .celex import CelexId
from .errors import InstanceTooLargeError, UnsupportedArityError

CHARACTERS = "characters"
WORDS = "words"

DEFAULT_MEAN_RATIO = 1.0
DEFAULT_VARIANCE = 6.8
DEFAULT_PRIORS = {
    (1, 1): 0.89,
    (2, 1): 0.0445,
    (1, 2): 0.0445,
    (1, 0): 0.00495,
    (0, 1): 0.00495,
    (2, 2): 0.011,
}
# Skip beads are priced like a match that is this many standard deviations off.
DEFAULT_SKIP_DELTA = 4.0

# Tie-break order: prefer 1-1, then lower combined arity, then advancing the
# source side first.
ARITY_PREFERENCE = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))

EXHAUSTIVE_MAX_PARS = 20


@dataclass(frozen=True)
class GCParams:
    mean_ratio: float = DEFAULT_MEAN_RATIO
    variance: float = DEFAULT_VARIANCE
    arity_priors: dict = field(default_factory=lambda: dict(DEFAULT_PRIORS))
    length_unit: str = CHARACTERS
    skip_delta: float = DEFAULT_SKIP_DELTA

    def __post_init__(self):
        if self.variance <= 0:
            raise ValueError("variance must be positive")
        if any(p <= 0 for p in self.arity_priors.values()) or sum(self.arity_priors.values()) > 1 + 1e-9:
            raise ValueError("arity priors must be positive and sum to at most 1")
        if self.length_unit not in (CHARACTERS, WORDS):
            raise ValueError(f"unknown length unit {self.length_unit!r}")

    def digest(self) -> str:
        blob = json.dumps(
            {
                "mean_ratio": self.mean_ratio,
                "variance": self.variance,
                "priors": {f"{a}-{b}": p for (a, b), p in sorted(self.arity_priors.items())},
                "length_unit": self.length_unit,
                "skip_delta": self.skip_delta,
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


def segment_length(text: str, unit: str = CHARACTERS) -> int:
    return len(text) if unit == CHARACTERS else len(text.split())


def length_delta(l1: float, l2: float, params: GCParams) -> float:
    """Standardized length discrepancy of a target segment against a source one."""
    return (l2 - l1 * params.mean_ratio) / math.sqrt(max(l1, 1) * params.variance)


def _match_cost(delta: float) -> float:
    # -ln 2*(1 - Phi(|delta|)) == -ln erfc(|delta| / sqrt 2), with an
    # asymptotic fallback where erfc underflows.
    z = abs(delta) / math.sqrt(2.0)
    p = math.erfc(z)
    if p > 0.0:
        return -math.log(p)
    return z * z + math.log(z * math.sqrt(math.pi))


def bead_cost(src_lengths, tgt_lengths, arity: tuple[int, int], params: GCParams) -> float:
    """Cost of one bead; lower is better and always positive."""
    prior = params.arity_priors.get(tuple(arity))
    if prior is None:
        raise UnsupportedArityError(f"unsupported arity {arity[0]}-{arity[1]}")
    a, b = arity
    if len(src_lengths) != a or len(tgt_lengths) != b:
        raise ValueError("segment counts do not match the arity")
    if a == 0 or b == 0:
        return -math.log(prior) + _match_cost(params.skip_delta)
    delta = length_delta(sum(src_lengths), sum(tgt_lengths), params)
    return _match_cost(delta) - math.log(prior)


def _lengths(paragraphs, params: GCParams) -> list[int]:
    return [segment_length(t, params.length_unit) for t in paragraphs]


def _split_at_hard_links(n_src, n_tgt, first_src, first_tgt, hard_links):
    """Yield (src range, tgt range) blocks delimited by hard anchor pairs."""
    cuts = sorted(set(hard_links or ()))
    blocks = []
    lo_s, lo_t = 0, 0
    for s_n, t_n in cuts:
        s = s_n - first_src + 1
        t = t_n - first_tgt + 1
        if not (lo_s <= s <= n_src and lo_t <= t <= n_tgt):
            raise ValueError(f"hard link {(s_n, t_n)} out of range or out of order")
        blocks.append(((lo_s, s), (lo_t, t)))
        lo_s, lo_t = s, t
    blocks.append(((lo_s, n_src), (lo_t, n_tgt)))
    return blocks


def _dp_block(src_lengths, tgt_lengths, params: GCParams):
    """Minimal-cost monotone segmentation of one block, as (arity, a, b) steps."""
    n, m = len(src_lengths), len(tgt_lengths)
    inf = math.inf
    cost = [[inf] * (m + 1) for _ in range(n + 1)]
    choice = [[None] * (m + 1) for _ in range(n + 1)]
    cost[n][m] = 0.0
    for i in range(n, -1, -1):
        for j in range(m, -1, -1):
            if i == n and j == m:
                continue
            best = inf
            best_arity = None
            for a, b in ARITY_PREFERENCE:
                ii, jj = i + a, j + b
                if ii > n or jj > m:
                    continue
                c = bead_cost(src_lengths[i:ii], tgt_lengths[j:jj], (a, b), params) + cost[ii][jj]
                if c < best:
                    best = c
                    best_arity = (a, b)
            cost[i][j] = best
            choice[i][j] = best_arity
    steps = []
    i = j = 0
    while (i, j) != (n, m):
        a, b = choice[i][j]
        steps.append(((a, b), i, j))
        i += a
        j += b
    return steps


def _steps_to_links(steps, src_lengths, tgt_lengths, first_src, first_tgt, params):
    links = []
    for (a, b), i, j in steps:
        links.append(
            AlignmentLink(
                arity=(a, b),
                src_pars=tuple(range(first_src + i, first_src + i + a)),
                tgt_pars=tuple(range(first_tgt + j, first_tgt + j + b)),
                score=bead_cost(src_lengths[i : i + a], tgt_lengths[j : j + b], (a, b), params),
            )
        )
    return links


def align_gale_church(
    src_pars,
    tgt_pars,
    params: GCParams | None = None,
    celex: CelexId | None = None,
    src_lang: str = "",
    tgt_lang: str = "",
    first_src: int = 1,
    first_tgt: int = 1,
    hard_links=None,
) -> BitextAlignment:
    """Align two paragraph sequences by minimal total bead cost.

    ``first_src``/``first_tgt`` set the document paragraph number of the
    first element of each sequence.  ``hard_links`` optionally lists
    (src_n, tgt_n) anchor pairs that the alignment must respect; document
    boundaries are always implicit anchors.
    """
    params = params or GCParams()
    src_lengths = _lengths(src_pars, params)
    tgt_lengths = _lengths(tgt_pars, params)
    links = []
    for (s_lo, s_hi), (t_lo, t_hi) in _split_at_hard_links(
        len(src_lengths), len(tgt_lengths), first_src, first_tgt, hard_links
    ):
        block_src = src_lengths[s_lo:s_hi]
        block_tgt = tgt_lengths[t_lo:t_hi]
        steps = _dp_block(block_src, block_tgt, params)
        links.extend(
            _steps_to_links(steps, block_src, block_tgt, first_src + s_lo, first_tgt + t_lo, params)
        )
    assert links_cover(links, len(src_lengths), len(tgt_lengths), first_src, first_tgt)
    return BitextAlignment(
        celex=celex,
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        links=tuple(links),
        aligner="gale_church",
        params_digest=params.digest(),
    )


def alignment_cost(alignment: BitextAlignment) -> float:
    """Exact total bead cost (order-independent float sum)."""
    return math.fsum(l.score for l in alignment.links)


def exhaustive_align(
    src_pars,
    tgt_pars,
    params: GCParams | None = None,
    celex: CelexId | None = None,
    src_lang: str = "",
    tgt_lang: str = "",
    first_src: int = 1,
    first_tgt: int = 1,
) -> BitextAlignment:
    """Minimum-cost alignment by enumerating every monotone segmentation.

    Oracle for align_gale_church on small instances; the search is cut off
    only where a partial path already exceeds the best complete one, which
    cannot exclude an optimum because every bead cost is positive.
    """
    params = params or GCParams()
    src_lengths = _lengths(src_pars, params)
    tgt_lengths = _lengths(tgt_pars, params)
    n, m = len(src_lengths), len(tgt_lengths)
    if n + m > EXHAUSTIVE_MAX_PARS:
        raise InstanceTooLargeError(f"{n}+{m} paragraphs exceed the {EXHAUSTIVE_MAX_PARS} bound")

    best_steps = None
    best_total = math.inf
    path = []

    def explore(i, j, running):
        nonlocal best_steps, best_total
        if running >= best_total + 1e-9:
            return
        if i == n and j == m:
            total = math.fsum(c for _, _, _, c in path)
            if total < best_total:
                best_total = total
                best_steps = list(path)
            return
        for a, b in ARITY_PREFERENCE:
            ii, jj = i + a, j + b
            if ii > n or jj > m:
                continue
            c = bead_cost(src_lengths[i:ii], tgt_lengths[j:jj], (a, b), params)
            path.append(((a, b), i, j, c))
            explore(ii, jj, running + c)
            path.pop()

    explore(0, 0, 0.0)
    links = _steps_to_links(
        [(arity, i, j) for arity, i, j, _ in best_steps or []],
        src_lengths,
        tgt_lengths,
        first_src,
        first_tgt,
        params,
    )
    return BitextAlignment(
        celex=celex,
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        links=tuple(links),
        aligner="gale_church_exhaustive",
        params_digest=params.digest(),
    )
