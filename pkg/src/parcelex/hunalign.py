"""Similarity-driven paragraph aligner with lexicon bootstrapping.

Runs in three phases per language pair: a first alignment pass scored on
length ratio, identical-word ratio and number-token overlap; automatic
construction of a bilingual lexicon from a random sample of the 1-1 links
found; and a second alignment pass that adds lexicon evidence to the
similarity.  Unlike the length-based aligner this one never produces 2-2
beads but can split one paragraph into up to ``max_split`` counterparts.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .beads import AlignmentLink, BitextAlignment, links_cover
from .celex import CelexId
from .errors import EmptyCollectionError, NoOneToOneLinksError

_TOKEN_RE = re.compile(r"\d+(?:[.,]\d+)*|[^\W\d_]+")
_NUMERIC_RE = re.compile(r"^\d")

DEFAULT_SAMPLE_SIZE = 10_000
DEFAULT_RNG_SEED = 1960
DEFAULT_MAX_SPLIT = 3
DEFAULT_MIN_COOC = 2


@dataclass(frozen=True)
class TokenizedSegment:
    paragraph_n: int
    tokens: tuple[str, ...]
    number_tokens: frozenset[str]
    length: int


def tokenize(text: str, paragraph_n: int = 0) -> TokenizedSegment:
    """Lowercase and split on whitespace/punctuation; digit runs become number tokens."""
    tokens = tuple(_TOKEN_RE.findall(text.lower()))
    numbers = frozenset(t for t in tokens if _NUMERIC_RE.match(t))
    return TokenizedSegment(
        paragraph_n=paragraph_n, tokens=tokens, number_tokens=numbers, length=len(text)
    )


def merge_segments(segments) -> TokenizedSegment:
    """Concatenation of segments (joined with single spaces)."""
    segments = list(segments)
    if len(segments) == 1:
        return segments[0]
    return TokenizedSegment(
        paragraph_n=segments[0].paragraph_n,
        tokens=tuple(t for s in segments for t in s.tokens),
        number_tokens=frozenset().union(*(s.number_tokens for s in segments)),
        length=sum(s.length for s in segments) + len(segments) - 1,
    )


@dataclass(frozen=True)
class HunParams:
    w_length: float = 0.3
    w_identical: float = 0.3
    w_number: float = 0.15
    w_lexicon: float = 0.25
    sample_size: int = DEFAULT_SAMPLE_SIZE
    rng_seed: int = DEFAULT_RNG_SEED
    max_split: int = DEFAULT_MAX_SPLIT
    min_cooc: int = DEFAULT_MIN_COOC
    skip_penalty: float = 0.3

    def __post_init__(self):
        weights = (self.w_length, self.w_identical, self.w_number, self.w_lexicon)
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError("similarity weights must be nonnegative and sum to 1")
        if self.sample_size < 1:
            raise ValueError("sample_size must be at least 1")
        if self.max_split < 2:
            raise ValueError("max_split must be at least 2")

    def digest(self) -> str:
        blob = json.dumps(
            {
                "weights": [self.w_length, self.w_identical, self.w_number, self.w_lexicon],
                "sample_size": self.sample_size,
                "rng_seed": self.rng_seed,
                "max_split": self.max_split,
                "min_cooc": self.min_cooc,
                "skip_penalty": self.skip_penalty,
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


@dataclass
class Lexicon:
    """Bilingual token-pair association weights bootstrapped from 1-1 links."""

    entries: dict[tuple[str, str], float]
    src_counts: Counter
    tgt_counts: Counter

    def __post_init__(self):
        by_src: dict[str, dict[str, float]] = {}
        for (s, t), w in self.entries.items():
            by_src.setdefault(s, {})[t] = w
        self._by_src = by_src

    def translations(self, src_token: str) -> dict[str, float]:
        return self._by_src.get(src_token, {})

    def __len__(self):
        return len(self.entries)


def number_similarity(a, b) -> float:
    """Jaccard overlap of two number-token sets; 1.0 when both are empty."""
    a, b = set(a), set(b)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def identical_word_ratio(s: TokenizedSegment, t: TokenizedSegment) -> float:
    """Dice ratio of shared token types; 0 when both segments are empty."""
    s_types, t_types = set(s.tokens), set(t.tokens)
    if not s_types and not t_types:
        return 0.0
    return 2 * len(s_types & t_types) / (len(s_types) + len(t_types))


def _length_score(l1: int, l2: int) -> float:
    if l1 == 0 and l2 == 0:
        return 1.0
    return min(l1, l2) / max(l1, l2)


def _lexicon_score(s: TokenizedSegment, t: TokenizedSegment, lexicon: Lexicon) -> float:
    if not s.tokens or not lexicon.entries:
        return 0.0
    t_types = set(t.tokens)
    total = 0.0
    for token in s.tokens:
        translations = lexicon.translations(token)
        if translations:
            total += max((translations.get(tt, 0.0) for tt in t_types), default=0.0)
    return total / len(s.tokens)


def segment_similarity(
    s: TokenizedSegment,
    t: TokenizedSegment,
    lexicon: Lexicon | None = None,
    params: HunParams | None = None,
) -> float:
    """Convex combination of length, identical-word, number and lexicon evidence.

    Without a lexicon the remaining three weights are renormalized to sum
    to 1, so a pair of identical segments still scores 1.0.
    """
    params = params or HunParams()
    base = (
        params.w_length * _length_score(s.length, t.length)
        + params.w_identical * identical_word_ratio(s, t)
        + params.w_number * number_similarity(s.number_tokens, t.number_tokens)
    )
    if lexicon is None:
        scale = params.w_length + params.w_identical + params.w_number
        return base / scale if scale > 0 else 0.0
    return base + params.w_lexicon * _lexicon_score(s, t, lexicon)


def _moves(max_split: int):
    moves = [(1, 1), (1, 0), (0, 1)]
    for k in range(2, max_split + 1):
        moves.append((k, 1))
        moves.append((1, k))
    return tuple(moves)


def similarity_align(
    src_pars,
    tgt_pars,
    lexicon: Lexicon | None = None,
    params: HunParams | None = None,
    celex: CelexId | None = None,
    src_lang: str = "",
    tgt_lang: str = "",
    first_src: int = 1,
    first_tgt: int = 1,
    aligner: str = "hunalign",
) -> BitextAlignment:
    """Maximal total-similarity monotone alignment over 1-1, 1-0, 0-1, k-1, 1-k."""
    params = params or HunParams()
    src_segs = [tokenize(t, first_src + i) for i, t in enumerate(src_pars)]
    tgt_segs = [tokenize(t, first_tgt + j) for j, t in enumerate(tgt_pars)]
    n, m = len(src_segs), len(tgt_segs)
    moves = _moves(params.max_split)

    # merged[k][i] = segments i..i+k concatenated
    merged_src = {1: src_segs}
    merged_tgt = {1: tgt_segs}
    for k in range(2, params.max_split + 1):
        merged_src[k] = [merge_segments(src_segs[i : i + k]) for i in range(n - k + 1)]
        merged_tgt[k] = [merge_segments(tgt_segs[j : j + k]) for j in range(m - k + 1)]

    def bead_score(a, b, i, j):
        if a == 0 or b == 0:
            return -params.skip_penalty
        return segment_similarity(merged_src[a][i], merged_tgt[b][j], lexicon, params)

    neg = -math.inf
    score = [[neg] * (m + 1) for _ in range(n + 1)]
    choice = [[None] * (m + 1) for _ in range(n + 1)]
    score[n][m] = 0.0
    for i in range(n, -1, -1):
        for j in range(m, -1, -1):
            if i == n and j == m:
                continue
            best = neg
            best_move = None
            for a, b in moves:
                ii, jj = i + a, j + b
                if ii > n or jj > m:
                    continue
                s = bead_score(a, b, i, j) + score[ii][jj]
                if s > best:
                    best = s
                    best_move = (a, b)
            score[i][j] = best
            choice[i][j] = best_move

    links = []
    i = j = 0
    while (i, j) != (n, m):
        a, b = choice[i][j]
        links.append(
            AlignmentLink(
                arity=(a, b),
                src_pars=tuple(range(first_src + i, first_src + i + a)),
                tgt_pars=tuple(range(first_tgt + j, first_tgt + j + b)),
                score=bead_score(a, b, i, j),
            )
        )
        i += a
        j += b
    assert links_cover(links, n, m, first_src, first_tgt)
    assert all(link.arity != (2, 2) for link in links)
    return BitextAlignment(
        celex=celex,
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        links=tuple(links),
        aligner=aligner,
        params_digest=params.digest(),
    )


def build_lexicon(
    phase1_alignments,
    src_docs: dict,
    tgt_docs: dict,
    params: HunParams | None = None,
    first_n: int = 1,
) -> Lexicon:
    """Bootstrap a lexicon from a uniform sample of 1-1 links.

    Token pairs are scored with a squared-co-occurrence ratio,
    cooc(s,t)^2 / (count(s) * count(t)), counting each token once per
    sampled pair; pairs seen fewer than ``min_cooc`` times are dropped.
    """
    params = params or HunParams()
    one_to_one = []
    for alignment in phase1_alignments:
        for link in alignment.links:
            if link.arity == (1, 1):
                one_to_one.append((alignment.celex, link.src_pars[0], link.tgt_pars[0]))
    if not one_to_one:
        raise NoOneToOneLinksError("phase 1 produced no 1-1 links to sample")

    rng = random.Random(params.rng_seed)
    k = min(params.sample_size, len(one_to_one))
    sampled = rng.sample(one_to_one, k)

    src_counts: Counter = Counter()
    tgt_counts: Counter = Counter()
    cooc: Counter = Counter()
    for celex, src_n, tgt_n in sampled:
        src_types = set(tokenize(src_docs[celex][src_n - first_n]).tokens)
        tgt_types = set(tokenize(tgt_docs[celex][tgt_n - first_n]).tokens)
        src_counts.update(src_types)
        tgt_counts.update(tgt_types)
        for s in src_types:
            for t in tgt_types:
                cooc[(s, t)] += 1

    entries = {
        (s, t): min(1.0, c * c / (src_counts[s] * tgt_counts[t]))
        for (s, t), c in cooc.items()
        if c >= params.min_cooc
    }
    return Lexicon(entries=entries, src_counts=src_counts, tgt_counts=tgt_counts)


def align_hunalign(
    src_docs: dict,
    tgt_docs: dict,
    params: HunParams | None = None,
    src_lang: str = "",
    tgt_lang: str = "",
    first_n: int = 1,
    lexicon: Lexicon | None = None,
) -> list[BitextAlignment]:
    """Run the three phases over documents paired by celex.

    ``src_docs`` and ``tgt_docs`` map celex to paragraph-text sequences;
    only celexes present on both sides are aligned.  Passing a prebuilt
    ``lexicon`` (e.g. loaded from cache) skips phases 1 and 2.
    """
    params = params or HunParams()
    celexes = sorted(set(src_docs) & set(tgt_docs))
    if lexicon is None:
        phase1 = [
            similarity_align(
                src_docs[c], tgt_docs[c], None, params,
                celex=c, src_lang=src_lang, tgt_lang=tgt_lang,
                first_src=first_n, first_tgt=first_n,
            )
            for c in celexes
        ]
        lexicon = build_lexicon(phase1, src_docs, tgt_docs, params, first_n)
    return [
        similarity_align(
            src_docs[c], tgt_docs[c], lexicon, params,
            celex=c, src_lang=src_lang, tgt_lang=tgt_lang,
            first_src=first_n, first_tgt=first_n,
        )
        for c in celexes
    ]


def number_token_fraction(texts) -> float:
    """Fraction of number tokens among all tokens of the given texts."""
    total = numeric = 0
    for text in texts:
        seg = tokenize(text)
        total += len(seg.tokens)
        numeric += sum(1 for t in seg.tokens if _NUMERIC_RE.match(t))
    if total == 0:
        raise EmptyCollectionError("no tokens in the collection")
    return numeric / total


def save_lexicon(lexicon: Lexicon, path) -> None:
    """Write ``src\\ttgt\\tweight`` lines, heaviest first."""
    lines = [
        f"{s}\t{t}\t{w!r}"
        for (s, t), w in sorted(lexicon.entries.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_lexicon(path) -> Lexicon:
    entries = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        s, t, w = line.split("\t")
        entries[(s, t)] = float(w)
    return Lexicon(entries=entries, src_counts=Counter(), tgt_counts=Counter())
