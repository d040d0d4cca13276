"""Character n-gram language guessing.

Rank-order profiles over character 1..5-grams (words padded with ``_``),
compared with the classic out-of-place distance: for each n-gram of the
text profile, the rank difference against the reference profile, or the
profile size K for n-grams missing from it.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyTextError, InsufficientTrainingDataError

DEFAULT_PROFILE_SIZE = 400
DEFAULT_NGRAM_ORDERS = (1, 2, 3, 4, 5)
DEFAULT_MIN_TRAINING_CHARS = 10_000

_WS_RE = re.compile(r"\s+")


def _ngram_counts(text: str, orders=DEFAULT_NGRAM_ORDERS) -> Counter:
    counts: Counter = Counter()
    for word in _WS_RE.split(text.lower().strip()):
        if not word:
            continue
        padded = f"_{word}_"
        size = len(padded)
        for n in orders:
            if n > size:
                continue
            for i in range(size - n + 1):
                counts[padded[i : i + n]] += 1
    return counts


def _rank(counts: Counter, k: int) -> dict[str, int]:
    # Deterministic ranking: frequency descending, then n-gram ascending.
    top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return {gram: rank for rank, (gram, _) in enumerate(top, start=1)}


@dataclass(frozen=True)
class LanguageProfile:
    """Top-K n-gram ranks for one language."""

    lang: str
    ngram_ranks: dict[str, int] = field(compare=False)
    k: int = DEFAULT_PROFILE_SIZE

    def __post_init__(self):
        ranks = sorted(self.ngram_ranks.values())
        if ranks != list(range(1, len(ranks) + 1)):
            raise ValueError(f"profile ranks must be 1..{len(ranks)} without gaps")


def train_language_profile(
    training_text: str,
    lang: str,
    k: int = DEFAULT_PROFILE_SIZE,
    min_chars: int = DEFAULT_MIN_TRAINING_CHARS,
) -> LanguageProfile:
    """Build the rank profile of the K most frequent character n-grams."""
    if len(training_text) < min_chars:
        raise InsufficientTrainingDataError(
            f"need at least {min_chars} characters of training text for {lang!r}, "
            f"got {len(training_text)}"
        )
    return LanguageProfile(lang=lang, ngram_ranks=_rank(_ngram_counts(training_text), k), k=k)


def profile_distance(text_ranks: dict[str, int], profile: LanguageProfile) -> int:
    """Out-of-place distance between a text's rank profile and a language profile."""
    ranks = profile.ngram_ranks
    d = 0
    for gram, rank in text_ranks.items():
        ref = ranks.get(gram)
        d += abs(rank - ref) if ref is not None else profile.k
    return d


def guess_language(text: str, profiles) -> tuple[str, float]:
    """Return (language, confidence) for the closest profile.

    Confidence is the margin between best and second-best distance,
    normalized by the second-best (1.0 when only one profile is given).
    Ties break toward the lexicographically smaller language code.
    """
    if not text or not text.strip():
        raise EmptyTextError("cannot guess the language of empty text")
    profiles = list(profiles)
    if not profiles:
        raise ValueError("at least one language profile is required")
    k = max(p.k for p in profiles)
    text_ranks = _rank(_ngram_counts(text), k)
    scored = sorted(
        (profile_distance(text_ranks, p), p.lang) for p in profiles
    )
    best_d, best_lang = scored[0]
    if len(scored) == 1:
        return best_lang, 1.0
    second_d = scored[1][0]
    confidence = (second_d - best_d) / second_d if second_d > 0 else 0.0
    return best_lang, confidence


def save_profile(profile: LanguageProfile, path: str | Path) -> None:
    """Persist as one line per n-gram: ``<ngram>\\t<rank>``, sorted by rank."""
    lines = [
        f"{gram}\t{rank}"
        for gram, rank in sorted(profile.ngram_ranks.items(), key=lambda kv: kv[1])
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_profile(path: str | Path, lang: str | None = None, k: int | None = None) -> LanguageProfile:
    """Load a persisted profile; lang defaults to the file stem."""
    path = Path(path)
    ranks: dict[str, int] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        gram, rank = line.split("\t")
        ranks[gram] = int(rank)
    return LanguageProfile(
        lang=lang or path.stem,
        ngram_ranks=ranks,
        k=k if k is not None else max(len(ranks), DEFAULT_PROFILE_SIZE),
    )
