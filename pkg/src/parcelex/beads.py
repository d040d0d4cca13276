"""Alignment beads: links pairing source and target paragraph runs.

A link of arity a-b pairs a contiguous source paragraphs with b contiguous
target paragraphs; 1-0 and 0-1 links carry unmatched paragraphs.  A
document's links are monotone and jointly cover every paragraph of both
sides exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .celex import CelexId


@dataclass(frozen=True)
class AlignmentLink:
    arity: tuple[int, int]
    src_pars: tuple[int, ...]
    tgt_pars: tuple[int, ...]
    score: float | None = field(default=None, compare=False)

    def __post_init__(self):
        a, b = self.arity
        if a < 0 or b < 0 or (a, b) == (0, 0):
            raise ValueError(f"bad arity {self.arity}")
        if len(self.src_pars) != a or len(self.tgt_pars) != b:
            raise ValueError(
                f"arity {a}-{b} inconsistent with {self.src_pars}/{self.tgt_pars}"
            )
        for pars in (self.src_pars, self.tgt_pars):
            if any(q != p + 1 for p, q in zip(pars, pars[1:])):
                raise ValueError(f"paragraph numbers must be contiguous: {pars}")

    @property
    def arity_label(self) -> str:
        return f"{self.arity[0]}-{self.arity[1]}"


@dataclass(frozen=True)
class BitextAlignment:
    celex: CelexId | None
    src_lang: str
    tgt_lang: str
    links: tuple[AlignmentLink, ...]
    aligner: str
    params_digest: str = ""

    def total_score(self) -> float:
        return sum(l.score or 0.0 for l in self.links)


def links_cover(links, n_src: int, n_tgt: int, first_src: int = 1, first_tgt: int = 1) -> bool:
    """True iff links are monotone and cover both sides exactly once."""
    want_src = first_src
    want_tgt = first_tgt
    for link in links:
        for p in link.src_pars:
            if p != want_src:
                return False
            want_src += 1
        for p in link.tgt_pars:
            if p != want_tgt:
                return False
            want_tgt += 1
    return want_src == first_src + n_src and want_tgt == first_tgt + n_tgt


def parse_arity(label: str) -> tuple[int, int]:
    """Parse an ``a-b`` arity label."""
    a, _, b = label.partition("-")
    return int(a), int(b)
