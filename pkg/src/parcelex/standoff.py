"""Stand-off alignment files, in-place bilingual corpora and agreement stats.

Stand-off files hold only pointers (paragraph numbers) per link, one file
per language pair, exportable as XML or CSV.  The in-place generator pulls
the pointed-to paragraph texts back out of the two TEI documents and emits
a bilingual alignment document.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .beads import AlignmentLink, links_cover, parse_arity
from .celex import CelexId, format_celex, jrc_alignment_id, parse_celex
from .errors import (
    DanglingPointerError,
    EmptyCollectionError,
    MalformedXmlError,
    MismatchedDocumentsError,
)
from .tei import TeiDocument

CSV_VERSION_LINE = "# standoff-csv v1"
CSV_HEADER = "celex,arity,src_pars,tgt_pars,score"


@dataclass(frozen=True)
class StandoffFile:
    """All alignment links for one language pair, sorted by celex."""

    src_lang: str
    tgt_lang: str
    entries: tuple[tuple[CelexId, tuple[AlignmentLink, ...]], ...]

    def __post_init__(self):
        celexes = [c for c, _ in self.entries]
        if celexes != sorted(celexes):
            raise ValueError("entries must be sorted by celex")
        if len(set(celexes)) != len(celexes):
            raise ValueError("duplicate celex entries")


def canonical_pair(lang_a: str, lang_b: str) -> tuple[str, str]:
    """Unordered pairs are named in lexicographic language-code order."""
    return (lang_a, lang_b) if lang_a <= lang_b else (lang_b, lang_a)


def standoff_from_alignments(alignments) -> StandoffFile:
    """Collect per-document alignments of one language pair into a file."""
    alignments = sorted(alignments, key=lambda a: a.celex)
    if not alignments:
        raise EmptyCollectionError("no alignments to collect")
    pairs = {(a.src_lang, a.tgt_lang) for a in alignments}
    if len(pairs) != 1:
        raise ValueError(f"alignments mix language pairs: {sorted(pairs)}")
    (src_lang, tgt_lang), = pairs
    return StandoffFile(
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        entries=tuple((a.celex, a.links) for a in alignments),
    )


def _join(pars) -> str:
    return ";".join(str(p) for p in pars)


def _split_pars(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    if not re.fullmatch(r"\d+(;\d+)*", text):
        raise MalformedXmlError(f"bad paragraph pointer list {text!r}")
    return tuple(int(p) for p in text.split(";"))


def export_standoff_xml(file: StandoffFile) -> str:
    """Pointer document: one linkGrp per celex, one link element per bead."""
    w = ['<?xml version="1.0" encoding="utf-8"?>\n']
    w.append(f'<standoff src={quoteattr(file.src_lang)} tgt={quoteattr(file.tgt_lang)}>\n')
    for celex, links in file.entries:
        w.append(f'  <linkGrp n={quoteattr(format_celex(celex))}>\n')
        for link in links:
            score = "" if link.score is None else f' score="{link.score!r}"'
            w.append(
                f'    <link type="{link.arity_label}" source="{_join(link.src_pars)}" '
                f'target="{_join(link.tgt_pars)}"{score}/>\n'
            )
        w.append("  </linkGrp>\n")
    w.append("</standoff>\n")
    return "".join(w)


def import_standoff_xml(xml_text: str) -> StandoffFile:
    """Inverse of export_standoff_xml."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedXmlError(str(exc)) from None
    if root.tag != "standoff":
        raise MalformedXmlError(f"expected standoff root, got {root.tag!r}")
    entries = []
    for grp in root.findall("linkGrp"):
        celex = parse_celex(grp.get("n", ""))
        links = []
        for el in grp.findall("link"):
            arity = parse_arity(el.get("type", ""))
            score = el.get("score")
            links.append(
                AlignmentLink(
                    arity=arity,
                    src_pars=_split_pars(el.get("source", "")),
                    tgt_pars=_split_pars(el.get("target", "")),
                    score=float(score) if score is not None else None,
                )
            )
        entries.append((celex, tuple(links)))
    return StandoffFile(
        src_lang=root.get("src", ""), tgt_lang=root.get("tgt", ""), entries=tuple(entries)
    )


def export_csv(file: StandoffFile) -> str:
    """Comma-separated export; paragraph lists are semicolon-joined."""
    lines = [f"{CSV_VERSION_LINE} {file.src_lang}-{file.tgt_lang}", CSV_HEADER]
    for celex, links in file.entries:
        code = format_celex(celex)
        for link in links:
            score = "" if link.score is None else f"{link.score:.6f}"
            lines.append(
                f"{code},{link.arity_label},{_join(link.src_pars)},{_join(link.tgt_pars)},{score}"
            )
    return "\n".join(lines) + "\n"


def import_csv(csv_text: str) -> StandoffFile:
    """Re-parse an exported CSV (scores at 6-decimal precision)."""
    lines = [l for l in csv_text.splitlines() if l]
    langs = ("", "")
    if lines and lines[0].startswith("#"):
        m = re.search(r"(\w{2})-(\w{2})\s*$", lines[0])
        if m:
            langs = (m.group(1), m.group(2))
        lines = lines[1:]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    per_celex: dict[CelexId, list[AlignmentLink]] = {}
    for line in lines[1:]:
        code, arity, src, tgt, score = line.split(",")
        per_celex.setdefault(parse_celex(code), []).append(
            AlignmentLink(
                arity=parse_arity(arity),
                src_pars=_split_pars(src),
                tgt_pars=_split_pars(tgt),
                score=float(score) if score else None,
            )
        )
    return StandoffFile(
        src_lang=langs[0],
        tgt_lang=langs[1],
        entries=tuple((c, tuple(links)) for c, links in sorted(per_celex.items())),
    )


def generate_inplace(src_doc: TeiDocument, tgt_doc: TeiDocument, links) -> str:
    """Embed the linked paragraph texts as an in-place bilingual document.

    The two documents must share a celex; links must resolve and jointly
    cover both documents' paragraphs after the head.
    """
    if src_doc.celex != tgt_doc.celex:
        raise ValueError(
            f"documents disagree on celex: {src_doc.celex} vs {tgt_doc.celex}"
        )
    links = list(links)
    for link in links:
        for n in link.src_pars:
            if not 2 <= n <= src_doc.extent:
                raise DanglingPointerError(
                    f"source paragraph {n} not in {src_doc.id} (extent {src_doc.extent})"
                )
        for n in link.tgt_pars:
            if not 2 <= n <= tgt_doc.extent:
                raise DanglingPointerError(
                    f"target paragraph {n} not in {tgt_doc.id} (extent {tgt_doc.extent})"
                )
    if not links_cover(links, src_doc.extent - 1, tgt_doc.extent - 1, 2, 2):
        raise ValueError("links must cover every paragraph after the head exactly once")

    code = format_celex(src_doc.celex)
    src, tgt = src_doc.lang, tgt_doc.lang
    w = ['<?xml version="1.0" encoding="utf-8"?>\n']
    w.append(
        f'<div type="body" n={quoteattr(code)} select={quoteattr(f"{src} {tgt}")} '
        f'id={quoteattr(jrc_alignment_id(src_doc.celex, src, tgt))} '
        f'org="uniform" sample="complete" part="N" TEIform="div">\n'
    )
    for doc in (src_doc, tgt_doc):
        w.append(
            f'  <head lang={quoteattr(doc.lang)} n="1" TEIform="head">'
            f"{escape(doc.paragraphs[0].text)}</head>\n"
        )
    for link in links:
        w.append(f'  <ab type="{link.arity_label}" part="N" TEIform="ab">\n')
        for lang, doc, pars in ((src, src_doc, link.src_pars), (tgt, tgt_doc, link.tgt_pars)):
            for n in pars:
                w.append(
                    f'    <seg lang={quoteattr(lang)} n="{n}" part="N" TEIform="seg">'
                    f"{escape(doc.paragraph(n).text)}</seg>\n"
                )
        w.append("  </ab>\n")
    w.append("</div>\n")
    return "".join(w)


@dataclass(frozen=True)
class ArityDistribution:
    """Arity fractions over links and over paragraphs covered."""

    links: dict[str, float]
    paragraphs: dict[str, float]


def arity_distribution(alignments) -> ArityDistribution:
    """Fraction of links (and of paragraphs) per arity across a collection."""
    link_counts: dict[str, int] = {}
    par_counts: dict[str, int] = {}
    total_links = 0
    total_pars = 0
    for alignment in alignments:
        for link in alignment.links:
            label = link.arity_label
            size = len(link.src_pars) + len(link.tgt_pars)
            link_counts[label] = link_counts.get(label, 0) + 1
            par_counts[label] = par_counts.get(label, 0) + size
            total_links += 1
            total_pars += size
    if total_links == 0:
        raise EmptyCollectionError("no links in the collection")
    return ArityDistribution(
        links={k: v / total_links for k, v in sorted(link_counts.items())},
        paragraphs={k: v / total_pars for k, v in sorted(par_counts.items())},
    )


@dataclass(frozen=True)
class AgreementReport:
    n_links_a: int
    n_links_b: int
    exact_match_fraction: float
    per_arity_confusion: dict[tuple[str, str], int]


def _link_index(alignments):
    """Map (celex, side, paragraph n) -> containing link, plus the link id set."""
    by_par = {}
    ids = set()
    n_links = 0
    for alignment in alignments:
        for link in alignment.links:
            n_links += 1
            ids.add((alignment.celex, link.src_pars, link.tgt_pars))
            for n in link.src_pars:
                by_par[(alignment.celex, "src", n)] = link
            for n in link.tgt_pars:
                by_par[(alignment.celex, "tgt", n)] = link
    return by_par, ids, n_links


def aligner_agreement(a, b) -> AgreementReport:
    """Exact link-set Jaccard agreement plus a per-paragraph arity confusion."""
    a, b = list(a), list(b)
    docs_a = {al.celex for al in a}
    docs_b = {al.celex for al in b}
    if docs_a != docs_b:
        raise MismatchedDocumentsError(
            f"collections cover different documents: {docs_a ^ docs_b}"
        )
    pars_a, ids_a, n_a = _link_index(a)
    pars_b, ids_b, n_b = _link_index(b)
    union = ids_a | ids_b
    fraction = len(ids_a & ids_b) / len(union) if union else 1.0
    confusion: dict[tuple[str, str], int] = {}
    for key, link_a in pars_a.items():
        link_b = pars_b.get(key)
        if link_b is None:
            continue
        pair = (link_a.arity_label, link_b.arity_label)
        confusion[pair] = confusion.get(pair, 0) + 1
    return AgreementReport(
        n_links_a=n_a,
        n_links_b=n_b,
        exact_match_fraction=fraction,
        per_arity_confusion=confusion,
    )
