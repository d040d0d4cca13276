"""Numbered-paragraph document model and its TEI-style XML dialect.

A document is a title (the head paragraph, n=1) followed by body,
signature and annex paragraphs numbered consecutively document-wide, so
(language, celex, paragraph number) addresses one paragraph anywhere in
the corpus.  Section boundaries are detected with per-language regular
expression families kept in ``data/section_patterns.json``.
"""

from __future__ import annotations

import datetime
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from importlib import resources
from xml.sax.saxutils import escape, quoteattr

from .celex import CelexId, format_celex, jrc_document_id, parse_celex
from .errors import InconsistentBoundariesError, MalformedXmlError, SchemaViolationError

HEAD = "head"
BODY = "body"
SIGNATURE = "signature"
ANNEX = "annex"
SECTIONS = (HEAD, BODY, SIGNATURE, ANNEX)

DISTRIBUTOR_URL = "http://wt.jrc.it/lt/acquis/"
AUTHENTICITY_NOTE = (
    "Only European Community legislation printed in the paper edition of "
    "the Official Journal of the European Union is deemed authentic."
)

LANGUAGE_NAMES = {
    "cs": "Czech", "da": "Danish", "de": "German", "el": "Greek",
    "en": "English", "es": "Spanish", "et": "Estonian", "fi": "Finnish",
    "fr": "French", "hu": "Hungarian", "it": "Italian", "lt": "Lithuanian",
    "lv": "Latvian", "mt": "Maltese", "nl": "Dutch", "pl": "Polish",
    "pt": "Portuguese", "ro": "Romanian", "sk": "Slovak", "sl": "Slovenian",
    "sv": "Swedish",
}

# Headings longer than this are body text, not annex markers.
MAX_HEADING_CHARS = 60


@dataclass(frozen=True)
class Paragraph:
    n: int
    text: str
    section: str

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"paragraph number must be >= 1, got {self.n}")
        if not self.text or self.text != self.text.strip():
            raise ValueError(f"paragraph {self.n}: text must be non-empty and trimmed")
        if self.section not in SECTIONS:
            raise ValueError(f"unknown section {self.section!r}")


@dataclass(frozen=True)
class SectionBoundaries:
    """Document paragraph numbers where signature and annex begin."""

    signature_start: int | None = None
    annex_start: int | None = None

    def __post_init__(self):
        if (
            self.signature_start is not None
            and self.annex_start is not None
            and self.signature_start >= self.annex_start
        ):
            raise InconsistentBoundariesError(
                f"signature ({self.signature_start}) must precede annex ({self.annex_start})"
            )


@dataclass(frozen=True)
class TeiDocument:
    celex: CelexId
    lang: str
    title: str
    paragraphs: tuple[Paragraph, ...]
    eurovoc_codes: frozenset[int]
    source_url: str
    download_date: datetime.date

    @property
    def id(self) -> str:
        return jrc_document_id(self.celex, self.lang)

    @property
    def extent(self) -> int:
        return len(self.paragraphs)

    def paragraph(self, n: int) -> Paragraph:
        if not 1 <= n <= len(self.paragraphs):
            raise KeyError(n)
        return self.paragraphs[n - 1]

    def section_texts(self, section: str) -> list[str]:
        return [p.text for p in self.paragraphs if p.section == section]

    def validate(self) -> None:
        """Check numbering and section-run invariants."""
        for i, p in enumerate(self.paragraphs, start=1):
            if p.n != i:
                raise SchemaViolationError(f"paragraph numbers must be 1..extent; got {p.n} at {i}")
        if not self.paragraphs or self.paragraphs[0].section != HEAD:
            raise SchemaViolationError("first paragraph must be the head")
        order = [SECTIONS.index(p.section) for p in self.paragraphs]
        if sum(1 for s in order if s == 0) != 1:
            raise SchemaViolationError("exactly one head paragraph expected")
        if any(b < a for a, b in zip(order, order[1:])):
            raise SchemaViolationError("sections must run head, body, signature, annex")


class _SectionPatterns:
    def __init__(self, families: dict):
        def compiled(patterns):
            return [re.compile(p) for p in patterns]

        self.opening = compiled(families["signature"]["opening"])
        self.role = compiled(families["signature"]["role"])
        self.footnote = compiled(families["signature"]["footnote"])
        self.name = compiled(families["signature"]["name"])
        self.annex_heading = compiled(families["annex"]["heading"])


def _load_patterns() -> _SectionPatterns:
    data = resources.files("parcelex.data").joinpath("section_patterns.json")
    return _SectionPatterns(json.loads(data.read_text(encoding="utf-8")))


_PATTERNS = _load_patterns()


def _matches_any(patterns, text: str) -> bool:
    return any(p.search(text) for p in patterns)


def classify_sections(paragraphs, first_n: int = 2) -> SectionBoundaries:
    """Locate signature and annex starts in a sequence of paragraph texts.

    ``first_n`` is the document paragraph number of the first element (2 by
    default, since the sequence usually follows a title).  The annex starts
    at the first short heading matching the annex family.  The signature
    starts at the last place-and-date opening before the annex; failing
    that, at a trailing run of role, footnote and name lines containing at
    least one role or footnote match.  Detection is best-effort: documents
    without recognizable markers yield absent boundaries.
    """
    texts = list(paragraphs)
    if not texts:
        raise ValueError("classify_sections requires at least one paragraph")
    pats = _PATTERNS

    annex_idx = None
    for i, text in enumerate(texts):
        if len(text) <= MAX_HEADING_CHARS and _matches_any(pats.annex_heading, text):
            annex_idx = i
            break

    region_end = annex_idx if annex_idx is not None else len(texts)
    sig_idx = None
    for i in range(region_end - 1, -1, -1):
        if _matches_any(pats.opening, texts[i]):
            sig_idx = i
            break
    if sig_idx is None:
        # Trailing run of signature-looking lines, anchored to the region end.
        run_start = region_end
        anchored = False
        for i in range(region_end - 1, -1, -1):
            text = texts[i]
            if _matches_any(pats.role, text) or _matches_any(pats.footnote, text):
                run_start = i
                anchored = True
            elif _matches_any(pats.name, text):
                run_start = i
            else:
                break
        if anchored and run_start < region_end:
            sig_idx = run_start

    return SectionBoundaries(
        signature_start=first_n + sig_idx if sig_idx is not None else None,
        annex_start=first_n + annex_idx if annex_idx is not None else None,
    )


def build_document(
    celex: CelexId,
    lang: str,
    title: str,
    body_paragraphs,
    boundaries: SectionBoundaries | None = None,
    eurovoc_codes=(),
    source_url: str = "",
    download_date: datetime.date = datetime.date(2006, 2, 20),
) -> TeiDocument:
    """Assemble a document: title becomes the head (n=1), body starts at n=2."""
    texts = [t.strip() for t in body_paragraphs]
    if any(not t for t in texts):
        raise ValueError("body paragraphs must be non-empty")
    boundaries = boundaries or SectionBoundaries()
    extent = len(texts) + 1
    sig = boundaries.signature_start
    annex = boundaries.annex_start
    for name, bound in ((SIGNATURE, sig), (ANNEX, annex)):
        if bound is not None and not 2 <= bound <= extent:
            raise InconsistentBoundariesError(
                f"{name} start {bound} outside paragraph range 2..{extent}"
            )

    paragraphs = [Paragraph(n=1, text=title.strip(), section=HEAD)]
    for i, text in enumerate(texts, start=2):
        if annex is not None and i >= annex:
            section = ANNEX
        elif sig is not None and i >= sig:
            section = SIGNATURE
        else:
            section = BODY
        paragraphs.append(Paragraph(n=i, text=text, section=section))

    doc = TeiDocument(
        celex=celex,
        lang=lang,
        title=title.strip(),
        paragraphs=tuple(paragraphs),
        eurovoc_codes=frozenset(int(c) for c in eurovoc_codes),
        source_url=source_url,
        download_date=download_date,
    )
    doc.validate()
    return doc


def _language_name(lang: str) -> str:
    return LANGUAGE_NAMES.get(lang, lang)


def serialize_tei(doc: TeiDocument) -> str:
    """Emit the document as TEI-style XML (UTF-8 text, LF line endings)."""
    w = []
    out = w.append
    out('<?xml version="1.0" encoding="utf-8"?>\n')
    out(f'<TEI.2 id={quoteattr(doc.id)} n={quoteattr(format_celex(doc.celex))} '
        f'lang={quoteattr(doc.lang)}>\n')
    out(f'  <teiHeader lang="en" date.created="{doc.download_date.isoformat()}">\n')
    out('    <fileDesc>\n')
    out('      <titleStmt>\n')
    out(f'        <title>JRC-ACQUIS {format_celex(doc.celex)} {_language_name(doc.lang)}</title>\n')
    out(f'        <title>{escape(doc.title)}</title>\n')
    out('      </titleStmt>\n')
    out(f'      <extent>{doc.extent} paragraph segments</extent>\n')
    out('      <publicationStmt>\n')
    out('        <distributor>\n')
    out(f'          <xref url={quoteattr(DISTRIBUTOR_URL)}>{escape(DISTRIBUTOR_URL)}</xref>\n')
    out('        </distributor>\n')
    out('      </publicationStmt>\n')
    out('      <notesStmt>\n')
    out(f'        <note>{escape(AUTHENTICITY_NOTE)}</note>\n')
    out('      </notesStmt>\n')
    out('      <sourceDesc>\n')
    out(f'        <bibl>Downloaded from <xref url={quoteattr(doc.source_url)}>'
        f'{escape(doc.source_url)}</xref> on <date>{doc.download_date.isoformat()}</date></bibl>\n')
    out('      </sourceDesc>\n')
    out('    </fileDesc>\n')
    out('    <profileDesc>\n')
    out('      <textClass>\n')
    for code in sorted(doc.eurovoc_codes):
        out(f'        <classCode scheme="eurovoc">{code}</classCode>\n')
    out('      </textClass>\n')
    out('    </profileDesc>\n')
    out('  </teiHeader>\n')
    out('  <text>\n')
    out('    <body>\n')
    out(f'      <head n="1">{escape(doc.paragraphs[0].text)}</head>\n')
    for section in (BODY, SIGNATURE, ANNEX):
        pars = [p for p in doc.paragraphs if p.section == section]
        if not pars:
            continue
        out(f'      <div type="{section}">\n')
        for p in pars:
            out(f'        <p n="{p.n}">{escape(p.text)}</p>\n')
        out('      </div>\n')
    out('    </body>\n')
    out('  </text>\n')
    out('</TEI.2>\n')
    return "".join(w)


def _require(parent, tag_path: str):
    el = parent.find(tag_path)
    if el is None:
        raise SchemaViolationError(f"missing mandatory element {tag_path!r}")
    return el


def parse_tei(xml_text: str) -> TeiDocument:
    """Parse the emitted dialect back into a document (inverse of serialize_tei)."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedXmlError(str(exc)) from None
    if root.tag != "TEI.2":
        raise SchemaViolationError(f"expected TEI.2 root, got {root.tag!r}")
    celex = parse_celex(root.get("n", ""))
    lang = root.get("lang", "")
    if not lang:
        raise SchemaViolationError("root lang attribute missing")

    header = _require(root, "teiHeader")
    file_desc = _require(header, "fileDesc")
    titles = file_desc.findall("titleStmt/title")
    if not titles:
        raise SchemaViolationError("titleStmt must contain a title")
    title = (titles[-1].text or "").strip()

    extent_el = _require(file_desc, "extent")
    m = re.match(r"(\d+) paragraph segments", extent_el.text or "")
    if not m:
        raise SchemaViolationError(f"unparseable extent {extent_el.text!r}")
    extent = int(m.group(1))

    bibl = _require(file_desc, "sourceDesc/bibl")
    xref = _require(bibl, "xref")
    source_url = xref.get("url", "")
    date_el = _require(bibl, "date")
    try:
        download_date = datetime.date.fromisoformat((date_el.text or "").strip())
    except ValueError:
        raise SchemaViolationError(f"unparseable date {date_el.text!r}") from None

    codes = frozenset(
        int(el.text or 0)
        for el in header.findall("profileDesc/textClass/classCode")
        if el.get("scheme") == "eurovoc"
    )

    body_el = _require(root, "text/body")
    head_el = _require(body_el, "head")
    try:
        paragraphs = [
            Paragraph(n=int(head_el.get("n", 0)), text=(head_el.text or "").strip(), section=HEAD)
        ]
        for div in body_el.findall("div"):
            section = div.get("type", "")
            if section not in (BODY, SIGNATURE, ANNEX):
                raise SchemaViolationError(f"unknown div type {section!r}")
            for p in div.findall("p"):
                paragraphs.append(
                    Paragraph(n=int(p.get("n", 0)), text=(p.text or "").strip(), section=section)
                )
    except ValueError as exc:
        raise SchemaViolationError(str(exc)) from None
    if len(paragraphs) != extent:
        raise SchemaViolationError(
            f"extent says {extent} segments but document has {len(paragraphs)}"
        )

    doc = TeiDocument(
        celex=celex,
        lang=lang,
        title=title,
        paragraphs=tuple(paragraphs),
        eurovoc_codes=codes,
        source_url=source_url,
        download_date=download_date,
    )
    doc.validate()
    return doc
