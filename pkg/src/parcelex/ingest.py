"""Document acquisition and normalization.

Raw documents come from a pluggable source (a local fixture directory or an
HTTP endpoint), are reduced from legacy HTML to plain paragraph texts, get
their language verified against n-gram profiles, and are filtered by the
corpus selection rule before TEI encoding.
"""

from __future__ import annotations

import datetime
import html
import re
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .celex import CelexId, LEXURISERV, document_url, format_celex
from .errors import DecodeError, DocumentNotFoundError, EmptyTextError, UnknownLanguageError
from .langid import guess_language

OFFICIAL_LANGUAGES = frozenset(
    "cs da de el en es et fi fr hu it lt lv mt nl pl pt sk sl sv".split()
)
# 20 official codes plus Romanian.
ALL_LANGUAGES = OFFICIAL_LANGUAGES | {"ro"}
NEW_MEMBER_LANGUAGES = frozenset("cs et hu lt lv mt pl sk sl".split())

MIN_LANGUAGES = 10
MIN_NEW_MEMBER_LANGUAGES = 3

# Texts shorter than this are accepted with a low-confidence flag instead of
# being rejected: titles and bodies occasionally disagree in language and
# short snippets are unreliable evidence either way.
SHORT_TEXT_CHARS = 200

LOCAL_DIRECTORY = "local_directory"
HTTP_ENDPOINT = "http_endpoint"


@dataclass(frozen=True)
class FetchSource:
    """Where raw documents come from: a fixture directory or an HTTP base."""

    mode: str
    root: str
    endpoint: str = LEXURISERV

    def __post_init__(self):
        if self.mode not in (LOCAL_DIRECTORY, HTTP_ENDPOINT):
            raise ValueError(f"unknown fetch mode {self.mode!r}")


@dataclass(frozen=True)
class RawDocument:
    celex: CelexId
    lang: str
    content: str
    source_url: str
    retrieved: datetime.date


def _decode(data: bytes, where: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"{where}: {exc}") from None


def fetch_document(
    source: FetchSource,
    celex: CelexId,
    lang: str,
    http_get=None,
) -> RawDocument:
    """Fetch one (celex, lang) document from the source.

    In local mode the fixture file is ``<root>/<celex>-<lang>.html`` (or
    ``.txt``).  ``http_get`` overrides the URL fetcher, mainly for tests.
    """
    code = format_celex(celex)
    if source.mode == LOCAL_DIRECTORY:
        root = Path(source.root)
        for ext in (".html", ".txt"):
            path = root / f"{code}-{lang}{ext}"
            if path.is_file():
                mtime = datetime.date.fromtimestamp(path.stat().st_mtime)
                return RawDocument(
                    celex=celex,
                    lang=lang,
                    content=_decode(path.read_bytes(), str(path)),
                    source_url=path.as_uri(),
                    retrieved=mtime,
                )
        raise DocumentNotFoundError(f"no fixture {code}-{lang}.html under {source.root}")

    url = document_url(celex, lang, source.endpoint)
    if http_get is None:
        def http_get(u):
            with urllib.request.urlopen(u) as resp:
                return resp.read()
    try:
        data = http_get(url)
    except OSError as exc:
        raise DocumentNotFoundError(f"{url}: {exc}") from None
    return RawDocument(
        celex=celex,
        lang=lang,
        content=_decode(data, url),
        source_url=url,
        retrieved=datetime.date.today(),
    )


_DROP_BLOCK_RE = re.compile(
    r"<(script|style|head)\b[^>]*>.*?</\1\s*>", re.IGNORECASE | re.DOTALL
)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_BREAK_RE = re.compile(r"<\s*(?:br|p|/p)\b[^>]*>", re.IGNORECASE)
_TAG_RE = re.compile(r"<[^>]*>")
_WS_COLLAPSE = re.compile(r"\s+")


def html_to_paragraphs(content: str) -> list[str]:
    """Reduce legacy HTML (or plain text) to trimmed paragraph strings.

    Paragraph breaks come from <p>/<br> tags or line breaks; all other
    markup is stripped and character entities are decoded.  Tag matching is
    case-insensitive and tolerates unclosed elements.
    """
    text = _COMMENT_RE.sub(" ", content)
    text = _DROP_BLOCK_RE.sub(" ", text)
    text = _BREAK_RE.sub("\n", text)
    text = _TAG_RE.sub(" ", text)
    text = html.unescape(text)
    paragraphs = []
    for chunk in text.split("\n"):
        cleaned = _WS_COLLAPSE.sub(" ", chunk).strip()
        if cleaned:
            paragraphs.append(cleaned)
    return paragraphs


@dataclass(frozen=True)
class LanguageVerdict:
    """Outcome of verifying a document's declared language."""

    accepted: bool
    guessed_lang: str
    confidence: float
    low_confidence: bool = False


def verify_language(doc: RawDocument, profiles) -> LanguageVerdict:
    """Accept iff the guessed language matches the declared one.

    Documents below SHORT_TEXT_CHARS are accepted with low_confidence=True
    rather than rejected.
    """
    profiles = list(profiles)
    if doc.lang not in {p.lang for p in profiles}:
        raise UnknownLanguageError(f"no profile for declared language {doc.lang!r}")
    text = " ".join(html_to_paragraphs(doc.content))
    if not text:
        raise EmptyTextError(f"document {format_celex(doc.celex)}-{doc.lang} has no text")
    if len(text) < SHORT_TEXT_CHARS:
        guessed, confidence = guess_language(text, profiles)
        return LanguageVerdict(
            accepted=True, guessed_lang=guessed, confidence=confidence, low_confidence=True
        )
    guessed, confidence = guess_language(text, profiles)
    return LanguageVerdict(accepted=guessed == doc.lang, guessed_lang=guessed, confidence=confidence)


def select_corpus(inventory: dict) -> set:
    """Apply the corpus selection rule to a mapping celex -> set of languages.

    A document is kept iff it exists in at least MIN_LANGUAGES of the 21
    languages and is available either in at least MIN_NEW_MEMBER_LANGUAGES
    of the languages of the 2004 joiners or in Romanian.
    """
    kept = set()
    for celex, langs in inventory.items():
        langs = set(langs)
        unknown = langs - ALL_LANGUAGES
        if unknown:
            raise UnknownLanguageError(
                f"{format_celex(celex) if isinstance(celex, CelexId) else celex}: "
                f"unknown language codes {sorted(unknown)}"
            )
        if len(langs) < MIN_LANGUAGES:
            continue
        if len(langs & NEW_MEMBER_LANGUAGES) >= MIN_NEW_MEMBER_LANGUAGES or "ro" in langs:
            kept.add(celex)
    return kept
