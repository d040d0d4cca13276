"""Pipeline orchestration: fetch, normalize, align, export, bitext, stats, agree.

Everything is driven by one JSON configuration file; every subcommand is
idempotent given identical inputs and seed, and two runs with the same
config produce byte-identical output trees.  Paths in the config resolve
relative to the config file.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import datetime
import itertools
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import standoff as so
from .beads import BitextAlignment
from .celex import CelexId, format_celex, jrc_document_id, parse_celex
from .errors import ParcelexError
from .galechurch import GCParams, align_gale_church
from .hunalign import (
    HunParams,
    align_hunalign,
    build_lexicon,
    load_lexicon,
    save_lexicon,
    similarity_align,
)
from .ingest import (
    FetchSource,
    LOCAL_DIRECTORY,
    RawDocument,
    fetch_document,
    html_to_paragraphs,
    select_corpus,
    verify_language,
)
from .langid import load_profile
from .stats import corpus_stats_table, eurovoc_frequency, eurovoc_to_csv, stats_to_csv, stats_to_text
from .tei import build_document, classify_sections, parse_tei, serialize_tei

SUBCOMMANDS = ("fetch", "normalize", "align", "export", "bitext", "stats", "agree")
ALIGNERS = ("gale_church", "hunalign")

_FIXTURE_FILE_RE = re.compile(r"^(\d{5}[A-Z]\d{4}(?:\(\d{2}\))?)-([a-z]{2})\.(html|txt)$")


class InputError(ParcelexError):
    """Bad invocation or missing inputs; maps to exit status 1."""


@dataclass
class PipelineConfig:
    languages: tuple[str, ...]
    source: FetchSource
    output_root: Path
    aligners: tuple[str, ...] = ALIGNERS
    selection: bool = False
    seed: int = 1960
    profiles_dir: Path | None = None
    eurovoc_map: Path | None = None
    top_descriptors: int = 20
    gc: GCParams = field(default_factory=GCParams)
    hun: HunParams = field(default_factory=HunParams)

    def __post_init__(self):
        if not self.languages:
            raise InputError("config must list at least one language")
        for aligner in self.aligners:
            if aligner not in ALIGNERS:
                raise InputError(f"unknown aligner {aligner!r}; expected one of {ALIGNERS}")


def _gc_from_dict(d: dict) -> GCParams:
    d = dict(d)
    if "arity_priors" in d:
        d["arity_priors"] = {
            tuple(int(x) for x in k.split("-")): v for k, v in d["arity_priors"].items()
        }
    return GCParams(**d)


def load_config(path: str | Path, seed_override: int | None = None) -> PipelineConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config is not valid JSON: {exc}") from None
    base = path.parent

    def respath(key):
        return (base / raw[key]).resolve() if key in raw and raw[key] else None

    seed = seed_override if seed_override is not None else int(raw.get("seed", 1960))
    hun_raw = dict(raw.get("hun_params", {}))
    hun_raw.setdefault("rng_seed", seed)
    try:
        source_raw = raw.get("source", {})
        source = FetchSource(
            mode=source_raw.get("mode", LOCAL_DIRECTORY),
            root=str((base / source_raw["root"]).resolve())
            if source_raw.get("mode", LOCAL_DIRECTORY) == LOCAL_DIRECTORY
            else source_raw["root"],
            endpoint=source_raw.get("endpoint", "lexuriserv"),
        )
        return PipelineConfig(
            languages=tuple(sorted(raw["languages"])),
            source=source,
            output_root=(base / raw["output_root"]).resolve(),
            aligners=tuple(raw.get("aligners", ALIGNERS)),
            selection=bool(raw.get("selection", False)),
            seed=seed,
            profiles_dir=respath("profiles_dir"),
            eurovoc_map=respath("eurovoc_map"),
            top_descriptors=int(raw.get("top_descriptors", 20)),
            gc=_gc_from_dict(raw.get("gc_params", {})),
            hun=HunParams(**hun_raw),
        )
    except KeyError as exc:
        raise InputError(f"config is missing required key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad config value: {exc}") from None


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def cmd_fetch(config: PipelineConfig) -> None:
    if config.source.mode != LOCAL_DIRECTORY:
        raise InputError("fetch requires a local_directory source (bulk crawling is out of scope)")
    root = Path(config.source.root)
    if not root.is_dir():
        raise InputError(f"source directory not found: {root}")
    found = []
    for entry in sorted(root.iterdir()):
        m = _FIXTURE_FILE_RE.match(entry.name)
        if not m:
            continue
        code, lang, ext = m.groups()
        if lang not in config.languages:
            continue
        found.append((parse_celex(code), lang, ext))
    if not found:
        raise InputError(f"no <celex>-<lang>.html fixtures under {root}")
    manifest = []
    for celex, lang, ext in found:
        doc = fetch_document(config.source, celex, lang)
        name = f"{format_celex(celex)}-{lang}.{ext}"
        _write(config.output_root / "raw" / name, doc.content)
        manifest.append(
            {
                "celex": format_celex(celex),
                "lang": lang,
                "file": name,
                "source_url": doc.source_url,
                "retrieved": doc.retrieved.isoformat(),
            }
        )
    _write(config.output_root / "raw" / "manifest.json", _json_dump({"documents": manifest}))
    _log(f"fetched {len(manifest)} documents into {config.output_root / 'raw'}")


def _load_manifest(config: PipelineConfig) -> list[dict]:
    path = config.output_root / "raw" / "manifest.json"
    if not path.is_file():
        raise InputError(f"{path} missing; run fetch first")
    return json.loads(path.read_text(encoding="utf-8"))["documents"]


def _load_profiles(config: PipelineConfig):
    if config.profiles_dir is None:
        return None
    profiles = [
        load_profile(p) for p in sorted(Path(config.profiles_dir).glob("*.profile"))
    ]
    if not profiles:
        raise InputError(f"no *.profile files under {config.profiles_dir}")
    return profiles


def _load_eurovoc_map(config: PipelineConfig) -> dict[str, list[int]]:
    if config.eurovoc_map is None:
        return {}
    return json.loads(Path(config.eurovoc_map).read_text(encoding="utf-8"))


def cmd_normalize(config: PipelineConfig) -> None:
    manifest = _load_manifest(config)
    profiles = _load_profiles(config)
    eurovoc = _load_eurovoc_map(config)

    accepted = []
    for entry in manifest:
        celex = parse_celex(entry["celex"])
        lang = entry["lang"]
        content = (config.output_root / "raw" / entry["file"]).read_text(encoding="utf-8")
        if profiles is not None:
            raw_doc = RawDocument(
                celex=celex,
                lang=lang,
                content=content,
                source_url=entry["source_url"],
                retrieved=datetime.date.fromisoformat(entry["retrieved"]),
            )
            verdict = verify_language(raw_doc, profiles)
            if not verdict.accepted:
                _log(
                    f"rejected {entry['celex']}-{lang}: guessed {verdict.guessed_lang} "
                    f"(confidence {verdict.confidence:.3f})"
                )
                continue
        accepted.append((celex, lang, content, entry))

    inventory: dict[CelexId, set[str]] = {}
    for celex, lang, _, _ in accepted:
        inventory.setdefault(celex, set()).add(lang)
    kept = select_corpus(inventory) if config.selection else set(inventory)

    n = 0
    for celex, lang, content, entry in accepted:
        if celex not in kept:
            continue
        paragraphs = html_to_paragraphs(content)
        if not paragraphs:
            _log(f"skipping empty document {entry['celex']}-{lang}")
            continue
        title, body = paragraphs[0], paragraphs[1:]
        boundaries = classify_sections(body) if body else None
        doc = build_document(
            celex=celex,
            lang=lang,
            title=title,
            body_paragraphs=body,
            boundaries=boundaries,
            eurovoc_codes=eurovoc.get(entry["celex"], ()),
            source_url=entry["source_url"],
            download_date=datetime.date.fromisoformat(entry["retrieved"]),
        )
        _write(
            config.output_root / "tei" / lang / f"{jrc_document_id(celex, lang)}.xml",
            serialize_tei(doc),
        )
        n += 1
    _log(f"normalized {n} documents into {config.output_root / 'tei'}")


def _load_tei_corpus(config: PipelineConfig) -> dict[str, dict[CelexId, object]]:
    corpus: dict[str, dict[CelexId, object]] = {}
    tei_root = config.output_root / "tei"
    if not tei_root.is_dir():
        raise InputError(f"{tei_root} missing; run normalize first")
    for lang_dir in sorted(tei_root.iterdir()):
        if not lang_dir.is_dir():
            continue
        for path in sorted(lang_dir.glob("*.xml")):
            doc = parse_tei(path.read_text(encoding="utf-8"))
            corpus.setdefault(doc.lang, {})[doc.celex] = doc
    if not corpus:
        raise InputError(f"no TEI documents under {tei_root}")
    return corpus


def _resolve_pairs(config: PipelineConfig, pairs) -> list[tuple[str, str]]:
    if pairs:
        return [so.canonical_pair(*p) for p in pairs]
    return [
        so.canonical_pair(a, b)
        for a, b in itertools.combinations(sorted(config.languages), 2)
    ]


def _doc_texts(doc) -> list[str]:
    # Paragraphs after the head; alignment numbering starts at n=2.
    return [p.text for p in doc.paragraphs[1:]]


def _align_pair(config: PipelineConfig, corpus, src_lang: str, tgt_lang: str, aligner: str):
    src_docs = corpus.get(src_lang, {})
    tgt_docs = corpus.get(tgt_lang, {})
    common = sorted(set(src_docs) & set(tgt_docs))
    if not common:
        return None
    if aligner == "gale_church":
        alignments = [
            align_gale_church(
                _doc_texts(src_docs[c]),
                _doc_texts(tgt_docs[c]),
                config.gc,
                celex=c,
                src_lang=src_lang,
                tgt_lang=tgt_lang,
                first_src=2,
                first_tgt=2,
            )
            for c in common
        ]
        return alignments, config.gc.digest()
    src_texts = {c: _doc_texts(src_docs[c]) for c in common}
    tgt_texts = {c: _doc_texts(tgt_docs[c]) for c in common}
    cache = config.output_root / "alignments" / "hunalign" / f"{src_lang}-{tgt_lang}.lexicon.txt"
    if cache.is_file():
        lexicon = load_lexicon(cache)
        _log(f"{src_lang}-{tgt_lang}: cached lexicon ({len(lexicon)} entries), skipping phases 1-2")
    else:
        phase1 = [
            similarity_align(
                src_texts[c], tgt_texts[c], None, config.hun,
                celex=c, src_lang=src_lang, tgt_lang=tgt_lang, first_src=2, first_tgt=2,
            )
            for c in common
        ]
        lexicon = build_lexicon(phase1, src_texts, tgt_texts, config.hun, first_n=2)
        cache.parent.mkdir(parents=True, exist_ok=True)
        save_lexicon(lexicon, cache)
    alignments = align_hunalign(
        src_texts, tgt_texts, config.hun,
        src_lang=src_lang, tgt_lang=tgt_lang, first_n=2, lexicon=lexicon,
    )
    return alignments, config.hun.digest()


def cmd_align(config: PipelineConfig, pairs=None, aligner: str | None = None, jobs: int = 1) -> None:
    corpus = _load_tei_corpus(config)
    aligners = (aligner,) if aligner else config.aligners
    for name in aligners:
        if name not in ALIGNERS:
            raise InputError(f"unknown aligner {name!r}")
    tasks = [
        (src, tgt, name) for src, tgt in _resolve_pairs(config, pairs) for name in aligners
    ]

    def work(task):
        src, tgt, name = task
        return task, _align_pair(config, corpus, src, tgt, name)

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]

    provenance: dict[str, dict] = {name: {} for name in aligners}
    for (src, tgt, name), result in results:
        if result is None:
            _log(f"{name} {src}-{tgt}: no common documents, skipped")
            continue
        alignments, digest = result
        file = so.standoff_from_alignments(alignments)
        _write(
            config.output_root / "alignments" / name / f"{src}-{tgt}.standoff.xml",
            so.export_standoff_xml(file),
        )
        provenance[name][f"{src}-{tgt}"] = digest
    for name in aligners:
        _write(
            config.output_root / "alignments" / name / "provenance.json",
            _json_dump({"aligner": name, "params_digest": provenance[name]}),
        )
    _log(f"aligned {len(results)} pair/aligner combinations")


def _standoff_path(config: PipelineConfig, aligner: str, src: str, tgt: str) -> Path:
    return config.output_root / "alignments" / aligner / f"{src}-{tgt}.standoff.xml"


def _load_standoff(config: PipelineConfig, aligner: str, src: str, tgt: str) -> so.StandoffFile:
    path = _standoff_path(config, aligner, src, tgt)
    if not path.is_file():
        raise InputError(f"{path} missing; run align first")
    return so.import_standoff_xml(path.read_text(encoding="utf-8"))


def cmd_export(config: PipelineConfig, pairs=None, aligner: str | None = None) -> None:
    aligners = (aligner,) if aligner else config.aligners
    n = 0
    for src, tgt in _resolve_pairs(config, pairs):
        for name in aligners:
            if not _standoff_path(config, name, src, tgt).is_file():
                continue
            file = _load_standoff(config, name, src, tgt)
            _write(
                config.output_root / "alignments" / name / f"{src}-{tgt}.csv",
                so.export_csv(file),
            )
            n += 1
    if n == 0:
        raise InputError("no stand-off files to export; run align first")
    _log(f"exported {n} CSV files")


def cmd_bitext(config: PipelineConfig, pairs=None, celex_ids=None, aligner: str | None = None) -> None:
    if not pairs:
        raise InputError("bitext requires --pairs")
    if not celex_ids:
        raise InputError("bitext requires --celex")
    name = aligner or config.aligners[0]
    corpus = _load_tei_corpus(config)
    n = 0
    for src, tgt in [so.canonical_pair(*p) for p in pairs]:
        file = _load_standoff(config, name, src, tgt)
        links_by_celex = dict(file.entries)
        for celex in celex_ids:
            if celex not in links_by_celex:
                raise InputError(f"no links for {format_celex(celex)} in {src}-{tgt}")
            src_doc = corpus.get(src, {}).get(celex)
            tgt_doc = corpus.get(tgt, {}).get(celex)
            if src_doc is None or tgt_doc is None:
                raise InputError(f"missing TEI document for {format_celex(celex)} ({src},{tgt})")
            xml = so.generate_inplace(src_doc, tgt_doc, links_by_celex[celex])
            _write(
                config.output_root / "bitext" / f"jrc{format_celex(celex)}-{src}-{tgt}.xml",
                xml,
            )
            n += 1
    _log(f"generated {n} in-place bitext files")


def cmd_stats(config: PipelineConfig) -> None:
    corpus = _load_tei_corpus(config)
    docs = [doc for per_lang in corpus.values() for _, doc in sorted(per_lang.items())]
    table = corpus_stats_table(docs)
    _write(config.output_root / "stats" / "language_stats.csv", stats_to_csv(table))
    _write(config.output_root / "stats" / "language_stats.txt", stats_to_text(table))
    freq = eurovoc_frequency(docs, config.top_descriptors)
    _write(config.output_root / "stats" / "eurovoc_frequency.csv", eurovoc_to_csv(freq))
    _log(f"wrote statistics for {len(table)} languages")


def _standoff_to_alignments(file: so.StandoffFile, aligner: str) -> list[BitextAlignment]:
    return [
        BitextAlignment(
            celex=celex,
            src_lang=file.src_lang,
            tgt_lang=file.tgt_lang,
            links=links,
            aligner=aligner,
        )
        for celex, links in file.entries
    ]


def cmd_agree(config: PipelineConfig, pairs=None) -> None:
    if len(config.aligners) < 2:
        raise InputError("agree needs two aligners configured")
    name_a, name_b = config.aligners[0], config.aligners[1]
    summary = ["src,tgt,n_links_a,n_links_b,exact_match_fraction"]
    confusion = ["src,tgt,arity_a,arity_b,count"]
    n = 0
    for src, tgt in _resolve_pairs(config, pairs):
        path_a = _standoff_path(config, name_a, src, tgt)
        path_b = _standoff_path(config, name_b, src, tgt)
        if not (path_a.is_file() and path_b.is_file()):
            continue
        a = _standoff_to_alignments(_load_standoff(config, name_a, src, tgt), name_a)
        b = _standoff_to_alignments(_load_standoff(config, name_b, src, tgt), name_b)
        report = so.aligner_agreement(a, b)
        summary.append(
            f"{src},{tgt},{report.n_links_a},{report.n_links_b},"
            f"{report.exact_match_fraction:.6f}"
        )
        for (arity_a, arity_b), count in sorted(report.per_arity_confusion.items()):
            confusion.append(f"{src},{tgt},{arity_a},{arity_b},{count}")
        n += 1
    if n == 0:
        raise InputError("no language pair has stand-off files from both aligners")
    _write(config.output_root / "stats" / "agreement.csv", "\n".join(summary) + "\n")
    _write(config.output_root / "stats" / "agreement_confusion.csv", "\n".join(confusion) + "\n")
    _log(f"compared aligners on {n} language pairs")


def run(
    subcommand: str,
    config: PipelineConfig,
    pairs=None,
    celex_ids=None,
    aligner: str | None = None,
    jobs: int = 1,
) -> int:
    """Programmatic entry point; returns the process exit status."""
    if subcommand == "fetch":
        cmd_fetch(config)
    elif subcommand == "normalize":
        cmd_normalize(config)
    elif subcommand == "align":
        cmd_align(config, pairs, aligner, jobs)
    elif subcommand == "export":
        cmd_export(config, pairs, aligner)
    elif subcommand == "bitext":
        cmd_bitext(config, pairs, celex_ids, aligner)
    elif subcommand == "stats":
        cmd_stats(config)
    elif subcommand == "agree":
        cmd_agree(config, pairs)
    else:
        raise InputError(f"unknown subcommand {subcommand!r}; expected one of {SUBCOMMANDS}")
    return 0


def _parse_pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for chunk in text.split(","):
        m = re.fullmatch(r"([a-z]{2})-([a-z]{2})", chunk)
        if not m:
            raise InputError(f"bad pair {chunk!r}; expected like en-fr")
        pairs.append((m.group(1), m.group(2)))
    return pairs


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="parcelex",
        description="Build, align and serialize a multilingual parallel corpus.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="path to the JSON pipeline config")
    parser.add_argument("--pairs", help="comma-separated language pairs, e.g. en-fr,de-en")
    parser.add_argument("--celex", help="comma-separated CELEX ids")
    parser.add_argument("--aligner", choices=ALIGNERS, help="restrict to one aligner")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for align")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; bad invocations are input errors here
        return 0 if exc.code == 0 else 1

    try:
        config = load_config(args.config, seed_override=args.seed)
        pairs = _parse_pairs(args.pairs) if args.pairs else None
        celex_ids = (
            [parse_celex(c) for c in args.celex.split(",")] if args.celex else None
        )
        return run(args.subcommand, config, pairs, celex_ids, args.aligner, args.jobs)
    except ParcelexError as exc:
        _log(f"error: {exc}")
        return 1
    except Exception as exc:  # pragma: no cover - internal failures
        _log(f"internal error: {exc.__class__.__name__}: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
