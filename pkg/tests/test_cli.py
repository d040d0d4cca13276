import json
from pathlib import Path

import pytest

from conftest import FIXTURES
from parcelex.celex import parse_celex
from parcelex.cli import InputError, load_config, main, run
from parcelex.standoff import import_csv, import_standoff_xml
from parcelex.tei import parse_tei

EUROVOC_MAP = {
    "31984D0001": [4180, 2771],
    "31985R0002": [5769, 4180],
    "31986L0003": [1309],
}


def make_config(tmp_path, profiles_dir, **overrides):
    config = {
        "languages": ["en", "fr", "de"],
        "source": {"mode": "local_directory", "root": str(FIXTURES / "html")},
        "output_root": "out",
        "aligners": ["gale_church", "hunalign"],
        "selection": False,
        "seed": 7,
        "profiles_dir": str(profiles_dir),
        "eurovoc_map": "eurovoc.json",
    }
    config.update(overrides)
    (tmp_path / "eurovoc.json").write_text(json.dumps(EUROVOC_MAP), encoding="utf-8")
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config, indent=2), encoding="utf-8")
    return path


@pytest.fixture()
def pipeline(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir)
    config = load_config(config_path)
    return config_path, config, tmp_path / "out"


def _tree(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()
    }


def test_full_pipeline(pipeline, capsys):
    config_path, config, out = pipeline

    assert run("fetch", config) == 0
    manifest = json.loads((out / "raw" / "manifest.json").read_text(encoding="utf-8"))
    assert len(manifest["documents"]) == 10  # 3 celex x 3 langs + cross-labeled doc

    assert run("normalize", config) == 0
    err = capsys.readouterr().err
    assert "rejected 31987D0004-fr" in err and "guessed en" in err
    assert sorted(p.name for p in (out / "tei" / "fr").glob("*.xml")) == [
        "jrc31984D0001-fr.xml",
        "jrc31985R0002-fr.xml",
        "jrc31986L0003-fr.xml",
    ]
    doc = parse_tei((out / "tei" / "en" / "jrc31985R0002-en.xml").read_text(encoding="utf-8"))
    assert doc.eurovoc_codes == {5769, 4180}
    assert doc.section_texts("signature")  # signature block detected
    assert doc.section_texts("annex")      # ANNEX heading detected

    # normalize is idempotent
    before = _tree(out / "tei")
    assert run("normalize", config) == 0
    assert _tree(out / "tei") == before

    assert run("align", config) == 0
    for aligner in ("gale_church", "hunalign"):
        for pair in ("de-en", "de-fr", "en-fr"):
            path = out / "alignments" / aligner / f"{pair}.standoff.xml"
            file = import_standoff_xml(path.read_text(encoding="utf-8"))
            assert len(file.entries) == 3
        assert (out / "alignments" / aligner / "provenance.json").is_file()
    assert (out / "alignments" / "hunalign" / "en-fr.lexicon.txt").is_file()

    # align rerun reuses the cached lexicon and reproduces identical bytes
    before = _tree(out / "alignments")
    capsys.readouterr()
    assert run("align", config) == 0
    assert "cached lexicon" in capsys.readouterr().err
    assert _tree(out / "alignments") == before

    assert run("export", config) == 0
    csv_file = import_csv(
        (out / "alignments" / "gale_church" / "en-fr.csv").read_text(encoding="utf-8")
    )
    assert csv_file.src_lang == "en" and csv_file.tgt_lang == "fr"

    assert run("bitext", config, pairs=[("en", "fr")], celex_ids=[parse_celex("31984D0001")]) == 0
    bitext = (out / "bitext" / "jrc31984D0001-en-fr.xml").read_text(encoding="utf-8")
    assert 'select="en fr"' in bitext and 'id="jrc31984D0001-en-fr"' in bitext
    assert '<seg lang="en"' in bitext and '<seg lang="fr"' in bitext

    assert run("stats", config) == 0
    stats_csv = (out / "stats" / "language_stats.csv").read_text(encoding="utf-8")
    assert [line.split(",")[0] for line in stats_csv.splitlines()[1:]] == ["de", "en", "fr"]

    assert run("agree", config) == 0
    agreement = (out / "stats" / "agreement.csv").read_text(encoding="utf-8").splitlines()
    assert agreement[0] == "src,tgt,n_links_a,n_links_b,exact_match_fraction"
    # Fixture documents are cleanly parallel, so the two aligners coincide.
    assert agreement[1:] == [
        "de,en,34,34,1.000000",
        "de,fr,34,34,1.000000",
        "en,fr,34,34,1.000000",
    ]


def test_selection_filters_corpus(tmp_path, profiles_dir):
    # With the minimum-language selection rule on, a 3-language corpus keeps nothing.
    config_path = make_config(tmp_path, profiles_dir, selection=True)
    config = load_config(config_path)
    run("fetch", config)
    run("normalize", config)
    assert not (tmp_path / "out" / "tei").exists() or not list(
        (tmp_path / "out" / "tei").rglob("*.xml")
    )


def test_normalize_without_fetch_is_input_error(pipeline):
    _, config, _ = pipeline
    with pytest.raises(InputError):
        run("normalize", config)


def test_align_without_normalize_is_input_error(pipeline):
    _, config, _ = pipeline
    with pytest.raises(InputError):
        run("align", config)


def test_bitext_requires_pairs_and_celex(pipeline):
    _, config, _ = pipeline
    with pytest.raises(InputError):
        run("bitext", config)


def test_unknown_subcommand(pipeline):
    _, config, _ = pipeline
    with pytest.raises(InputError):
        run("frobnicate", config)


def test_main_exit_codes(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir)
    assert main(["fetch", "--config", str(config_path)]) == 0
    assert main(["normalize", "--config", str(config_path)]) == 0
    assert main(["align", "--config", str(config_path), "--aligner", "gale_church"]) == 0
    # domain-level input error -> 1
    assert main(["agree", "--config", str(config_path)]) == 1
    # missing config -> 1
    assert main(["stats", "--config", str(tmp_path / "nope.json")]) == 1
    # argparse usage error -> 1
    assert main(["no-such-command", "--config", str(config_path)]) == 1
    # malformed pair string -> 1
    assert main(["align", "--config", str(config_path), "--pairs", "enfr"]) == 1


def test_jobs_flag_produces_identical_output(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir)
    config = load_config(config_path)
    run("fetch", config)
    run("normalize", config)
    run("align", config, jobs=1)
    serial = _tree(tmp_path / "out" / "alignments")
    # wipe and redo with a thread pool
    import shutil

    shutil.rmtree(tmp_path / "out" / "alignments")
    run("align", config, jobs=4)
    assert _tree(tmp_path / "out" / "alignments") == serial


def test_pairs_canonicalized(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir)
    config = load_config(config_path)
    run("fetch", config)
    run("normalize", config)
    run("align", config, pairs=[("fr", "en")], aligner="gale_church")
    assert (tmp_path / "out" / "alignments" / "gale_church" / "en-fr.standoff.xml").is_file()


def test_seed_override_changes_digest(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir)
    a = load_config(config_path)
    b = load_config(config_path, seed_override=99)
    assert a.hun.rng_seed == 7 and b.hun.rng_seed == 99


def test_config_requires_languages(tmp_path, profiles_dir):
    config_path = make_config(tmp_path, profiles_dir, languages=[])
    with pytest.raises(InputError):
        load_config(config_path)
