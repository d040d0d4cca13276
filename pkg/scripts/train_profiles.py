#!/usr/bin/env python3
"""Train language-guessing profiles from a directory of training texts.

Expects one plain-text file per language named <lang>.txt; writes
<lang>.profile files (one "<ngram>\\t<rank>" line per n-gram) suitable for
the pipeline's profiles_dir setting.

    python scripts/train_profiles.py tests/fixtures/lang /tmp/profiles --min-chars 8000
"""

import argparse
import sys
from pathlib import Path

from parcelex.langid import save_profile, train_language_profile


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source", type=Path, help="directory of <lang>.txt training files")
    parser.add_argument("dest", type=Path, help="directory to write <lang>.profile files")
    parser.add_argument("--k", type=int, default=400, help="profile size (top-K n-grams)")
    parser.add_argument("--min-chars", type=int, default=10_000)
    args = parser.parse_args()

    files = sorted(args.source.glob("*.txt"))
    if not files:
        print(f"no *.txt files under {args.source}", file=sys.stderr)
        return 1
    args.dest.mkdir(parents=True, exist_ok=True)
    for path in files:
        lang = path.stem
        text = path.read_text(encoding="utf-8")
        # Small fixture banks are repeated up to the training minimum; ranks
        # are unaffected by uniform repetition.
        base = text
        while len(text) < args.min_chars:
            text += " " + base
        profile = train_language_profile(text, lang, k=args.k, min_chars=args.min_chars)
        out = args.dest / f"{lang}.profile"
        save_profile(profile, out)
        print(f"{lang}: {len(profile.ngram_ranks)} n-grams -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
