#!/usr/bin/env python3
# Copyright 2026 The sentiqa Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled valence lexicon and homophone table.

Inputs (pip packages): vaderSentiment (lexicon), cmudict (pronunciations),
wordfreq (common-word filter). Also writes the pronunciation excerpt the
homophone test uses as its oracle.

  python3 build_resources.py --vader vader_lexicon.txt --cmudict cmudict.dict \
      --out core/resources --oracle tests/data/homophone_pronunciations.tsv
"""
import argparse
import collections
import re

from wordfreq import top_n_list

WORD_RE = re.compile(r"^[a-z]+(?:'[a-z]+)*$")
ALPHA_RE = re.compile(r"^[a-z]+$")


def build_lexicon(vader_path, out_path):
    rows = []
    with open(vader_path, encoding="utf-8") as f:
        for line in f:
            parts = line.rstrip("\n").split("\t")
            if len(parts) < 2:
                continue
            word = parts[0].strip().lower()
            if not WORD_RE.match(word):
                continue
            rows.append((word, float(parts[1])))
    with open(out_path, "w", encoding="utf-8") as f:
        f.write("# Word valence lexicon (word<TAB>valence), alphabetic entries only.\n")
        f.write("# Derived from the VADER sentiment lexicon, Copyright (c) 2016 C.J. Hutto,\n")
        f.write("# distributed under the MIT License.\n")
        for word, valence in rows:
            f.write(f"{word}\t{valence:g}\n")
    return len(rows)


def load_cmudict(path):
    prons = collections.defaultdict(set)
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.split("#")[0].strip()
            if not line:
                continue
            head, *phones = line.split()
            word = re.sub(r"\(\d+\)$", "", head).lower()
            prons[word].add(" ".join(phones))
    return prons


def build_homophones(cmudict_path, out_path, oracle_path):
    prons = load_cmudict(cmudict_path)
    common = [w for w in top_n_list("en", 30000) if ALPHA_RE.match(w) and len(w) >= 2]
    # Short words are mostly abbreviations unless very frequent.
    frequent = set(top_n_list("en", 3000))
    common = [w for w in common if len(w) > 3 or w in frequent]
    common_set = set(common)
    keys = [w for w in top_n_list("en", 20000) if w in common_set and w in prons]
    by_pron = collections.defaultdict(set)
    for w in common:
        for p in prons.get(w, ()):
            by_pron[p].add(w)
    table = {}
    for key in keys:
        alts = set()
        for p in prons[key]:
            alts |= by_pron[p]
        alts.discard(key)
        if alts:
            table[key] = sorted(alts)
    with open(out_path, "w", encoding="utf-8") as f:
        f.write("# English homophones (word<TAB>alt1,alt2,...): words sharing an exact\n")
        f.write("# phoneme sequence in the CMU Pronouncing Dictionary (BSD-style license),\n")
        f.write("# restricted to common English words.\n")
        for key in sorted(table):
            f.write(f"{key}\t{','.join(table[key])}\n")
    used = set(table)
    for alts in table.values():
        used |= set(alts)
    with open(oracle_path, "w", encoding="utf-8") as f:
        f.write("# CMU Pronouncing Dictionary excerpt: word<TAB>pron1|pron2|...\n")
        for w in sorted(used):
            f.write(f"{w}\t{'|'.join(sorted(prons[w]))}\n")
    return len(table)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vader", required=True)
    ap.add_argument("--cmudict", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--oracle", required=True)
    args = ap.parse_args()
    n_lex = build_lexicon(args.vader, f"{args.out}/valence_lexicon.tsv")
    n_hom = build_homophones(args.cmudict, f"{args.out}/homophones.tsv", args.oracle)
    print(f"lexicon entries: {n_lex}, homophone keys: {n_hom}")


if __name__ == "__main__":
    main()
