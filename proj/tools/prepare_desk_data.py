#!/usr/bin/env python3
"""Build the desk-scale evaluation data set used by the acceptance suite.

Sources (all fetched from PyPI, nothing else is needed):
  * pattern3 sdist  -> Pang & Lee movie-review polarity corpora (full reviews
                       and one-sentence snippets), pre-tokenized and lowercased
  * textblob wheel  -> a Brill-style Penn Treebank tagger (tokens are tagged
                       offline here; the C++ toolkit only reads tagged text)
  * vaderSentiment  -> human-rated word polarity lexicon (centered at 0)

Outputs (inline "token_TAG" corpus format, one document per line):
  train.tagged      1000 full reviews + 4000 snippets, embedding/phrase corpus
  test.tagged       500 held-out full reviews, balanced
  lexicon.tsv       word<TAB>score polarity lexicon
  annotated.tsv     token<TAB>tag<TAB>polarity sample for the tag variance report

Usage:
  python3 tools/prepare_desk_data.py --out data/desk [--cache /tmp/desk-cache]
"""

import argparse
import csv
import io
import pathlib
import random
import subprocess
import sys
import tarfile
import zipfile

SPLIT_SEED = 20161017
TEST_PER_CLASS = 250
TRAIN_REVIEWS_PER_CLASS = 500
ANNOTATED_SENTENCES = 600


def fetch(package, cache):
    cache.mkdir(parents=True, exist_ok=True)
    hits = [p for p in cache.iterdir() if p.name.lower().startswith(package.lower())]
    if not hits:
        subprocess.run([sys.executable, "-m", "pip", "download", package, "--no-deps",
                        "-d", str(cache)], check=True)
        hits = [p for p in cache.iterdir() if p.name.lower().startswith(package.lower())]
    return sorted(hits)[-1]


def read_polarity_csv(tar, name):
    member = next(m for m in tar.getmembers() if m.name.endswith(name))
    text = tar.extractfile(member).read().decode("utf-8-sig")
    csv.field_size_limit(1 << 30)
    rows = []
    for label, body in csv.reader(io.StringIO(text)):
        rows.append(("POS" if label == "1" else "NEG", body))
    return rows


def load_tagger(wheel, cache):
    # the tagger reads its lexicon files from disk, so unpack the wheel
    target = cache / "textblob-unpacked"
    if not target.exists():
        with zipfile.ZipFile(wheel) as z:
            z.extractall(target)
    sys.path.insert(0, str(target))
    from textblob.en import tag  # noqa: E402
    return tag


def clean_tokens(text):
    return [t for t in text.replace("\n", " ").split(" ") if t]


def tag_text(tagger, text):
    tokens = clean_tokens(text)
    if not tokens:
        return []
    tagged = tagger(" ".join(tokens), tokenize=False)
    out = []
    for word, pos in tagged:
        word = word.strip().lower()
        if not word or not pos:
            continue
        # '_' separates token from tag in the inline format
        word = word.replace("_", "-")
        out.append((word, pos))
    return out


def write_corpus(path, docs):
    with open(path, "w", encoding="utf-8") as f:
        for doc_id, label, tagged in docs:
            f.write(f"{doc_id}\t{label}\t" + " ".join(f"{w}_{t}" for w, t in tagged) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/desk")
    ap.add_argument("--cache", default="/tmp/desk-cache")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cache = pathlib.Path(args.cache)

    pattern = fetch("pattern3", cache)
    textblob = fetch("textblob", cache)
    vader = fetch("vaderSentiment", cache)

    with tarfile.open(pattern) as tar:
        reviews = read_polarity_csv(tar, "polarity-en-pang&lee1.csv")
        snippets = read_polarity_csv(tar, "polarity-en-pang&lee2.csv")

    tagger = load_tagger(textblob, cache)
    rng = random.Random(SPLIT_SEED)

    by_label = {"POS": [], "NEG": []}
    for i, (label, body) in enumerate(reviews):
        by_label[label].append(i)
    train_ids, test_ids = [], []
    for label in ("POS", "NEG"):
        ids = by_label[label][:]
        rng.shuffle(ids)
        test_ids += ids[:TEST_PER_CLASS]
        train_ids += ids[TEST_PER_CLASS:TEST_PER_CLASS + TRAIN_REVIEWS_PER_CLASS]
    train_ids.sort()
    test_ids.sort()

    train_docs = []
    for i in train_ids:
        label, body = reviews[i]
        train_docs.append((f"r{i}", label, tag_text(tagger, body)))
    snippet_docs = []
    for i, (label, body) in enumerate(snippets):
        tagged = tag_text(tagger, body)
        if tagged:
            snippet_docs.append((f"s{i}", label, tagged))
    write_corpus(out / "train.tagged", train_docs + snippet_docs)

    test_docs = []
    for i in test_ids:
        label, body = reviews[i]
        test_docs.append((f"r{i}", label, tag_text(tagger, body)))
    write_corpus(out / "test.tagged", test_docs)

    with zipfile.ZipFile(vader) as z:
        raw = z.read("vaderSentiment/vader_lexicon.txt").decode("utf-8", "replace")
    lexicon = {}
    with open(out / "lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# word\tmean human polarity rating in [-4, 4] (VADER)\n")
        for line in raw.splitlines():
            parts = line.split("\t")
            if len(parts) < 2 or not parts[0].strip():
                continue
            word = parts[0].strip().lower()
            if any(c.isspace() for c in word):
                continue
            lexicon[word] = float(parts[1])
            f.write(f"{word}\t{parts[1]}\n")

    # Every token of a snippet sample gets its rated polarity; unrated tokens
    # are neutral (0), as in phrase-level treebank annotation.
    sample = snippet_docs[:]
    rng.shuffle(sample)
    with open(out / "annotated.tsv", "w", encoding="utf-8") as f:
        for _, _, tagged in sample[:ANNOTATED_SENTENCES]:
            for word, pos in tagged:
                f.write(f"{word}\t{pos}\t{lexicon.get(word, 0.0)}\n")

    print(f"train docs: {len(train_docs) + len(snippet_docs)}  test docs: {len(test_docs)}  "
          f"lexicon: {len(lexicon)}")


if __name__ == "__main__":
    main()
