#!/usr/bin/env python3
"""Trains a reference skip-gram model with gensim on the desk training corpus
and freezes the similarities used by the acceptance check.

  python3 tests/oracles/reference_embedding.py data/desk/train.tagged
"""
import sys
from pathlib import Path

from gensim.models import Word2Vec

ROOT = Path(__file__).resolve().parents[2]


def docs(path):
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        body = line.split("\t")[-1]
        yield [tok.rpartition("_")[0].lower() for tok in body.split(" ")]


def main():
    corpus = list(docs(sys.argv[1] if len(sys.argv) > 1 else ROOT / "data" / "desk" / "train.tagged"))
    model = Word2Vec(corpus, vector_size=100, window=5, negative=5, epochs=5, alpha=0.025,
                     min_count=5, sample=1e-3, sg=1, hs=0, seed=1, workers=1)
    wv = model.wv
    out = ROOT / "tests" / "data" / "expected" / "reference_similarity.txt"
    out.write_text(
        f"good.great={float(wv.similarity('good', 'great'))!r}\n"
        f"good.the={float(wv.similarity('good', 'the'))!r}\n", encoding="utf-8")
    print(out.read_text())


if __name__ == "__main__":
    main()
