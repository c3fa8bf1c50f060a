import math
from pathlib import Path

import pytest

import soaxis

DATA = Path(__file__).resolve().parents[2] / "tests" / "data"


def test_cosine():
    assert math.isclose(soaxis.cosine_similarity([1, 2, 3], [4, 5, 6]), 0.9746318461970762, rel_tol=1e-12)
    assert soaxis.cosine_distance([1, 0], [-1, 0]) == pytest.approx(2.0)
    with pytest.raises(soaxis.SoaxisError) as err:
        soaxis.cosine_similarity([0, 0], [1, 0])
    assert err.value.kind == "degenerate vector"


def test_corpus_and_phrases():
    corpus = soaxis.load_corpus(DATA / "sentences50.tagged")
    assert len(corpus) == 50
    phrases = soaxis.extract_phrases(corpus)
    want = (DATA / "expected" / "sentences50.phrases.tsv").read_text().splitlines()
    got = sorted(f"{p.w1}\t{p.w2}\t{p.rule_index}\t{p.doc_id}\t{p.position}" for p in phrases)
    assert got == sorted(want)
    points = soaxis.select_point_words(phrases, corpus, 2)
    assert points.words == {"good", "most"}


def test_pmi_orientation():
    assert soaxis.semantic_orientation(2, 0, 10, 5) == pytest.approx(math.log2(100), abs=1e-9)
    with pytest.raises(soaxis.SoaxisError):
        soaxis.semantic_orientation(1, 1, 0, 3)


def test_pipeline_objects():
    corpus = soaxis.load_corpus(DATA / "toy_corpus.tagged")
    reviews = soaxis.load_corpus(DATA / "toy_reviews.tagged")
    cfg = soaxis.SgnsConfig()
    cfg.dim, cfg.min_count, cfg.epochs = 16, 1, 10
    table = soaxis.train_sgns(corpus, cfg)
    assert "excellent" in table and table.dim == 16
    points = soaxis.select_point_words(soaxis.extract_phrases(corpus), corpus, 2)
    induced = soaxis.induce_axis(points, table, "unsup")
    lex = soaxis.score_vocabulary(induced["axis"], table)
    assert lex.score("excellent") >= 0
    assert len(lex) == len(table)
    report = soaxis.evaluate(reviews, lex)
    assert report["n_total"] == 40
    assert sum(map(sum, report["confusion"])) == 40

    gold = soaxis.load_polarity_lexicon(DATA / "toy_lexicon.tsv")
    semi = soaxis.induce_axis(points, table, "semi", gold)
    assert "very" in semi["dropped"] or "very" not in points.words

    index = soaxis.NearIndex(corpus, 10)
    assert index.hits("excellent") > 0
    pmi = soaxis.evaluate_pmi(reviews, index)
    assert 0.0 <= pmi["accuracy"] <= 1.0


def test_run_pipeline(tmp_path):
    cfg = soaxis.SgnsConfig()
    cfg.dim, cfg.min_count, cfg.epochs = 16, 1, 10
    report = soaxis.run_pipeline(DATA / "toy_corpus.tagged", DATA / "toy_reviews.tagged", tmp_path / "out",
                                 mode="unsup", cutoff=2, sgns=cfg)
    assert (tmp_path / "out" / "lexicon.tsv").exists()
    assert report["n_total"] == 40
    with pytest.raises(soaxis.SoaxisError) as err:
        soaxis.run_pipeline(DATA / "toy_corpus.tagged", DATA / "toy_reviews.tagged", tmp_path / "x", mode="semi")
    assert err.value.kind == "configuration error"
