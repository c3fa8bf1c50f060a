#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace soaxis;

namespace {

OrientationLexicon lex_of(std::initializer_list<std::pair<const char*, double>> items) {
  OrientationLexicon lex;
  for (auto [w, s] : items) lex.scores[w] = s;
  return lex;
}

PipelineConfig toy_config(const fs::path& out, AxisMode mode) {
  PipelineConfig cfg;
  cfg.corpus = test_data("toy_corpus.tagged");
  cfg.reviews = test_data("toy_reviews.tagged");
  cfg.sgns.dim = 16;
  cfg.sgns.min_count = 1;
  cfg.sgns.epochs = 10;
  cfg.mode = mode;
  cfg.cutoff = 2;
  cfg.out_dir = out;
  if (mode == AxisMode::SemiSupervised) cfg.lexicon = test_data("toy_lexicon.tsv");
  return cfg;
}

}  // namespace

TEST_CASE("classify_review") {
  auto lex = lex_of({{"up", 0.2}, {"down", -0.1}, {"worse", -0.2}});
  auto d = classify_review(make_plain("r", "up down"), lex);
  CHECK(d.label == Polarity::Pos);
  CHECK(d.mean_so == doctest::Approx(0.05));
  CHECK(classify_review(make_plain("r", "worse down"), lex).label == Polarity::Neg);
  auto u = classify_review(make_plain("r", "nothing here"), lex);
  CHECK(u.label == Polarity::Pos);
  CHECK(u.undecided);
  CHECK(u.scored_tokens == 0);
  // multiplicity counts
  CHECK(classify_review(make_plain("r", "up down down down"), lex).label == Polarity::Neg);
}

TEST_CASE("tally and report invariants") {
  std::vector<Prediction> same{{Polarity::Pos, Polarity::Pos}, {Polarity::Neg, Polarity::Neg}};
  CHECK(tally(same).accuracy == 1.0);
  std::vector<Prediction> flip{{Polarity::Pos, Polarity::Neg}, {Polarity::Neg, Polarity::Pos}};
  auto r = tally(flip);
  CHECK(r.accuracy == 0.0);
  CHECK(r.confusion[0][1] == 1);
  CHECK(r.confusion[1][0] == 1);
  CHECK_ERROR_KIND(tally({}), ErrorKind::EmptyInput);
  CHECK_ERROR_KIND(evaluate(TaggedCorpus{}, lex_of({{"a", 1}})), ErrorKind::EmptyInput);
  TaggedCorpus unlabeled;
  unlabeled.documents.push_back(make_plain("x", "a"));
  CHECK_ERROR_KIND(evaluate(unlabeled, lex_of({{"a", 1}})), ErrorKind::InvalidArgument);
}

TEST_CASE("20-review fixture matches the hand tally") {
  auto reviews = load_tagged_corpus(test_data("eval20.tagged"), CorpusFormat::InlineTags);
  auto lex = parse_orientation_lexicon(slurp(test_data("eval20.lexicon.tsv")));
  auto r = evaluate(reviews, lex);
  auto want = read_kv(expected("eval20.txt"));
  CHECK(r.n_total == std::stoul(want["n_total"]));
  CHECK(r.n_correct == std::stoul(want["n_correct"]));
  CHECK(r.n_undecided == std::stoul(want["n_undecided"]));
  CHECK(r.accuracy == doctest::Approx(std::stod(want["n_correct"]) / std::stod(want["n_total"])));
  auto report = format_report(r);
  CHECK(report.find("confusion.POS=" + want["confusion.POS"] + "\n") != std::string::npos);
  CHECK(report.find("confusion.NEG=" + want["confusion.NEG"] + "\n") != std::string::npos);
  std::uint64_t sum = 0;
  for (auto& row : r.confusion)
    for (auto v : row) sum += v;
  CHECK(sum == r.n_total);
  CHECK(r.n_pos_gold + r.n_neg_gold == r.n_total);
}

TEST_CASE("property: flipped gold gives 1 - accuracy") {
  auto reviews = load_tagged_corpus(test_data("eval20.tagged"), CorpusFormat::InlineTags);
  auto lex = lex_of({{"fine", 0.4}, {"awful", -0.8}, {"the", 0.01}, {"movie", -0.02}, {"it", 0.03}});
  auto base = evaluate(reviews, lex);
  REQUIRE(base.n_undecided == 0);
  auto flipped = reviews;
  for (auto& d : flipped.documents) d.label = *d.label == Polarity::Pos ? Polarity::Neg : Polarity::Pos;
  CHECK(evaluate(flipped, lex).accuracy == doctest::Approx(1.0 - base.accuracy).epsilon(1e-15));
}

TEST_CASE("property: global lexicon shift and token reordering") {
  auto reviews = load_tagged_corpus(test_data("eval20.tagged"), CorpusFormat::InlineTags);
  auto lex = parse_orientation_lexicon(slurp(test_data("eval20.lexicon.tsv")));
  std::mt19937 rng(21);
  for (double c : {0.0, 0.01, -0.07, 0.3, -1.0}) {
    auto shifted = lex;
    for (auto& [w, s] : shifted.scores) s += c;
    for (const auto& doc : reviews.documents) {
      auto a = classify_review(doc, lex);
      auto b = classify_review(doc, shifted);
      if (a.undecided) {
        CHECK(b.undecided);
        continue;
      }
      CHECK(std::abs(b.mean_so - (a.mean_so + c)) < 1e-12);
      if (c == 0.0) CHECK(a.label == b.label);
      const bool crossed = (a.mean_so < 0) != (b.mean_so < 0);
      CHECK((a.label != b.label) == crossed);
    }
  }
  for (const auto& doc : reviews.documents) {
    auto base = classify_review(doc, lex);
    auto shuffled = doc;
    for (int i = 0; i < 5; ++i) {
      std::shuffle(shuffled.tokens.begin(), shuffled.tokens.end(), rng);
      auto d = classify_review(shuffled, lex);
      CHECK(d.label == base.label);
      CHECK(d.mean_so == doctest::Approx(base.mean_so).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep rows: order, anti-monotone k, recorded failures") {
  auto corpus = load_tagged_corpus(test_data("toy_corpus.tagged"), CorpusFormat::InlineTags);
  auto reviews = load_tagged_corpus(test_data("toy_reviews.tagged"), CorpusFormat::InlineTags);
  SgnsConfig sg;
  sg.dim = 16;
  sg.min_count = 1;
  sg.epochs = 10;
  auto table = train_sgns(corpus, sg);
  auto lexicon = load_polarity_lexicon(test_data("toy_lexicon.tsv"));
  NearIndex index(corpus, 10);
  SweepInputs in;
  in.phrase_corpus = &corpus;
  in.reviews = &reviews;
  in.table = &table;
  in.lexicon = &lexicon;
  in.index = &index;

  std::vector<std::uint64_t> cutoffs{1, 2, 3, 5, 8, 13, 21, 34, 1000};
  for (auto mode : {SweepMode::Unsup, SweepMode::Semi, SweepMode::Pmi}) {
    auto rows = sweep_cutoffs(in, mode, cutoffs);
    REQUIRE(rows.size() == cutoffs.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].cutoff == cutoffs[i]);
      CHECK(rows[i].mode == mode);
      if (i) CHECK(rows[i].k_point_words <= rows[i - 1].k_point_words);
      CHECK(rows[i].accuracy.has_value() == rows[i].reason.empty());
    }
    CHECK(rows.back().reason == "no_point_words");
    CHECK(rows.front().accuracy.has_value());
    CHECK(format_sweep_csv(rows) == format_sweep_csv(sweep_cutoffs(in, mode, cutoffs)));
  }
  CHECK(sweep_cutoffs(in, SweepMode::Unsup, {4}).size() == 1);
  auto csv = format_sweep_csv(sweep_cutoffs(in, SweepMode::Unsup, {1, 1000}));
  CHECK(csv.starts_with("cutoff,k,mode,accuracy,reason\n"));
  CHECK(csv.find(",no_point_words\n") != std::string::npos);

  in.lexicon = nullptr;
  CHECK_ERROR_KIND(sweep_cutoffs(in, SweepMode::Semi, {1}), ErrorKind::Config);
}

TEST_CASE("pipeline on the toy corpus") {
  const auto root = fs::temp_directory_path() / "soaxis_pipeline_test";
  fs::remove_all(root);

  auto unsup = run_pipeline(toy_config(root / "u1", AxisMode::Unsupervised));
  CHECK(unsup.n_total == 40);
  for (auto f : {"points.tsv", "axis.tsv", "projection.csv", "lexicon.tsv", "report.txt"})
    CHECK(fs::exists(root / "u1" / f));
  auto lex = parse_orientation_lexicon(slurp(root / "u1" / "lexicon.tsv"));
  CHECK(*lex.score("excellent") >= 0.0);

  auto semi = run_pipeline(toy_config(root / "s1", AxisMode::SemiSupervised));
  CHECK(semi.accuracy > 0.5);
  CHECK(*parse_orientation_lexicon(slurp(root / "s1" / "lexicon.tsv")).score("excellent") >= 0.0);

  // identical config and seed, identical bytes
  run_pipeline(toy_config(root / "u2", AxisMode::Unsupervised));
  for (auto f : {"lexicon.tsv", "report.txt", "axis.tsv", "points.tsv"})
    CHECK(slurp(root / "u1" / f) == slurp(root / "u2" / f));

  auto bad = toy_config(root / "s2", AxisMode::SemiSupervised);
  bad.lexicon.clear();
  CHECK_ERROR_KIND(run_pipeline(bad), ErrorKind::Config);

  auto missing = toy_config(root / "m", AxisMode::Unsupervised);
  missing.seed_word = "nonexistent";
  try {
    run_pipeline(missing);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedMissing);
    CHECK(e.stage() == "build-axis");
  }
  fs::remove_all(root);
}
