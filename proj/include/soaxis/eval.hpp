#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soaxis/axis.hpp"
#include "soaxis/corpus.hpp"
#include "soaxis/embedding.hpp"
#include "soaxis/patterns.hpp"
#include "soaxis/pmi.hpp"

namespace soaxis {

struct ReviewDecision {
  Polarity label = Polarity::Pos;
  double mean_so = 0.0;
  std::size_t scored_tokens = 0;
  bool undecided = false;  // no token of the review is in the lexicon
};

/// Mean SO over in-lexicon tokens (with multiplicity); NEG iff the mean is
/// below zero. A review without scored tokens has mean 0 and is POS.
ReviewDecision classify_review(const TaggedDocument& review, const OrientationLexicon& lex);

struct EvalReport {
  double accuracy = 0.0;
  std::uint64_t n_total = 0;
  std::uint64_t n_correct = 0;
  std::uint64_t n_pos_gold = 0;
  std::uint64_t n_neg_gold = 0;
  std::uint64_t n_undecided = 0;
  // confusion[gold][predicted], index 0 = POS, 1 = NEG
  std::array<std::array<std::uint64_t, 2>, 2> confusion{};
  std::map<std::string, std::string> config_snapshot;
};

struct Prediction {
  Polarity gold;
  Polarity predicted;
  bool undecided = false;
};

EvalReport tally(const std::vector<Prediction>& predictions);

/// Every review must carry a gold label.
EvalReport evaluate(const TaggedCorpus& reviews, const OrientationLexicon& lex);
EvalReport evaluate_pmi(const TaggedCorpus& reviews, const NearIndex& index, const std::vector<PatternRule>& rules,
                        const std::string& pos_seed = "excellent", const std::string& neg_seed = "poor");

std::string format_report(const EvalReport& report);

/// Everything produced between point-word selection and scoring.
struct InducedAxis {
  SentimentAxis axis;
  std::optional<AxisProjection> projection;  // unsupervised mode only
  std::vector<std::string> dropped;          // point words without a vector or lexicon score
};

InducedAxis induce_axis(const PointWordSet& points, const EmbeddingTable& table, AxisMode mode,
                        const PolarityLexicon* lexicon, const std::string& seed = "excellent");

enum class SweepMode { Unsup, Semi, Pmi };

std::string_view to_string(SweepMode m);
std::optional<SweepMode> parse_sweep_mode(std::string_view s);

struct SweepRow {
  std::uint64_t cutoff = 1;
  std::size_t k_point_words = 0;
  std::optional<double> accuracy;
  SweepMode mode = SweepMode::Unsup;
  std::string reason;  // set when accuracy is missing
};

struct SweepInputs {
  const TaggedCorpus* phrase_corpus = nullptr;
  const TaggedCorpus* reviews = nullptr;
  const EmbeddingTable* table = nullptr;    // UNSUP and SEMI
  const PolarityLexicon* lexicon = nullptr;  // SEMI
  const NearIndex* index = nullptr;          // PMI
  std::string seed = "excellent";
  std::string pos_seed = "excellent";
  std::string neg_seed = "poor";
};

/// One row per cutoff, in the given order. Failures at a cutoff are
/// recorded in the row instead of aborting.
std::vector<SweepRow> sweep_cutoffs(const SweepInputs& in, SweepMode mode, const std::vector<std::uint64_t>& cutoffs);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

struct PipelineConfig {
  std::filesystem::path corpus;  // embedding + phrase corpus
  std::filesystem::path reviews;
  std::filesystem::path embeddings;  // loaded when set, otherwise trained on `corpus`
  SgnsConfig sgns;
  AxisMode mode = AxisMode::Unsupervised;
  std::filesystem::path lexicon;  // required for SemiSupervised
  double neutral_threshold = 0.0;
  std::uint64_t cutoff = 5;
  std::string seed_word = "excellent";
  std::filesystem::path out_dir;
  bool save_trained_embeddings = false;
};

/// Runs selection, axis induction, scoring and evaluation, writing
/// points.tsv, axis.tsv, lexicon.tsv, report.txt (and projection.csv in
/// unsupervised mode) to `out_dir`.
EvalReport run_pipeline(const PipelineConfig& config);

TaggedCorpus load_corpus_auto(const std::filesystem::path& path);

}  // namespace soaxis
