#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "soaxis/corpus.hpp"

namespace soaxis {

/// Dense word vectors of a fixed dimension. Rows are stored unnormalized in
/// one contiguous row-major buffer.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  /// Appends a row. Rejects empty words, duplicates, wrong lengths and
  /// non-finite entries.
  void add(std::string word, std::span<const double> vec);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }

  std::optional<std::size_t> index_of(std::string_view word) const;
  bool contains(std::string_view word) const { return index_of(word).has_value(); }

  std::span<const double> row(std::size_t i) const;
  /// Throws OutOfVocabulary for unknown words.
  std::span<const double> vector(std::string_view word) const;

  /// Content hash over words and raw vector bits.
  std::string fingerprint() const;

  EmbeddingTable scaled(double factor) const;

  std::map<std::string, std::string> metadata;

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

struct SgnsConfig {
  int dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double initial_learning_rate = 0.025;
  int min_count = 5;
  double subsample_threshold = 1e-3;
  std::uint64_t rng_seed = 1;
  // 1 = deterministic single-threaded mode; >1 runs lock-free workers.
  int threads = 1;

  void validate() const;
};

/// Skip-gram with negative sampling over the documents of `corpus`. Context
/// windows never cross document boundaries.
EmbeddingTable train_sgns(const TaggedCorpus& corpus, const SgnsConfig& config);

// Single-sample objective and its gradient. Exposed so the training kernel
// can be checked against finite differences.
namespace sgns {

double sigmoid(double x);

/// -log σ(context·center) - Σ_k log σ(-negative_k·center)
double loss(std::span<const double> center, std::span<const double> context,
            std::span<const std::span<const double>> negatives);

struct Gradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

Gradient gradient(std::span<const double> center, std::span<const double> context,
                  std::span<const std::span<const double>> negatives);

/// In-place SGD step with learning rate `lr` on one (center, context,
/// negatives) sample; this is the update the trainer applies. `scratch` must
/// hold dim() doubles.
void step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
          double lr, std::span<double> scratch);

}  // namespace sgns

/// Text vector format: header "vocab_count dim", then "word v1 ... v_dim".
/// Headerless files (first row already a vector) are also accepted.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingTable& table);
EmbeddingTable load_embeddings(const std::filesystem::path& path);
EmbeddingTable parse_embeddings(std::string_view text, const std::string& source = "<memory>");

double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_distance(std::span<const double> a, std::span<const double> b);

/// Up to k neighbours by descending cosine similarity, query excluded, ties
/// broken lexicographically.
std::vector<std::pair<std::string, double>> nearest_neighbors(const EmbeddingTable& table, std::string_view word,
                                                              std::size_t k);

}  // namespace soaxis
