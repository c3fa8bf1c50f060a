#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "soaxis/corpus.hpp"
#include "soaxis/embedding.hpp"
#include "soaxis/patterns.hpp"

namespace soaxis {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return std::span<const double>(data_).subspan(r * cols_, cols_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct DistanceMatrix {
  std::vector<std::string> words;
  Matrix d;
  std::vector<std::string> dropped;  // point words missing from the embedding
};

DistanceMatrix build_distance_matrix(const PointWordSet& points, const EmbeddingTable& table);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10'000;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
  int iterations = 0;
};

/// Leading eigenpairs of a symmetric positive semi-definite matrix by power
/// iteration with deflation. Each eigenvector's largest-magnitude component
/// is made positive. A pair whose eigenvalue vanishes relative to the trace
/// comes back with a zero vector.
std::vector<EigenPair> top_eigenpairs(const Matrix& sym, std::size_t count, const PowerIterationOptions& opt = {});

struct AxisProjection {
  std::vector<std::string> words;
  std::vector<double> pc1;
  std::vector<double> pc2;
  std::pair<double, double> explained_variance;  // fractions of total variance
  std::vector<double> axis1;                     // principal directions in row space
  std::vector<double> axis2;
};

/// PCA over the rows of the distance matrix (each row is one word's feature
/// vector, columns mean-centered).
AxisProjection principal_axis(const DistanceMatrix& dm, const PowerIterationOptions& opt = {});

struct Partition {
  std::set<std::string> a;
  std::set<std::string> b;
  std::vector<std::string> dropped;
};

/// a = words with pc1 >= 0, b = words with pc1 < 0.
Partition partition_by_origin(const AxisProjection& proj);

/// a = point words scored above the neutral threshold, b = below; words at
/// the threshold or missing from the lexicon are dropped.
Partition partition_by_lexicon(const PointWordSet& points, const PolarityLexicon& lex);

std::pair<std::vector<double>, std::vector<double>> build_reference_vectors(const std::set<std::string>& a,
                                                                            const std::set<std::string>& b,
                                                                            const EmbeddingTable& table);

enum class AxisMode { Unsupervised, SemiSupervised };

std::string_view to_string(AxisMode m);

struct SentimentAxis {
  std::set<std::string> pos_words;
  std::set<std::string> neg_words;
  std::vector<double> vec_pos;
  std::vector<double> vec_neg;
  std::string seed = "excellent";
  AxisMode mode = AxisMode::Unsupervised;

  /// Same axis with the reference vectors (and word sets) exchanged.
  SentimentAxis swapped() const;
};

/// The side whose reference vector is closer (cosine distance) to the seed
/// becomes positive. `a`/`b` are the word sets the vectors were averaged from.
SentimentAxis orient_by_seed(const std::vector<double>& va, const std::vector<double>& vb, const EmbeddingTable& table,
                             const std::string& seed = "excellent", const std::set<std::string>& a = {},
                             const std::set<std::string>& b = {});

/// cos(vec_pos, w) - cos(vec_neg, w): positive words score above zero.
double sentiment_orientation(std::string_view word, const SentimentAxis& axis, const EmbeddingTable& table);
double sentiment_orientation(std::span<const double> vec, const SentimentAxis& axis);

struct OrientationLexicon {
  std::map<std::string, double> scores;
  SentimentAxis axis;
  std::string embedding_fingerprint;

  std::optional<double> score(std::string_view word) const;
  std::size_t size() const { return scores.size(); }
};

OrientationLexicon score_vocabulary(const SentimentAxis& axis, const EmbeddingTable& table);

/// |Pearson r| between pc1 and gold scores over the words both cover.
double correlate_with_gold(const AxisProjection& proj, const PolarityLexicon& gold);

// Export / import.
std::string format_axis(const SentimentAxis& axis);
SentimentAxis parse_axis(std::string_view text);
std::string format_orientation_lexicon(const OrientationLexicon& lex);
/// Reads "word<TAB>SO" lines; the "# embedding=.. mode=.. seed=.." header is read back.
OrientationLexicon parse_orientation_lexicon(std::string_view text);
std::string format_projection_csv(const AxisProjection& proj);

}  // namespace soaxis
