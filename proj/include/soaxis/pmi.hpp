#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "soaxis/corpus.hpp"
#include "soaxis/patterns.hpp"

namespace soaxis {

enum class HitCounting {
  Document,  // each matching document counts once (search-engine semantics)
  Token,     // every anchor occurrence counts
};

/// Positional inverted index answering hit and NEAR queries over a local
/// corpus. A query is a single term or a contiguous multi-word phrase; a
/// phrase is located by its first token for proximity tests. NEAR matches are
/// order-free within `window` tokens, inclusive.
class NearIndex {
 public:
  NearIndex(const TaggedCorpus& corpus, int window = 10, HitCounting counting = HitCounting::Document);

  int window() const noexcept { return window_; }
  HitCounting counting() const noexcept { return counting_; }
  const std::string& corpus_fingerprint() const noexcept { return fingerprint_; }
  std::size_t document_count() const noexcept { return doc_ids_.size(); }
  const std::string& doc_id(std::uint32_t doc) const { return doc_ids_[doc]; }

  /// Sorted document numbers containing the term or phrase.
  std::vector<std::uint32_t> doc_hits(std::string_view query) const;
  /// Sorted document numbers where `a` and `b` occur within the window.
  std::vector<std::uint32_t> near_docs(std::string_view a, std::string_view b) const;

  std::uint64_t hits(std::string_view query) const;
  std::uint64_t near_hits(std::string_view a, std::string_view b) const;

  /// All indexed terms, sorted.
  std::vector<std::string> terms() const;

 private:
  struct Posting {
    std::uint32_t doc;
    std::vector<std::uint32_t> positions;
  };
  // Anchor positions of the query in each document that contains it.
  std::vector<Posting> locate(std::string_view query) const;

  int window_;
  HitCounting counting_;
  std::string fingerprint_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

NearIndex build_near_index(const TaggedCorpus& corpus, int window = 10, HitCounting counting = HitCounting::Document);

// The four counts entering the orientation ratio, before smoothing.
struct HitCounts {
  std::uint64_t near_pos = 0;  // phrase NEAR positive seed
  std::uint64_t near_neg = 0;  // phrase NEAR negative seed
  std::uint64_t pos_seed = 0;
  std::uint64_t neg_seed = 0;
};

struct PhraseSO {
  std::pair<std::string, std::string> phrase;
  double so = 0.0;
  HitCounts hit_counts;
};

inline constexpr double kZeroHitSmoothing = 0.01;

/// log2 of (near_pos * hits(neg_seed)) / (near_neg * hits(pos_seed)) with
/// zero NEAR counts replaced by 0.01. Zero seed marginals are an error.
double semantic_orientation(const HitCounts& counts);

PhraseSO so_phrase(const NearIndex& index, const std::pair<std::string, std::string>& phrase,
                   const std::string& pos_seed = "excellent", const std::string& neg_seed = "poor");

struct PmiDecision {
  Polarity label = Polarity::Pos;
  double mean_so = 0.0;
  std::size_t phrase_count = 0;
  bool no_phrase = false;
};

PmiDecision classify_review_pmi(const NearIndex& index, const TaggedDocument& review,
                                const std::vector<PatternRule>& rules, const std::string& pos_seed = "excellent",
                                const std::string& neg_seed = "poor");

/// TSV dump: header comment with window, counting mode and corpus
/// fingerprint, then "D<TAB>term<TAB>doc,doc,..." rows for every term and
/// "N<TAB>a<TAB>b<TAB>doc,..." rows for the requested NEAR pairs.
std::string format_near_index(const NearIndex& index,
                              const std::vector<std::pair<std::string, std::string>>& near_pairs);

struct HitDump {
  int window = 0;
  std::string corpus_fingerprint;
  std::map<std::string, std::vector<std::string>> doc_hits;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> near_hits;
};

HitDump parse_near_index_dump(std::string_view text);

}  // namespace soaxis
