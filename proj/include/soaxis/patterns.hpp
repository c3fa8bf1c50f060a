#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "soaxis/corpus.hpp"

namespace soaxis {

enum class ThirdWord { Anything, NotNounNorPlural };

/// Tag constraints for a two-word phrase and the word that follows it.
struct PatternRule {
  std::set<std::string> first;
  std::set<std::string> second;
  ThirdWord third = ThirdWord::Anything;

  bool matches(std::string_view tag1, std::string_view tag2, const std::string* tag3) const;
};

/// The five adjective/adverb phrase patterns, in priority order (index 0 is rule 1).
const std::vector<PatternRule>& builtin_rules();

struct PhraseOccurrence {
  std::string w1;
  std::string w2;
  int rule_index = 0;  // 1-based
  std::string doc_id;
  std::size_t position = 0;  // token index of w1

  friend bool operator==(const PhraseOccurrence&, const PhraseOccurrence&) = default;
};

std::vector<PhraseOccurrence> extract_phrases(const TaggedDocument& doc, const std::vector<PatternRule>& rules);
std::vector<PhraseOccurrence> extract_phrases(const TaggedCorpus& corpus, const std::vector<PatternRule>& rules);

/// JJ, JJR, JJS, RB, RBR, RBS (JJR may be switched off).
bool is_modifier_tag(std::string_view tag, bool include_jjr = true);

struct PointWordSet {
  std::set<std::string> words;
  std::uint64_t cutoff = 1;
  std::map<std::pair<std::string, std::string>, std::uint64_t> phrase_counts;
  std::map<std::string, std::uint64_t> word_counts;

  std::size_t size() const { return words.size(); }
};

/// Keeps phrase types seen at least `cutoff` times and collects the words
/// tagged as modifiers at those occurrences. Tags are read back from `corpus`.
PointWordSet select_point_words(const std::vector<PhraseOccurrence>& phrases, const TaggedCorpus& corpus,
                                std::uint64_t cutoff, bool include_jjr = true);

struct TagVariance {
  double variance = 0.0;
  std::uint64_t count = 0;
};

struct TagVarianceReport {
  std::map<std::string, TagVariance> per_tag;
  // Σ over tags of variance × count
  double total_variance = 0.0;

  /// Fraction of total_variance contributed by `tag`.
  double share(const std::string& tag) const;
  /// Tags sorted by descending variance × count.
  std::vector<std::string> ranking() const;
};

struct AnnotatedToken {
  TaggedToken token;
  double polarity = 0.0;
};

TagVarianceReport tag_polarity_variance(const std::vector<AnnotatedToken>& annotated);

// File formats.
// phrases:   "w1<TAB>w2<TAB>rule<TAB>doc_id<TAB>position"
// points:    "word<TAB>count" with a "# cutoff=N" header comment
// annotated: "token<TAB>tag<TAB>polarity"
std::string format_phrases(const std::vector<PhraseOccurrence>& phrases);
std::vector<PhraseOccurrence> parse_phrases(std::string_view text);
std::string format_point_words(const PointWordSet& points);
PointWordSet parse_point_words(std::string_view text);
std::vector<AnnotatedToken> parse_annotated(std::string_view text);
std::string format_tag_variance(const TagVarianceReport& report);

}  // namespace soaxis
